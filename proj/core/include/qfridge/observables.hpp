#pragma once

#include <string>
#include <vector>

#include "qfridge/models.hpp"
#include "qfridge/tensor.hpp"

namespace qfridge {

enum class TemperatureFlag {
  Normal,
  Infinite,     // equal populations
  Inverted,     // population inversion, value is negative
  ExactGround,  // no excited population, value is 0
};

std::string to_string(TemperatureFlag flag);

struct TemperatureReading {
  double value = 0.0;
  double gap_used = 0.0;
  double thermality_defect = 0.0;  // max |p_n - Gibbs_n(value)| over levels
  TemperatureFlag flag = TemperatureFlag::Normal;
};

/// Effective temperature of a single-particle state from its diagonal
/// populations. Qubits invert the Gibbs ratio exactly; qutrits use the
/// least-squares inverse temperature over both excited levels.
TemperatureReading temperature_of(const ComplexMatrix& reduced_rho, const ParticleSpec& particle);

/// Per-particle temperatures of a joint state.
std::vector<TemperatureReading> temperatures(const FridgeModel& model, const ComplexMatrix& rho);

struct HeatCurrents {
  std::vector<double> per_particle;  // Q_i = Tr(H_i D_i(rho)), positive when heat flows in from bath i

  double total() const;
};

HeatCurrents heat_currents(const FridgeModel& model, const ComplexMatrix& rho);

struct InsulationLimit {
  double value = 0.0;
  bool in_regime = true;  // false when the denominator is not positive
};

/// Stationary temperature of the cooled qubit of model I as its own bath
/// coupling goes to zero: Tc / (1 + (E3/E1)(1 - Tc/Th)).
InsulationLimit perfect_insulation_limit(double Tc, double Th, double E1, double E3);

}  // namespace qfridge
