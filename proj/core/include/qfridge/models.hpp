#pragma once

// Refrigerator models: free and interaction Hamiltonians, bath channels,
// thermal states and the per-channel dissipators of the reset master equation.
//
// Units: hbar = k_B = 1. Energies and temperatures share a unit; time is
// inverse energy.

#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "qfridge/tensor.hpp"

namespace qfridge {

/// Raised for physically meaningless parameters (negative rates, inverted levels, ...).
class InvalidParameter : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

enum class BathKind {
  /// rho -> p (tau (x) Tr_i rho - rho): the particle is replaced by its thermal state.
  FullReset,
  /// Detailed-balance jump pair on one transition a <-> b of the particle.
  TransitionJump,
};

struct BathChannel {
  BathKind kind = BathKind::FullReset;
  double temperature = 1.0;  // may be +inf
  double rate = 0.0;
  std::optional<std::pair<int, int>> transition;

  static BathChannel full_reset(double temperature, double rate);
  static BathChannel transition_jump(int lower, int upper, double temperature, double rate);

  void validate(int levels) const;
};

struct ParticleSpec {
  std::vector<double> energies;  // energies[0] == 0, strictly increasing
  std::vector<BathChannel> baths;

  int levels() const noexcept { return static_cast<int>(energies.size()); }
  double min_gap() const;
  void validate() const;
};

/// coupling * (|bra><ket| + |ket><bra|) on joint basis configurations.
struct InteractionTerm {
  double coupling = 0.0;
  std::vector<int> bra_config;
  std::vector<int> ket_config;
};

enum class ModelTag { I, II, III, Custom };

std::string to_string(ModelTag tag);
ModelTag model_tag_from_string(const std::string& text);

class FridgeModel {
 public:
  /// Validates the pieces and assembles H0 (diagonal) and Hint.
  FridgeModel(std::vector<ParticleSpec> particles, std::vector<InteractionTerm> interactions,
              ModelTag tag = ModelTag::Custom);

  const SpaceShape& shape() const noexcept { return shape_; }
  const std::vector<ParticleSpec>& particles() const noexcept { return particles_; }
  const ParticleSpec& particle(std::size_t i) const { return particles_.at(i); }
  const std::vector<InteractionTerm>& interactions() const noexcept { return interactions_; }
  ModelTag tag() const noexcept { return tag_; }

  const ComplexMatrix& H0() const noexcept { return h0_; }
  const ComplexMatrix& Hint() const noexcept { return hint_; }
  ComplexMatrix hamiltonian() const { return h0_ + hint_; }

  /// Particle i's free Hamiltonian lifted to the joint space.
  ComplexMatrix local_hamiltonian(std::size_t i) const;

  /// True when any bath rate is positive.
  bool has_dissipation() const;

  /// Weak-coupling guard messages (g or p not small against the smallest gap).
  const std::vector<std::string>& warnings() const noexcept { return warnings_; }

 private:
  std::vector<ParticleSpec> particles_;
  std::vector<InteractionTerm> interactions_;
  ModelTag tag_;
  SpaceShape shape_;
  ComplexMatrix h0_;
  ComplexMatrix hint_;
  std::vector<std::string> warnings_;
};

/// Gibbs state diag(e^{-E_n/T}) / Z. T = +inf gives the maximally mixed state,
/// T -> 0+ the ground state.
ComplexMatrix thermal_state(std::span<const double> energies, double temperature);
ComplexMatrix thermal_state(const ParticleSpec& particle, double temperature);

/// Downward and upward rates of a transition-jump channel. They sum to the
/// channel rate and their ratio is the Boltzmann factor of the transition.
struct JumpRates {
  double down = 0.0;
  double up = 0.0;
};
JumpRates jump_rates(const BathChannel& channel, double gap);

/// Contribution of one bath channel acting on `particle` to d(rho)/dt.
ComplexMatrix dissipator(const BathChannel& channel, std::size_t particle, const ComplexMatrix& rho,
                         const FridgeModel& model);

/// Sum over every channel attached to `particle`.
ComplexMatrix particle_dissipator(std::size_t particle, const ComplexMatrix& rho, const FridgeModel& model);

/// Full right-hand side -i[H0 + Hint, rho] + sum of all dissipators, evaluated
/// directly on the matrix (no superoperator).
ComplexMatrix master_equation_rhs(const FridgeModel& model, const ComplexMatrix& rho);

// Two-qubit fridge plus the qubit to cool. Qubit 0 is the target (bath Tc),
// qubit 1 the spiral (bath Tr), qubit 2 the engine (bath Th) with gap E2 - E1.
struct ModelIParams {
  double E1 = 1.0;
  double E2 = 3.0;
  double Tc = 1.0;
  double Tr = 1.0;
  double Th = 1.0;
  double p1 = 1e-3;
  double p2 = 1e-3;
  double p3 = 1e-3;
  double g = 1e-3;
};

// Qubit - qutrit - qubit chain. Qutrit levels (0, E2, E1+E2), engine qubit gap E2.
struct ModelIIParams {
  double E1 = 1.0;
  double E2 = 1.0;
  double Tc = 1.0;
  double Tr = 1.0;
  double Th = 1.0;
  double p1 = 1e-3;
  double p2 = 1e-3;
  double p3 = 1e-3;
  double g = 1e-3;
  double h = 1e-3;
};

// Qubit plus a single qutrit whose 0<->1 transition sees the hot bath and
// 0<->2 transition the room bath.
struct ModelIIIParams {
  double E1 = 1.0;
  double E2 = 1.0;
  double Tc = 1.0;
  double Tr = 1.0;
  double Th = 1.0;
  double p1 = 1e-3;
  double p_h = 1e-3;
  double p_r = 1e-3;
  double g = 1e-3;
};

FridgeModel build_model_I(const ModelIParams& params);
FridgeModel build_model_II(const ModelIIParams& params);
FridgeModel build_model_III(const ModelIIIParams& params);

}  // namespace qfridge
