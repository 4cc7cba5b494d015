#include "qfridge/observables.hpp"

#include <cmath>
#include <limits>
#include <numeric>

namespace qfridge {

std::string to_string(TemperatureFlag flag) {
  switch (flag) {
    case TemperatureFlag::Normal: return "normal";
    case TemperatureFlag::Infinite: return "infinite";
    case TemperatureFlag::Inverted: return "inverted";
    case TemperatureFlag::ExactGround: return "exact_ground";
  }
  return "normal";
}

namespace {

double gibbs_defect(const Eigen::VectorXd& pops, const std::vector<double>& energies, double t) {
  const ComplexMatrix g = thermal_state(std::span<const double>(energies), t);
  double defect = 0.0;
  for (Eigen::Index n = 0; n < pops.size(); ++n) defect = std::max(defect, std::abs(pops(n) - g(n, n).real()));
  return defect;
}

}  // namespace

TemperatureReading temperature_of(const ComplexMatrix& reduced_rho, const ParticleSpec& particle) {
  const int d = particle.levels();
  if (reduced_rho.rows() != d || reduced_rho.cols() != d) {
    throw DimensionError("temperature_of: state dimension does not match the particle");
  }
  Eigen::VectorXd pops = reduced_rho.diagonal().real();
  pops /= pops.sum();
  const auto& e = particle.energies;

  TemperatureReading reading;
  reading.gap_used = e[1] - e[0];

  bool excited_empty = true;
  for (int n = 1; n < d; ++n) excited_empty = excited_empty && pops(n) <= 0.0;
  if (excited_empty) {
    reading.value = 0.0;
    reading.flag = TemperatureFlag::ExactGround;
    for (int n = 1; n < d; ++n) reading.thermality_defect = std::max(reading.thermality_defect, std::abs(pops(n)));
    return reading;
  }

  if (d == 2) {
    if (pops(0) == pops(1)) {
      reading.value = std::numeric_limits<double>::infinity();
      reading.flag = TemperatureFlag::Infinite;
    } else if (pops(0) <= 0.0) {
      // Fully inverted: the negative-temperature limit.
      reading.value = -0.0;
      reading.flag = TemperatureFlag::Inverted;
    } else {
      reading.value = reading.gap_used / std::log(pops(0) / pops(1));
      if (reading.value < 0.0) reading.flag = TemperatureFlag::Inverted;
    }
    return reading;
  }

  // Qutrit: fit ln(p_n / p_0) = -beta * E_n over excited levels with positive population.
  double num = 0.0;
  double den = 0.0;
  for (int n = 1; n < d; ++n) {
    if (pops(n) <= 0.0 || pops(0) <= 0.0) continue;
    num += e[n] * std::log(pops(0) / pops(n));
    den += e[n] * e[n];
  }
  const double beta = den > 0.0 ? num / den : std::numeric_limits<double>::infinity();
  if (beta == 0.0) {
    reading.value = std::numeric_limits<double>::infinity();
    reading.flag = TemperatureFlag::Infinite;
  } else {
    reading.value = 1.0 / beta;
    if (beta < 0.0) reading.flag = TemperatureFlag::Inverted;
  }
  if (beta >= 0.0) {
    reading.thermality_defect = gibbs_defect(pops, e, beta == 0.0 ? reading.value : 1.0 / beta);
  } else {
    // Inverted qutrit: compare against the Boltzmann weights at the negative temperature.
    Eigen::VectorXd w(d);
    for (int n = 0; n < d; ++n) w(n) = std::exp(-beta * e[n]);
    w /= w.sum();
    reading.thermality_defect = (w - pops).cwiseAbs().maxCoeff();
  }
  return reading;
}

std::vector<TemperatureReading> temperatures(const FridgeModel& model, const ComplexMatrix& rho) {
  std::vector<TemperatureReading> out;
  for (std::size_t i = 0; i < model.particles().size(); ++i) {
    out.push_back(temperature_of(reduced_state(rho, i, model.shape()), model.particle(i)));
  }
  return out;
}

double HeatCurrents::total() const { return std::accumulate(per_particle.begin(), per_particle.end(), 0.0); }

HeatCurrents heat_currents(const FridgeModel& model, const ComplexMatrix& rho) {
  HeatCurrents q;
  for (std::size_t i = 0; i < model.particles().size(); ++i) {
    const ComplexMatrix d = particle_dissipator(i, rho, model);
    q.per_particle.push_back((model.local_hamiltonian(i) * d).trace().real());
  }
  return q;
}

InsulationLimit perfect_insulation_limit(double Tc, double Th, double E1, double E3) {
  if (!(Tc > 0.0) || !(Th > 0.0) || !(E1 > 0.0) || !(E3 >= 0.0)) {
    throw InvalidParameter("perfect_insulation_limit needs Tc, Th, E1 > 0 and E3 >= 0");
  }
  const double ratio = std::isinf(Th) ? 0.0 : Tc / Th;
  const double denominator = 1.0 + (E3 / E1) * (1.0 - ratio);
  InsulationLimit out;
  out.in_regime = denominator > 0.0;
  out.value = out.in_regime ? Tc / denominator : std::numeric_limits<double>::quiet_NaN();
  return out;
}

}  // namespace qfridge
