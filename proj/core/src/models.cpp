#include "qfridge/models.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace qfridge {

namespace {

bool valid_temperature(double t) { return t > 0.0 && !std::isnan(t); }

void require(bool ok, const std::string& message) {
  if (!ok) throw InvalidParameter(message);
}

ComplexMatrix transition_op(int levels, int to, int from) {
  ComplexMatrix op = ComplexMatrix::Zero(levels, levels);
  op(to, from) = 1.0;
  return op;
}

ComplexMatrix lindblad_term(const ComplexMatrix& jump, const ComplexMatrix& rho) {
  const ComplexMatrix jdj = jump.adjoint() * jump;
  return jump * rho * jump.adjoint() - 0.5 * (jdj * rho + rho * jdj);
}

}  // namespace

BathChannel BathChannel::full_reset(double temperature, double rate) {
  BathChannel c;
  c.kind = BathKind::FullReset;
  c.temperature = temperature;
  c.rate = rate;
  return c;
}

BathChannel BathChannel::transition_jump(int lower, int upper, double temperature, double rate) {
  BathChannel c;
  c.kind = BathKind::TransitionJump;
  c.temperature = temperature;
  c.rate = rate;
  c.transition = std::make_pair(lower, upper);
  return c;
}

void BathChannel::validate(int levels) const {
  require(rate >= 0.0 && std::isfinite(rate), "bath rate must be finite and >= 0");
  require(valid_temperature(temperature), "bath temperature must be > 0 (or +inf)");
  if (kind == BathKind::FullReset) {
    require(!transition.has_value(), "full_reset channel takes no transition pair");
  } else {
    require(transition.has_value(), "transition_jump channel needs a transition pair");
    const auto [a, b] = *transition;
    require(0 <= a && a < b && b < levels, "transition_jump needs levels a < b within the particle");
  }
}

double ParticleSpec::min_gap() const {
  double gap = std::numeric_limits<double>::infinity();
  for (std::size_t n = 1; n < energies.size(); ++n) gap = std::min(gap, energies[n] - energies[n - 1]);
  return gap;
}

void ParticleSpec::validate() const {
  require(levels() == 2 || levels() == 3, "particles must have 2 or 3 levels");
  require(energies[0] == 0.0, "ground level energy must be 0");
  for (std::size_t n = 1; n < energies.size(); ++n) {
    require(std::isfinite(energies[n]) && energies[n] > energies[n - 1],
            "level energies must be finite and strictly increasing");
  }
  for (const auto& bath : baths) bath.validate(levels());
}

std::string to_string(ModelTag tag) {
  switch (tag) {
    case ModelTag::I: return "I";
    case ModelTag::II: return "II";
    case ModelTag::III: return "III";
    case ModelTag::Custom: return "custom";
  }
  return "custom";
}

ModelTag model_tag_from_string(const std::string& text) {
  if (text == "I" || text == "1") return ModelTag::I;
  if (text == "II" || text == "2") return ModelTag::II;
  if (text == "III" || text == "3") return ModelTag::III;
  if (text == "custom") return ModelTag::Custom;
  throw InvalidParameter("unknown model tag '" + text + "' (expected I, II, III or custom)");
}

FridgeModel::FridgeModel(std::vector<ParticleSpec> particles, std::vector<InteractionTerm> interactions,
                         ModelTag tag)
    : particles_(std::move(particles)), interactions_(std::move(interactions)), tag_(tag) {
  require(!particles_.empty(), "a model needs at least one particle");
  std::vector<int> dims;
  for (const auto& p : particles_) {
    p.validate();
    dims.push_back(p.levels());
  }
  shape_ = SpaceShape(dims);

  const int n = shape_.total_dim();
  h0_ = ComplexMatrix::Zero(n, n);
  for (int idx = 0; idx < n; ++idx) {
    const auto levels = shape_.levels_of(idx);
    double e = 0.0;
    for (std::size_t i = 0; i < particles_.size(); ++i) e += particles_[i].energies[levels[i]];
    h0_(idx, idx) = e;
  }

  hint_ = ComplexMatrix::Zero(n, n);
  for (const auto& term : interactions_) {
    require(std::isfinite(term.coupling), "interaction coupling must be finite");
    const int bra = shape_.index_of(term.bra_config);
    const int ket = shape_.index_of(term.ket_config);
    require(bra != ket, "interaction term must couple two distinct configurations");
    hint_(bra, ket) += term.coupling;
    hint_(ket, bra) += term.coupling;
  }

  double min_gap = std::numeric_limits<double>::infinity();
  for (const auto& p : particles_) min_gap = std::min(min_gap, p.min_gap());
  const double guard = 0.1 * min_gap;
  for (const auto& term : interactions_) {
    if (std::abs(term.coupling) >= guard) {
      std::ostringstream os;
      os << "coupling " << term.coupling << " is not small against the smallest gap " << min_gap
         << "; the reset master equation assumes weak coupling";
      warnings_.push_back(os.str());
    }
  }
  for (std::size_t i = 0; i < particles_.size(); ++i) {
    for (const auto& bath : particles_[i].baths) {
      if (bath.rate >= guard) {
        std::ostringstream os;
        os << "bath rate " << bath.rate << " on particle " << i + 1
           << " is not small against the smallest gap " << min_gap;
        warnings_.push_back(os.str());
      }
    }
  }

  const double defect = max_abs(commutator(h0_, hint_));
  if (defect > 1e-12) {
    if (tag_ != ModelTag::Custom) {
      throw std::logic_error("built-in model has [H0, Hint] != 0");
    }
    warnings_.push_back("interaction couples non-degenerate configurations; swaps cost work");
  }
}

ComplexMatrix FridgeModel::local_hamiltonian(std::size_t i) const {
  const auto& p = particle(i);
  ComplexMatrix h = ComplexMatrix::Zero(p.levels(), p.levels());
  for (int n = 0; n < p.levels(); ++n) h(n, n) = p.energies[n];
  return embed(h, i, shape_);
}

bool FridgeModel::has_dissipation() const {
  for (const auto& p : particles_) {
    for (const auto& b : p.baths) {
      if (b.rate > 0.0) return true;
    }
  }
  return false;
}

ComplexMatrix thermal_state(std::span<const double> energies, double temperature) {
  if (!valid_temperature(temperature)) {
    throw InvalidParameter("thermal_state: temperature must be > 0 (or +inf)");
  }
  const auto n = static_cast<Eigen::Index>(energies.size());
  if (n == 0) throw DimensionError("thermal_state: no levels");
  const double e0 = *std::min_element(energies.begin(), energies.end());
  Eigen::VectorXd w(n);
  for (Eigen::Index k = 0; k < n; ++k) {
    w(k) = std::isinf(temperature) ? 1.0 : std::exp(-(energies[k] - e0) / temperature);
  }
  w /= w.sum();
  return w.cast<Complex>().asDiagonal();
}

ComplexMatrix thermal_state(const ParticleSpec& particle, double temperature) {
  return thermal_state(std::span<const double>(particle.energies), temperature);
}

JumpRates jump_rates(const BathChannel& channel, double gap) {
  const double boltzmann = std::isinf(channel.temperature) ? 1.0 : std::exp(-gap / channel.temperature);
  return {channel.rate / (1.0 + boltzmann), channel.rate * boltzmann / (1.0 + boltzmann)};
}

ComplexMatrix dissipator(const BathChannel& channel, std::size_t particle, const ComplexMatrix& rho,
                         const FridgeModel& model) {
  const auto& shape = model.shape();
  if (rho.rows() != shape.total_dim() || rho.cols() != shape.total_dim()) {
    throw DimensionError("dissipator: state does not live on the model's space");
  }
  const auto& spec = model.particle(particle);
  if (channel.rate == 0.0) return ComplexMatrix::Zero(rho.rows(), rho.cols());

  if (channel.kind == BathKind::FullReset) {
    const ComplexMatrix tau = thermal_state(spec, channel.temperature);
    if (shape.particles() == 1) {
      return channel.rate * (tau * rho.trace() - rho);
    }
    return channel.rate * (insert_factor(tau, partial_trace(rho, particle, shape), particle, shape) - rho);
  }

  const auto [a, b] = channel.transition.value();
  const double gap = spec.energies[b] - spec.energies[a];
  const JumpRates r = jump_rates(channel, gap);
  const int d = spec.levels();
  const ComplexMatrix lower = embed(transition_op(d, a, b), particle, shape);
  const ComplexMatrix raise = embed(transition_op(d, b, a), particle, shape);
  return r.down * lindblad_term(lower, rho) + r.up * lindblad_term(raise, rho);
}

ComplexMatrix particle_dissipator(std::size_t particle, const ComplexMatrix& rho, const FridgeModel& model) {
  ComplexMatrix out = ComplexMatrix::Zero(rho.rows(), rho.cols());
  for (const auto& bath : model.particle(particle).baths) out += dissipator(bath, particle, rho, model);
  return out;
}

ComplexMatrix master_equation_rhs(const FridgeModel& model, const ComplexMatrix& rho) {
  ComplexMatrix out = Complex(0.0, -1.0) * commutator(model.hamiltonian(), rho);
  for (std::size_t i = 0; i < model.particles().size(); ++i) out += particle_dissipator(i, rho, model);
  return out;
}

FridgeModel build_model_I(const ModelIParams& p) {
  require(p.E1 > 0.0 && p.E2 > p.E1,
          "model I needs 0 < E1 < E2 so that the engine gap E3 = E2 - E1 is positive");
  require(p.g >= 0.0, "coupling g must be >= 0");
  const double e3 = p.E2 - p.E1;
  std::vector<ParticleSpec> particles{
      {{0.0, p.E1}, {BathChannel::full_reset(p.Tc, p.p1)}},
      {{0.0, p.E2}, {BathChannel::full_reset(p.Tr, p.p2)}},
      {{0.0, e3}, {BathChannel::full_reset(p.Th, p.p3)}},
  };
  std::vector<InteractionTerm> interactions;
  if (p.g != 0.0) interactions.push_back({p.g, {0, 1, 0}, {1, 0, 1}});
  return FridgeModel(std::move(particles), std::move(interactions), ModelTag::I);
}

FridgeModel build_model_II(const ModelIIParams& p) {
  require(p.E1 > 0.0 && p.E2 > 0.0, "model II needs E1 > 0 and E2 > 0");
  require(p.g >= 0.0 && p.h >= 0.0, "couplings g, h must be >= 0");
  std::vector<ParticleSpec> particles{
      {{0.0, p.E1}, {BathChannel::full_reset(p.Tc, p.p1)}},
      {{0.0, p.E2, p.E1 + p.E2}, {BathChannel::full_reset(p.Tr, p.p2)}},
      {{0.0, p.E2}, {BathChannel::full_reset(p.Th, p.p3)}},
  };
  std::vector<InteractionTerm> interactions;
  // g couples |02> <-> |11> on particles (1,2); h couples |01> <-> |10> on (2,3).
  if (p.g != 0.0) {
    for (int c = 0; c < 2; ++c) interactions.push_back({p.g, {0, 2, c}, {1, 1, c}});
  }
  if (p.h != 0.0) {
    for (int a = 0; a < 2; ++a) interactions.push_back({p.h, {a, 0, 1}, {a, 1, 0}});
  }
  return FridgeModel(std::move(particles), std::move(interactions), ModelTag::II);
}

FridgeModel build_model_III(const ModelIIIParams& p) {
  require(p.E1 > 0.0 && p.E2 > 0.0, "model III needs E1 > 0 and E2 > 0");
  require(p.g >= 0.0, "coupling g must be >= 0");
  std::vector<ParticleSpec> particles{
      {{0.0, p.E1}, {BathChannel::full_reset(p.Tc, p.p1)}},
      {{0.0, p.E2, p.E1 + p.E2},
       {BathChannel::transition_jump(0, 1, p.Th, p.p_h), BathChannel::transition_jump(0, 2, p.Tr, p.p_r)}},
  };
  std::vector<InteractionTerm> interactions;
  if (p.g != 0.0) interactions.push_back({p.g, {0, 2}, {1, 1}});
  return FridgeModel(std::move(particles), std::move(interactions), ModelTag::III);
}

}  // namespace qfridge
