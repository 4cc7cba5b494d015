// Seeded randomized invariants. Each property runs over a fixed seed range so
// failures are reproducible: the failing seed is printed.

#include <gtest/gtest.h>

#include "qfridge/experiments.hpp"
#include "support/oracles.hpp"
#include "support/params.hpp"

using namespace qfridge;
using namespace qfridge::testing;

namespace {

constexpr int kCases = 25;

FridgeModel random_custom(Gen& gen) {
  const auto dims = gen.dims(3);
  std::vector<ParticleSpec> ps;
  for (int d : dims) {
    ParticleSpec p;
    p.energies = {0.0};
    for (int n = 1; n < d; ++n) p.energies.push_back(p.energies.back() + gen.uniform(0.3, 2.0));
    if (d == 2 || gen.integer(0, 1)) {
      p.baths.push_back(BathChannel::full_reset(gen.uniform(0.3, 5.0), gen.uniform(0.01, 0.5)));
    } else {
      p.baths.push_back(BathChannel::transition_jump(0, 1, gen.uniform(0.3, 5.0), gen.uniform(0.01, 0.5)));
      p.baths.push_back(BathChannel::transition_jump(gen.integer(0, 1), 2, gen.uniform(0.3, 5.0), gen.uniform(0.01, 0.5)));
    }
    ps.push_back(p);
  }
  // arbitrary Hermitian interaction between random configurations
  const SpaceShape shape(dims);
  std::vector<InteractionTerm> terms;
  for (int k = 0; k < 2 && shape.total_dim() > 1; ++k) {
    const int a = gen.integer(0, shape.total_dim() - 1);
    const int b = gen.integer(0, shape.total_dim() - 1);
    if (a != b) terms.push_back({gen.uniform(-0.3, 0.3), shape.levels_of(a), shape.levels_of(b)});
  }
  return FridgeModel(ps, terms, ModelTag::Custom);
}

}  // namespace

TEST(Property, PartialTraceMatchesOracleOnRandomShapes) {
  for (int seed = 0; seed < kCases; ++seed) {
    Gen gen(1000 + seed);
    const auto dims = gen.dims(3);
    const SpaceShape s(dims);
    const ComplexMatrix rho = gen.matrix(s.total_dim());
    for (std::size_t k = 0; k < dims.size(); ++k) {
      ASSERT_LT(max_abs(partial_trace(rho, k, s) - oracle_partial_trace(rho, k, dims)), 1e-13) << "seed " << seed;
    }
  }
}

TEST(Property, EmbedActsOnOneFactorOnly) {
  for (int seed = 0; seed < kCases; ++seed) {
    Gen gen(2000 + seed);
    const auto dims = gen.dims(3);
    const SpaceShape s(dims);
    const std::size_t k = static_cast<std::size_t>(gen.integer(0, static_cast<int>(dims.size()) - 1));
    const ComplexMatrix op = gen.matrix(dims[k]);
    const ComplexMatrix local = gen.density(dims[k]);
    const ComplexMatrix rest = gen.density(s.without(k).total_dim());
    // (op on k) acting on local (x) rest gives (op * local) (x) rest
    const ComplexMatrix lhs = embed(op, k, s) * insert_factor(local, rest, k, s);
    const ComplexMatrix rhs = insert_factor(op * local, rest, k, s);
    ASSERT_LT(max_abs(lhs - rhs), 1e-13) << "seed " << seed;
  }
}

TEST(Property, GeneratorMatchesOracleOnCustomModels) {
  for (int seed = 0; seed < kCases; ++seed) {
    Gen gen(3000 + seed);
    const FridgeModel m = random_custom(gen);
    const ComplexMatrix rho = gen.density(m.shape().total_dim());
    ASSERT_LT(max_abs(build_liouvillian(m).apply(rho) - oracle_rhs(m, rho)), 1e-12) << "seed " << seed;
    ASSERT_LT(max_abs(master_equation_rhs(m, rho) - oracle_rhs(m, rho)), 1e-12) << "seed " << seed;
  }
}

TEST(Property, GeneratorPreservesTraceAndHermiticity) {
  for (int seed = 0; seed < kCases; ++seed) {
    Gen gen(4000 + seed);
    const ModelTag tag = builtin_tags()[seed % 3];
    const FridgeModel m = build_model(tag, fast_params(tag, gen));
    const Liouvillian l = build_liouvillian(m);
    const ComplexMatrix x = gen.matrix(l.dim);
    ASSERT_LT(std::abs(l.apply(x).trace()), 1e-13) << "seed " << seed;
    ASSERT_LT(max_abs(l.apply(x.adjoint()) - l.apply(x).adjoint()), 1e-13) << "seed " << seed;
  }
}

TEST(Property, SteadyStatesAreValidAndBalanced) {
  for (int seed = 0; seed < kCases; ++seed) {
    Gen gen(5000 + seed);
    const ModelTag tag = builtin_tags()[seed % 3];
    const FridgeModel m = build_model(tag, weak_params(tag, gen));
    const auto ss = steady_state(m);
    ASSERT_TRUE(ss.converged) << "seed " << seed;
    ASSERT_TRUE(check_density(ss.rho).acceptable(1e-12)) << "seed " << seed;
    ASSERT_LT(std::abs(heat_currents(m, ss.rho).total()), 1e-12) << "seed " << seed;
  }
}

TEST(Property, EquilibriumIsAFixedPointForEveryModel) {
  for (int seed = 0; seed < kCases; ++seed) {
    Gen gen(6000 + seed);
    const ModelTag tag = builtin_tags()[seed % 3];
    const double t = gen.uniform(0.3, 5.0);
    const FridgeModel m = build_model(tag, equilibrium(weak_params(tag, gen), t));
    const auto ss = steady_state(m);
    const auto temps = temperatures(m, ss.rho);
    ASSERT_NEAR(temps[0].value, t, 1e-9) << "seed " << seed;
    // sparsely populated upper levels carry the solver's relative error
    for (const auto& r : temps) ASSERT_NEAR(r.value, t, 1e-7 * t) << "seed " << seed;
    for (double q : heat_currents(m, ss.rho).per_particle) ASSERT_LT(std::abs(q), 1e-12) << "seed " << seed;
  }
}

TEST(Property, ColdQubitSignLaw) {
  for (int seed = 0; seed < kCases; ++seed) {
    Gen gen(7000 + seed);
    const ModelTag tag = builtin_tags()[seed % 3];
    const FridgeModel m = build_model(tag, weak_params(tag, gen));
    const auto rho = steady_state(m).rho;
    const double t1 = temperatures(m, rho)[0].value;
    const double q1 = heat_currents(m, rho).per_particle[0];
    const double tc = m.particle(0).baths[0].temperature;
    if (std::abs(t1 - tc) < 1e-9 * tc) continue;
    ASSERT_EQ(q1 > 0, t1 < tc) << "seed " << seed;
  }
}

TEST(Property, RungeKuttaKeepsStatesPhysical) {
  for (int seed = 0; seed < 6; ++seed) {
    Gen gen(8000 + seed);
    const FridgeModel m = random_custom(gen);
    EvolveOptions o;
    o.t_final = 20;
    o.dt = max_stable_step(m);
    o.sample_every = 25;
    const Trajectory traj = evolve(m, gen.density(m.shape().total_dim()), o);
    for (const auto& s : traj.states) ASSERT_TRUE(check_density(s).acceptable(1e-9)) << "seed " << seed;
  }
}

TEST(Property, ThermalStateTemperatureRoundTrip) {
  for (int seed = 0; seed < kCases; ++seed) {
    Gen gen(9000 + seed);
    ParticleSpec p{{0.0, gen.uniform(0.2, 3.0)}, {}};
    if (gen.integer(0, 1)) p.energies.push_back(p.energies.back() + gen.uniform(0.2, 3.0));
    const double t = gen.log_uniform(0.1, 20.0);
    const auto r = temperature_of(thermal_state(p, t), p);
    ASSERT_NEAR(r.value, t, 1e-10 * t) << "seed " << seed;
  }
}
