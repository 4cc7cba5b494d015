#include "qfridge/validation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "qfridge/experiments.hpp"
#include "qfridge/observables.hpp"

namespace qfridge {

bool ValidationReport::passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const ValidationCheck& c) { return c.passed; });
}

std::size_t ValidationReport::failures() const {
  return static_cast<std::size_t>(
      std::count_if(checks.begin(), checks.end(), [](const ValidationCheck& c) { return !c.passed; }));
}

Liouvillian build_liouvillian_with_commutator_sign_fault(const FridgeModel& model) {
  Liouvillian l = build_liouvillian(model);
  const ComplexMatrix h = model.hamiltonian();
  const auto d = h.rows();
  const ComplexMatrix id = ComplexMatrix::Identity(d, d);
  l.matrix -= hamiltonian_superoperator(h);
  l.matrix += Complex(0.0, -1.0) * (kron(id, h) + kron(h.transpose(), id));
  return l;
}

namespace {

struct Case {
  std::string label;
  ModelTag tag;
  ParameterSet weak;        // weak-coupling cooling regime
  ParameterSet dynamic;     // moderate rates so RK4 reaches stationarity quickly
  ParameterSet equilibrium; // every bath at one temperature
};

std::vector<Case> cases() {
  return {
      {"I", ModelTag::I,
       {{"E1", 1}, {"E2", 3}, {"Tc", 1}, {"Tr", 1}, {"Th", 4}, {"p1", 1e-3}, {"p2", 1e-3}, {"p3", 1e-3}, {"g", 1e-3}},
       {{"E1", 1}, {"E2", 2.5}, {"Tc", 1}, {"Tr", 1.2}, {"Th", 3}, {"p1", 0.3}, {"p2", 0.4}, {"p3", 0.35}, {"g", 0.2}},
       {{"E1", 1}, {"E2", 3}, {"Tc", 1.5}, {"Tr", 1.5}, {"Th", 1.5}, {"p1", 1e-3}, {"p2", 2e-3}, {"p3", 3e-3}, {"g", 1e-3}}},
      {"II", ModelTag::II,
       {{"E1", 1}, {"E2", 1}, {"Tc", 1}, {"Tr", 1}, {"Th", 4}, {"p1", 1e-3}, {"p2", 1e-3}, {"p3", 1e-3}, {"g", 1e-3}, {"h", 1e-3}},
       {{"E1", 1}, {"E2", 1.5}, {"Tc", 1}, {"Tr", 1}, {"Th", 3}, {"p1", 0.3}, {"p2", 0.4}, {"p3", 0.35}, {"g", 0.15}, {"h", 0.2}},
       {{"E1", 1}, {"E2", 1}, {"Tc", 1.5}, {"Tr", 1.5}, {"Th", 1.5}, {"p1", 1e-3}, {"p2", 2e-3}, {"p3", 3e-3}, {"g", 1e-3}, {"h", 2e-3}}},
      {"III", ModelTag::III,
       {{"E1", 1}, {"E2", 1}, {"Tc", 1}, {"Tr", 1}, {"Th", 4}, {"p1", 1e-3}, {"p_h", 1e-3}, {"p_r", 1e-3}, {"g", 1e-3}},
       {{"E1", 1}, {"E2", 1.5}, {"Tc", 1}, {"Tr", 1.2}, {"Th", 3}, {"p1", 0.3}, {"p_h", 0.4}, {"p_r", 0.35}, {"g", 0.2}},
       {{"E1", 1}, {"E2", 1}, {"Tc", 1.5}, {"Tr", 1.5}, {"Th", 1.5}, {"p1", 1e-3}, {"p_h", 2e-3}, {"p_r", 3e-3}, {"g", 1e-3}}},
  };
}

ComplexMatrix random_state(int dim, std::mt19937_64& rng) {
  std::normal_distribution<double> n(0.0, 1.0);
  ComplexMatrix a(dim, dim);
  for (int i = 0; i < dim; ++i) {
    for (int j = 0; j < dim; ++j) a(i, j) = Complex(n(rng), n(rng));
  }
  ComplexMatrix rho = a * a.adjoint();
  return rho / rho.trace();
}

double min_rate(const FridgeModel& model) {
  double r = std::numeric_limits<double>::infinity();
  for (const auto& p : model.particles()) {
    for (const auto& b : p.baths) r = std::min(r, b.rate);
  }
  return r;
}

}  // namespace

ValidationReport run_validation(const ValidationOptions& options) {
  ValidationReport report;
  auto add = [&](const std::string& name, double value, double threshold, bool upper_bound = true) {
    const double t = std::max(threshold, options.tol);
    const bool ok = std::isfinite(value) && (upper_bound ? value <= t : value >= -t);
    report.checks.push_back({name, ok, value, t});
  };

  std::mt19937_64 rng(20240611);
  SteadyStateOptions solver;
  solver.tol = std::max(solver.tol, options.tol);
  solver.compute_uniqueness_gap = false;

  for (const auto& c : cases()) {
    const FridgeModel weak = build_model(c.tag, c.weak);
    add("commutator_H0_Hint[" + c.label + "]", max_abs(commutator(weak.H0(), weak.Hint())), 1e-12);

    const ComplexMatrix probe = random_state(weak.shape().total_dim(), rng);
    const Liouvillian reference = build_liouvillian(weak);
    add("liouvillian_matches_direct_rhs[" + c.label + "]",
        max_abs(reference.apply(probe) - master_equation_rhs(weak, probe)), 1e-12);

    {
      const FridgeModel eq = build_model(c.tag, c.equilibrium);
      const SteadyStateResult ss = steady_state(options.liouvillian_builder(eq), solver);
      const auto temps = temperatures(eq, ss.rho);
      const double t_bath = c.equilibrium.at("Tc");
      add("equilibrium_T1[" + c.label + "]", std::abs(temps.at(0).value - t_bath), 1e-9);
      double qmax = 0.0;
      for (double q : heat_currents(eq, ss.rho).per_particle) qmax = std::max(qmax, std::abs(q));
      add("equilibrium_heat_currents[" + c.label + "]", qmax, 1e-12);
    }

    {
      const SteadyStateResult ss = steady_state(options.liouvillian_builder(weak), solver);
      add("stationarity_residual[" + c.label + "]", max_abs(master_equation_rhs(weak, ss.rho)), 1e-10);
      add("energy_balance[" + c.label + "]", std::abs(heat_currents(weak, ss.rho).total()), 1e-9);
      add("steady_state_trace[" + c.label + "]", std::abs(ss.rho.trace() - Complex(1.0)), 1e-12);
    }

    if (options.include_dynamics) {
      const FridgeModel dyn = build_model(c.tag, c.dynamic);
      const SteadyStateResult ss = steady_state(options.liouvillian_builder(dyn), solver);
      const int d = dyn.shape().total_dim();
      EvolveOptions ev;
      ev.t_final = 50.0 / min_rate(dyn);
      ev.dt = max_stable_step(dyn);
      ev.sample_every = 64;
      const Trajectory traj = evolve(dyn, ComplexMatrix::Identity(d, d) / static_cast<double>(d), ev);
      double trace_defect = 0.0;
      double min_eig = 0.0;
      for (const auto& rho : traj.states) {
        const auto diag = check_density(rho);
        trace_defect = std::max(trace_defect, diag.trace_defect);
        min_eig = std::min(min_eig, diag.min_eigenvalue);
      }
      add("trajectory_trace[" + c.label + "]", trace_defect, 1e-9);
      add("trajectory_positivity[" + c.label + "]", min_eig, 1e-9, false);
      add("oracle_equivalence[" + c.label + "]", trace_distance(ss.rho, traj.final_state()), 1e-6);
    }
  }
  return report;
}

}  // namespace qfridge
