#pragma once

// Generator of the master equation as a superoperator on column-stacked
// density matrices, the stationary-state solver, and a fixed-step RK4
// integrator used as an independent check on the solver.

#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include "qfridge/models.hpp"
#include "qfridge/tensor.hpp"

namespace qfridge {

/// No bath is attached (all rates zero): every diagonal state is stationary.
class NonUniqueStationaryState : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Liouvillian {
  int dim = 0;           // Hilbert-space dimension
  ComplexMatrix matrix;  // dim^2 x dim^2, vec(drho/dt) = matrix * vec(rho)

  ComplexMatrix apply(const ComplexMatrix& rho) const;
};

/// Tabulates an arbitrary linear map on dim x dim matrices as a superoperator.
ComplexMatrix superoperator_of(const std::function<ComplexMatrix(const ComplexMatrix&)>& map, int dim);

/// Hamiltonian part -i(I (x) H - H^T (x) I) in the column-stacking convention.
ComplexMatrix hamiltonian_superoperator(const ComplexMatrix& h);

Liouvillian build_liouvillian(const FridgeModel& model);

struct SteadyStateOptions {
  double tol = 1e-10;                    // stationarity tolerance, max-abs entry of L(rho)
  double uniqueness_threshold = 1e-8;    // warn below this second-smallest singular value
  bool compute_uniqueness_gap = true;
};

struct SteadyStateResult {
  ComplexMatrix rho;
  double residual = 0.0;        // max-abs entry of L(rho)
  double uniqueness_gap = 0.0;  // second-smallest singular value of L (NaN when not computed)
  bool converged = false;       // residual <= tol and rho is a valid state
  std::vector<std::string> warnings;
};

/// Solves L vec(rho) = 0 with tr(rho) = 1 appended as an extra row, in the
/// least-squares sense.
SteadyStateResult steady_state(const Liouvillian& liouvillian, const SteadyStateOptions& options = {});

/// Throws NonUniqueStationaryState when the model has no dissipation at all.
SteadyStateResult steady_state(const FridgeModel& model, const SteadyStateOptions& options = {});

struct EvolveOptions {
  double t_final = 1.0;
  double dt = 0.01;
  int sample_every = 1;   // record every n-th step (the final state is always recorded)
  bool enforce_step_bound = true;
};

struct Trajectory {
  std::vector<double> times;
  std::vector<ComplexMatrix> states;
  double dt_used = 0.0;
  std::size_t steps = 0;
  DensityDiagnostics final_defects;
  std::vector<std::string> warnings;

  const ComplexMatrix& final_state() const { return states.back(); }
};

/// Largest step the integrator accepts: 0.1 / (||H0 + Hint||_2 + sum of rates).
double max_stable_step(const FridgeModel& model);

/// Classical fourth-order Runge-Kutta on rho with the right-hand side evaluated
/// directly from commutators and dissipators. Steps above max_stable_step are
/// halved until they fit, with a warning.
Trajectory evolve(const FridgeModel& model, const ComplexMatrix& rho0, const EvolveOptions& options);

}  // namespace qfridge
