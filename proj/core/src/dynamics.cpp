#include "qfridge/dynamics.hpp"

#include <cmath>
#include <limits>
#include <sstream>

namespace qfridge {

ComplexMatrix Liouvillian::apply(const ComplexMatrix& rho) const {
  return unvec(matrix * vec(rho), dim);
}

ComplexMatrix superoperator_of(const std::function<ComplexMatrix(const ComplexMatrix&)>& map, int dim) {
  const int n = dim * dim;
  ComplexMatrix super(n, n);
  ComplexMatrix basis = ComplexMatrix::Zero(dim, dim);
  for (int c = 0; c < dim; ++c) {
    for (int r = 0; r < dim; ++r) {
      basis(r, c) = 1.0;
      super.col(r + c * dim) = vec(map(basis));
      basis(r, c) = 0.0;
    }
  }
  return super;
}

ComplexMatrix hamiltonian_superoperator(const ComplexMatrix& h) {
  const auto d = h.rows();
  const ComplexMatrix id = ComplexMatrix::Identity(d, d);
  return Complex(0.0, -1.0) * (kron(id, h) - kron(h.transpose(), id));
}

namespace {

// vec(J rho J^dag - 1/2 {J^dag J, rho}) = (conj(J) (x) J - 1/2 I (x) J^dag J - 1/2 (J^dag J)^T (x) I) vec(rho)
ComplexMatrix lindblad_superoperator(const ComplexMatrix& jump) {
  const auto d = jump.rows();
  const ComplexMatrix id = ComplexMatrix::Identity(d, d);
  const ComplexMatrix jdj = jump.adjoint() * jump;
  return kron(jump.conjugate(), jump) - 0.5 * kron(id, jdj) - 0.5 * kron(jdj.transpose(), id);
}

ComplexMatrix channel_superoperator(const BathChannel& channel, std::size_t particle, const FridgeModel& model) {
  const int d = model.shape().total_dim();
  if (channel.rate == 0.0) return ComplexMatrix::Zero(d * d, d * d);
  if (channel.kind == BathKind::FullReset) {
    return superoperator_of([&](const ComplexMatrix& rho) { return dissipator(channel, particle, rho, model); }, d);
  }
  const auto& spec = model.particle(particle);
  const auto [a, b] = channel.transition.value();
  const JumpRates rates = jump_rates(channel, spec.energies[b] - spec.energies[a]);
  ComplexMatrix lower = ComplexMatrix::Zero(spec.levels(), spec.levels());
  lower(a, b) = 1.0;
  const ComplexMatrix down = embed(lower, particle, model.shape());
  const ComplexMatrix up = down.adjoint();
  return rates.down * lindblad_superoperator(down) + rates.up * lindblad_superoperator(up);
}

}  // namespace

Liouvillian build_liouvillian(const FridgeModel& model) {
  Liouvillian l;
  l.dim = model.shape().total_dim();
  l.matrix = hamiltonian_superoperator(model.hamiltonian());
  for (std::size_t i = 0; i < model.particles().size(); ++i) {
    for (const auto& bath : model.particle(i).baths) l.matrix += channel_superoperator(bath, i, model);
  }
  return l;
}

SteadyStateResult steady_state(const Liouvillian& liouvillian, const SteadyStateOptions& options) {
  const int d = liouvillian.dim;
  const int n = d * d;
  ComplexMatrix stacked(n + 1, n);
  stacked.topRows(n) = liouvillian.matrix;
  stacked.row(n).setZero();
  for (int k = 0; k < d; ++k) stacked(n, k + k * d) = 1.0;
  ComplexVector rhs = ComplexVector::Zero(n + 1);
  rhs(n) = 1.0;

  Eigen::BDCSVD<ComplexMatrix> svd(stacked, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const ComplexVector solution = svd.solve(rhs);

  SteadyStateResult result;
  ComplexMatrix rho = unvec(solution, d);
  rho = 0.5 * (rho + rho.adjoint()).eval();
  rho /= rho.trace();
  result.rho = rho;
  result.residual = max_abs(liouvillian.apply(rho));

  result.uniqueness_gap = std::numeric_limits<double>::quiet_NaN();
  if (options.compute_uniqueness_gap) {
    Eigen::BDCSVD<ComplexMatrix> values(liouvillian.matrix);
    const auto& s = values.singularValues();  // descending
    result.uniqueness_gap = s.size() >= 2 ? s(s.size() - 2) : 0.0;
    if (result.uniqueness_gap < options.uniqueness_threshold) {
      std::ostringstream os;
      os << "second-smallest singular value " << result.uniqueness_gap
         << " is below " << options.uniqueness_threshold << "; the stationary state may not be unique";
      result.warnings.push_back(os.str());
    }
  }

  const DensityDiagnostics diag = check_density(rho);
  const bool valid_state = all_finite(rho) && diag.min_eigenvalue >= -std::max(options.tol, 1e-9);
  result.converged = std::isfinite(result.residual) && result.residual <= options.tol && valid_state;
  if (!valid_state) result.warnings.push_back("solution is not a valid density matrix");
  if (result.residual > options.tol) {
    std::ostringstream os;
    os << "stationarity residual " << result.residual << " exceeds tolerance " << options.tol;
    result.warnings.push_back(os.str());
  }
  return result;
}

SteadyStateResult steady_state(const FridgeModel& model, const SteadyStateOptions& options) {
  if (!model.has_dissipation()) {
    throw NonUniqueStationaryState("every bath rate is zero; the stationary state is not unique");
  }
  return steady_state(build_liouvillian(model), options);
}

double max_stable_step(const FridgeModel& model) {
  Eigen::JacobiSVD<ComplexMatrix> svd(model.hamiltonian());
  double scale = svd.singularValues().size() ? svd.singularValues()(0) : 0.0;
  for (const auto& p : model.particles()) {
    for (const auto& b : p.baths) scale += b.rate;
  }
  return scale > 0.0 ? 0.1 / scale : std::numeric_limits<double>::infinity();
}

Trajectory evolve(const FridgeModel& model, const ComplexMatrix& rho0, const EvolveOptions& options) {
  const int d = model.shape().total_dim();
  if (rho0.rows() != d || rho0.cols() != d) throw DimensionError("evolve: initial state has wrong dimension");
  if (!(options.t_final >= 0.0) || !(options.dt > 0.0)) {
    throw InvalidParameter("evolve: need t_final >= 0 and dt > 0");
  }
  if (options.sample_every < 1) throw InvalidParameter("evolve: sample_every must be >= 1");

  Trajectory traj;
  double dt = options.dt;
  if (options.enforce_step_bound) {
    const double bound = max_stable_step(model);
    if (dt > bound) {
      std::ostringstream os;
      os << "step " << dt << " exceeds bound " << bound << "; halving";
      while (dt > bound) dt *= 0.5;
      os << " to " << dt;
      traj.warnings.push_back(os.str());
    }
  }
  const auto steps = static_cast<std::size_t>(std::ceil(options.t_final / dt - 1e-9));
  if (steps > 0) dt = options.t_final / static_cast<double>(steps);
  traj.dt_used = dt;
  traj.steps = steps;

  ComplexMatrix rho = rho0;
  traj.times.push_back(0.0);
  traj.states.push_back(rho);
  for (std::size_t s = 1; s <= steps; ++s) {
    const ComplexMatrix k1 = master_equation_rhs(model, rho);
    const ComplexMatrix k2 = master_equation_rhs(model, rho + 0.5 * dt * k1);
    const ComplexMatrix k3 = master_equation_rhs(model, rho + 0.5 * dt * k2);
    const ComplexMatrix k4 = master_equation_rhs(model, rho + dt * k3);
    rho += (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    if (s % static_cast<std::size_t>(options.sample_every) == 0 || s == steps) {
      traj.times.push_back(static_cast<double>(s) * dt);
      traj.states.push_back(rho);
    }
  }
  traj.final_defects = check_density(rho);
  return traj;
}

}  // namespace qfridge
