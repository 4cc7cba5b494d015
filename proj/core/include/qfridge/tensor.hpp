#pragma once

// Dense complex linear algebra on tensor-product Hilbert spaces.
//
// Subsystems are ordered big-endian: particle 0 is the slowest-varying
// index, so the joint basis index of |c0 c1 ... c(n-1)> is
//   sum_i c_i * prod_{j>i} dims[j]
// which matches the usual ket notation |010>.

#include <complex>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace qfridge {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;

/// Raised when operator or state dimensions do not fit the space they are used on.
class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Per-particle dimensions of a joint Hilbert space.
class SpaceShape {
 public:
  SpaceShape() = default;
  explicit SpaceShape(std::vector<int> dims);

  const std::vector<int>& dims() const noexcept { return dims_; }
  int dim(std::size_t particle) const { return dims_.at(particle); }
  std::size_t particles() const noexcept { return dims_.size(); }
  int total_dim() const noexcept { return total_; }

  /// Joint index of a per-particle level configuration.
  int index_of(std::span<const int> levels) const;
  /// Per-particle levels of a joint index.
  std::vector<int> levels_of(int index) const;

  /// Shape with one particle removed.
  SpaceShape without(std::size_t particle) const;

  bool operator==(const SpaceShape&) const = default;

 private:
  std::vector<int> dims_;
  int total_ = 1;
};

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);

/// Lifts a single-particle operator to the joint space (identity elsewhere).
ComplexMatrix embed(const ComplexMatrix& op, std::size_t particle, const SpaceShape& shape);

/// Traces out `particle`. The result lives on shape.without(particle).
ComplexMatrix partial_trace(const ComplexMatrix& rho, std::size_t particle, const SpaceShape& shape);

/// Reduced state of a single particle (every other particle traced out).
ComplexMatrix reduced_state(const ComplexMatrix& rho, std::size_t particle, const SpaceShape& shape);

/// Inverse of partial_trace's factorisation: places `local` in slot `particle`
/// and `rest` (living on shape.without(particle)) everywhere else.
ComplexMatrix insert_factor(const ComplexMatrix& local, const ComplexMatrix& rest,
                            std::size_t particle, const SpaceShape& shape);

struct DensityDiagnostics {
  double hermiticity_defect = 0.0;  // max |rho - rho^dagger| entry
  double trace_defect = 0.0;        // |tr rho - 1|
  double min_eigenvalue = 0.0;      // of the Hermitian part

  bool acceptable(double tol) const {
    return hermiticity_defect <= tol && trace_defect <= tol && min_eigenvalue >= -tol;
  }
};

DensityDiagnostics check_density(const ComplexMatrix& rho);

/// 1/2 ||a - b||_1 for Hermitian arguments.
double trace_distance(const ComplexMatrix& a, const ComplexMatrix& b);

ComplexMatrix commutator(const ComplexMatrix& a, const ComplexMatrix& b);

/// Largest absolute entry.
double max_abs(const ComplexMatrix& m);

/// Column-stacking vectorisation: element (r, c) maps to r + c * rows.
ComplexVector vec(const ComplexMatrix& m);
ComplexMatrix unvec(const ComplexVector& v, int dim);

bool all_finite(const ComplexMatrix& m);

}  // namespace qfridge
