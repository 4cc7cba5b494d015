#include "qfridge/tensor.hpp"

#include <algorithm>
#include <cmath>

namespace qfridge {

SpaceShape::SpaceShape(std::vector<int> dims) : dims_(std::move(dims)) {
  for (int d : dims_) {
    if (d != 2 && d != 3) {
      throw DimensionError("particle dimension must be 2 or 3, got " + std::to_string(d));
    }
    total_ *= d;
  }
}

int SpaceShape::index_of(std::span<const int> levels) const {
  if (levels.size() != dims_.size()) {
    throw DimensionError("level configuration has " + std::to_string(levels.size()) +
                         " entries for a " + std::to_string(dims_.size()) + "-particle space");
  }
  int index = 0;
  for (std::size_t i = 0; i < dims_.size(); ++i) {
    if (levels[i] < 0 || levels[i] >= dims_[i]) {
      throw DimensionError("level " + std::to_string(levels[i]) + " out of range for particle " +
                           std::to_string(i));
    }
    index = index * dims_[i] + levels[i];
  }
  return index;
}

std::vector<int> SpaceShape::levels_of(int index) const {
  if (index < 0 || index >= total_) throw DimensionError("joint index out of range");
  std::vector<int> levels(dims_.size());
  for (std::size_t i = dims_.size(); i-- > 0;) {
    levels[i] = index % dims_[i];
    index /= dims_[i];
  }
  return levels;
}

SpaceShape SpaceShape::without(std::size_t particle) const {
  if (particle >= dims_.size()) throw DimensionError("particle index out of range");
  std::vector<int> rest;
  rest.reserve(dims_.size() - 1);
  for (std::size_t i = 0; i < dims_.size(); ++i) {
    if (i != particle) rest.push_back(dims_[i]);
  }
  return SpaceShape(std::move(rest));
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

namespace {

// Splits a joint index into (outer, level, inner) around `particle`:
// index = (outer * d + level) * inner_dim + inner.
struct Stride {
  int outer_dim = 1;
  int local_dim = 1;
  int inner_dim = 1;
};

Stride stride_around(std::size_t particle, const SpaceShape& shape) {
  if (particle >= shape.particles()) {
    throw DimensionError("particle index " + std::to_string(particle) + " out of range for a " +
                         std::to_string(shape.particles()) + "-particle space");
  }
  Stride s;
  for (std::size_t i = 0; i < particle; ++i) s.outer_dim *= shape.dim(i);
  s.local_dim = shape.dim(particle);
  for (std::size_t i = particle + 1; i < shape.particles(); ++i) s.inner_dim *= shape.dim(i);
  return s;
}

void require_square(const ComplexMatrix& m, int dim, const char* what) {
  if (m.rows() != dim || m.cols() != dim) {
    throw DimensionError(std::string(what) + " must be " + std::to_string(dim) + "x" +
                         std::to_string(dim) + ", got " + std::to_string(m.rows()) + "x" +
                         std::to_string(m.cols()));
  }
}

}  // namespace

ComplexMatrix embed(const ComplexMatrix& op, std::size_t particle, const SpaceShape& shape) {
  const Stride s = stride_around(particle, shape);
  require_square(op, s.local_dim, "embedded operator");
  const ComplexMatrix outer = ComplexMatrix::Identity(s.outer_dim, s.outer_dim);
  const ComplexMatrix inner = ComplexMatrix::Identity(s.inner_dim, s.inner_dim);
  return kron(kron(outer, op), inner);
}

ComplexMatrix partial_trace(const ComplexMatrix& rho, std::size_t particle, const SpaceShape& shape) {
  const Stride s = stride_around(particle, shape);
  require_square(rho, shape.total_dim(), "density matrix");
  const int rest = s.outer_dim * s.inner_dim;
  ComplexMatrix out = ComplexMatrix::Zero(rest, rest);
  for (int o1 = 0; o1 < s.outer_dim; ++o1) {
    for (int o2 = 0; o2 < s.outer_dim; ++o2) {
      for (int k = 0; k < s.local_dim; ++k) {
        const int r0 = (o1 * s.local_dim + k) * s.inner_dim;
        const int c0 = (o2 * s.local_dim + k) * s.inner_dim;
        out.block(o1 * s.inner_dim, o2 * s.inner_dim, s.inner_dim, s.inner_dim) +=
            rho.block(r0, c0, s.inner_dim, s.inner_dim);
      }
    }
  }
  return out;
}

ComplexMatrix reduced_state(const ComplexMatrix& rho, std::size_t particle, const SpaceShape& shape) {
  const Stride s = stride_around(particle, shape);
  require_square(rho, shape.total_dim(), "density matrix");
  ComplexMatrix out = ComplexMatrix::Zero(s.local_dim, s.local_dim);
  for (int o = 0; o < s.outer_dim; ++o) {
    for (int a = 0; a < s.local_dim; ++a) {
      for (int b = 0; b < s.local_dim; ++b) {
        const int r0 = (o * s.local_dim + a) * s.inner_dim;
        const int c0 = (o * s.local_dim + b) * s.inner_dim;
        for (int in = 0; in < s.inner_dim; ++in) out(a, b) += rho(r0 + in, c0 + in);
      }
    }
  }
  return out;
}

ComplexMatrix insert_factor(const ComplexMatrix& local, const ComplexMatrix& rest,
                            std::size_t particle, const SpaceShape& shape) {
  const Stride s = stride_around(particle, shape);
  require_square(local, s.local_dim, "local factor");
  require_square(rest, s.outer_dim * s.inner_dim, "remaining factor");
  const int n = shape.total_dim();
  ComplexMatrix out(n, n);
  for (int o1 = 0; o1 < s.outer_dim; ++o1) {
    for (int o2 = 0; o2 < s.outer_dim; ++o2) {
      const auto block = rest.block(o1 * s.inner_dim, o2 * s.inner_dim, s.inner_dim, s.inner_dim);
      for (int a = 0; a < s.local_dim; ++a) {
        for (int b = 0; b < s.local_dim; ++b) {
          out.block((o1 * s.local_dim + a) * s.inner_dim, (o2 * s.local_dim + b) * s.inner_dim,
                    s.inner_dim, s.inner_dim) = local(a, b) * block;
        }
      }
    }
  }
  return out;
}

DensityDiagnostics check_density(const ComplexMatrix& rho) {
  require_square(rho, static_cast<int>(rho.rows()), "density matrix");
  DensityDiagnostics d;
  d.hermiticity_defect = max_abs(rho - rho.adjoint());
  d.trace_defect = std::abs(rho.trace() - Complex(1.0, 0.0));
  const ComplexMatrix herm = 0.5 * (rho + rho.adjoint());
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> eig(herm, Eigen::EigenvaluesOnly);
  d.min_eigenvalue = eig.eigenvalues().minCoeff();
  return d;
}

double trace_distance(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw DimensionError("trace_distance: shape mismatch");
  const ComplexMatrix diff = a - b;
  const ComplexMatrix herm = 0.5 * (diff + diff.adjoint());
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> eig(herm, Eigen::EigenvaluesOnly);
  return 0.5 * eig.eigenvalues().cwiseAbs().sum();
}

ComplexMatrix commutator(const ComplexMatrix& a, const ComplexMatrix& b) { return a * b - b * a; }

double max_abs(const ComplexMatrix& m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

ComplexVector vec(const ComplexMatrix& m) {
  // Eigen storage is column-major, so the raw layout is already column-stacked.
  return Eigen::Map<const ComplexVector>(m.data(), m.size());
}

ComplexMatrix unvec(const ComplexVector& v, int dim) {
  if (v.size() != static_cast<Eigen::Index>(dim) * dim) throw DimensionError("unvec: length is not dim^2");
  return Eigen::Map<const ComplexMatrix>(v.data(), dim, dim);
}

bool all_finite(const ComplexMatrix& m) { return m.allFinite(); }

}  // namespace qfridge
