#include <gtest/gtest.h>

#include "qfridge/models.hpp"
#include "qfridge/tensor.hpp"
#include "support/oracles.hpp"

using namespace qfridge;
using qfridge::testing::Gen;

namespace {

ComplexMatrix diag(std::initializer_list<double> v) {
  Eigen::VectorXd d(static_cast<Eigen::Index>(v.size()));
  Eigen::Index i = 0;
  for (double x : v) d(i++) = x;
  return d.cast<Complex>().asDiagonal();
}

}  // namespace

TEST(SpaceShape, RejectsUnsupportedDimensions) {
  EXPECT_THROW(SpaceShape({2, 4}), DimensionError);
  EXPECT_THROW(SpaceShape({1}), DimensionError);
  EXPECT_EQ(SpaceShape(std::vector<int>{}).total_dim(), 1);
}

TEST(SpaceShape, IndexRoundTripIsBigEndian) {
  const SpaceShape s({2, 3, 2});
  EXPECT_EQ(s.total_dim(), 12);
  const std::vector<int> l{1, 2, 0};
  EXPECT_EQ(s.index_of(l), 1 * 6 + 2 * 2 + 0);
  for (int i = 0; i < s.total_dim(); ++i) EXPECT_EQ(s.index_of(s.levels_of(i)), i);
  EXPECT_EQ(s.without(1), SpaceShape({2, 2}));
  const std::vector<int> bad{0, 3, 0};
  EXPECT_THROW(s.index_of(bad), DimensionError);
}

TEST(Kron, IdentityTimesIdentity) {
  EXPECT_TRUE(kron(ComplexMatrix::Identity(2, 2), ComplexMatrix::Identity(2, 2)).isApprox(ComplexMatrix::Identity(4, 4)));
}

TEST(Kron, ProjectorStructure) {
  const double a = 0.3, b = -1.7;
  EXPECT_TRUE(kron(diag({1, 0}), diag({a, b})).isApprox(diag({a, b, 0, 0})));
}

TEST(Kron, HandExpandedBlocks) {
  ComplexMatrix x(2, 2);
  x << 0, 1, 1, 0;
  const ComplexMatrix b = diag({2, 3});
  ComplexMatrix expected = ComplexMatrix::Zero(4, 4);
  expected.block(0, 2, 2, 2) = b;
  expected.block(2, 0, 2, 2) = b;
  EXPECT_TRUE(kron(x, b).isApprox(expected));
}

TEST(Embed, SingleParticleSpaceIsIdentityMap) {
  ComplexMatrix s(2, 2);
  s << 0, Complex(0, -1), Complex(0, 1), 0;
  EXPECT_TRUE(embed(s, 0, SpaceShape({2})).isApprox(s));
}

TEST(Embed, SecondQubitProjector) {
  EXPECT_TRUE(embed(diag({0, 1}), 1, SpaceShape({2, 2})).isApprox(diag({0, 1, 0, 1})));
}

TEST(Embed, IdentityStaysIdentity) {
  EXPECT_TRUE(embed(ComplexMatrix::Identity(3, 3), 1, SpaceShape({2, 3, 2})).isApprox(ComplexMatrix::Identity(12, 12)));
}

TEST(Embed, WrongSizeThrows) {
  EXPECT_THROW(embed(ComplexMatrix::Identity(2, 2), 1, SpaceShape({2, 3})), DimensionError);
  EXPECT_THROW(embed(ComplexMatrix::Identity(2, 2), 3, SpaceShape({2, 3})), DimensionError);
}

TEST(PartialTrace, ProductState) {
  const ComplexMatrix t1 = thermal_state(std::vector<double>{0, 1}, 0.8);
  const ComplexMatrix t2 = thermal_state(std::vector<double>{0, 2, 3}, 1.3);
  EXPECT_TRUE(partial_trace(kron(t1, t2), 1, SpaceShape({2, 3})).isApprox(t1, 1e-14));
  EXPECT_TRUE(partial_trace(kron(t1, t2), 0, SpaceShape({2, 3})).isApprox(t2, 1e-14));
}

TEST(PartialTrace, BellStateReducesToMaximallyMixed) {
  ComplexVector phi = ComplexVector::Zero(4);
  phi(0) = phi(3) = 1.0 / std::sqrt(2.0);
  const ComplexMatrix rho = phi * phi.adjoint();
  EXPECT_TRUE(partial_trace(rho, 0, SpaceShape({2, 2})).isApprox(ComplexMatrix::Identity(2, 2) / 2.0, 1e-15));
}

TEST(PartialTrace, MatchesIndexLoopOracle) {
  Gen gen(11);
  for (const std::vector<int>& dims : {std::vector<int>{2, 2, 2}, {2, 3, 2}, {2, 3}, {3, 3}, {3}}) {
    const SpaceShape s(dims);
    const ComplexMatrix rho = gen.density(s.total_dim());
    for (std::size_t k = 0; k < dims.size(); ++k) {
      const ComplexMatrix got = partial_trace(rho, k, s);
      const ComplexMatrix want = qfridge::testing::oracle_partial_trace(rho, k, dims);
      EXPECT_LT(max_abs(got - want), 1e-14);
      EXPECT_NEAR(std::abs(got.trace() - rho.trace()), 0.0, 1e-14);
    }
  }
}

TEST(PartialTrace, ReducedStateMatchesRepeatedTraces) {
  Gen gen(12);
  const std::vector<int> dims{2, 3, 2};
  const SpaceShape s(dims);
  const ComplexMatrix rho = gen.density(12);
  // trace out particles 2 then 0 to get particle 1
  const ComplexMatrix a = qfridge::testing::oracle_partial_trace(rho, 2, dims);
  const ComplexMatrix b = qfridge::testing::oracle_partial_trace(a, 0, {2, 3});
  EXPECT_LT(max_abs(reduced_state(rho, 1, s) - b), 1e-14);
}

TEST(PartialTrace, InsertFactorInvertsTrace) {
  Gen gen(13);
  const SpaceShape s({2, 3, 2});
  const ComplexMatrix local = gen.density(3);
  const ComplexMatrix rest = gen.density(4);
  const ComplexMatrix joint = insert_factor(local, rest, 1, s);
  EXPECT_LT(max_abs(partial_trace(joint, 1, s) - rest), 1e-14);
  EXPECT_LT(max_abs(reduced_state(joint, 1, s) - local), 1e-14);
}

TEST(PartialTrace, WrongSizeThrows) {
  EXPECT_THROW(partial_trace(ComplexMatrix::Identity(5, 5), 0, SpaceShape({2, 2})), DimensionError);
}

TEST(CheckDensity, MaximallyMixed) {
  const auto d = check_density(ComplexMatrix::Identity(2, 2) / 2.0);
  EXPECT_EQ(d.hermiticity_defect, 0.0);
  EXPECT_EQ(d.trace_defect, 0.0);
  EXPECT_NEAR(d.min_eigenvalue, 0.5, 1e-15);
}

TEST(CheckDensity, NegativeEigenvalueReported) {
  const auto d = check_density(diag({1.2, -0.2}));
  EXPECT_EQ(d.hermiticity_defect, 0.0);
  EXPECT_NEAR(d.trace_defect, 0.0, 1e-15);
  EXPECT_NEAR(d.min_eigenvalue, -0.2, 1e-15);
  EXPECT_FALSE(d.acceptable(1e-3));
}

TEST(CheckDensity, ProductOfThermalStates) {
  const ComplexMatrix rho = kron(kron(thermal_state(std::vector<double>{0, 1}, 1.0),
                                      thermal_state(std::vector<double>{0, 3}, 2.0)),
                                 thermal_state(std::vector<double>{0, 2}, 5.0));
  const auto d = check_density(rho);
  EXPECT_LT(d.hermiticity_defect, 1e-14);
  EXPECT_LT(d.trace_defect, 1e-14);
  EXPECT_GT(d.min_eigenvalue, 0.0);
}

TEST(CheckDensity, NonHermitianDetected) {
  ComplexMatrix m = ComplexMatrix::Identity(2, 2) / 2.0;
  m(0, 1) = 0.1;
  EXPECT_NEAR(check_density(m).hermiticity_defect, 0.1, 1e-15);
}

TEST(TraceDistance, OrthogonalPureStatesAreOneApart) {
  EXPECT_NEAR(trace_distance(diag({1, 0}), diag({0, 1})), 1.0, 1e-15);
  EXPECT_NEAR(trace_distance(diag({0.7, 0.3}), diag({0.7, 0.3})), 0.0, 1e-15);
}

TEST(Vec, ColumnStacking) {
  ComplexMatrix m(2, 2);
  m << 1, 2, 3, 4;
  const ComplexVector v = vec(m);
  EXPECT_EQ(v(1), Complex(3));
  EXPECT_EQ(v(2), Complex(2));
  EXPECT_TRUE(unvec(v, 2).isApprox(m));
  EXPECT_THROW(unvec(ComplexVector::Zero(5), 2), DimensionError);
}

TEST(Vec, KroneckerIdentity) {
  // vec(A X B) = (B^T (x) A) vec(X)
  Gen gen(14);
  const ComplexMatrix a = gen.matrix(3), x = gen.matrix(3), b = gen.matrix(3);
  EXPECT_LT((vec(a * x * b) - kron(b.transpose(), a) * vec(x)).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(Commutator, OfCommutingDiagonalsIsZero) {
  EXPECT_EQ(max_abs(commutator(diag({1, 2}), diag({3, 4}))), 0.0);
  ComplexMatrix x(2, 2);
  x << 0, 1, 1, 0;
  EXPECT_GT(max_abs(commutator(diag({1, 2}), x)), 0.5);
}
