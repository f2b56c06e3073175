#include <gtest/gtest.h>

#include <random>

#include "isl/liealg.hpp"

using namespace isl;

namespace {

Mat random_complex(std::mt19937_64& rng, int n) {
  std::normal_distribution<double> g;
  Mat m(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m(i, j) = cd(g(rng), g(rng));
  return m;
}

Mat random_su_local(std::mt19937_64& rng, int n) {
  Mat a = random_complex(rng, n);
  Mat s = 0.5 * (a - a.adjoint());
  return s - identity(n) * (s.trace() / double(n));
}

}  // namespace

TEST(Basis, GellMannMatricesMatchTheStandardTable) {
  Mat l2 = zeros(3, 3);
  l2(0, 1) = -kI;
  l2(1, 0) = kI;
  EXPECT_LT((gell_mann(1) - l2).norm(), 1e-15);
  Mat l8 = zeros(3, 3);
  l8(0, 0) = l8(1, 1) = 1.0 / std::sqrt(3.0);
  l8(2, 2) = -2.0 / std::sqrt(3.0);
  EXPECT_LT((gell_mann(7) - l8).norm(), 1e-15);
  const auto b = basis_su(3);
  ASSERT_EQ(b.size(), 8);
  EXPECT_LT((b[1] - kI * l2).norm(), 1e-15);
}

TEST(Basis, SuIsOrthonormalAntiHermitianTraceless) {
  for (int n : {2, 3}) {
    const auto b = basis_su(n);
    ASSERT_EQ(b.size(), n * n - 1);
    for (int a = 0; a < b.size(); ++a) {
      EXPECT_LT((b[a] + b[a].adjoint()).norm(), 1e-15);
      EXPECT_LT(std::abs(b[a].trace()), 1e-15);
      for (int c = 0; c < b.size(); ++c) EXPECT_NEAR(inner(b[a], b[c]), a == c ? 1.0 : 0.0, 1e-14) << n << " " << a << " " << c;
    }
  }
  EXPECT_THROW(basis_su(4), Error);
}

TEST(Basis, Su2IsIPauli) {
  const auto b = basis_su(2);
  Mat s3 = zeros(2, 2);
  s3(0, 0) = kI;
  s3(1, 1) = -kI;
  EXPECT_LT((b[2] - s3).norm(), 1e-15);
}

TEST(Basis, Sl2rSignature) {
  const auto b = basis_sl2r();
  ASSERT_EQ(b.size(), 3);
  EXPECT_NEAR(inner(b[0], b[0]), -1.0, 1e-15);
  EXPECT_NEAR(inner(b[1], b[1]), -1.0, 1e-15);
  EXPECT_NEAR(inner(b[2], b[2]), 1.0, 1e-15);
  EXPECT_EQ(b.signature, (std::vector<double>{-1.0, -1.0, 1.0}));
}

TEST(Coordinates, RoundTrip) {
  std::mt19937_64 rng(3);
  for (int n : {2, 3}) {
    const auto b = basis_su(n);
    const Mat m = random_su_local(rng, n);
    EXPECT_LT((reconstruct(coordinates(m, b), b).matrix() - m).norm(), 1e-13);
  }
  const auto s = basis_sl2r();
  Mat r(2, 2);
  r << 0.3, 1.2, -0.7, -0.3;
  EXPECT_LT((reconstruct(coordinates(r, s), s).matrix() - r).norm(), 1e-14);
}

TEST(Coordinates, SizeMismatchIsATypeError) {
  try {
    coordinates(identity(2), basis_su(3));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::type);
  }
}

TEST(Bracket, TagsJoin) {
  EXPECT_EQ(join(Algebra::su, Algebra::su), Algebra::su);
  EXPECT_EQ(join(Algebra::su, Algebra::u), Algebra::u);
  EXPECT_EQ(join(Algebra::u, Algebra::gl), Algebra::gl);
  EXPECT_THROW(join(Algebra::su, Algebra::sl2r), Error);
}

TEST(Bracket, JacobiAndClosure) {
  std::mt19937_64 rng(5);
  const LieElement a(random_su_local(rng, 3), Algebra::su), b(random_su_local(rng, 3), Algebra::su),
      c(random_su_local(rng, 3), Algebra::su);
  const Mat j = bracket(a, bracket(b, c)).matrix() + bracket(b, bracket(c, a)).matrix() + bracket(c, bracket(a, b)).matrix();
  EXPECT_LT(j.norm(), 1e-13);
  EXPECT_LT(bracket(a, b).residual(), 1e-13);
}

TEST(Membership, DetectsHermitianAndTrace) {
  const Mat h = gell_mann(0);
  EXPECT_GT(membership_residual(h, Algebra::su), 1.0);
  EXPECT_LT(membership_residual(Mat(kI * h), Algebra::su), 1e-15);
  EXPECT_GT(membership_residual(Mat(kI * identity(3)), Algebra::su), 1.0);
  EXPECT_LT(membership_residual(Mat(kI * identity(3)), Algebra::u), 1e-15);
  EXPECT_THROW(LieElement::checked(h, Algebra::su), Error);
}

TEST(Group, AdjointPreservesInner) {
  std::mt19937_64 rng(11);
  const Mat u = nearest_unitary(random_complex(rng, 3));
  const GroupElement g(u, Group::U);
  const LieElement a(random_su_local(rng, 3), Algebra::su), b(random_su_local(rng, 3), Algebra::su);
  EXPECT_NEAR(inner(adjoint(g, a), adjoint(g, b)), inner(a, b), 1e-13);
  EXPECT_LT((adjoint(g, a).matrix() - u * a.matrix() * u.adjoint()).norm(), 1e-13);
  EXPECT_LT((g.inverse().matrix() * u - identity(3)).norm(), 1e-13);
}

TEST(Projection, NearestUnitaryIsPolarFactor) {
  std::mt19937_64 rng(13);
  const Mat u = nearest_unitary(random_complex(rng, 3));
  EXPECT_LT((u * u.adjoint() - identity(3)).norm(), 1e-13);
  // The polar factor of a positive multiple of a unitary is the unitary itself.
  EXPECT_LT((nearest_unitary(Mat(2.5 * u)) - u).norm(), 1e-13);
}

TEST(Projection, DeterminantNormalization) {
  std::mt19937_64 rng(17);
  const Mat u = nearest_unitary(random_complex(rng, 3));
  const Mat s = det_normalize(u, 1.0);
  EXPECT_LT(std::abs(s.determinant() - 1.0), 1e-13);
  EXPECT_LT(membership_residual(s, Group::SU), 1e-12);
  Mat r(2, 2);
  r << 2.0, 1.0, 0.5, 1.5;
  const Mat p = project_to_group(r, Group::SL2R, 1.0);
  EXPECT_NEAR(std::abs(p.determinant() - 1.0), 0.0, 1e-13);
  EXPECT_LT(membership_residual(p, Group::SL2R), 1e-13);
}
