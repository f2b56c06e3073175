#include <gtest/gtest.h>

#include <atomic>
#include <cmath>

#include "isl/chart.hpp"
#include "isl/jet.hpp"
#include "isl/parallel.hpp"

using namespace isl;

TEST(Jet, ExponentialCoefficients) {
  const double x0 = 0.3, y0 = -0.2;
  const int K = 6;
  const Jet e = exp(jet_x(x0, K) + 2.0 * jet_y(y0, K));
  const double base = std::exp(x0 + 2.0 * y0);
  for (int a = 0; a <= K; ++a)
    for (int b = 0; a + b <= K; ++b)
      EXPECT_NEAR(std::abs(e(a, b) - base * std::pow(2.0, b) / (std::tgamma(a + 1.0) * std::tgamma(b + 1.0))), 0.0, 1e-14);
}

TEST(Jet, ProductAndReciprocal) {
  const Jet x = jet_x(0.5, 5), y = jet_y(-1.0, 5);
  const Jet p = x * y;
  EXPECT_NEAR(std::abs(p.value() - (-0.5)), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(p(1, 1) - 1.0), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(p(2, 0)), 0.0, 1e-15);
  // 1/(1 + x) at x = 0.5: d^k/dx^k = (-1)^k k! / 1.5^(k+1), coefficient (-1)^k / 1.5^(k+1).
  const Jet r = reciprocal(jet_x(0.5, 5) + cd(1.0));
  for (int k = 0; k <= 5; ++k) EXPECT_NEAR(r(k, 0).real(), std::pow(-1.0, k) / std::pow(1.5, k + 1), 1e-14);
}

TEST(Jet, ElementaryFunctions) {
  const Jet s = jet_x(0.7, 4) + 0.3 * jet_y(0.2, 4);
  const double v = 0.7 + 0.06;
  EXPECT_NEAR(sqrt(s).value().real(), std::sqrt(v), 1e-15);
  EXPECT_NEAR(sqrt(s).derivative(1, 0).real(), 0.5 / std::sqrt(v), 1e-14);
  EXPECT_NEAR(log(s).derivative(2, 0).real(), -1.0 / (v * v), 1e-13);
  EXPECT_NEAR(sin(s).derivative(0, 3).real(), -0.027 * std::cos(v), 1e-14);
  EXPECT_NEAR(pow(s, 1.5).derivative(1, 1).real(), 0.3 * 0.75 / std::sqrt(v), 1e-13);
}

TEST(Jet, MatrixInverse) {
  Mat a(2, 2);
  a << 2.0, 1.0, 0.0, 1.0;
  MatJet m = jet_constant(a, 3) + jet_x(0.0, 3) * jet_constant(Mat(identity(2)), 3);
  const MatJet prod = inverse(m) * m;
  for (int a2 = 0; a2 <= 3; ++a2)
    for (int b = 0; a2 + b <= 3; ++b)
      EXPECT_LT((prod(a2, b) - (a2 == 0 && b == 0 ? identity(2) : zeros(2, 2))).norm(), 1e-13);
}

TEST(Jet, ComplexDerivatives) {
  // z = x + i y is holomorphic, zbar is antiholomorphic.
  const MatJet z = as_matrix(jet_x(0.4, 3) + kI * jet_y(0.1, 3));
  const MatJet zb = as_matrix(jet_x(0.4, 3) - kI * jet_y(0.1, 3));
  EXPECT_NEAR(std::abs(d_xi(z).value()(0, 0) - 1.0), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(d_xibar(z).value()(0, 0)), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(d_xi(zb).value()(0, 0)), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(d_xibar(z * zb).value()(0, 0) - cd(0.4, 0.1)), 0.0, 1e-15);
  EXPECT_EQ(d_xi(z).order(), 2);
}

TEST(Jet, Truncation) {
  const Jet e = exp(jet_x(0.0, 5));
  const Jet t = e.truncated(2);
  EXPECT_EQ(t.order(), 2);
  EXPECT_NEAR(t(2, 0).real(), 0.5, 1e-15);
  EXPECT_EQ(e.dx().order(), 4);
  EXPECT_NEAR(e.dx()(1, 0).real(), 1.0, 1e-15);
}

TEST(Chart, FornbergWeights) {
  const auto w = fd_weights(0.0, {-1.0, 0.0, 1.0}, 2);
  EXPECT_NEAR(w[0], 1.0, 1e-14);
  EXPECT_NEAR(w[1], -2.0, 1e-14);
  EXPECT_NEAR(w[2], 1.0, 1e-14);
  const auto w1 = fd_weights(0.0, {-2.0, -1.0, 0.0, 1.0, 2.0}, 1);
  EXPECT_NEAR(w1[0], 1.0 / 12.0, 1e-14);
  EXPECT_NEAR(w1[3], 2.0 / 3.0, 1e-14);
}

TEST(Chart, GridFieldDifferentiatesPolynomialsExactly) {
  Chart c;
  c.nx = c.ny = 11;
  NodeValues<Mat> v(c, Mat());
  for (int j = 0; j < c.ny; ++j)
    for (int i = 0; i < c.nx; ++i) {
      const double x = c.x(i), y = c.y(j);
      Mat m(1, 1);
      m(0, 0) = x * x * x - 2.0 * x * y + y * y;
      v.at(i, j) = m;
    }
  const GridMatrixField g(v);
  for (int i : {0, 5, 10}) {
    const double x = c.x(i), y = c.y(3);
    const MatJet j = g.jet_at(i, 3, 2);
    EXPECT_NEAR(j.derivative(1, 0)(0, 0).real(), 3 * x * x - 2 * y, 1e-10);
    EXPECT_NEAR(j.derivative(0, 1)(0, 0).real(), -2 * x + 2 * y, 1e-10);
    EXPECT_NEAR(j.derivative(1, 1)(0, 0).real(), -2.0, 1e-9);
  }
  EXPECT_THROW(g.jet(0.05, 0.0, 1), Error);
}

TEST(Chart, SweepRespectsMargin) {
  Chart c;
  c.nx = c.ny = 8;
  const GridReport r = sweep(c, [&](int i, int j) { return (i == 0 || j == 7) ? 100.0 : double(i + j); }, 1);
  EXPECT_DOUBLE_EQ(r.sup, 12.0);
  EXPECT_EQ(r.sup_i, 6);
  EXPECT_EQ(r.sup_j, 6);
  EXPECT_DOUBLE_EQ(sweep(c, [](int, int) { return 1.0; }, 0).sup, 1.0);
}

TEST(Parallel, EveryIndexOnce) {
  std::vector<std::atomic<int>> hits(1000);
  parallel_for(1000, [&](int i) { hits[static_cast<size_t>(i)]++; });
  for (const auto& h : hits) EXPECT_EQ(h.load(), 1);
  EXPECT_THROW(parallel_for(10, [](int i) {
                 if (i == 7) fail(ErrorKind::numeric, "boom");
               }),
               Error);
}

TEST(Parallel, PairwiseSumIsAccurate) {
  std::vector<double> v(100000, 0.1);
  EXPECT_NEAR(pairwise_sum(v), 10000.0, 1e-9);
  EXPECT_EQ(pairwise_sum(std::vector<double>{}), 0.0);
}
