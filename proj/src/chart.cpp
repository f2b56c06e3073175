#include "isl/chart.hpp"

#include <cmath>
#include <sstream>

#include "isl/parallel.hpp"

namespace isl {

std::string to_string(ChartId c) { return c == ChartId::main ? "main" : "inverse"; }

void Chart::validate() const {
  if (nx < 8 || ny < 8) fail(ErrorKind::config, "chart resolution must be at least 8x8");
  if (!std::isfinite(x_min) || !std::isfinite(x_max) || !std::isfinite(y_min) || !std::isfinite(y_max))
    fail(ErrorKind::config, "chart extents must be finite");
  if (!(x_max > x_min) || !(y_max > y_min)) fail(ErrorKind::config, "chart extents must be non-empty");
}

double Chart::scale() const { return std::max(1.0, std::max(x_max - x_min, y_max - y_min) / 2.0); }

std::optional<std::pair<int, int>> Chart::node(double x, double y) const {
  const double fi = (x - x_min) / hx();
  const double fj = (y - y_min) / hy();
  const long i = std::lround(fi), j = std::lround(fj);
  if (i < 0 || j < 0 || i >= nx || j >= ny) return std::nullopt;
  if (std::abs(fi - static_cast<double>(i)) > 1e-9 || std::abs(fj - static_cast<double>(j)) > 1e-9)
    return std::nullopt;
  return std::make_pair(static_cast<int>(i), static_cast<int>(j));
}

GridReport sweep(const Chart& chart, const std::function<double(int, int)>& f, int margin) {
  GridReport r;
  r.chart = chart;
  r.margin = margin;
  r.values.assign(static_cast<size_t>(chart.size()), 0.0);
  parallel_for(chart.ny, [&](int j) {
    for (int i = 0; i < chart.nx; ++i) r.values[static_cast<size_t>(chart.index(i, j))] = f(i, j);
  });
  r.sup = 0.0;
  for (int j = margin; j < chart.ny - margin; ++j)
    for (int i = margin; i < chart.nx - margin; ++i) {
      const double v = r.at(i, j);
      if (!(v <= r.sup)) {  // NaN propagates into sup
        r.sup = v;
        r.sup_i = i;
        r.sup_j = j;
      }
    }
  return r;
}

std::vector<double> fd_weights(double x0, const std::vector<double>& z, int m) {
  // Fornberg (1988), weights c[k] for the m-th derivative.
  const int n = static_cast<int>(z.size()) - 1;
  std::vector<std::vector<double>> c(static_cast<size_t>(n + 1), std::vector<double>(static_cast<size_t>(m + 1), 0.0));
  double c1 = 1.0, c4 = z[0] - x0;
  c[0][0] = 1.0;
  for (int i = 1; i <= n; ++i) {
    const int mn = std::min(i, m);
    double c2 = 1.0;
    const double c5 = c4;
    c4 = z[static_cast<size_t>(i)] - x0;
    for (int j = 0; j < i; ++j) {
      const double c3 = z[static_cast<size_t>(i)] - z[static_cast<size_t>(j)];
      c2 *= c3;
      if (j == i - 1) {
        for (int k = mn; k >= 1; --k)
          c[static_cast<size_t>(i)][static_cast<size_t>(k)] =
              c1 * (k * c[static_cast<size_t>(i - 1)][static_cast<size_t>(k - 1)] -
                    c5 * c[static_cast<size_t>(i - 1)][static_cast<size_t>(k)]) /
              c2;
        c[static_cast<size_t>(i)][0] = -c1 * c5 * c[static_cast<size_t>(i - 1)][0] / c2;
      }
      for (int k = mn; k >= 1; --k)
        c[static_cast<size_t>(j)][static_cast<size_t>(k)] =
            (c4 * c[static_cast<size_t>(j)][static_cast<size_t>(k)] -
             k * c[static_cast<size_t>(j)][static_cast<size_t>(k - 1)]) /
            c3;
      c[static_cast<size_t>(j)][0] = c4 * c[static_cast<size_t>(j)][0] / c3;
    }
    c1 = c2;
  }
  std::vector<double> w(static_cast<size_t>(n + 1));
  for (int k = 0; k <= n; ++k) w[static_cast<size_t>(k)] = c[static_cast<size_t>(k)][static_cast<size_t>(m)];
  return w;
}

namespace {

// Stencil window [lo, lo+width) around index i for a d-th derivative on n nodes, with its weights (unit spacing).
struct Stencil {
  int lo = 0;
  std::vector<double> w;
};

Stencil stencil(int i, int n, int d) {
  Stencil s;
  if (d == 0) {
    s.lo = i;
    s.w = {1.0};
    return s;
  }
  const int half = d <= 2 ? 2 : 3;
  int width = 2 * half + 1;
  int lo = i - half;
  if (lo < 0 || lo + width > n) {
    width = d + 4;
    lo = std::clamp(i - width / 2, 0, n - width);
  }
  if (width > n) fail(ErrorKind::numeric, "grid too small for finite-difference stencil");
  std::vector<double> nodes(static_cast<size_t>(width));
  for (int k = 0; k < width; ++k) nodes[static_cast<size_t>(k)] = lo + k;
  s.lo = lo;
  s.w = fd_weights(static_cast<double>(i), nodes, d);
  return s;
}

}  // namespace

GridMatrixField::GridMatrixField(NodeValues<Mat> values) : values_(std::move(values)) {}

Mat GridMatrixField::derivative(int i, int j, int a, int b) const {
  const Chart& c = values_.chart;
  const Stencil sx = stencil(i, c.nx, a);
  const Stencil sy = stencil(j, c.ny, b);
  const Mat& v0 = values_.at(i, j);
  Mat acc = Mat::Zero(v0.rows(), v0.cols());
  for (size_t q = 0; q < sy.w.size(); ++q) {
    if (sy.w[q] == 0.0) continue;
    for (size_t p = 0; p < sx.w.size(); ++p) {
      if (sx.w[p] == 0.0) continue;
      acc += (sx.w[p] * sy.w[q]) * values_.at(sx.lo + static_cast<int>(p), sy.lo + static_cast<int>(q));
    }
  }
  return acc / (std::pow(c.hx(), a) * std::pow(c.hy(), b));
}

MatJet GridMatrixField::jet_at(int i, int j, int order) const {
  if (order > 3) fail(ErrorKind::numeric, "grid fields provide derivatives up to order 3");
  const Mat& v0 = values_.at(i, j);
  MatJet r(order, Mat::Zero(v0.rows(), v0.cols()));
  for (int d = 0; d <= order; ++d)
    for (int b = 0; b <= d; ++b) {
      const int a = d - b;
      r(a, b) = d == 0 ? v0 : Mat(derivative(i, j, a, b) / (factorial(a) * factorial(b)));
    }
  return r;
}

MatJet GridMatrixField::jet(double x, double y, int order) const {
  const auto n = values_.chart.node(x, y);
  if (!n) {
    std::ostringstream os;
    os << "grid field evaluated off-node at (" << x << ", " << y << ")";
    fail(ErrorKind::domain, os.str());
  }
  return jet_at(n->first, n->second, order);
}

MatJet JetGrid::jet(double x, double y, int order) const {
  const auto n = jets_.chart.node(x, y);
  if (!n) {
    std::ostringstream os;
    os << "node-stored jets evaluated off-node at (" << x << ", " << y << ")";
    fail(ErrorKind::domain, os.str());
  }
  const MatJet& j = jets_.at(n->first, n->second);
  if (order > j.order()) fail(ErrorKind::numeric, "requested jet order exceeds stored order");
  return j.truncated(order);
}

}  // namespace isl
