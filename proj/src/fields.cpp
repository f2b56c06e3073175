#include "isl/fields.hpp"

#include <algorithm>
#include <cmath>
#include <tuple>
#include <fstream>
#include <map>
#include <sstream>

namespace isl {

std::string to_string(ProviderKind k) {
  switch (k) {
    case ProviderKind::analytic: return "analytic";
    case ProviderKind::finite_difference: return "finite-difference";
    case ProviderKind::grid: return "grid";
  }
  return "?";
}

SolutionField::SolutionField(std::string name, JetFn fn, ProviderKind kind, int rows, int cols, Algebra tag)
    : name_(std::move(name)), fn_(std::move(fn)), kind_(kind), rows_(rows), cols_(cols), tag_(tag) {}

MatJet SolutionField::jet(double x, double y, int order) const {
  if (order > max_order())
    fail(ErrorKind::numeric, "field '" + name_ + "': " + to_string(kind_) + " provider supports order <= " +
                                 std::to_string(max_order()));
  return fn_(x, y, order);
}

Mat SolutionField::derivative(double x, double y, int a, int b) const { return jet(x, y, a + b).derivative(a, b); }

SolutionField constant_field(const Mat& v, Algebra tag) {
  return SolutionField(
      "constant", [v](double, double, int order) { return jet_constant(v, order); }, ProviderKind::analytic,
      static_cast<int>(v.rows()), static_cast<int>(v.cols()), tag);
}

namespace {

// Central weights of minimal width for 2nd-order accuracy (unit spacing, offsets -m..m).
const std::vector<double>& central_weights(int d) {
  static const std::vector<std::vector<double>> w = {
      {0, 0, 1, 0, 0}, {0, -0.5, 0, 0.5, 0}, {0, 1, -2, 1, 0}, {-0.5, 1, 0, -1, 0.5}};
  return w[static_cast<size_t>(d)];
}

}  // namespace

SolutionField finite_difference_field(std::string name, std::function<Mat(double, double)> value, int rows, int cols,
                                      double h, Algebra tag) {
  auto fn = [value, h, rows, cols](double x, double y, int order) {
    if (order > 3) fail(ErrorKind::numeric, "finite-difference provider supports |J| <= 3");
    MatJet r(order, Mat::Zero(rows, cols));
    r.value() = value(x, y);
    // Cache samples on the 5x5 stencil per step size.
    std::map<std::tuple<int, int, int>, Mat> cache;
    auto sample = [&](int p, int q, int s) -> const Mat& {
      auto key = std::make_tuple(p, q, s);
      auto it = cache.find(key);
      if (it != cache.end()) return it->second;
      const double hs = s == 0 ? h : 10 * h;
      return cache.emplace(key, value(x + p * hs, y + q * hs)).first->second;
    };
    for (int d = 1; d <= order; ++d)
      for (int b = 0; b <= d; ++b) {
        const int a = d - b;
        const int s = d >= 3 ? 1 : 0;
        const double hs = s == 0 ? h : 10 * h;
        const auto& wx = central_weights(a);
        const auto& wy = central_weights(b);
        Mat acc = Mat::Zero(rows, cols);
        for (int q = -2; q <= 2; ++q) {
          if (wy[static_cast<size_t>(q + 2)] == 0.0) continue;
          for (int p = -2; p <= 2; ++p) {
            if (wx[static_cast<size_t>(p + 2)] == 0.0) continue;
            acc += (wx[static_cast<size_t>(p + 2)] * wy[static_cast<size_t>(q + 2)]) * sample(p, q, s);
          }
        }
        r(a, b) = acc / (std::pow(hs, d) * factorial(a) * factorial(b));
      }
    return r;
  };
  return SolutionField(std::move(name), fn, ProviderKind::finite_difference, rows, cols, tag);
}

SolutionField grid_field(std::string name, const GridMatrixField& grid, Algebra tag) {
  const Mat& v = grid.values().data.front();
  auto g = std::make_shared<GridMatrixField>(grid);
  return SolutionField(
      std::move(name), [g](double x, double y, int order) { return g->jet(x, y, order); }, ProviderKind::grid,
      static_cast<int>(v.rows()), static_cast<int>(v.cols()), tag);
}

SolutionField read_grid_csv(const std::string& path, int rows, int cols, Algebra tag) {
  std::ifstream in(path);
  if (!in) fail(ErrorKind::config, "cannot open grid CSV '" + path + "'");
  std::string line;
  std::vector<std::vector<double>> recs;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::stringstream ss(line);
    std::string cell;
    std::vector<double> rec;
    bool numeric = true;
    while (std::getline(ss, cell, ',')) {
      try {
        size_t pos = 0;
        rec.push_back(std::stod(cell, &pos));
      } catch (...) {
        numeric = false;
        break;
      }
    }
    if (!numeric) {
      if (recs.empty()) continue;  // header row
      fail(ErrorKind::config, "grid CSV: non-numeric row: " + line);
    }
    if (rec.size() != static_cast<size_t>(2 + 2 * rows * cols))
      fail(ErrorKind::config, "grid CSV: expected " + std::to_string(2 + 2 * rows * cols) + " columns");
    recs.push_back(rec);
  }
  if (recs.empty()) fail(ErrorKind::config, "grid CSV: no data rows");
  std::vector<double> xs, ys;
  for (const auto& r : recs) {
    xs.push_back(r[0]);
    ys.push_back(r[1]);
  }
  std::sort(xs.begin(), xs.end());
  xs.erase(std::unique(xs.begin(), xs.end(), [](double a, double b) { return std::abs(a - b) < 1e-12; }), xs.end());
  std::sort(ys.begin(), ys.end());
  ys.erase(std::unique(ys.begin(), ys.end(), [](double a, double b) { return std::abs(a - b) < 1e-12; }), ys.end());
  Chart c;
  c.x_min = xs.front();
  c.x_max = xs.back();
  c.y_min = ys.front();
  c.y_max = ys.back();
  c.nx = static_cast<int>(xs.size());
  c.ny = static_cast<int>(ys.size());
  c.validate();
  if (recs.size() != static_cast<size_t>(c.size())) fail(ErrorKind::config, "grid CSV: rows do not form a full grid");
  NodeValues<Mat> vals(c, Mat::Zero(rows, cols));
  for (const auto& r : recs) {
    const auto n = c.node(r[0], r[1]);
    if (!n) fail(ErrorKind::config, "grid CSV: non-uniform grid");
    Mat m(rows, cols);
    for (int k = 0; k < rows * cols; ++k)
      m(k / cols, k % cols) = cd(r[static_cast<size_t>(2 + 2 * k)], r[static_cast<size_t>(3 + 2 * k)]);
    vals.at(n->first, n->second) = m;
  }
  return grid_field("grid:" + path, GridMatrixField(vals), tag);
}

SolutionField perturbed(const SolutionField& u, double amp, double x0, double y0, double s) {
  const int n = u.rows();
  Mat b = Mat::Zero(n, u.cols());
  if (u.algebra() == Algebra::su && n == 3) {
    const auto basis = basis_su(3);
    b = basis[0] + basis[3];
  } else if (u.algebra() == Algebra::su && n == 2) {
    b = basis_su(2)[0];
  } else {
    b = Mat::Ones(n, u.cols());
  }
  auto fn = [u, amp, x0, y0, s, b](double x, double y, int order) {
    const Jet dx = jet_x(x, order) + cd(-x0);
    const Jet dy = jet_y(y, order) + cd(-y0);
    const Jet g = exp((-1.0 / (s * s)) * (dx * dx + dy * dy));
    return u.jet(x, y, order) + (amp * g) * b;
  };
  SolutionField r(u.name() + "+bump", fn, u.provider(), u.rows(), u.cols(), u.algebra());
  r.magnitude = u.magnitude;
  return r;
}

Characteristic::Characteristic(std::string name, Fn fn, Locality loc, std::optional<double> x_origin)
    : name_(std::move(name)), fn_(std::move(fn)), loc_(loc), x_origin_(x_origin) {}

MatJet Characteristic::operator()(const SolutionField& u, double x, double y, int order) const {
  if (!fn_) return zero_jet(u.rows(), u.cols(), order);
  MatJet r = fn_(u, x, y, order);
  if (r.value().rows() != u.rows() || r.value().cols() != u.cols())
    fail(ErrorKind::type, "characteristic '" + name_ + "' output shape does not match the field");
  return r;
}

Characteristic zero_characteristic() {
  Characteristic r(
      "zero", [](const SolutionField& u, double, double, int order) { return zero_jet(u.rows(), u.cols(), order); });
  r.field_independent = true;
  return r;
}

Characteristic translation(int axis) {
  return Characteristic(axis == 0 ? "u_x" : "u_y", [axis](const SolutionField& u, double x, double y, int order) {
    const MatJet j = u.jet(x, y, order + 1);
    return axis == 0 ? j.dx() : j.dy();
  });
}

Characteristic conformal(Univariate f, Univariate g, std::string name) {
  return Characteristic(std::move(name), [f, g](const SolutionField& u, double x, double y, int order) {
    const MatJet j = u.jet(x, y, order + 1);
    return f(jet_x(x, order)) * j.dx() + g(jet_y(y, order)) * j.dy();
  });
}

Characteristic additive(std::string name, std::function<MatJet(double, double, int)> r) {
  Characteristic c(std::move(name), [r](const SolutionField&, double x, double y, int order) { return r(x, y, order); });
  c.field_independent = true;
  return c;
}

Characteristic combine(double a, const Characteristic& r1, double b, const Characteristic& r2) {
  std::optional<double> origin = r1.x_origin() ? r1.x_origin() : r2.x_origin();
  const Locality loc =
      (r1.locality() == Locality::nonlocal_x || r2.locality() == Locality::nonlocal_x) ? Locality::nonlocal_x
                                                                                      : Locality::local;
  Characteristic c(
      r1.name() + "+" + r2.name(),
      [a, b, r1, r2](const SolutionField& u, double x, double y, int order) {
        return a * r1(u, x, y, order) + b * r2(u, x, y, order);
      },
      loc, origin);
  c.field_independent = r1.field_independent && r2.field_independent;
  return c;
}

SolutionField deform(const SolutionField& u, const Characteristic& r, double eps, double eps_max) {
  if (std::abs(eps) > eps_max)
    fail(ErrorKind::config, "deformation parameter " + std::to_string(eps) + " exceeds eps_max");
  if (eps == 0.0) return u;
  if (r.locality() == Locality::nonlocal_x && !r.x_origin())
    fail(ErrorKind::domain, "nonlocal characteristic '" + r.name() + "' has no x-accumulation origin");
  const auto origin = r.x_origin();
  auto fn = [u, r, eps, origin](double x, double y, int order) {
    if (origin && x < *origin - 1e-12)
      fail(ErrorKind::domain, "nonlocal characteristic evaluated left of its accumulation origin");
    return u.jet(x, y, order) + eps * r(u, x, y, order);
  };
  // Local characteristics consume one derivative order; the deformed field keeps analytic jets
  // when the base field has them.
  SolutionField d(u.name() + "+eps*" + r.name(), fn, u.provider(), u.rows(), u.cols(), u.algebra());
  d.magnitude = u.magnitude;
  return d;
}

}  // namespace isl
