#include "isl/jet.hpp"

#include <cmath>
#include <sstream>

namespace isl {

const char* to_string(ErrorKind k) {
  switch (k) {
    case ErrorKind::config: return "configuration error";
    case ErrorKind::usage: return "usage error";
    case ErrorKind::type: return "type error";
    case ErrorKind::numeric: return "numeric error";
    case ErrorKind::domain: return "domain error";
    case ErrorKind::singular: return "singular input";
    case ErrorKind::step_size: return "step-size error";
    case ErrorKind::chain_end: return "chain end";
    case ErrorKind::non_closed: return "non-closed input";
  }
  return "error";
}

void fail(ErrorKind kind, const std::string& msg) { throw Error(kind, std::string(to_string(kind)) + ": " + msg); }

MatJet inverse(const MatJet& a) {
  const Mat& a0 = a.value();
  const int n = static_cast<int>(a0.rows());
  Eigen::PartialPivLU<Eigen::Matrix<cd, Eigen::Dynamic, Eigen::Dynamic, 0, kMaxN, kMaxN>> lu(a0);
  if (std::abs(lu.determinant()) < 1e-300 || !std::isfinite(std::abs(lu.determinant())))
    fail(ErrorKind::numeric, "jet inverse of a singular matrix");
  const Mat inv0 = lu.inverse();
  const int K = a.order();
  MatJet b(K, Mat::Zero(n, n));
  b.value() = inv0;
  for (int d = 1; d <= K; ++d)
    for (int bb = 0; bb <= d; ++bb) {
      const int aa = d - bb;
      Mat s = Mat::Zero(n, n);
      for (int a1 = 0; a1 <= aa; ++a1)
        for (int b1 = 0; b1 <= bb; ++b1) {
          if (a1 == 0 && b1 == 0) continue;
          s += a(a1, b1) * b(aa - a1, bb - b1);
        }
      b(aa, bb) = -inv0 * s;
    }
  return b;
}

Jet reciprocal(const Jet& a) {
  const cd a0 = a.value();
  if (std::abs(a0) == 0.0) fail(ErrorKind::numeric, "jet reciprocal of zero");
  const cd inv0 = 1.0 / a0;
  const int K = a.order();
  Jet b(K, cd(0.0));
  b.value() = inv0;
  for (int d = 1; d <= K; ++d)
    for (int bb = 0; bb <= d; ++bb) {
      const int aa = d - bb;
      cd s = 0.0;
      for (int a1 = 0; a1 <= aa; ++a1)
        for (int b1 = 0; b1 <= bb; ++b1) {
          if (a1 == 0 && b1 == 0) continue;
          s += a(a1, b1) * b(aa - a1, bb - b1);
        }
      b(aa, bb) = -inv0 * s;
    }
  return b;
}

Jet compose(const Jet& s, const std::vector<cd>& derivs) {
  const int K = s.order();
  Jet delta = s;
  delta.value() = 0.0;
  Jet r = jet_constant(derivs[static_cast<size_t>(K)] / factorial(K), K);
  for (int n = K - 1; n >= 0; --n) r = r * delta + derivs[static_cast<size_t>(n)] / factorial(n);
  return r;
}

Jet exp(const Jet& s) {
  const cd e = std::exp(s.value());
  return compose(s, std::vector<cd>(static_cast<size_t>(s.order() + 1), e));
}

Jet log(const Jet& s) {
  const cd v = s.value();
  std::vector<cd> d(static_cast<size_t>(s.order() + 1));
  d[0] = std::log(v);
  for (int n = 1; n <= s.order(); ++n) d[static_cast<size_t>(n)] = ((n % 2) ? 1.0 : -1.0) * factorial(n - 1) / std::pow(v, n);
  return compose(s, d);
}

Jet pow(const Jet& s, double p) {
  const cd v = s.value();
  std::vector<cd> d(static_cast<size_t>(s.order() + 1));
  double c = 1.0;
  for (int n = 0; n <= s.order(); ++n) {
    d[static_cast<size_t>(n)] = c * std::pow(v, p - n);
    c *= (p - n);
  }
  return compose(s, d);
}

Jet sqrt(const Jet& s) { return pow(s, 0.5); }

Jet sin(const Jet& s) {
  const cd v = s.value();
  std::vector<cd> d(static_cast<size_t>(s.order() + 1));
  for (int n = 0; n <= s.order(); ++n) {
    switch (n % 4) {
      case 0: d[static_cast<size_t>(n)] = std::sin(v); break;
      case 1: d[static_cast<size_t>(n)] = std::cos(v); break;
      case 2: d[static_cast<size_t>(n)] = -std::sin(v); break;
      default: d[static_cast<size_t>(n)] = -std::cos(v); break;
    }
  }
  return compose(s, d);
}

Jet cos(const Jet& s) {
  const cd v = s.value();
  std::vector<cd> d(static_cast<size_t>(s.order() + 1));
  for (int n = 0; n <= s.order(); ++n) {
    switch (n % 4) {
      case 0: d[static_cast<size_t>(n)] = std::cos(v); break;
      case 1: d[static_cast<size_t>(n)] = -std::sin(v); break;
      case 2: d[static_cast<size_t>(n)] = -std::cos(v); break;
      default: d[static_cast<size_t>(n)] = std::sin(v); break;
    }
  }
  return compose(s, d);
}

Jet polynomial(const std::vector<cd>& c, const Jet& z) {
  Jet r = jet_constant(cd(0.0), z.order());
  for (auto it = c.rbegin(); it != c.rend(); ++it) r = r * z + *it;
  return r;
}

MatJet d_xi(const MatJet& a) { return 0.5 * (a.dx() - kI * a.dy()); }

MatJet d_xibar(const MatJet& a) { return 0.5 * (a.dx() + kI * a.dy()); }

}  // namespace isl
