#pragma once

// Bivariate truncated Taylor polynomials ("jets").
//
// A Taylor2<T> of order K at a point p stores c(a,b) for a+b <= K with
//   u(p + (dx,dy)) = sum c(a,b) dx^a dy^b + O(|d|^(K+1)),
// so the partial derivative d^a_x d^b_y u(p) equals a! b! c(a,b).
// Arithmetic on jets is forward-mode differentiation: every field, form
// coefficient and potential is evaluated as a jet and differentiated exactly.

#include <algorithm>
#include <array>
#include <cassert>
#include <vector>

#include "isl/core.hpp"

namespace isl {

inline constexpr int kMaxJetOrder = 8;

inline double factorial(int n) {
  static constexpr std::array<double, 13> f = {1, 1, 2, 6, 24, 120, 720, 5040, 40320, 362880, 3628800, 39916800,
                                               479001600};
  return f[static_cast<size_t>(n)];
}

template <class T>
class Taylor2 {
 public:
  Taylor2() = default;
  Taylor2(int order, const T& zero) : order_(order), c_(static_cast<size_t>(size(order)), zero) {
    assert(order >= 0 && order <= kMaxJetOrder);
  }

  static constexpr int size(int order) { return (order + 1) * (order + 2) / 2; }
  static constexpr int index(int a, int b) { return (a + b) * (a + b + 1) / 2 + b; }

  int order() const { return order_; }
  bool empty() const { return c_.empty(); }

  T& operator()(int a, int b) { return c_[static_cast<size_t>(index(a, b))]; }
  const T& operator()(int a, int b) const { return c_[static_cast<size_t>(index(a, b))]; }

  T& value() { return c_.front(); }
  const T& value() const { return c_.front(); }

  std::vector<T>& coeffs() { return c_; }
  const std::vector<T>& coeffs() const { return c_; }

  /// d^a_x d^b_y at the expansion point.
  T derivative(int a, int b) const { return (*this)(a, b) * (factorial(a) * factorial(b)); }

  Taylor2 truncated(int order) const {
    assert(order <= order_);
    Taylor2 r;
    r.order_ = order;
    r.c_.assign(c_.begin(), c_.begin() + size(order));
    return r;
  }

  /// Partial derivative in x; the result has order K-1.
  Taylor2 dx() const {
    assert(order_ >= 1);
    Taylor2 r(order_ - 1, value() * 0.0);
    for (int d = 0; d < order_; ++d)
      for (int b = 0; b <= d; ++b) r(d - b, b) = (*this)(d - b + 1, b) * double(d - b + 1);
    return r;
  }

  /// Partial derivative in y; the result has order K-1.
  Taylor2 dy() const {
    assert(order_ >= 1);
    Taylor2 r(order_ - 1, value() * 0.0);
    for (int d = 0; d < order_; ++d)
      for (int b = 0; b <= d; ++b) r(d - b, b) = (*this)(d - b, b + 1) * double(b + 1);
    return r;
  }

  template <class F>
  auto map(F&& f) const {
    using R = std::decay_t<decltype(f(c_.front()))>;
    Taylor2<R> r;
    r.order_ = order_;
    r.c_.reserve(c_.size());
    for (const auto& v : c_) r.c_.push_back(f(v));
    return r;
  }

  Taylor2& operator+=(const Taylor2& o) {
    shrink(o.order_);
    for (size_t i = 0; i < c_.size(); ++i) c_[i] += o.c_[i];
    return *this;
  }
  Taylor2& operator-=(const Taylor2& o) {
    shrink(o.order_);
    for (size_t i = 0; i < c_.size(); ++i) c_[i] -= o.c_[i];
    return *this;
  }
  template <class S>
  Taylor2& operator*=(const S& s) {
    for (auto& v : c_) v *= s;
    return *this;
  }

 private:
  template <class U>
  friend class Taylor2;

  void shrink(int order) {
    if (order < order_) {
      order_ = order;
      c_.resize(static_cast<size_t>(size(order)));
    }
  }

  int order_ = -1;
  std::vector<T> c_;
};

using Jet = Taylor2<cd>;
using MatJet = Taylor2<Mat>;

// ---------------------------------------------------------------- constructors

inline Jet jet_constant(cd v, int order) {
  Jet r(order, cd(0.0));
  r.value() = v;
  return r;
}

inline MatJet jet_constant(const Mat& v, int order) {
  MatJet r(order, Mat::Zero(v.rows(), v.cols()));
  r.value() = v;
  return r;
}

inline Jet jet_x(double x, int order) {
  Jet r = jet_constant(cd(x), order);
  if (order >= 1) r(1, 0) = 1.0;
  return r;
}

inline Jet jet_y(double y, int order) {
  Jet r = jet_constant(cd(y), order);
  if (order >= 1) r(0, 1) = 1.0;
  return r;
}

inline MatJet zero_jet(int rows, int cols, int order) { return MatJet(order, Mat::Zero(rows, cols)); }

// ---------------------------------------------------------------- linear ops

template <class T>
Taylor2<T> operator+(Taylor2<T> a, const Taylor2<T>& b) {
  a += b;
  return a;
}

template <class T>
Taylor2<T> operator-(Taylor2<T> a, const Taylor2<T>& b) {
  a -= b;
  return a;
}

template <class T>
Taylor2<T> operator-(Taylor2<T> a) {
  a *= -1.0;
  return a;
}

template <class T>
Taylor2<T> operator*(double s, Taylor2<T> a) {
  a *= s;
  return a;
}

template <class T>
Taylor2<T> operator*(Taylor2<T> a, double s) {
  a *= s;
  return a;
}

template <class T>
Taylor2<T> operator*(cd s, Taylor2<T> a) {
  a *= s;
  return a;
}

template <class T>
Taylor2<T> operator*(Taylor2<T> a, cd s) {
  a *= s;
  return a;
}

// ---------------------------------------------------------------- products

/// Cauchy product with a caller-supplied coefficient product.
template <class R, class A, class B, class Op>
Taylor2<R> cauchy(const Taylor2<A>& x, const Taylor2<B>& y, const R& zero, Op&& op) {
  const int K = std::min(x.order(), y.order());
  Taylor2<R> r(K, zero);
  for (int d = 0; d <= K; ++d)
    for (int b = 0; b <= d; ++b) {
      const int a = d - b;
      R acc = zero;
      for (int a1 = 0; a1 <= a; ++a1)
        for (int b1 = 0; b1 <= b; ++b1) acc += op(x(a1, b1), y(a - a1, b - b1));
      r(a, b) = acc;
    }
  return r;
}

inline Jet operator*(const Jet& x, const Jet& y) {
  return cauchy(x, y, cd(0.0), [](cd p, cd q) { return p * q; });
}

inline MatJet operator*(const MatJet& x, const MatJet& y) {
  return cauchy(x, y, Mat(Mat::Zero(x.value().rows(), y.value().cols())),
                [](const Mat& p, const Mat& q) -> Mat { return p * q; });
}

inline MatJet operator*(const Jet& s, const MatJet& y) {
  return cauchy(s, y, Mat(Mat::Zero(y.value().rows(), y.value().cols())),
                [](cd p, const Mat& q) -> Mat { return p * q; });
}

inline MatJet operator*(const MatJet& y, const Jet& s) { return s * y; }

inline MatJet operator*(const Mat& m, const MatJet& y) {
  return y.map([&](const Mat& q) -> Mat { return m * q; });
}

inline MatJet operator*(const MatJet& y, const Mat& m) {
  return y.map([&](const Mat& q) -> Mat { return q * m; });
}

inline MatJet operator+(MatJet a, const Mat& m) {
  a.value() += m;
  return a;
}

inline MatJet operator-(MatJet a, const Mat& m) {
  a.value() -= m;
  return a;
}

inline Jet operator+(Jet a, cd v) {
  a.value() += v;
  return a;
}

inline MatJet commutator(const MatJet& a, const MatJet& b) { return a * b - b * a; }

inline MatJet adjoint(const MatJet& a) {
  return a.map([](const Mat& m) -> Mat { return m.adjoint(); });
}

inline Jet conj(const Jet& a) {
  return a.map([](cd v) { return std::conj(v); });
}

inline Jet real_part(const Jet& a) {
  return a.map([](cd v) { return cd(v.real(), 0.0); });
}

inline Jet trace(const MatJet& a) {
  return a.map([](const Mat& m) { return m.trace(); });
}

/// Entry (i,j) as a scalar jet.
inline Jet entry(const MatJet& a, int i, int j) {
  return a.map([=](const Mat& m) { return m(i, j); });
}

/// Scalar jet as a 1x1 matrix jet.
inline MatJet as_matrix(const Jet& s) {
  return s.map([](cd v) -> Mat { return Mat::Constant(1, 1, v); });
}

/// Scalar jet times a constant matrix.
inline MatJet operator*(const Jet& s, const Mat& m) {
  return s.map([&](cd v) -> Mat { return v * m; });
}

/// -Re Tr(AB)/2 as a jet (real values stored in complex slots).
inline Jet inner(const MatJet& a, const MatJet& b) {
  return cauchy(a, b, cd(0.0), [](const Mat& p, const Mat& q) { return cd(-(p * q).trace().real() / 2.0, 0.0); });
}

/// Truncation to the smaller of the two orders, for combining jets.
template <class T>
int common_order(const Taylor2<T>& a, const Taylor2<T>& b) {
  return std::min(a.order(), b.order());
}

/// Supremum of Frobenius norms of all coefficients.
inline double max_coeff_norm(const MatJet& a) {
  double m = 0.0;
  for (const auto& c : a.coeffs()) m = std::max(m, c.norm());
  return m;
}

// ---------------------------------------------------------------- inverses and composition

/// Matrix jet inverse by the recurrence B0 = A0^-1, B_m = -A0^-1 sum_{0<m1<=m} A_{m1} B_{m-m1}.
MatJet inverse(const MatJet& a);

/// Scalar reciprocal.
Jet reciprocal(const Jet& a);

inline Jet operator/(const Jet& a, const Jet& b) { return a * reciprocal(b); }
inline MatJet operator/(const MatJet& a, const Jet& b) { return reciprocal(b) * a; }

/// g(s) given g^(n)(s0) for n = 0..K, with s0 = s.value().
Jet compose(const Jet& s, const std::vector<cd>& derivs);

Jet exp(const Jet& s);
Jet log(const Jet& s);
Jet sqrt(const Jet& s);
Jet pow(const Jet& s, double p);
Jet sin(const Jet& s);
Jet cos(const Jet& s);

/// Complex polynomial sum c_n z^n (ascending coefficients) in a jet argument.
Jet polynomial(const std::vector<cd>& c, const Jet& z);

/// d/dxi = (d_x - i d_y)/2 and d/dxibar = (d_x + i d_y)/2, order drops by 1.
MatJet d_xi(const MatJet& a);
MatJet d_xibar(const MatJet& a);

}  // namespace isl
