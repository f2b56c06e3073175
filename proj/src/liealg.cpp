#include "isl/liealg.hpp"

#include <cmath>

namespace isl {

std::string to_string(Algebra a) {
  switch (a) {
    case Algebra::su: return "su";
    case Algebra::u: return "u";
    case Algebra::sl2r: return "sl2r";
    case Algebra::gl: return "gl";
  }
  return "?";
}

std::string to_string(Group g) {
  switch (g) {
    case Group::SU: return "SU";
    case Group::U: return "U";
    case Group::SL2R: return "SL2R";
    case Group::GL: return "GL";
  }
  return "?";
}

Algebra join(Algebra a, Algebra b) {
  if (a == b) return a;
  if (a == Algebra::gl || b == Algebra::gl) return Algebra::gl;
  if ((a == Algebra::su && b == Algebra::u) || (a == Algebra::u && b == Algebra::su)) return Algebra::u;
  fail(ErrorKind::type, "mismatched algebra tags " + to_string(a) + " and " + to_string(b));
}

Algebra algebra_of(Group g) {
  switch (g) {
    case Group::SU: return Algebra::su;
    case Group::U: return Algebra::u;
    case Group::SL2R: return Algebra::sl2r;
    case Group::GL: return Algebra::gl;
  }
  return Algebra::gl;
}

double membership_residual(const Mat& a, Algebra alg) {
  switch (alg) {
    case Algebra::su: return std::max((a + a.adjoint()).norm(), std::abs(a.trace()));
    case Algebra::u: return (a + a.adjoint()).norm();
    case Algebra::sl2r: return std::max(a.imag().norm(), std::abs(a.trace()));
    case Algebra::gl: return 0.0;
  }
  return 0.0;
}

double membership_residual(const Mat& g, Group grp) {
  const int n = static_cast<int>(g.rows());
  switch (grp) {
    case Group::SU:
      return std::max((g.adjoint() * g - Mat::Identity(n, n)).norm(), std::abs(g.determinant() - 1.0));
    case Group::U: return (g.adjoint() * g - Mat::Identity(n, n)).norm();
    case Group::SL2R: return std::max(g.imag().norm(), std::abs(g.determinant() - 1.0));
    case Group::GL: return 0.0;
  }
  return 0.0;
}

LieElement LieElement::checked(const Mat& m, Algebra alg, double eps) {
  const double r = membership_residual(m, alg);
  if (!(r <= eps)) fail(ErrorKind::type, "matrix not in " + to_string(alg) + " (residual " + std::to_string(r) + ")");
  return LieElement(m, alg);
}

GroupElement GroupElement::checked(const Mat& m, Group g, double eps) {
  const double r = membership_residual(m, g);
  if (!(r <= eps)) fail(ErrorKind::type, "matrix not in " + to_string(g) + " (residual " + std::to_string(r) + ")");
  return GroupElement(m, g);
}

GroupElement GroupElement::inverse() const {
  if (std::abs(m_.determinant()) < kEpsMem) fail(ErrorKind::numeric, "group element not invertible");
  return GroupElement(m_.inverse(), grp_);
}

Mat gell_mann(int a) {
  Mat m = Mat::Zero(3, 3);
  const double s3 = 1.0 / std::sqrt(3.0);
  switch (a) {
    case 0: m(0, 1) = m(1, 0) = 1.0; break;
    case 1: m(0, 1) = -kI; m(1, 0) = kI; break;
    case 2: m(0, 0) = 1.0; m(1, 1) = -1.0; break;
    case 3: m(0, 2) = m(2, 0) = 1.0; break;
    case 4: m(0, 2) = -kI; m(2, 0) = kI; break;
    case 5: m(1, 2) = m(2, 1) = 1.0; break;
    case 6: m(1, 2) = -kI; m(2, 1) = kI; break;
    case 7: m(0, 0) = s3; m(1, 1) = s3; m(2, 2) = -2.0 * s3; break;
    default: fail(ErrorKind::config, "Gell-Mann index out of range");
  }
  return m;
}

OrthonormalBasis basis_su(int N) {
  OrthonormalBasis b;
  b.algebra = Algebra::su;
  b.n = N;
  if (N == 3) {
    for (int a = 0; a < 8; ++a) b.elements.push_back(kI * gell_mann(a));
  } else if (N == 2) {
    Mat s1 = Mat::Zero(2, 2), s2 = Mat::Zero(2, 2), s3 = Mat::Zero(2, 2);
    s1(0, 1) = s1(1, 0) = 1.0;
    s2(0, 1) = -kI;
    s2(1, 0) = kI;
    s3(0, 0) = 1.0;
    s3(1, 1) = -1.0;
    b.elements = {kI * s1, kI * s2, kI * s3};
  } else {
    fail(ErrorKind::config, "basis_su supports N = 2 or 3, got " + std::to_string(N));
  }
  b.signature.assign(b.elements.size(), 1.0);
  return b;
}

OrthonormalBasis basis_sl2r() {
  OrthonormalBasis b;
  b.algebra = Algebra::sl2r;
  b.n = 2;
  Mat h = Mat::Zero(2, 2), s = Mat::Zero(2, 2), j = Mat::Zero(2, 2);
  h(0, 0) = 1.0;
  h(1, 1) = -1.0;
  s(0, 1) = s(1, 0) = 1.0;
  j(0, 1) = 1.0;
  j(1, 0) = -1.0;
  b.elements = {h, s, j};
  b.signature = {-1.0, -1.0, 1.0};
  return b;
}

LieElement bracket(const LieElement& a, const LieElement& b) {
  const Algebra t = join(a.algebra(), b.algebra());
  if (a.dim() != b.dim()) fail(ErrorKind::type, "bracket of matrices of different size");
  return LieElement(commutator(a.matrix(), b.matrix()), t);
}

double inner(const Mat& a, const Mat& b) { return -(a * b).trace().real() / 2.0; }

double inner(const LieElement& a, const LieElement& b) {
  join(a.algebra(), b.algebra());
  if (a.dim() != b.dim()) fail(ErrorKind::type, "inner product of matrices of different size");
  return inner(a.matrix(), b.matrix());
}

LieElement adjoint(const GroupElement& g, const LieElement& a) {
  const Mat& m = g.matrix();
  if (std::abs(m.determinant()) < kEpsMem) fail(ErrorKind::numeric, "adjoint by a non-invertible element");
  if (algebra_of(g.group()) != a.algebra()) join(algebra_of(g.group()), a.algebra());
  return LieElement(m * a.matrix() * m.inverse(), a.algebra());
}

RVec coordinates(const Mat& a, const OrthonormalBasis& basis) {
  if (a.rows() != basis.n) fail(ErrorKind::type, "coordinates: matrix size does not match basis");
  RVec x(basis.size());
  for (int k = 0; k < basis.size(); ++k)
    x(k) = basis.signature[static_cast<size_t>(k)] * inner(a, basis[k]);
  return x;
}

RVec coordinates(const LieElement& a, const OrthonormalBasis& basis) {
  join(a.algebra(), basis.algebra);
  return coordinates(a.matrix(), basis);
}

LieElement reconstruct(const RVec& x, const OrthonormalBasis& basis) {
  if (x.size() != basis.size()) fail(ErrorKind::type, "reconstruct: coordinate vector length mismatch");
  Mat m = Mat::Zero(basis.n, basis.n);
  for (int k = 0; k < basis.size(); ++k) m += x(k) * basis[k];
  return LieElement(m, basis.algebra);
}

Mat nearest_unitary(const Mat& m) {
  Eigen::JacobiSVD<Eigen::Matrix<cd, Eigen::Dynamic, Eigen::Dynamic, 0, kMaxN, kMaxN>> svd(
      m, Eigen::ComputeFullU | Eigen::ComputeFullV);
  return svd.matrixU() * svd.matrixV().adjoint();
}

Mat det_normalize(const Mat& m, cd target) {
  const int n = static_cast<int>(m.rows());
  const cd ratio = target / m.determinant();
  // Principal root; for ratios near 1 this is the root closest to 1.
  const cd s = std::pow(ratio, 1.0 / n);
  return s * m;
}

Mat project_to_group(const Mat& m, Group g, cd target_det) {
  switch (g) {
    case Group::SU:
    case Group::U: return det_normalize(nearest_unitary(m), target_det);
    case Group::SL2R: {
      Mat r = m.real().cast<cd>();
      return det_normalize(r, target_det);
    }
    case Group::GL: return m;
  }
  return m;
}

}  // namespace isl
