#pragma once

#include <string>
#include <vector>

#include "isl/core.hpp"

namespace isl {

/// Real forms handled by the library. `u` and `gl` extend the su / sl(2,R) pair:
/// U(N) wavefunctions and complexified lambda-derivatives need them.
enum class Algebra { su, u, sl2r, gl };
enum class Group { SU, U, SL2R, GL };

std::string to_string(Algebra a);
std::string to_string(Group g);

/// Tag of a bracket of two tagged elements; throws a type error for incompatible real forms.
Algebra join(Algebra a, Algebra b);

/// Lie algebra of a group tag.
Algebra algebra_of(Group g);

double membership_residual(const Mat& a, Algebra alg);
double membership_residual(const Mat& g, Group grp);

class LieElement {
 public:
  LieElement() = default;
  LieElement(Mat m, Algebra alg) : m_(std::move(m)), alg_(alg) {}

  /// Constructs after checking membership within eps.
  static LieElement checked(const Mat& m, Algebra alg, double eps = kEpsMem);

  const Mat& matrix() const { return m_; }
  Algebra algebra() const { return alg_; }
  int dim() const { return static_cast<int>(m_.rows()); }
  double residual() const { return membership_residual(m_, alg_); }

 private:
  Mat m_;
  Algebra alg_ = Algebra::su;
};

class GroupElement {
 public:
  GroupElement() = default;
  GroupElement(Mat m, Group g) : m_(std::move(m)), grp_(g) {}

  static GroupElement checked(const Mat& m, Group g, double eps = kEpsMem);

  const Mat& matrix() const { return m_; }
  Group group() const { return grp_; }
  int dim() const { return static_cast<int>(m_.rows()); }
  GroupElement inverse() const;
  double residual() const { return membership_residual(m_, grp_); }

 private:
  Mat m_;
  Group grp_ = Group::SU;
};

/// Basis orthonormal for <A,B> = -Re Tr(AB)/2 up to the signature (+1 on su(N), indefinite on sl(2,R)).
struct OrthonormalBasis {
  Algebra algebra = Algebra::su;
  int n = 0;
  std::vector<Mat> elements;
  std::vector<double> signature;

  int size() const { return static_cast<int>(elements.size()); }
  const Mat& operator[](int a) const { return elements[static_cast<size_t>(a)]; }
};

/// S_a = i lambda_a (Gell-Mann order, N=3) or S_j = i sigma_j (Pauli order, N=2).
OrthonormalBasis basis_su(int N);

/// (diag(1,-1), [[0,1],[1,0]], [[0,1],[-1,0]]) with signature (-1,-1,+1).
OrthonormalBasis basis_sl2r();

/// Gell-Mann matrices lambda_1..lambda_8 (index 0..7).
Mat gell_mann(int a);

LieElement bracket(const LieElement& a, const LieElement& b);
double inner(const Mat& a, const Mat& b);
double inner(const LieElement& a, const LieElement& b);
LieElement adjoint(const GroupElement& g, const LieElement& a);

RVec coordinates(const Mat& a, const OrthonormalBasis& basis);
RVec coordinates(const LieElement& a, const OrthonormalBasis& basis);
LieElement reconstruct(const RVec& x, const OrthonormalBasis& basis);

/// Nearest unitary matrix (polar factor U V^dagger of the SVD).
Mat nearest_unitary(const Mat& m);

/// Rescales m so that det(m) = target, using the N-th root closest to 1.
Mat det_normalize(const Mat& m, cd target);

/// Re-projection onto a group: polar factor then determinant normalization for SU/U,
/// determinant normalization for SL(2,R) (real part kept).
Mat project_to_group(const Mat& m, Group g, cd target_det);

}  // namespace isl
