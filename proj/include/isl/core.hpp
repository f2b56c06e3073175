#pragma once

#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace isl {

using cd = std::complex<double>;

/// Largest matrix size handled by the library (su(2), su(3), sl(2,R), and 4x4 headroom).
inline constexpr int kMaxN = 4;

using Mat = Eigen::Matrix<cd, Eigen::Dynamic, Eigen::Dynamic, Eigen::ColMajor, kMaxN, kMaxN>;
using RVec = Eigen::VectorXd;

inline constexpr double kEpsMem = 1e-10;
inline constexpr double kPi = 3.14159265358979323846;
inline constexpr cd kI{0.0, 1.0};

enum class ErrorKind { config, usage, type, numeric, domain, singular, step_size, chain_end, non_closed };

const char* to_string(ErrorKind k);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& msg) : std::runtime_error(msg), kind_(kind) {}
  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] void fail(ErrorKind kind, const std::string& msg);

inline Mat identity(int n) { return Mat::Identity(n, n); }
inline Mat zeros(int rows, int cols) { return Mat::Zero(rows, cols); }

inline Mat commutator(const Mat& a, const Mat& b) { return a * b - b * a; }

inline Mat dagger(const Mat& a) { return a.adjoint(); }

/// Frobenius norm.
inline double fnorm(const Mat& a) { return a.norm(); }

}  // namespace isl
