#pragma once

#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace qmeix {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealMatrix = Eigen::MatrixXd;
using RealVector = Eigen::VectorXd;

inline constexpr Complex kI{0.0, 1.0};
inline constexpr double kPi = 3.14159265358979323846;

enum class Family { Bose, Fermi };

// Requested dimension or mode count exceeds the configured guard.
class resource_limit_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Continuous branch selection failed (phase step too large after refinement).
class branch_tracking_error : public std::runtime_error {
 public:
  branch_tracking_error(const std::string& what, double t)
      : std::runtime_error(what), t_fail(t) {}
  double t_fail;
};

// A numerical precondition or invariant was violated at run time.
class numerical_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class singular_matrix_error : public numerical_error {
 public:
  using numerical_error::numerical_error;
};

}  // namespace qmeix
