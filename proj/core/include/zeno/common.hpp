#pragma once

#include <complex>
#include <stdexcept>

#include <Eigen/Dense>

namespace zeno {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

/// Input violates a documented precondition or type invariant.
class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// An iterative numerical scheme failed to reach its tolerance.
class ConvergenceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Largest absolute entry (0 for empty matrices).
double max_abs(const Matrix& x);

/// max_ij |(X - X†)_ij|
double hermiticity_defect(const Matrix& x);

bool is_finite(const Matrix& x);

}  // namespace zeno
