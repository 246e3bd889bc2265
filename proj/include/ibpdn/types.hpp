#pragma once

#include <Eigen/Dense>

#include <stdexcept>

namespace ibpdn {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
using Index = Eigen::Index;

/// Failure of a numerical procedure (e.g. SVD non-convergence), as opposed
/// to a precondition violation which throws std::invalid_argument.
struct NumericalError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace ibpdn
