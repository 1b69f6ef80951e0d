#pragma once

#include <Eigen/Dense>

#include <stdexcept>
#include <string>

namespace jofc {

using Index = Eigen::Index;

template <typename Scalar>
using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

template <typename Scalar>
using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

/// Raised on contract violations: malformed input, degenerate configurations,
/// preconditions that do not hold.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// An Error tagged with the pipeline stage that produced it.
class StageError : public Error {
public:
  StageError(std::string stage, const std::string& what)
      : Error(stage + ": " + what), stage_(std::move(stage)) {}

  const std::string& stage() const noexcept { return stage_; }

private:
  std::string stage_;
};

} // namespace jofc
