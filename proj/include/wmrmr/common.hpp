#pragma once

#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace wmrmr {

// Row-major so that a sample is contiguous in memory.
using Matrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using Vector = Eigen::VectorXd;

// Malformed input data: unreadable files, bad cells, invariant violations.
class DataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace wmrmr
