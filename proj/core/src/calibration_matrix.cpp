#include "wbench/calibration_matrix.hpp"

#include <cmath>

#include "wbench/errors.hpp"

namespace wbench {

CalibrationMatrix CalibrationMatrix::identity(int n_qubits) {
  const Eigen::Index dim = Eigen::Index{1} << n_qubits;
  return {n_qubits, Eigen::MatrixXd::Identity(dim, dim)};
}

CalibrationMatrix CalibrationMatrix::from_row_major(int n_qubits,
                                                    std::span<const double> values) {
  if (n_qubits < 1 || n_qubits > 12) throw ContractViolation("calibration register size out of range");
  const Eigen::Index dim = Eigen::Index{1} << n_qubits;
  if (static_cast<Eigen::Index>(values.size()) != dim * dim) {
    throw ContractViolation("calibration matrix needs " + std::to_string(dim * dim) +
                            " entries, got " + std::to_string(values.size()));
  }
  CalibrationMatrix out{n_qubits, Eigen::MatrixXd(dim, dim)};
  for (Eigen::Index r = 0; r < dim; ++r) {
    for (Eigen::Index c = 0; c < dim; ++c) out.entries(r, c) = values[r * dim + c];
  }
  return out;
}

std::vector<double> CalibrationMatrix::row_major() const {
  std::vector<double> out;
  out.reserve(entries.size());
  for (Eigen::Index r = 0; r < entries.rows(); ++r) {
    for (Eigen::Index c = 0; c < entries.cols(); ++c) out.push_back(entries(r, c));
  }
  return out;
}

double CalibrationMatrix::max_column_sum_error() const {
  double worst = 0.0;
  for (Eigen::Index c = 0; c < entries.cols(); ++c) {
    worst = std::max(worst, std::abs(entries.col(c).sum() - 1.0));
  }
  return worst;
}

void CalibrationMatrix::validate(double tolerance) const {
  const Eigen::Index dim = Eigen::Index{1} << n_qubits;
  if (entries.rows() != dim || entries.cols() != dim) {
    throw ContractViolation("calibration matrix is not 2^n x 2^n");
  }
  if ((entries.array() < 0.0).any() || (entries.array() > 1.0).any()) {
    throw ContractViolation("calibration entries outside [0, 1]");
  }
  if (max_column_sum_error() > tolerance) {
    throw ContractViolation("calibration columns do not sum to 1");
  }
}

}  // namespace wbench
