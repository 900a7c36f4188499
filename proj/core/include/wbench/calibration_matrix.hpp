#pragma once

#include <span>
#include <vector>

#include <Eigen/Dense>

namespace wbench {

/// Detector matrix: entry (i, j) is the probability of reading outcome i when
/// basis state j was prepared. Bit strings index rows and columns with the
/// first qubit as the most significant bit.
struct CalibrationMatrix {
  int n_qubits = 0;
  Eigen::MatrixXd entries;

  static CalibrationMatrix identity(int n_qubits);
  static CalibrationMatrix from_row_major(int n_qubits, std::span<const double> values);

  std::vector<double> row_major() const;
  double max_column_sum_error() const;
  // ContractViolation unless square of size 2^n, entries in [0,1] and
  // columns summing to 1 within `tolerance`.
  void validate(double tolerance = 1e-9) const;
  double mean_diagonal() const { return entries.diagonal().mean(); }
};

}  // namespace wbench
