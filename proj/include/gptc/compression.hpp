#pragma once

#include <Eigen/Dense>
#include <vector>

namespace gptc {

/// Result of rank-pivoting a probability table (rows = candidate effects,
/// columns = sampled states): a maximal linearly independent row subset and
/// the map reconstructing every row from the selected ones.
struct CompressionResult {
  std::vector<int> selected_rows;   // fiducial row indices, pivot order
  Eigen::MatrixXd reconstruction;   // rows x |selected|; table = R * selected
  int rank = 0;                     // = selected_rows.size(), the K estimate
  double max_residual = 0.0;        // reconstruction error on the table
};

/// Maximal linear compression of a probability table. Rank decisions use a
/// relative singular-value tolerance of 1e-8.
CompressionResult compress_to_fiducials(const Eigen::MatrixXd& table);

}  // namespace gptc
