#include "gptc/compression.hpp"

#include "gptc/error.hpp"

namespace gptc {

CompressionResult compress_to_fiducials(const Eigen::MatrixXd& table) {
  if (table.rows() == 0 || table.cols() == 0)
    throw Error("compress_to_fiducials: empty table");

  constexpr double kRankTol = 1e-8;

  // Column-pivoted QR of the transpose: pivot columns are the selected rows.
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(table.transpose());
  qr.setThreshold(kRankTol);
  const int rank = static_cast<int>(qr.rank());

  CompressionResult out;
  out.rank = rank;
  const auto& perm = qr.colsPermutation().indices();
  for (int i = 0; i < rank; ++i) out.selected_rows.push_back(perm[i]);

  Eigen::MatrixXd selected(rank, table.cols());
  for (int i = 0; i < rank; ++i)
    selected.row(i) = table.row(out.selected_rows[i]);

  // Least-squares coefficients expressing every row over the selected ones.
  Eigen::MatrixXd coeffs =
      selected.transpose()
          .colPivHouseholderQr()
          .solve(table.transpose())
          .transpose();
  out.reconstruction = coeffs;
  out.max_residual =
      (coeffs * selected - table).cwiseAbs().maxCoeff();
  return out;
}

}  // namespace gptc
