#include <doctest.h>

#include <random>

#include "gptc/compression.hpp"
#include "gptc/error.hpp"
#include "gptc/generator.hpp"
#include "gptc/quantum.hpp"

using namespace gptc;

TEST_CASE("two-state classical table compresses to rank two") {
  std::mt19937_64 rng(3);
  const int n_states = 12;
  Eigen::MatrixXd states(2, n_states);
  for (int s = 0; s < n_states; ++s)
    states.col(s) = random_simplex_point(2, rng);
  // all deterministic effects on one bit: 0, {0}, {1}, {0,1}
  Eigen::MatrixXd effects(4, 2);
  effects << 0, 0, 1, 0, 0, 1, 1, 1;
  auto result = compress_to_fiducials(effects * states);
  CHECK(result.rank == 2);
  CHECK(result.selected_rows.size() == 2);
  CHECK(result.max_residual < 1e-12);
}

TEST_CASE("an informationally complete qubit table compresses to rank four") {
  std::mt19937_64 rng(5);
  auto basis = QuantumFiducialBasis::canonical(2);
  const int n_states = 20;
  Eigen::MatrixXd states(4, n_states);
  for (int s = 0; s < n_states; ++s)
    states.col(s) = basis.embed(random_density_matrix(2, rng));
  // rows: probabilities of the four fiducial projectors plus some repeats
  Eigen::MatrixXd effects(6, 4);
  effects.setZero();
  for (int i = 0; i < 4; ++i) effects(i, i) = 1.0;
  effects.row(4) = effects.row(0) + effects.row(1);
  effects.row(5) = 0.5 * effects.row(2);
  auto result = compress_to_fiducials(effects * states);
  CHECK(result.rank == 4);
}

TEST_CASE("duplicated rows leave the rank unchanged") {
  Eigen::MatrixXd table(4, 3);
  table << 1, 2, 3, 1, 2, 3, 0, 1, 0, 0, 1, 0;
  auto result = compress_to_fiducials(table);
  CHECK(result.rank == 2);
  // reconstruction expresses every row over the selected two
  CHECK(result.reconstruction.rows() == 4);
  CHECK(result.reconstruction.cols() == 2);
  CHECK(result.max_residual < 1e-12);
}

TEST_CASE("empty tables are rejected") {
  CHECK_THROWS_AS(compress_to_fiducials(Eigen::MatrixXd(0, 0)), Error);
}

TEST_CASE("near-dependent rows respect the rank tolerance") {
  Eigen::MatrixXd table(3, 3);
  table << 1.0, 0.0, 0.0,  //
      0.0, 1.0, 0.0,       //
      1.0, 1.0, 1e-12;     // dependent up to noise below tolerance
  auto result = compress_to_fiducials(table);
  CHECK(result.rank == 2);
}
