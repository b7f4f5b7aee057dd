#pragma once

#include <memory>
#include <random>
#include <string>
#include <vector>

#include "gptc/engine.hpp"

namespace gptc {

/// Knobs for the randomized circuit generator used by the self-check suites
/// and the property tests.
struct GeneratorOptions {
  int max_operations = 8;
  // Norm-one preparations, trace-preserving gates and complete measurements
  // only (so probabilities over all outcome assignments sum to one).
  bool norm_preserving = false;
  bool allow_closed_ports = true;
  // Cap on the product of outcome-space sizes; beyond it operations become
  // single-outcome.
  long max_outcome_combinations = 64;
  std::vector<int> type_dims = {2};
  int max_frontier = 4;
};

struct GeneratedCircuit {
  std::unique_ptr<Theory> theory;
  BoundCircuit bound;
};

/// Random valid closed circuit for the named built-in theory. Deterministic
/// in the rng state.
GeneratedCircuit random_circuit(std::mt19937_64& rng,
                                const std::string& theory_name,
                                const GeneratorOptions& opts);

/// Haar-random unitary (QR of a complex Ginibre matrix).
Eigen::MatrixXcd random_unitary(int dim, std::mt19937_64& rng);

/// Random density matrix (normalized Wishart).
Eigen::MatrixXcd random_density_matrix(int dim, std::mt19937_64& rng);

/// Random point on the probability simplex.
Eigen::VectorXd random_simplex_point(int dim, std::mt19937_64& rng);

}  // namespace gptc
