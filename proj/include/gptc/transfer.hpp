#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "gptc/system_type.hpp"

namespace gptc {

class Theory;

/// Fiducial-probability vector of a preparation: entry beta is the joint
/// probability of the preparation succeeding and fiducial effect beta firing.
struct StateVector {
  SystemType system;
  Eigen::VectorXd p;
};

/// Dual vector: r * p is the probability of the effect on state p.
struct EffectVector {
  SystemType system;
  Eigen::RowVectorXd r;
};

/// K_out x K_in matrix of a transformation between fiducial spaces. Columns
/// (null input) are states, rows (null output) are effects.
struct TransferMatrix {
  SystemType input;
  SystemType output;
  Eigen::MatrixXd z;
  std::string label;

  StateVector as_state() const;
  EffectVector as_effect() const;

  static TransferMatrix from_state(const StateVector& s,
                                   std::string label = {});
  static TransferMatrix from_effect(const EffectVector& e,
                                    std::string label = {});
};

/// Sequential composition second * first (types must match in the middle).
TransferMatrix sequential_compose(const TransferMatrix& second,
                                  const TransferMatrix& first);

/// Parallel composition: Kronecker product in row-major fiducial-index order
/// over the concatenated factor lists. Requires a locally tomographic theory.
TransferMatrix tensor_compose(const TransferMatrix& z1,
                              const TransferMatrix& z2, const Theory& theory);

/// Square 0/1 matrix reindexing the product fiducial space of `factors` so
/// that factor j of the result is factor perm[j] of the input. Applying it
/// to a tensor product of states permutes the factors accordingly.
TransferMatrix wire_permutation_matrix(const Theory& theory,
                                       const SystemType& factors,
                                       const std::vector<int>& perm);

/// Entrywise sum over outcome variants sharing input/output systems; the
/// label records the merged outcome set.
TransferMatrix coarse_grain(const std::vector<TransferMatrix>& zs);

/// Entrywise sum of weighted states; weights must be nonnegative with total
/// at most one.
StateVector mix_states(const std::vector<StateVector>& states,
                       const std::vector<double>& weights);

}  // namespace gptc
