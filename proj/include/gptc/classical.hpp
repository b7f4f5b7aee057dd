#pragma once

#include "gptc/theory.hpp"

namespace gptc {

/// Classical probability theory: K = N, states are subnormalized probability
/// columns, transformations are substochastic matrices (nonnegative entries,
/// column sums at most one). Norm-preserving gates are stochastic.
class ClassicalTheory : public Theory {
 public:
  ClassicalTheory() = default;

  const std::string& name() const override;
  void declare_type(const std::string& label, int n) override;
  int fiducial_count(const std::string& label) const override;
  using Theory::fiducial_count;

  EffectVector trace_effect(const SystemType& system) const override;
  StateVector closure_state(const std::string& label) const override;
  ValidationReport validate_transfer(const TransferMatrix& z) const override;
  bool is_homogeneous(const StateVector& state) const override;
  std::vector<TransferMatrix> make_gate(const GateSpec& gate,
                                        const SystemType& in,
                                        const SystemType& out) const override;
  std::vector<std::string> gate_names() const override;
};

/// Wraps a raw matrix as a classical transfer matrix, rejecting negative
/// entries and column sums above one.
TransferMatrix classical_transfer_matrix(const Eigen::MatrixXd& m,
                                         const SystemType& in,
                                         const SystemType& out,
                                         std::string label = {});

}  // namespace gptc
