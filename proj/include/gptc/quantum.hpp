#pragma once

#include <Eigen/Dense>
#include <map>
#include <vector>

#include "gptc/theory.hpp"

namespace gptc {

/// Fixed informationally complete operator set for dimension N: the N basis
/// projectors |i><i| plus, for each i<j, the projectors onto (|i>+|j>)/sqrt2
/// and (|i>+i|j>)/sqrt2 - N*N positive operators spanning the Hermitians.
/// States embed as p = Tr(P rho); the Gram inverse undoes the embedding.
struct QuantumFiducialBasis {
  int dim = 0;
  std::vector<Eigen::MatrixXcd> ops;
  Eigen::MatrixXd gram;
  Eigen::MatrixXd gram_inv;

  static QuantumFiducialBasis canonical(int n);
  /// Kronecker-product basis over several factors, in row-major index order.
  static QuantumFiducialBasis product(
      const std::vector<const QuantumFiducialBasis*>& parts);

  Eigen::VectorXd embed(const Eigen::MatrixXcd& rho) const;
  Eigen::MatrixXcd unembed(const Eigen::VectorXd& p) const;
};

/// Completely positive map between Hilbert spaces, held as a Choi matrix
/// with row-major (input, output) index blocks.
struct CPMap {
  int in_dim = 1;
  int out_dim = 1;
  Eigen::MatrixXcd choi;

  static CPMap from_kraus(int in_dim, int out_dim,
                          const std::vector<Eigen::MatrixXcd>& kraus);
  static CPMap identity(int dim);

  Eigen::MatrixXcd apply(const Eigen::MatrixXcd& rho) const;
  CPMap compose_after(const CPMap& first) const;  // this(first(rho))
  std::vector<Eigen::MatrixXcd> kraus_operators(double tol = 1e-12) const;

  /// Positive semidefinite Choi and partial trace over the output at most
  /// the identity: completely positive, completely trace non-increasing.
  ValidationReport validate() const;
};

/// Fiducial-space matrix of a CP map. Throws Error when the map fails
/// CPMap::validate().
TransferMatrix quantum_transfer_matrix(const CPMap& map,
                                       const QuantumFiducialBasis& basis_in,
                                       const QuantumFiducialBasis& basis_out,
                                       const SystemType& in,
                                       const SystemType& out,
                                       std::string label = {});

/// Inverse of the embedding: the Choi matrix of the map a transfer matrix
/// represents (used to check validity of arbitrary matrices).
CPMap choi_from_transfer(const TransferMatrix& z,
                         const QuantumFiducialBasis& basis_in,
                         const QuantumFiducialBasis& basis_out);

/// Quantum theory: K = N^2, transformations are fiducial embeddings of
/// completely positive, completely trace non-increasing maps.
class QuantumTheory : public Theory {
 public:
  QuantumTheory() = default;

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

  /// Shared basis for a dimension (built on first type declaration).
  const QuantumFiducialBasis& basis(int dim) const;
  /// Product basis over the system's factors.
  QuantumFiducialBasis system_basis(const SystemType& system) const;
  int hilbert_dim(const SystemType& system) const;

  StateVector embed_state(const Eigen::MatrixXcd& rho,
                          const SystemType& system) const;
  Eigen::MatrixXcd unembed_state(const StateVector& state) const;

  /// Per-outcome CP maps of a named gate (the same decomposition make_gate
  /// embeds); used by the density-matrix reference simulator.
  std::vector<CPMap> make_gate_maps(const GateSpec& gate, const SystemType& in,
                                    const SystemType& out) const;

 private:
  std::map<int, QuantumFiducialBasis> bases_;
};

}  // namespace gptc
