#include "gptc/transfer.hpp"

#include <unsupported/Eigen/KroneckerProduct>

#include "gptc/error.hpp"
#include "gptc/theory.hpp"

namespace gptc {

StateVector TransferMatrix::as_state() const {
  if (!input.is_null())
    throw Error("as_state: transfer matrix has a non-null input system");
  return StateVector{output, z.col(0)};
}

EffectVector TransferMatrix::as_effect() const {
  if (!output.is_null())
    throw Error("as_effect: transfer matrix has a non-null output system");
  return EffectVector{input, z.row(0)};
}

TransferMatrix TransferMatrix::from_state(const StateVector& s,
                                          std::string label) {
  TransferMatrix out;
  out.input = SystemType{};
  out.output = s.system;
  out.z = s.p;
  out.label = std::move(label);
  return out;
}

TransferMatrix TransferMatrix::from_effect(const EffectVector& e,
                                           std::string label) {
  TransferMatrix out;
  out.input = e.system;
  out.output = SystemType{};
  out.z = e.r;
  out.label = std::move(label);
  return out;
}

TransferMatrix sequential_compose(const TransferMatrix& second,
                                  const TransferMatrix& first) {
  if (second.input != first.output)
    throw Error("sequential_compose: middle systems differ (" +
                second.input.str() + " vs " + first.output.str() + ")");
  TransferMatrix out;
  out.input = first.input;
  out.output = second.output;
  out.z = second.z * first.z;
  out.label = second.label + "." + first.label;
  return out;
}

TransferMatrix tensor_compose(const TransferMatrix& z1,
                              const TransferMatrix& z2, const Theory& theory) {
  TransferMatrix out;
  out.input = concat(z1.input, z2.input);
  out.output = concat(z1.output, z2.output);
  if (theory.fiducial_count(out.input) != z1.z.cols() * z2.z.cols() ||
      theory.fiducial_count(out.output) != z1.z.rows() * z2.z.rows())
    throw Error("tensor_compose: shapes do not match the theory's counts");
  out.z = Eigen::kroneckerProduct(z1.z, z2.z);
  out.label = z1.label.empty() || z2.label.empty()
                  ? z1.label + z2.label
                  : z1.label + "&" + z2.label;
  return out;
}

TransferMatrix wire_permutation_matrix(const Theory& theory,
                                       const SystemType& factors,
                                       const std::vector<int>& perm) {
  const std::size_t n = factors.size();
  if (perm.size() != n)
    throw Error("wire_permutation_matrix: permutation length mismatch");
  std::vector<bool> seen(n, false);
  for (int j : perm) {
    if (j < 0 || j >= static_cast<int>(n) || seen[j])
      throw Error("wire_permutation_matrix: not a permutation");
    seen[j] = true;
  }

  std::vector<int> dims(n);
  int total = 1;
  for (std::size_t i = 0; i < n; ++i) {
    dims[i] = theory.fiducial_count(factors.factors[i]);
    total *= dims[i];
  }

  SystemType out_type;
  std::vector<int> out_dims(n);
  for (std::size_t j = 0; j < n; ++j) {
    out_type.factors.push_back(factors.factors[perm[j]]);
    out_dims[j] = dims[perm[j]];
  }

  TransferMatrix out;
  out.input = factors;
  out.output = out_type;
  out.label = "perm";
  out.z = Eigen::MatrixXd::Zero(total, total);

  std::vector<int> idx(n, 0);
  for (int col = 0; col < total; ++col) {
    // Row-major multi-index of `col` in the source dims, permuted into the
    // target dims.
    int row = 0;
    for (std::size_t j = 0; j < n; ++j) row = row * out_dims[j] + idx[perm[j]];
    out.z(row, col) = 1.0;
    for (int i = static_cast<int>(n) - 1; i >= 0; --i) {
      if (++idx[i] < dims[i]) break;
      idx[i] = 0;
    }
  }
  return out;
}

TransferMatrix coarse_grain(const std::vector<TransferMatrix>& zs) {
  if (zs.empty()) throw Error("coarse_grain: empty outcome list");
  TransferMatrix out = zs.front();
  std::string merged = "{" + zs.front().label;
  for (std::size_t i = 1; i < zs.size(); ++i) {
    const auto& z = zs[i];
    if (z.input != out.input || z.output != out.output ||
        z.z.rows() != out.z.rows() || z.z.cols() != out.z.cols())
      throw Error("coarse_grain: outcome matrices have mismatched systems");
    out.z += z.z;
    merged += "," + z.label;
  }
  out.label = merged + "}";
  return out;
}

StateVector mix_states(const std::vector<StateVector>& states,
                       const std::vector<double>& weights) {
  if (states.empty()) throw Error("mix_states: empty mixture");
  if (states.size() != weights.size())
    throw Error("mix_states: weight count mismatch");
  constexpr double tol = 1e-12;
  double total = 0.0;
  for (double w : weights) {
    if (w < -tol) throw Error("mix_states: negative weight");
    total += w;
  }
  if (total > 1.0 + 1e-10) throw Error("mix_states: weights sum above one");

  StateVector out;
  out.system = states.front().system;
  out.p = Eigen::VectorXd::Zero(states.front().p.size());
  for (std::size_t i = 0; i < states.size(); ++i) {
    if (states[i].system != out.system || states[i].p.size() != out.p.size())
      throw Error("mix_states: states live on different systems");
    out.p += weights[i] * states[i].p;
  }
  return out;
}

}  // namespace gptc
