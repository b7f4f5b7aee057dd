#include "gptc/theorems.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <unsupported/Eigen/KroneckerProduct>

#include "gptc/classical.hpp"
#include "gptc/error.hpp"
#include "gptc/quantum.hpp"

namespace gptc {

namespace {

// Contracts the trailing factors with trace effects, leaving the leading
// `keep` factors.
StateVector reduce_to_prefix(const StateVector& state, std::size_t keep,
                             const Theory& theory) {
  SystemType head{std::vector<std::string>(
      state.system.factors.begin(), state.system.factors.begin() + keep)};
  SystemType tail{std::vector<std::string>(
      state.system.factors.begin() + keep, state.system.factors.end())};
  TransferMatrix contraction = tensor_compose(
      theory.identity(head),
      TransferMatrix::from_effect(theory.trace_effect(tail)), theory);
  return StateVector{head, contraction.z * state.p};
}

// Unit rows: the fiducial effect set of the system. Factorization residuals
// are bilinear in the two effects, so checking fiducial pairs checks all
// product effects.
std::vector<EffectVector> fiducial_effects(const SystemType& system,
                                           const Theory& theory) {
  const int k = theory.fiducial_count(system);
  std::vector<EffectVector> out;
  for (int i = 0; i < k; ++i) {
    Eigen::RowVectorXd r = Eigen::RowVectorXd::Zero(k);
    r[i] = 1.0;
    out.push_back(EffectVector{system, r});
  }
  return out;
}

}  // namespace

FactorizationReport check_factorization(
    const StateVector& joint, const std::vector<EffectVector>& effects_a,
    const std::vector<EffectVector>& effects_b, const Theory& theory) {
  if (effects_a.empty() || effects_b.empty())
    throw Error("check_factorization: empty effect list");
  const SystemType& sys_a = effects_a.front().system;
  const std::size_t split = sys_a.size();
  if (split == 0 || split >= joint.system.size())
    throw Error("check_factorization: effect systems do not split the state");
  SystemType head{std::vector<std::string>(
      joint.system.factors.begin(), joint.system.factors.begin() + split)};
  SystemType tail{std::vector<std::string>(
      joint.system.factors.begin() + split, joint.system.factors.end())};
  if (head != sys_a)
    throw Error("check_factorization: first block mismatch");
  for (const auto& e : effects_a)
    if (e.system != head)
      throw Error("check_factorization: first-block effect system mismatch");
  for (const auto& e : effects_b)
    if (e.system != tail)
      throw Error("check_factorization: second-block effect system mismatch");

  const Eigen::RowVectorXd tr_a = theory.trace_effect(head).r;
  const Eigen::RowVectorXd tr_b = theory.trace_effect(tail).r;

  FactorizationReport report;
  report.applicable =
      theory.is_homogeneous(reduce_to_prefix(joint, split, theory));
  report.joint_trace =
      Eigen::kroneckerProduct(tr_a, tr_b).eval() * joint.p;

  for (const auto& ea : effects_a) {
    const double p_a_only =
        Eigen::kroneckerProduct(ea.r, tr_b).eval() * joint.p;
    for (const auto& eb : effects_b) {
      const double p_b_only =
          Eigen::kroneckerProduct(tr_a, eb.r).eval() * joint.p;
      const double p_joint =
          Eigen::kroneckerProduct(ea.r, eb.r).eval() * joint.p;
      const double residual =
          std::abs(p_joint * report.joint_trace - p_a_only * p_b_only);
      report.max_violation = std::max(report.max_violation, residual);
      ++report.pairs_checked;
    }
  }
  return report;
}

DisjointIndependenceReport check_disjoint_independence(const BoundCircuit& c1,
                                                       const BoundCircuit& c2,
                                                       const Theory& theory) {
  BoundCircuit joint;
  joint.circuit = disjoint_union(c1.circuit, c2.circuit, "1:", "2:");
  for (const auto& [id, zs] : c1.matrices) joint.matrices["1:" + id] = zs;
  for (const auto& [id, zs] : c2.matrices) joint.matrices["2:" + id] = zs;
  for (const auto& [id, ms] : c1.cp_maps) joint.cp_maps["1:" + id] = ms;
  for (const auto& [id, ms] : c2.cp_maps) joint.cp_maps["2:" + id] = ms;

  DisjointIndependenceReport report;
  for (const auto& a1 : all_assignments(c1)) {
    const double p1 = evaluate_circuit(c1, a1, theory);
    for (const auto& a2 : all_assignments(c2)) {
      const double p2 = evaluate_circuit(c2, a2, theory);
      OutcomeAssignment both;
      for (const auto& [id, tok] : a1) both["1:" + id] = tok;
      for (const auto& [id, tok] : a2) both["2:" + id] = tok;
      const double p12 = evaluate_circuit(joint, both, theory);
      report.max_violation =
          std::max(report.max_violation, std::abs(p12 - p1 * p2));
      ++report.assignments_checked;
    }
  }
  return report;
}

namespace {

UncorrelatabilityReport classical_uncorrelatability(
    const StateVector& state, const ClassicalTheory& theory) {
  UncorrelatabilityReport report;
  report.homogeneous = theory.is_homogeneous(state);
  const std::string label = state.system.factors.front();
  const int n = theory.distinguishable_count(label);
  const SystemType pair{label, label};
  const auto effs = fiducial_effects(SystemType{label}, theory);

  if (report.homogeneous) {
    // Enumerate a grid of extensions with this marginal: all mass sits in
    // the support row, spread over the second factor.
    int support = 0;
    double mass = 0.0;
    for (int i = 0; i < state.p.size(); ++i)
      if (state.p[i] > 1e-12) {
        support = i;
        mass = state.p[i];
      }
    const int divisions = 6;
    std::vector<int> cells(n, 0);
    cells[0] = divisions;
    double worst = 0.0;
    int count = 0;
    // Walk all compositions of `divisions` into n cells.
    while (true) {
      Eigen::VectorXd joint = Eigen::VectorXd::Zero(n * n);
      for (int y = 0; y < n; ++y)
        joint[support * n + y] = mass * cells[y] / divisions;
      auto fact = check_factorization(StateVector{pair, joint}, effs, effs,
                                      theory);
      worst = std::max(worst, fact.max_violation);
      ++count;

      int i = n - 2;
      while (i >= 0 && cells[i] == 0) --i;
      if (i < 0) break;
      const int tail = cells[n - 1];
      cells[n - 1] = 0;
      --cells[i];
      cells[i + 1] = tail + 1;
    }
    report.extensions_checked = count;
    report.witness_violation = worst;
    report.confirmed = worst <= 1e-10;
    report.detail = "no correlated extension among grid extensions";
  } else {
    // Perfectly correlated diagonal extension of the decomposition.
    Eigen::VectorXd joint = Eigen::VectorXd::Zero(n * n);
    for (int i = 0; i < n; ++i) joint[i * n + i] = state.p[i];
    auto fact =
        check_factorization(StateVector{pair, joint}, effs, effs, theory);
    report.extensions_checked = 1;
    report.witness_violation = fact.max_violation;
    report.confirmed = fact.max_violation > 1e-10;
    report.detail = "diagonal correlation of the support decomposition";
  }
  return report;
}

UncorrelatabilityReport quantum_uncorrelatability(const StateVector& state,
                                                  const QuantumTheory& theory) {
  UncorrelatabilityReport report;
  report.homogeneous = theory.is_homogeneous(state);
  const std::string label = state.system.factors.front();
  const int n = theory.distinguishable_count(label);
  const SystemType pair{label, label};
  const auto effs = fiducial_effects(SystemType{label}, theory);
  const Eigen::MatrixXcd rho = theory.unembed_state(state);

  if (report.homogeneous) {
    // Rank-one marginal: every extension with this marginal is a product,
    // so sample product extensions and confirm factorization.
    std::mt19937_64 rng(11);
    std::normal_distribution<double> gauss;
    double worst = 0.0;
    for (int s = 0; s < 8; ++s) {
      Eigen::MatrixXcd g(n, n);
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) g(i, j) = {gauss(rng), gauss(rng)};
      Eigen::MatrixXcd other = g * g.adjoint();
      other /= other.trace().real();
      Eigen::MatrixXcd joint = Eigen::kroneckerProduct(rho, other).eval();
      auto fact = check_factorization(theory.embed_state(joint, pair), effs,
                                      effs, theory);
      worst = std::max(worst, fact.max_violation);
      ++report.extensions_checked;
    }
    report.witness_violation = worst;
    report.confirmed = worst <= 1e-10;
    report.detail = "product extensions with the given marginal factorize";
  } else {
    // Classically correlated mixture over the eigenbasis.
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(rho);
    Eigen::MatrixXcd joint =
        Eigen::MatrixXcd::Zero(n * n, n * n);
    for (int i = 0; i < n; ++i) {
      if (es.eigenvalues()[i] <= 1e-12) continue;
      Eigen::MatrixXcd vi =
          es.eigenvectors().col(i) * es.eigenvectors().col(i).adjoint();
      Eigen::MatrixXcd marker = Eigen::MatrixXcd::Zero(n, n);
      marker(i, i) = 1.0;
      joint += es.eigenvalues()[i] *
               Eigen::kroneckerProduct(vi, marker).eval();
    }
    auto fact = check_factorization(theory.embed_state(joint, pair), effs,
                                    effs, theory);
    report.extensions_checked = 1;
    report.witness_violation = fact.max_violation;
    report.confirmed = fact.max_violation > 1e-10;
    report.detail = "classically correlated mixture over the eigenbasis";
  }
  return report;
}

}  // namespace

UncorrelatabilityReport check_uncorrelatability(const StateVector& state,
                                                const Theory& theory) {
  if (state.system.size() != 1)
    throw Error("check_uncorrelatability: expected a single-wire state");
  if (const auto* cl = dynamic_cast<const ClassicalTheory*>(&theory))
    return classical_uncorrelatability(state, *cl);
  if (const auto* qu = dynamic_cast<const QuantumTheory*>(&theory))
    return quantum_uncorrelatability(state, *qu);
  throw Error("check_uncorrelatability: unsupported theory " + theory.name());
}

}  // namespace gptc
