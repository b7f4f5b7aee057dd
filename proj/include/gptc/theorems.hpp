#pragma once

#include <string>
#include <vector>

#include "gptc/engine.hpp"

namespace gptc {

/// Joint-probability factorization over a bipartite state: checks
/// p(a,b) * p(-,-) = p(a,-) * p(-,b) for every supplied effect pair, where
/// '-' is the trace effect. The identity is guaranteed when the reduced
/// state of the first block is homogeneous; `applicable` records whether
/// that hypothesis holds.
struct FactorizationReport {
  bool applicable = false;
  double joint_trace = 0.0;   // p(-,-)
  double max_violation = 0.0;
  int pairs_checked = 0;

  bool holds(double tol = 1e-10) const { return max_violation <= tol; }
};

/// The first block of `joint` is effects_a[0].system; the rest is the
/// second block. All effects must live on their block's system.
FactorizationReport check_factorization(
    const StateVector& joint, const std::vector<EffectVector>& effects_a,
    const std::vector<EffectVector>& effects_b, const Theory& theory);

/// Probability independence of disjoint circuits: p(c1 with c2 alongside)
/// equals p(c1) * p(c2) for every joint outcome assignment.
struct DisjointIndependenceReport {
  double max_violation = 0.0;
  int assignments_checked = 0;

  bool holds(double tol = 1e-10) const { return max_violation <= tol; }
};

DisjointIndependenceReport check_disjoint_independence(const BoundCircuit& c1,
                                                       const BoundCircuit& c2,
                                                       const Theory& theory);

/// Homogeneity vs correlatability: a homogeneous state admits no correlated
/// extension (checked over a family of extensions with the right marginal);
/// a heterogeneous state does (an explicitly correlated one is built and a
/// non-factorizing effect pair exhibited).
struct UncorrelatabilityReport {
  bool homogeneous = false;
  bool confirmed = false;
  double witness_violation = 0.0;
  int extensions_checked = 0;
  std::string detail;
};

UncorrelatabilityReport check_uncorrelatability(const StateVector& state,
                                                const Theory& theory);

}  // namespace gptc
