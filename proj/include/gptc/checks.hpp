#pragma once

#include <string>
#include <vector>

#include "gptc/engine.hpp"

namespace gptc {

struct CheckResult {
  std::string name;
  std::string status;  // "pass", "fail" or "not-applicable"
  double measured = 0.0;
  double tolerance = 0.0;
  std::string detail;
  double runtime_ms = 0.0;

  bool passed() const { return status != "fail"; }
};

struct SuiteOptions {
  unsigned long seed = 20260810;
  int size = 1;  // budget multiplier
};

// ---- scan primitives (also driven directly by the acceptance suite) ----

struct FoliationScan {
  int circuits = 0;
  int foliations = 0;
  double max_spread = 0.0;      // probability disagreement across foliations
  int structure_failures = 0;   // hypersurface/order/coverage violations
};

/// Evaluates random circuits under every enumerated complete foliation,
/// alternating classical and quantum theories per circuit.
FoliationScan foliation_independence_scan(unsigned long seed, int n_circuits,
                                          int max_operations,
                                          std::size_t foliation_limit = 1000);

/// Compares the foliation enumerator against brute force over operation
/// orderings; returns the number of mismatching circuits.
int foliation_enumeration_mismatches(unsigned long seed, int n_circuits,
                                     int max_operations);

/// Max |engine - enumeration oracle| over random classical circuits.
double classical_oracle_scan(unsigned long seed, int n_circuits,
                             int max_operations, int assignments_per_circuit);

/// Max |engine - density-matrix oracle| over random quantum circuits.
double quantum_oracle_scan(unsigned long seed, int n_circuits,
                           int max_operations, int assignments_per_circuit);

/// Max |sum over assignments - 1| over random norm-preserving circuits.
double normalization_scan(unsigned long seed, int n_circuits,
                          int max_operations);

/// Max |p(union) - p1*p2| over random disjoint circuit pairs.
double disjoint_independence_scan(unsigned long seed, int n_pairs,
                                  int max_operations);

/// Max factorization violation over embedded pure x mixed product states.
double pure_product_factorization_scan(unsigned long seed, int n_states);

/// Max |unembed(embed(rho)) - rho| over random density matrices.
double embedding_roundtrip_scan(unsigned long seed, int n_samples, int dim);

/// Max |Z(g after f) - Z(g) Z(f)| over random channel pairs.
double functoriality_scan(unsigned long seed, int n_pairs, int dim);

struct CompressionScan {
  int recovered_rank = 0;
  double heldout_error = 0.0;
};

/// Rank recovery from a randomized state/effect probability table, plus
/// reconstruction error on held-out effects.
CompressionScan compression_scan(unsigned long seed, const std::string& theory,
                                 int n, int n_states, int n_effects);

/// Max |sum-eval - coarse-grained-eval| over random circuits.
double coarse_grain_consistency_scan(unsigned long seed, int n_circuits);

/// Max |fragment(gate alongside lone wire) - gate x identity| over random
/// single-wire gates.
double identity_padding_scan(unsigned long seed, int n_samples);

// ---- named suites (CLI `check`) ----

std::vector<CheckResult> run_foliation_suite(const SuiteOptions& opts);
std::vector<CheckResult> run_theorems_suite(const SuiteOptions& opts);
std::vector<CheckResult> run_oracles_suite(const SuiteOptions& opts);

}  // namespace gptc
