#pragma once

#include <cstdint>
#include <string>

namespace gptc {

/// Fiducial-count formulas K(N) of the four model theories. Only the
/// classical and quantum models are evaluable; the real and quaternionic
/// models exist at the counting level.
enum class CountingModel {
  classical,          // K = N
  quantum,            // K = N^2
  real_quantum,       // K = N + N(N-1)/2
  quaternionic_quantum,  // K = N + 2N(N-1)
};

CountingModel counting_model_from_name(const std::string& name);
const char* to_string(CountingModel model);

std::int64_t counting_K(CountingModel model, int n);

/// Composite counting with N_ab = N_a * N_b: compares K(N_a N_b) against
/// K(N_a) K(N_b). Composites need at least as many fiducial probabilities
/// as their parts supply independently (K_ab >= K_a K_b); equality is
/// exactly local tomography.
struct CompositeCountingReport {
  CountingModel model;
  int n_a = 0;
  int n_b = 0;
  std::int64_t k_a = 0;
  std::int64_t k_b = 0;
  std::int64_t k_ab = 0;
  char relation = '=';          // '<', '=', '>' of k_ab vs k_a*k_b
  bool bound_satisfied = true;  // k_ab >= k_a*k_b
  bool locally_tomographic = false;
};

CompositeCountingReport composite_counting_check(CountingModel model, int n_a,
                                                 int n_b);

/// Numerical rank of the span of random product states, for the evaluable
/// models plus real-quantum (vectorized over the real-symmetric basis).
/// Uses the given deterministic seed.
int product_state_span_rank(CountingModel model, int n_a, int n_b,
                            int sample_count, unsigned seed = 7);

}  // namespace gptc
