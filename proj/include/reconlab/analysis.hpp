#pragma once

#include <cstdint>
#include <optional>

#include "reconlab/bigint.hpp"

namespace reconlab {

/// Parameters of the lv-sum cost model. t0 = k*m_b bits per retry round,
/// t1 = t2 = 2n-1 bits for the closing sum exchange.
struct AnalysisParams {
  unsigned n = 0;
  unsigned k = 0;
  std::size_t m_b = 0;
  std::size_t d_a = 0;
  std::size_t r = 1000;   // round bound for the truncated expectation
  double c = 1.0;         // constant in the k = log2(d_a / c) heuristic
};

Int round_payload_bits(const AnalysisParams& p);  // t0
unsigned tail_field_bits(unsigned n);             // t1 = t2

/// Pr[h(x) = h(y)] for x != y under a uniform full-rank map:
/// (2^(n-k) - 1) / (2^n - 1), exact.
Rational collision_probability(unsigned n, unsigned k);

/// Per-round acceptance model: every one of the d_a difference elements must
/// avoid a collision, treated as independent: (1 - coll)^(d_a).
Rational accept_probability(unsigned n, unsigned k, std::size_t d_a);

/// Expected bits with the rounds capped at r:
/// sum_{i=0}^{r-1} p_n^i p_a ((i+1) t0 + t1) + t2, evaluated exactly.
Rational expected_bits_bounded(const AnalysisParams& p);

/// Expected bits with unbounded rounds: t0 / p_a + t1 + t2, in the
/// closed form k m_b (1 - coll)^(-d_a) + 4n - 2.
Rational expected_bits_unbounded(unsigned n, unsigned k, std::size_t m_b, std::size_t d_a);

/// Exact discrete argmin of the unbounded expectation over k in [1, n];
/// ties break toward smaller k. Requires d_a >= 1 and m_b >= 1.
unsigned optimal_k(unsigned n, std::size_t m_b, std::size_t d_a);

/// The paper-style continuous guess log2(d_a / c), unrounded.
double heuristic_k(std::size_t d_a, double c);

/// Model predictions and protocol measurements side by side.
struct SimulationReport {
  unsigned n = 0;
  unsigned k = 0;
  std::size_t m_b = 0;
  std::size_t d_a = 0;
  std::size_t m_0 = 0;
  std::size_t trials = 0;

  double model_p_a = 0;
  double model_bits_inf = 0;
  unsigned k_opt = 0;

  double p_hat = 0;        // fraction of runs accepting on their first round
  double rounds_mean = 0;  // mean retry rounds per run
  double bits_mean = 0;    // mean payload bits per run
  std::size_t capped_runs = 0;

  double rel_err = 0;      // |bits_mean - model_bits_inf| / model_bits_inf
};

/// Runs lv-sum on freshly sampled instances (sizes m_a = m_0 + d_a, m_b, m_0)
/// with per-trial seeds and reports empirical acceptance, rounds, and payload
/// next to the model values. Every outcome is checked against the sum oracle.
SimulationReport simulate_vs_formula(unsigned n, unsigned k, std::size_t m_b, std::size_t d_a,
                                     std::size_t trials, std::uint64_t seed,
                                     std::size_t m_0 = 0);

}  // namespace reconlab
