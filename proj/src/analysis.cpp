#include "reconlab/analysis.hpp"

#include <cmath>
#include <stdexcept>

#include "reconlab/engine.hpp"
#include "reconlab/rng.hpp"

namespace reconlab {

namespace {

void check_widths(unsigned n, unsigned k) {
  if (n < 1 || n > 64) throw std::invalid_argument("n must be in [1, 64]");
  if (k < 1 || k > n) throw std::invalid_argument("k must be in [1, n]");
}

}  // namespace

Int round_payload_bits(const AnalysisParams& p) { return Int(p.k) * p.m_b; }

unsigned tail_field_bits(unsigned n) { return 2 * n - 1; }

Rational collision_probability(unsigned n, unsigned k) {
  check_widths(n, k);
  return Rational(pow2(n - k) - 1, pow2(n) - 1);
}

Rational accept_probability(unsigned n, unsigned k, std::size_t d_a) {
  check_widths(n, k);
  const Rational no_collision = 1 - collision_probability(n, k);
  Rational p = 1;
  for (std::size_t i = 0; i < d_a; ++i) p *= no_collision;
  return p;
}

Rational expected_bits_bounded(const AnalysisParams& p) {
  check_widths(p.n, p.k);
  if (p.r < 1) throw std::invalid_argument("round bound must be >= 1");

  const Int t0 = round_payload_bits(p);
  const Int t1 = tail_field_bits(p.n);
  const Int t2 = t1;

  const Rational pa = accept_probability(p.n, p.k, p.d_a);
  const Int a = boost::multiprecision::numerator(pa);
  const Int b = boost::multiprecision::denominator(pa);
  const Int pn_num = b - a;  // p_n = (b - a) / b

  // Accumulate sum_{i=0}^{r-1} p_n^i p_a ((i+1) t0 + t1) over the common
  // denominator b^r; w walks through pn_num^i * b^(r-1-i) by exact division.
  Int w = boost::multiprecision::pow(b, static_cast<unsigned>(p.r - 1));
  Int numerator = 0;
  for (std::size_t i = 0; i < p.r; ++i) {
    numerator += w * a * (Int(i + 1) * t0 + t1);
    if (i + 1 < p.r) {
      w /= b;
      w *= pn_num;
    }
  }
  return Rational(numerator, boost::multiprecision::pow(b, static_cast<unsigned>(p.r))) + t2;
}

Rational expected_bits_unbounded(unsigned n, unsigned k, std::size_t m_b, std::size_t d_a) {
  check_widths(n, k);
  const Rational no_collision = 1 - collision_probability(n, k);
  Rational inv_pa = 1;
  for (std::size_t i = 0; i < d_a; ++i) inv_pa /= no_collision;
  return Rational(Int(k) * m_b) * inv_pa + (4 * n - 2);
}

unsigned optimal_k(unsigned n, std::size_t m_b, std::size_t d_a) {
  if (d_a < 1 || m_b < 1)
    throw std::invalid_argument("optimal_k needs d_a >= 1 and m_b >= 1");
  unsigned best_k = 1;
  Rational best = expected_bits_unbounded(n, 1, m_b, d_a);
  for (unsigned k = 2; k <= n; ++k) {
    const Rational v = expected_bits_unbounded(n, k, m_b, d_a);
    if (v < best) {
      best = v;
      best_k = k;
    }
  }
  return best_k;
}

double heuristic_k(std::size_t d_a, double c) {
  if (d_a < 1) throw std::invalid_argument("heuristic_k: d_a must be >= 1");
  if (!(c > 0)) throw std::invalid_argument("heuristic_k: c must be positive");
  return std::log2(static_cast<double>(d_a) / c);
}

SimulationReport simulate_vs_formula(unsigned n, unsigned k, std::size_t m_b, std::size_t d_a,
                                     std::size_t trials, std::uint64_t seed, std::size_t m_0) {
  check_widths(n, k);
  if (trials < 1) throw std::invalid_argument("trials must be >= 1");
  if (m_0 > m_b) throw std::invalid_argument("m_0 must not exceed m_b");
  const std::size_t m_a = m_0 + d_a;
  if (Int(m_a) + m_b - m_0 > pow2(n))
    throw std::invalid_argument("sets do not fit in 2^n values");

  SimulationReport rep;
  rep.n = n;
  rep.k = k;
  rep.m_b = m_b;
  rep.d_a = d_a;
  rep.m_0 = m_0;
  rep.trials = trials;
  rep.model_p_a = static_cast<double>(accept_probability(n, k, d_a));
  rep.model_bits_inf = static_cast<double>(expected_bits_unbounded(n, k, m_b, d_a));
  rep.k_opt = d_a >= 1 && m_b >= 1 ? optimal_k(n, m_b, d_a) : k;

  RunOptions opts;
  opts.hash_width = k;

  std::size_t first_round_accepts = 0;
  double rounds_sum = 0;
  double bits_sum = 0;
  std::size_t completed = 0;
  for (std::size_t t = 0; t < trials; ++t) {
    const Instance inst = random_instance(n, m_a, m_b, m_0, mix_seed(seed, 2 * t));
    const Outcome out = run_protocol("lv-sum", inst, mix_seed(seed, 2 * t + 1), opts);
    if (out.status != RunStatus::Ok) {
      ++rep.capped_runs;
      continue;
    }
    if (!out.oracle_match) throw std::logic_error("lv-sum disagreed with the sum oracle");
    ++completed;
    first_round_accepts += out.loop_rounds == 1;
    rounds_sum += static_cast<double>(out.loop_rounds);
    bits_sum += static_cast<double>(out.transcript.payload_bits());
  }
  if (completed > 0) {
    rep.p_hat = static_cast<double>(first_round_accepts) / static_cast<double>(completed);
    rep.rounds_mean = rounds_sum / static_cast<double>(completed);
    rep.bits_mean = bits_sum / static_cast<double>(completed);
    rep.rel_err = std::abs(rep.bits_mean - rep.model_bits_inf) / rep.model_bits_inf;
  }
  return rep;
}

}  // namespace reconlab
