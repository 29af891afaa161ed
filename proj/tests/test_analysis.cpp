#include <doctest.h>

#include <cmath>

#include "reconlab/analysis.hpp"
#include "reconlab/gf2_hash.hpp"

using namespace reconlab;

namespace {

// Term-by-term reference for the truncated expectation, kept deliberately
// naive and separate from the production evaluation path.
Rational naive_bounded(unsigned n, unsigned k, std::size_t m_b, std::size_t d_a,
                       std::size_t r) {
  const Rational pa = accept_probability(n, k, d_a);
  const Rational pn = 1 - pa;
  const Rational t0 = Int(k) * m_b;
  const Rational t1 = 2 * n - 1;
  Rational total = t1;  // t2
  Rational pn_pow = 1;
  for (std::size_t i = 0; i < r; ++i) {
    total += pn_pow * pa * (Rational(i + 1) * t0 + t1);
    pn_pow *= pn;
  }
  return total;
}

}  // namespace

TEST_CASE("collision probability: exact values") {
  CHECK(collision_probability(5, 5) == 0);
  CHECK(collision_probability(3, 2) == Rational(1, 7));
  CHECK(collision_probability(8, 4) == Rational(1, 17));  // 15/255
  CHECK(collision_probability(4, 2) == Rational(1, 5));
  CHECK_THROWS_AS(collision_probability(4, 5), std::invalid_argument);
  CHECK_THROWS_AS(collision_probability(4, 0), std::invalid_argument);
}

TEST_CASE("collision probability equals the exhaustive full-rank enumeration at (3,2)") {
  // All 42 full-rank 2x3 matrices against all 28 unordered input pairs.
  std::uint64_t collisions = 0, pairs = 0;
  std::vector<std::uint64_t> rows(2);
  for (rows[0] = 0; rows[0] < 8; ++rows[0])
    for (rows[1] = 0; rows[1] < 8; ++rows[1]) {
      if (gf2_rank(rows) != 2) continue;
      const LinearHash h(3, 2, rows);
      for (std::uint64_t x = 0; x < 8; ++x)
        for (std::uint64_t y = x + 1; y < 8; ++y) {
          ++pairs;
          collisions += h.apply(x) == h.apply(y);
        }
    }
  CHECK(collision_probability(3, 2) == Rational(collisions, pairs));
}

TEST_CASE("acceptance probability: exact values") {
  CHECK(accept_probability(7, 3, 0) == 1);
  CHECK(accept_probability(3, 2, 1) == Rational(6, 7));
  CHECK(accept_probability(4, 2, 2) == Rational(16, 25));  // (4/5)^2 = 0.64
  const Rational pa = accept_probability(9, 4, 5);
  CHECK(pa > 0);
  CHECK(pa <= 1);
  CHECK(pa + (1 - pa) == 1);
}

TEST_CASE("acceptance probability is increasing in k") {
  for (unsigned n : {6u, 10u})
    for (std::size_t d_a : {1u, 4u})
      for (unsigned k = 1; k + 1 <= n; ++k)
        CHECK(accept_probability(n, k, d_a) < accept_probability(n, k + 1, d_a));
}

TEST_CASE("bounded expectation: closed cases") {
  // r = 1 collapses to p_a (t0 + t1) + t2.
  AnalysisParams p{.n = 6, .k = 3, .m_b = 7, .d_a = 2, .r = 1};
  const Rational pa = accept_probability(6, 3, 2);
  CHECK(expected_bits_bounded(p) == pa * (3 * 7 + 11) + 11);

  // d_a = 0 collapses to t0 + t1 + t2 for every r.
  for (std::size_t r : {1u, 5u, 100u}) {
    AnalysisParams q{.n = 8, .k = 2, .m_b = 10, .d_a = 0, .r = r};
    CHECK(expected_bits_bounded(q) == 2 * 10 + 4 * 8 - 2);
  }
}

TEST_CASE("bounded expectation matches the naive term sum") {
  for (const auto& [n, k, m_b, d_a] :
       std::vector<std::tuple<unsigned, unsigned, std::size_t, std::size_t>>{
           {4, 2, 5, 2}, {8, 3, 20, 4}, {6, 1, 3, 5}, {10, 5, 12, 1}}) {
    for (std::size_t r : {1u, 2u, 7u, 30u}) {
      AnalysisParams p{.n = n, .k = k, .m_b = m_b, .d_a = d_a, .r = r};
      CHECK(expected_bits_bounded(p) == naive_bounded(n, k, m_b, d_a, r));
    }
  }
}

TEST_CASE("bounded expectation is monotone in r and approaches the unbounded value") {
  AnalysisParams p{.n = 8, .k = 3, .m_b = 20, .d_a = 4, .r = 1};
  const Rational e_inf = expected_bits_unbounded(8, 3, 20, 4);
  Rational prev = -1;
  for (std::size_t r = 1; r <= 12; ++r) {
    p.r = r;
    const Rational e_r = expected_bits_bounded(p);
    CHECK(e_r > prev);
    CHECK(e_r < e_inf);
    prev = e_r;
  }
  p.r = 1000;
  const double gap = static_cast<double>(e_inf - expected_bits_bounded(p)) /
                     static_cast<double>(e_inf);
  CHECK(gap >= 0);
  CHECK(gap < 1e-6);
}

TEST_CASE("unbounded expectation: worked example and identity") {
  const Rational e = expected_bits_unbounded(4, 2, 5, 2);
  CHECK(e == Rational(237, 8));  // 10 / 0.64 + 14 = 29.625
  CHECK(static_cast<double>(e) == doctest::Approx(29.625));

  // d_a = 0: no retries ever.
  CHECK(expected_bits_unbounded(8, 2, 10, 0) == 2 * 10 + 4 * 8 - 2);

  // E[T_inf] = t0 / p_a + t1 + t2 on a grid.
  for (unsigned n : {4u, 8u, 12u})
    for (unsigned k = 1; k <= n; k += 3)
      for (std::size_t d_a : {0u, 1u, 3u, 8u})
        for (std::size_t m_b : {1u, 9u}) {
          const Rational lhs = expected_bits_unbounded(n, k, m_b, d_a);
          const Rational rhs =
              Rational(Int(k) * m_b) / accept_probability(n, k, d_a) + (4 * n - 2);
          CHECK(lhs == rhs);
        }
}

TEST_CASE("optimal k: exhaustive sweep") {
  CHECK(optimal_k(16, 100, 16) == 6);

  // The returned k beats every other k by construction.
  const unsigned best = optimal_k(8, 1, 1);
  for (unsigned k = 1; k <= 8; ++k)
    CHECK(expected_bits_unbounded(8, best, 1, 1) <= expected_bits_unbounded(8, k, 1, 1));

  CHECK_THROWS_AS(optimal_k(8, 1, 0), std::invalid_argument);
  CHECK_THROWS_AS(optimal_k(8, 0, 1), std::invalid_argument);
}

TEST_CASE("heuristic k") {
  CHECK(heuristic_k(16, 1) == doctest::Approx(4.0));
  CHECK(heuristic_k(1, 1) == doctest::Approx(0.0));
  CHECK(heuristic_k(16, 0.25) == doctest::Approx(6.0));  // lands on the sweep's k*
  CHECK(std::lround(heuristic_k(16, 0.25)) == optimal_k(16, 100, 16));
  CHECK_THROWS_AS(heuristic_k(0, 1), std::invalid_argument);
  CHECK_THROWS_AS(heuristic_k(4, 0.0), std::invalid_argument);
}

TEST_CASE("simulation: d_a = 0 matches the model bit-for-bit") {
  const auto rep = simulate_vs_formula(8, 3, 12, 0, 200, 99, /*m_0=*/5);
  CHECK(rep.capped_runs == 0);
  CHECK(rep.p_hat == 1.0);
  CHECK(rep.rounds_mean == 1.0);
  CHECK(rep.bits_mean == doctest::Approx(3 * 12 + 4 * 8 - 2));
  CHECK(rep.model_bits_inf == doctest::Approx(3 * 12 + 4 * 8 - 2));
}

TEST_CASE("simulation: singleton difference acceptance matches the collision model") {
  // m_b = 1, m_0 = 0, d_a = 1: acceptance is exactly one no-collision event.
  const std::size_t trials = 20000;
  const auto rep = simulate_vs_formula(6, 2, 1, 1, trials, 1234, 0);
  const double p = static_cast<double>(accept_probability(6, 2, 1));
  const double sigma = std::sqrt(p * (1 - p) / static_cast<double>(trials));
  CHECK(std::abs(rep.p_hat - p) < 3 * sigma);
  CHECK(rep.capped_runs == 0);
}

TEST_CASE("simulation: general cells report both sides without judging") {
  const auto rep = simulate_vs_formula(8, 3, 20, 4, 2000, 4321, 6);
  CHECK(rep.trials == 2000);
  CHECK(rep.model_p_a == doctest::Approx(std::pow(1.0 - 31.0 / 255.0, 4)));
  CHECK(rep.p_hat > 0);
  CHECK(rep.rounds_mean >= 1);
  CHECK(rep.bits_mean > 0);
  CHECK(rep.rel_err >= 0);
}

TEST_CASE("simulation parameter validation") {
  CHECK_THROWS_AS(simulate_vs_formula(4, 2, 200, 200, 10, 0, 0), std::invalid_argument);
  CHECK_THROWS_AS(simulate_vs_formula(4, 2, 3, 1, 0, 0, 0), std::invalid_argument);
  CHECK_THROWS_AS(simulate_vs_formula(4, 2, 3, 1, 10, 0, 5), std::invalid_argument);
}
