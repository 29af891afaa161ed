#include <doctest.h>

#include <bit>
#include <cmath>
#include <cstdint>
#include <tuple>
#include <vector>

#include "reconlab/gf2_hash.hpp"

using namespace reconlab;

namespace {

// Exhaustive rank over all k x n matrices; the reference for the sampler.
unsigned ref_rank(std::vector<std::uint64_t> rows, unsigned n) {
  std::vector<std::uint64_t> basis;
  for (std::uint64_t r : rows) {
    for (std::uint64_t b : basis) r = std::min(r, r ^ b);
    if (r) basis.push_back(r);
  }
  (void)n;
  return static_cast<unsigned>(basis.size());
}

// Enumerates every full-rank k x n matrix for tiny n by odometer walk.
template <typename Fn>
void for_each_full_rank(unsigned n, unsigned k, Fn&& fn) {
  std::vector<std::uint64_t> rows(k, 0);
  const std::uint64_t top = std::uint64_t(1) << n;
  for (;;) {
    if (gf2_rank(rows) == k) fn(rows);
    std::size_t i = 0;
    while (i < k && ++rows[i] == top) rows[i++] = 0;
    if (i == k) break;
  }
}

}  // namespace

TEST_CASE("identity hash is the identity map") {
  const LinearHash h = LinearHash::identity(5);
  for (std::uint64_t x = 0; x < 32; ++x) CHECK(h.apply(x) == x);
}

TEST_CASE("single all-ones row computes parity") {
  const LinearHash h(3, 1, {0b111});
  CHECK(h.apply(0b101) == 0);
  CHECK(h.apply(0b100) == 1);
  CHECK(h.apply(0) == 0);
}

TEST_CASE("zero maps to zero under every hash") {
  SplitMix64 rng(1);
  for (int t = 0; t < 50; ++t) {
    const unsigned n = 1 + static_cast<unsigned>(rng.next_below(64));
    const unsigned k = 1 + static_cast<unsigned>(rng.next_below(n));
    CHECK(sample_full_rank(n, k, rng).apply(0) == 0);
  }
}

TEST_CASE("linearity: h(x xor y) = h(x) xor h(y)") {
  SplitMix64 rng(2);
  const LinearHash h = sample_full_rank(17, 6, rng);
  for (int t = 0; t < 200; ++t) {
    const std::uint64_t x = rng.next_bits(17), y = rng.next_bits(17);
    CHECK(h.apply(x ^ y) == (h.apply(x) ^ h.apply(y)));
  }
}

TEST_CASE("constructor rejects bad shapes and rank-deficient rows") {
  CHECK_THROWS_AS(LinearHash(3, 4, {1, 2, 4, 7}), std::invalid_argument);  // k > n
  CHECK_THROWS_AS(LinearHash(3, 0, {}), std::invalid_argument);
  CHECK_THROWS_AS(LinearHash(3, 2, {0b101, 0b101}), std::invalid_argument);  // rank 1
  CHECK_THROWS_AS(LinearHash(3, 1, {0}), std::invalid_argument);             // zero row
  CHECK_THROWS_AS(LinearHash(3, 1, {0b1000}), std::invalid_argument);        // too wide
}

TEST_CASE("gf2_rank agrees with a reference on random matrices") {
  SplitMix64 rng(3);
  for (int t = 0; t < 200; ++t) {
    const unsigned n = 1 + static_cast<unsigned>(rng.next_below(16));
    const unsigned k = 1 + static_cast<unsigned>(rng.next_below(8));
    std::vector<std::uint64_t> rows(k);
    for (auto& r : rows) r = rng.next_bits(n);
    CHECK(gf2_rank(rows) == ref_rank(rows, n));
  }
}

TEST_CASE("sampled hashes are full rank with the right shape") {
  SplitMix64 rng(4);
  const LinearHash square = sample_full_rank(6, 6, rng);  // invertible: a bijection
  std::vector<bool> seen(64, false);
  for (std::uint64_t x = 0; x < 64; ++x) {
    CHECK(!seen[square.apply(x)]);
    seen[square.apply(x)] = true;
  }
  const LinearHash wide = sample_full_rank(3, 1, rng);
  CHECK(wide.rows().size() == 1);
  CHECK(wide.rows()[0] != 0);
}

TEST_CASE("full-rank matrix count matches the product formula (n <= 4)") {
  for (unsigned n = 1; n <= 4; ++n)
    for (unsigned k = 1; k <= n; ++k) {
      std::uint64_t count = 0;
      for_each_full_rank(n, k, [&](const auto&) { ++count; });
      std::uint64_t expected = 1;
      for (unsigned i = 0; i < k; ++i)
        expected *= (std::uint64_t(1) << n) - (std::uint64_t(1) << i);
      CHECK(count == expected);
      // Rejection acceptance rate: full-rank / all = prod (1 - 2^(i-n)) > 0.288.
      const double rate = static_cast<double>(count) /
                          static_cast<double>(std::uint64_t(1) << (std::uint64_t(n) * k));
      CHECK(rate > 0.288);
    }
}

TEST_CASE("preimage histogram is exactly balanced") {
  CHECK(preimage_histogram(LinearHash(3, 1, {0b111})) == std::vector<std::size_t>{4, 4});

  SplitMix64 rng(5);
  for (unsigned n = 2; n <= 10; n += 2)
    for (unsigned k = 1; k <= n; k += 3) {
      const LinearHash h = sample_full_rank(n, k, rng);
      for (std::size_t c : preimage_histogram(h))
        CHECK(c == std::size_t(1) << (n - k));
    }
}

TEST_CASE("exact collision rate by exhaustive enumeration: (3,2) is 1/7, (4,2) is 1/5") {
  const std::tuple<unsigned, unsigned, int, int> cases[] = {{3, 2, 1, 7}, {4, 2, 1, 5}};
  for (const auto& [n, k, num, den] : cases) {
    std::uint64_t collisions = 0, pairs = 0;
    for_each_full_rank(n, k, [&](const std::vector<std::uint64_t>& rows) {
      const LinearHash h(n, k, rows);
      const std::uint64_t top = std::uint64_t(1) << n;
      for (std::uint64_t x = 0; x < top; ++x)
        for (std::uint64_t y = x + 1; y < top; ++y) {
          ++pairs;
          collisions += h.apply(x) == h.apply(y);
        }
    });
    CHECK(collisions * den == pairs * num);
  }
}

TEST_CASE("monte carlo collision rate tracks (2^(n-k)-1)/(2^n-1)") {
  SplitMix64 rng(6);
  const double rate = collision_rate_mc(8, 4, 200000, rng);
  const double expected = 15.0 / 255.0;
  const double sigma = std::sqrt(expected * (1 - expected) / 200000);
  CHECK(std::abs(rate - expected) < 3 * sigma);

  CHECK(collision_rate_mc(6, 6, 2000, rng) == 0.0);  // bijection never collides
}

TEST_CASE("hash sequences from one seed agree; different seeds diverge") {
  const HashSequence s1(0xabcdef, 12, 5);
  const HashSequence s2(0xabcdef, 12, 5);
  for (std::size_t i = 0; i < 1000; ++i) CHECK(s1.at(i) == s2.at(i));
  const HashSequence s3(0xabcdf0, 12, 5);
  bool all_equal = true;
  for (std::size_t i = 0; i < 8; ++i) all_equal = all_equal && s1.at(i) == s3.at(i);
  CHECK(!all_equal);
}

TEST_CASE("dump/parse golden format") {
  const LinearHash h(3, 2, {0b101, 0b011});
  CHECK(h.dump() == "3 2\n5\n3\n");
  CHECK(LinearHash::parse(h.dump()) == h);
}

TEST_CASE("histogram enumeration bound") {
  SplitMix64 rng(7);
  const LinearHash h = sample_full_rank(32, 4, rng);
  CHECK_THROWS_AS(preimage_histogram(h), std::domain_error);
}
