#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "reconlab/rng.hpp"

namespace reconlab {

/// A full-rank k x n matrix over GF(2), applied as x -> Mx. Full rank makes
/// the map balanced: every k-bit output has exactly 2^(n-k) preimages.
class LinearHash {
 public:
  /// Takes ownership of the rows (row j is an n-bit mask; row 0 produces the
  /// most significant output bit). Throws unless 1 <= k <= n <= 64 and the
  /// rows are linearly independent.
  LinearHash(unsigned n, unsigned k, std::vector<std::uint64_t> rows);

  unsigned input_width() const { return n_; }
  unsigned output_width() const { return k_; }
  const std::vector<std::uint64_t>& rows() const { return rows_; }

  /// Output bit j is the parity of (row j AND x).
  std::uint64_t apply(std::uint64_t x) const;

  static LinearHash identity(unsigned n);

  /// Text form used by golden tests: header "n k", then one row per line in hex.
  std::string dump() const;
  static LinearHash parse(std::string_view text);

  bool operator==(const LinearHash&) const = default;

 private:
  unsigned n_;
  unsigned k_;
  std::vector<std::uint64_t> rows_;
};

/// Rank of a set of n-bit row vectors over GF(2).
unsigned gf2_rank(std::vector<std::uint64_t> rows);

/// Uniform over rank-k k x n matrices, by rejection on rank. The acceptance
/// rate is prod_{i<k}(1 - 2^(i-n)) > 0.288, so retries stay cheap.
LinearHash sample_full_rank(unsigned n, unsigned k, SplitMix64& rng);

/// Counts preimages of every output value by enumerating all 2^n inputs
/// (n <= 24). For a valid LinearHash every count equals 2^(n-k).
std::vector<std::size_t> preimage_histogram(const LinearHash& h);

/// Empirical Pr[h(x) = h(y)] over fresh (h, x != y) samples; estimates
/// (2^(n-k) - 1) / (2^n - 1).
double collision_rate_mc(unsigned n, unsigned k, std::size_t trials, SplitMix64& rng);

/// The shared random order h_0, h_1, ... both parties derive from one seed.
/// Index-addressable so rounds and threads need no sequential state.
class HashSequence {
 public:
  HashSequence(std::uint64_t shared_seed, unsigned n, unsigned k);

  LinearHash at(std::size_t index) const;
  unsigned input_width() const { return n_; }
  unsigned output_width() const { return k_; }

 private:
  std::uint64_t seed_;
  unsigned n_;
  unsigned k_;
};

}  // namespace reconlab
