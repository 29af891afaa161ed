#include "reconlab/gf2_hash.hpp"

#include <bit>
#include <sstream>
#include <stdexcept>

namespace reconlab {

LinearHash::LinearHash(unsigned n, unsigned k, std::vector<std::uint64_t> rows)
    : n_(n), k_(k), rows_(std::move(rows)) {
  if (n < 1 || n > 64) throw std::invalid_argument("LinearHash: n must be in [1, 64]");
  if (k < 1 || k > n) throw std::invalid_argument("LinearHash: k must be in [1, n]");
  if (rows_.size() != k) throw std::invalid_argument("LinearHash: wrong row count");
  for (std::uint64_t r : rows_)
    if (n < 64 && (r >> n) != 0)
      throw std::invalid_argument("LinearHash: row wider than n bits");
  if (gf2_rank(rows_) != k) throw std::invalid_argument("LinearHash: rows not full rank");
}

std::uint64_t LinearHash::apply(std::uint64_t x) const {
  if (n_ < 64 && (x >> n_) != 0)
    throw std::invalid_argument("LinearHash: input wider than n bits");
  std::uint64_t out = 0;
  for (unsigned j = 0; j < k_; ++j)
    out |= static_cast<std::uint64_t>(std::popcount(rows_[j] & x) & 1) << (k_ - 1 - j);
  return out;
}

LinearHash LinearHash::identity(unsigned n) {
  std::vector<std::uint64_t> rows(n);
  for (unsigned j = 0; j < n; ++j) rows[j] = 1ULL << (n - 1 - j);
  return LinearHash(n, n, std::move(rows));
}

std::string LinearHash::dump() const {
  std::ostringstream os;
  os << n_ << " " << k_ << "\n";
  for (std::uint64_t r : rows_) os << std::hex << r << "\n";
  return os.str();
}

LinearHash LinearHash::parse(std::string_view text) {
  std::istringstream is{std::string(text)};
  unsigned n = 0, k = 0;
  if (!(is >> n >> k)) throw std::invalid_argument("LinearHash: bad header");
  std::vector<std::uint64_t> rows(k);
  for (auto& r : rows)
    if (!(is >> std::hex >> r)) throw std::invalid_argument("LinearHash: bad row");
  return LinearHash(n, k, std::move(rows));
}

unsigned gf2_rank(std::vector<std::uint64_t> rows) {
  unsigned rank = 0;
  for (int bit = 63; bit >= 0 && rank < rows.size(); --bit) {
    std::size_t pivot = rank;
    while (pivot < rows.size() && !((rows[pivot] >> bit) & 1u)) ++pivot;
    if (pivot == rows.size()) continue;
    std::swap(rows[rank], rows[pivot]);
    for (std::size_t i = 0; i < rows.size(); ++i)
      if (i != rank && ((rows[i] >> bit) & 1u)) rows[i] ^= rows[rank];
    ++rank;
  }
  return rank;
}

LinearHash sample_full_rank(unsigned n, unsigned k, SplitMix64& rng) {
  if (n < 1 || n > 64) throw std::invalid_argument("sample_full_rank: n must be in [1, 64]");
  if (k < 1 || k > n) throw std::invalid_argument("sample_full_rank: k must be in [1, n]");
  std::vector<std::uint64_t> rows(k);
  for (;;) {
    for (auto& r : rows) r = rng.next_bits(n);
    if (gf2_rank(rows) == k) return LinearHash(n, k, rows);
  }
}

std::vector<std::size_t> preimage_histogram(const LinearHash& h) {
  const unsigned n = h.input_width();
  if (n > 24) throw std::domain_error("preimage_histogram: n too large to enumerate");
  std::vector<std::size_t> counts(std::size_t(1) << h.output_width(), 0);
  for (std::uint64_t x = 0; x < (std::uint64_t(1) << n); ++x) ++counts[h.apply(x)];
  return counts;
}

double collision_rate_mc(unsigned n, unsigned k, std::size_t trials, SplitMix64& rng) {
  if (trials == 0) throw std::invalid_argument("collision_rate_mc: trials must be >= 1");
  std::size_t collisions = 0;
  for (std::size_t t = 0; t < trials; ++t) {
    const LinearHash h = sample_full_rank(n, k, rng);
    const std::uint64_t x = rng.next_bits(n);
    std::uint64_t y = x;
    while (y == x) y = rng.next_bits(n);
    if (h.apply(x) == h.apply(y)) ++collisions;
  }
  return static_cast<double>(collisions) / static_cast<double>(trials);
}

HashSequence::HashSequence(std::uint64_t shared_seed, unsigned n, unsigned k)
    : seed_(shared_seed), n_(n), k_(k) {
  if (n < 1 || n > 64) throw std::invalid_argument("HashSequence: n must be in [1, 64]");
  if (k < 1 || k > n) throw std::invalid_argument("HashSequence: k must be in [1, n]");
}

LinearHash HashSequence::at(std::size_t index) const {
  // Each index owns an independent substream, so h_i never depends on whether
  // h_0..h_{i-1} were materialized.
  SplitMix64 rng(mix_seed(seed_, 0x68617368u ^ index));
  return sample_full_rank(n_, k_, rng);
}

}  // namespace reconlab
