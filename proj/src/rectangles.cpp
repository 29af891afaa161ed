#include "reconlab/rectangles.hpp"

#include <bit>
#include <stdexcept>

#include "reconlab/rng.hpp"

namespace reconlab {

namespace {

constexpr unsigned kMaxFamilyWidth = 4;  // family sizes are 2^(2^n - 1)

void check_width(unsigned n) {
  if (n < 1 || n > kMaxFamilyWidth)
    throw std::domain_error("fooling families are materialized only for n in [1, 4]");
}

// All pairs (Y, ground \ Y) for Y ranging over subsets of the ground mask.
std::vector<SubsetPair> complement_pairs(SubsetMask ground) {
  std::vector<SubsetPair> pairs;
  pairs.reserve(std::size_t(1) << std::popcount(ground));
  // Standard subset-of-mask walk.
  SubsetMask y = 0;
  for (;;) {
    pairs.push_back({y, static_cast<SubsetMask>(ground & ~y)});
    if (y == ground) break;
    y = (y - ground) & ground;
  }
  return pairs;
}

FoolingFamily make_family(Func kind, int label, Int value, SubsetMask ground) {
  FoolingFamily fam{kind, label, std::move(value), ground, complement_pairs(ground)};
  for (const auto& p : fam.pairs)
    if (mask_value(kind, p.left, p.right) != fam.common_value)
      throw std::logic_error("fooling family value disagrees with the oracle");
  return fam;
}

}  // namespace

Int mask_value(Func kind, SubsetMask left, SubsetMask right) {
  SubsetMask u = left | right;
  if (kind == Func::Sum) {
    Int s = 0;
    while (u) {
      s += std::countr_zero(u);
      u &= u - 1;
    }
    return s;
  }
  if (kind == Func::Product) {
    Int p = 1;
    while (u) {
      p *= std::countr_zero(u);
      u &= u - 1;
    }
    return p;
  }
  throw std::invalid_argument("rectangle bounds cover sum and product only");
}

std::vector<FoolingFamily> sum_fooling_families(unsigned n) {
  check_width(n);
  const SubsetMask full = static_cast<SubsetMask>((std::uint64_t(1) << (1u << n)) - 1);
  const SubsetMask phi = full & ~SubsetMask(1);  // drop the value 0
  const Int total = pow2(n - 1) * (pow2(n) - 1);  // sum over [2^n - 1]

  std::vector<FoolingFamily> families;
  families.push_back(make_family(Func::Sum, 0, total, phi));
  for (std::uint32_t l = 1; l < (1u << n); ++l)
    families.push_back(
        make_family(Func::Sum, static_cast<int>(l), total - l, phi & ~(SubsetMask(1) << l)));
  return families;
}

std::vector<FoolingFamily> product_fooling_families(unsigned n) {
  check_width(n);
  const SubsetMask full = static_cast<SubsetMask>((std::uint64_t(1) << (1u << n)) - 1);
  const SubsetMask phi = full & ~SubsetMask(0b11);  // drop the values 0 and 1
  Int total = 1;
  for (std::uint32_t v = 2; v < (1u << n); ++v) total *= v;  // (2^n - 1)!

  std::vector<FoolingFamily> families;
  families.push_back(make_family(Func::Product, 0, total, phi));
  for (std::uint32_t l = 2; l < (1u << n); ++l)
    families.push_back(make_family(Func::Product, static_cast<int>(l), total / l,
                                   phi & ~(SubsetMask(1) << l)));
  // The one extra rectangle realizing the value 0: any union containing 0.
  families.push_back(FoolingFamily{Func::Product, -1, Int(0), SubsetMask(1),
                                   {SubsetPair{SubsetMask(1), SubsetMask(1)}}});
  return families;
}

FoolingReport verify_fooling(const std::vector<FoolingFamily>& families, Func kind,
                             const VerifyOptions& opts) {
  FoolingReport report;

  // Family values must be pairwise distinct, otherwise the per-family
  // rectangle counts could collapse into each other.
  for (std::size_t i = 0; i < families.size(); ++i)
    for (std::size_t j = i + 1; j < families.size(); ++j)
      if (families[i].common_value == families[j].common_value) {
        report.pass = false;
        return report;
      }

  Int pair_pairs = 0;
  for (const auto& fam : families) {
    report.pair_count += fam.pairs.size();
    pair_pairs += Int(fam.pairs.size()) * (fam.pairs.size() - 1) / 2;
  }

  // For pairs p != q with the shared value v, a monochromatic rectangle
  // containing both would force f(Y_p, Y'_q) = f(Y_q, Y'_p) = v.
  auto fooled = [&](const FoolingFamily& fam, std::size_t i, std::size_t j) {
    const Int a = mask_value(kind, fam.pairs[i].left, fam.pairs[j].right);
    ++report.evaluations;
    if (a != fam.common_value) return true;
    const Int b = mask_value(kind, fam.pairs[j].left, fam.pairs[i].right);
    ++report.evaluations;
    return b != fam.common_value;
  };

  report.exhaustive = opts.force_exhaustive || pair_pairs <= Int(opts.sample_pairs);
  if (report.exhaustive) {
    for (const auto& fam : families)
      for (std::size_t i = 0; i < fam.pairs.size(); ++i)
        for (std::size_t j = i + 1; j < fam.pairs.size(); ++j) {
          ++report.checked_pairs;
          if (!fooled(fam, i, j) && report.violations.size() < 10)
            report.violations.push_back({fam.label, i, j});
        }
  } else {
    SplitMix64 rng(opts.seed);
    // Sample families in proportion to their number of pair combinations.
    std::vector<double> weight_prefix;
    double acc = 0;
    for (const auto& fam : families) {
      const double s = static_cast<double>(fam.pairs.size());
      acc += s * (s - 1) / 2;
      weight_prefix.push_back(acc);
    }
    for (std::size_t t = 0; t < opts.sample_pairs; ++t) {
      const double r =
          static_cast<double>(rng.next_bits(53)) / static_cast<double>(1ULL << 53) * acc;
      std::size_t f = 0;
      while (f + 1 < weight_prefix.size() && weight_prefix[f] <= r) ++f;
      const auto& fam = families[f];
      const std::size_t i = rng.next_below(fam.pairs.size());
      std::size_t j = i;
      while (j == i) j = rng.next_below(fam.pairs.size());
      ++report.checked_pairs;
      if (!fooled(fam, std::min(i, j), std::max(i, j)) && report.violations.size() < 10)
        report.violations.push_back({fam.label, std::min(i, j), std::max(i, j)});
    }
  }

  report.pass = report.violations.empty();
  return report;
}

Int rectangle_count_lower_bound(unsigned n, Func kind) {
  if (n < 1) throw std::invalid_argument("n must be >= 1");
  if (n > 20) throw std::domain_error("rectangle count too large to materialize beyond n = 20");
  const unsigned e = 1u << n;  // 2^n
  if (kind == Func::Sum) {
    // 2^(2^n - 1) complement pairs plus (2^n - 1) families of 2^(2^n - 2).
    return pow2(e - 1) + (pow2(n) - 1) * pow2(e - 2);
  }
  if (kind == Func::Product) {
    // 2^(2^n - 2) complement pairs, (2^n - 2) families of 2^(2^n - 3), and
    // the value-0 cell. The middle term is empty at n = 1.
    Int count = pow2(e - 2) + 1;
    if (n >= 2) count += (pow2(n) - 2) * pow2(e - 3);
    return count;
  }
  throw std::invalid_argument("rectangle bounds cover sum and product only");
}

unsigned comm_lower_bound(unsigned n, Func kind) {
  const unsigned closed_form = kind == Func::Sum ? (1u << n) + n - 1 : (1u << n) + n - 2;
  if (n <= 20) {
    const unsigned from_count = ceil_log2(rectangle_count_lower_bound(n, kind));
    if (from_count != closed_form)
      throw std::logic_error("rectangle count disagrees with the closed-form bound");
  }
  return closed_form;
}

LiteratureBounds literature_bounds(unsigned n) {
  if (n < 1 || n > 64) throw std::invalid_argument("n must be in [1, 64]");
  LiteratureBounds b;
  b.disj_det = pow2(n) + 1;
  b.sum_det = pow2(n) - 2 * n + 1;
  b.sum_randomized_order = pow2(n);
  return b;
}

}  // namespace reconlab
