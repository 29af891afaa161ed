#pragma once

#include <cstdint>
#include <vector>

#include "reconlab/bigint.hpp"
#include "reconlab/instance.hpp"

namespace reconlab {

/// Subsets of F^n for small n, as bitmasks indexed by element value.
using SubsetMask = std::uint32_t;

/// One input pair (Y, Y') together with the function value it realizes.
struct SubsetPair {
  SubsetMask left;
  SubsetMask right;
};

/// A family of input pairs sharing one function value. Distinct pairs of a
/// family that satisfy the fooling condition certify distinct monochromatic
/// rectangles, which is what the counting lower bounds add up.
struct FoolingFamily {
  Func kind;          // Sum or Product
  int label;          // 0: complement family over Phi; -1: the value-0 cell; else l
  Int common_value;
  SubsetMask ground;  // Phi or Phi_l
  std::vector<SubsetPair> pairs;
};

/// Brute-force f over the union of two subset masks.
Int mask_value(Func kind, SubsetMask left, SubsetMask right);

/// Sum construction: the complement family over Phi = F^n \ {0} plus one
/// family per removed value l in [2^n - 1]. Requires n <= 4.
std::vector<FoolingFamily> sum_fooling_families(unsigned n);

/// Product construction: the complement family over Phi = F^n \ {0, 1}, one
/// family per removed l in {2..2^n-1}, and the single value-0 cell.
std::vector<FoolingFamily> product_fooling_families(unsigned n);

struct FoolingViolation {
  int label;
  std::size_t i;
  std::size_t j;
};

struct FoolingReport {
  bool pass = false;
  bool exhaustive = false;
  std::size_t pair_count = 0;      // total pairs across families
  std::size_t checked_pairs = 0;   // (i, j) combinations examined
  std::size_t evaluations = 0;     // brute-force f evaluations performed
  std::vector<FoolingViolation> violations;  // at most the first 10
};

struct VerifyOptions {
  bool force_exhaustive = false;
  std::size_t sample_pairs = 1'000'000;  // used when exhaustive checking is too big
  std::uint64_t seed = 0x7ec7a;
};

/// Checks the fooling condition inside every family (for i != j, at least one
/// cross evaluation must leave the common value) and that family values are
/// pairwise distinct. Exhaustive when feasible, sampled otherwise.
FoolingReport verify_fooling(const std::vector<FoolingFamily>& families, Func kind,
                             const VerifyOptions& opts = {});

/// Closed-form count of distinct monochromatic rectangles certified by the
/// construction; equals the summed family sizes (plus the value-0 cell for
/// products).
Int rectangle_count_lower_bound(unsigned n, Func kind);

/// ceil(log2) of the rectangle count: 2^n + n - 1 for sums, 2^n + n - 2 for
/// products.
unsigned comm_lower_bound(unsigned n, Func kind);

/// Reference figures implied by published disjointness bounds.
struct LiteratureBounds {
  Int disj_det;             // 2^n + 1
  Int sum_det;              // 2^n - 2n + 1
  Int sum_randomized_order; // 2^n
};

LiteratureBounds literature_bounds(unsigned n);

}  // namespace reconlab
