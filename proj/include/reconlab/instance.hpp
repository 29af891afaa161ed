#pragma once

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "reconlab/bigint.hpp"

namespace reconlab {

using Element = std::uint64_t;
using ElementSet = std::vector<Element>;  // strictly ascending

/// A problem instance: two sets of n-bit values plus every derived size the
/// protocols and formulas refer to.
struct Instance {
  unsigned n = 0;
  ElementSet set_a;
  ElementSet set_b;

  std::size_t m_a = 0;
  std::size_t m_b = 0;
  std::size_t m_0 = 0;   // |set_a ∩ set_b|
  std::size_t d_a = 0;   // m_a - m_0
  std::size_t d_b = 0;   // m_b - m_0
  std::size_t kappa = 0; // max(m_a, m_b)

  std::size_t d() const { return d_a + d_b; }
};

/// Validates element range and distinctness, sorts, and fills in the derived
/// sizes. Throws std::invalid_argument on out-of-range or duplicate elements.
Instance make_instance(unsigned n, ElementSet set_a, ElementSet set_b);

/// Uniform instance with the requested sizes, deterministic in `seed`.
/// Requires m_0 <= min(m_a, m_b) and m_a + m_b - m_0 <= 2^n.
Instance random_instance(unsigned n, std::size_t m_a, std::size_t m_b, std::size_t m_0,
                         std::uint64_t seed);

/// The functions computed over the reconciled (union) data, plus the
/// disjointness/intersection problems they reduce to and from.
enum class Func {
  Sum,
  Product,
  Max,
  Min,
  Disjointness,
  Intersection,
  Union,
  BitOr,
  BitAnd,
};

const char* func_name(Func f);
Func parse_func(std::string_view name);

using Value = std::variant<Int, ElementSet>;

bool value_equal(const Value& a, const Value& b);
std::string value_to_string(const Value& v);

/// Brute-force evaluation over the explicitly materialized union. Empty-union
/// conventions: sum = 0, product = 1; max/min/or/and throw std::domain_error.
Value oracle_value(const Instance& inst, Func f);

ElementSet union_of(const Instance& inst);
ElementSet intersection_of(const Instance& inst);

enum class Role { A, B };

/// What one party is allowed to see: its own set, the a-priori difference and
/// intersection sizes, and its randomness. Protocol code takes PartyViews, not
/// the Instance, so prior knowledge stays explicit.
struct PartyView {
  Role role;
  ElementSet own_set;
  std::size_t known_d_own; // d_a for A, d_b for B
  std::size_t known_m0;
  std::uint64_t shared_seed;
  std::uint64_t private_seed;
};

PartyView view_of(const Instance& inst, Role role, std::uint64_t shared_seed);

}  // namespace reconlab
