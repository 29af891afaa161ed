#include "reconlab/instance.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <unordered_set>

#include "reconlab/rng.hpp"

namespace reconlab {

namespace {

bool in_range(Element v, unsigned n) { return n >= 64 || (v >> n) == 0; }

std::size_t intersection_size(const ElementSet& a, const ElementSet& b) {
  std::size_t count = 0;
  auto it = b.begin();
  for (Element x : a) {
    it = std::lower_bound(it, b.end(), x);
    if (it == b.end()) break;
    if (*it == x) ++count;
  }
  return count;
}

ElementSet normalize(unsigned n, ElementSet set, const char* which) {
  std::sort(set.begin(), set.end());
  for (std::size_t i = 0; i < set.size(); ++i) {
    if (!in_range(set[i], n))
      throw std::invalid_argument(std::string("element out of range in ") + which);
    if (i > 0 && set[i] == set[i - 1])
      throw std::invalid_argument(std::string("duplicate element in ") + which);
  }
  return set;
}

}  // namespace

Instance make_instance(unsigned n, ElementSet set_a, ElementSet set_b) {
  if (n < 1 || n > 64) throw std::invalid_argument("bit width must be in [1, 64]");
  Instance inst;
  inst.n = n;
  inst.set_a = normalize(n, std::move(set_a), "set_a");
  inst.set_b = normalize(n, std::move(set_b), "set_b");
  inst.m_a = inst.set_a.size();
  inst.m_b = inst.set_b.size();
  inst.m_0 = intersection_size(inst.set_a, inst.set_b);
  inst.d_a = inst.m_a - inst.m_0;
  inst.d_b = inst.m_b - inst.m_0;
  inst.kappa = std::max(inst.m_a, inst.m_b);
  return inst;
}

Instance random_instance(unsigned n, std::size_t m_a, std::size_t m_b, std::size_t m_0,
                         std::uint64_t seed) {
  if (n < 1 || n > 64) throw std::invalid_argument("bit width must be in [1, 64]");
  if (m_0 > std::min(m_a, m_b))
    throw std::invalid_argument("random_instance: m_0 exceeds min(m_a, m_b)");
  const std::size_t total = m_a + m_b - m_0;
  if (Int(total) > pow2(n))
    throw std::invalid_argument("random_instance: sets do not fit in 2^n values");

  SplitMix64 rng(mix_seed(seed, 0x1057));
  std::vector<Element> pool;
  pool.reserve(total);
  if (n <= 20) {
    // Dense domain: partial Fisher-Yates over the materialized domain.
    const std::size_t domain = static_cast<std::size_t>(1) << n;
    std::vector<Element> all(domain);
    std::iota(all.begin(), all.end(), 0);
    for (std::size_t i = 0; i < total; ++i) {
      const std::size_t j = i + static_cast<std::size_t>(rng.next_below(domain - i));
      std::swap(all[i], all[j]);
      pool.push_back(all[i]);
    }
  } else {
    // Sparse domain: rejection sampling of distinct values.
    std::unordered_set<Element> seen;
    while (pool.size() < total) {
      const Element v = rng.next_bits(n);
      if (seen.insert(v).second) pool.push_back(v);
    }
  }

  // The pool is a uniformly ordered distinct sample; slice it into the
  // intersection and the two one-sided differences.
  ElementSet a(pool.begin(), pool.begin() + m_0);
  ElementSet b = a;
  a.insert(a.end(), pool.begin() + m_0, pool.begin() + m_a);
  b.insert(b.end(), pool.begin() + m_a, pool.begin() + total);

  Instance inst = make_instance(n, std::move(a), std::move(b));
  if (inst.m_a != m_a || inst.m_b != m_b || inst.m_0 != m_0)
    throw std::logic_error("random_instance: derived sizes disagree with request");
  return inst;
}

const char* func_name(Func f) {
  switch (f) {
    case Func::Sum: return "sum";
    case Func::Product: return "product";
    case Func::Max: return "max";
    case Func::Min: return "min";
    case Func::Disjointness: return "disjointness";
    case Func::Intersection: return "intersection";
    case Func::Union: return "union";
    case Func::BitOr: return "bitwise-or";
    case Func::BitAnd: return "bitwise-and";
  }
  return "?";
}

Func parse_func(std::string_view name) {
  for (Func f : {Func::Sum, Func::Product, Func::Max, Func::Min, Func::Disjointness,
                 Func::Intersection, Func::Union, Func::BitOr, Func::BitAnd})
    if (name == func_name(f)) return f;
  throw std::invalid_argument("unknown function kind: " + std::string(name));
}

ElementSet union_of(const Instance& inst) {
  ElementSet u;
  u.reserve(inst.m_a + inst.d_b);
  std::set_union(inst.set_a.begin(), inst.set_a.end(), inst.set_b.begin(), inst.set_b.end(),
                 std::back_inserter(u));
  return u;
}

ElementSet intersection_of(const Instance& inst) {
  ElementSet s;
  std::set_intersection(inst.set_a.begin(), inst.set_a.end(), inst.set_b.begin(),
                        inst.set_b.end(), std::back_inserter(s));
  return s;
}

bool value_equal(const Value& a, const Value& b) { return a == b; }

std::string value_to_string(const Value& v) {
  if (std::holds_alternative<Int>(v)) return std::get<Int>(v).str();
  std::string out = "{";
  const auto& s = std::get<ElementSet>(v);
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (i) out += ",";
    out += std::to_string(s[i]);
  }
  return out + "}";
}

Value oracle_value(const Instance& inst, Func f) {
  const ElementSet u = union_of(inst);
  switch (f) {
    case Func::Sum: {
      Int s = 0;
      for (Element x : u) s += x;
      return s;
    }
    case Func::Product: {
      Int p = 1;
      for (Element x : u) p *= x;
      return p;
    }
    case Func::Max:
    case Func::Min:
    case Func::BitOr:
    case Func::BitAnd: {
      if (u.empty()) throw std::domain_error("oracle undefined on an empty union");
      Element acc = u.front();
      for (Element x : u) {
        switch (f) {
          case Func::Max: acc = std::max(acc, x); break;
          case Func::Min: acc = std::min(acc, x); break;
          case Func::BitOr: acc |= x; break;
          default: acc &= x; break;
        }
      }
      return Int(acc);
    }
    case Func::Disjointness:
      return Int(intersection_of(inst).empty() ? 1 : 0);
    case Func::Intersection:
      return intersection_of(inst);
    case Func::Union:
      return u;
  }
  throw std::logic_error("unreachable");
}

PartyView view_of(const Instance& inst, Role role, std::uint64_t shared_seed) {
  PartyView v;
  v.role = role;
  v.own_set = role == Role::A ? inst.set_a : inst.set_b;
  v.known_d_own = role == Role::A ? inst.d_a : inst.d_b;
  v.known_m0 = inst.m_0;
  v.shared_seed = shared_seed;
  v.private_seed = mix_seed(shared_seed, role == Role::A ? 0xA : 0xB);
  return v;
}

}  // namespace reconlab
