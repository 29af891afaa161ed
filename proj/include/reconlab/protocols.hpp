#pragma once

#include <map>
#include <string>

#include "reconlab/engine.hpp"

namespace reconlab {

/// Installs the built-in roster:
///   idempotent-max / idempotent-min / idempotent-or / idempotent-and
///   trivial-sum            characteristic-vector sum, 2^n + 2n - 2 bits
///   lv-sum                 hash-filtered Las Vegas sum (always correct;
///                          k*m_b payload bits per retry round, 2(2n-1) tail)
///   disj-via-sum           disjointness reduced to any sum protocol
///   sum-via-intersection   sum via an intersection subprotocol plus 4n - 2 bits
///   naive-intersection     baseline intersection (char vector or element list)
///   reconcile-sum / reconcile-product / reconcile-max / reconcile-min
///                          one-directional reconciliation, then the function
void register_builtin_protocols(std::map<std::string, ProtocolDescriptor>& registry);

/// Default hash width for lv-sum when none is requested: round(log2(d_a)),
/// clamped to [1, n].
unsigned default_hash_width(const Instance& inst);

}  // namespace reconlab
