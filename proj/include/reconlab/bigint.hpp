#pragma once

#include <stdexcept>

#include <boost/multiprecision/cpp_int.hpp>

namespace reconlab {

using Int = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// 2^e as an arbitrary-precision integer; e may exceed 63.
inline Int pow2(unsigned e) { return Int(1) << e; }

/// Bits in the minimal binary representation; 0 for value 0.
inline unsigned bit_length(const Int& v) {
  return v == 0 ? 0u : static_cast<unsigned>(boost::multiprecision::msb(v)) + 1u;
}

/// Smallest b with 2^b >= v, for v >= 1.
inline unsigned ceil_log2(const Int& v) {
  if (v <= 0) throw std::invalid_argument("ceil_log2: value must be positive");
  const unsigned b = static_cast<unsigned>(boost::multiprecision::msb(v));
  return (Int(1) << b) == v ? b : b + 1;
}

}  // namespace reconlab
