#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "reconlab/bigint.hpp"

namespace reconlab {

/// A bit string with explicit length. Bits are stored MSB-first inside each
/// byte; multi-bit fields are appended big-endian. The hex form pads the
/// trailing partial byte with zero bits.
class BitString {
 public:
  BitString() = default;

  void push_bit(bool b);
  /// Appends the low `width` bits of `value`, most significant bit first.
  void append_uint(std::uint64_t value, unsigned width);
  /// Appends `value` as a big-endian `width`-bit field; throws if it does not fit.
  void append_int(const Int& value, unsigned width);

  bool bit(std::size_t i) const;
  std::size_t size() const { return nbits_; }
  bool empty() const { return nbits_ == 0; }

  std::string to_hex() const;
  static BitString from_hex(std::string_view hex, std::size_t nbits);

  bool operator==(const BitString&) const = default;

 private:
  std::vector<std::uint8_t> bytes_;
  std::size_t nbits_ = 0;
};

/// Sequential reader over a BitString.
class BitReader {
 public:
  explicit BitReader(const BitString& s) : s_(&s) {}

  bool read_bit();
  std::uint64_t read_uint(unsigned width);
  Int read_int(unsigned width);
  std::size_t remaining() const { return s_->size() - pos_; }

 private:
  const BitString* s_;
  std::size_t pos_ = 0;
};

}  // namespace reconlab
