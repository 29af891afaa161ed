#include "reconlab/bitstream.hpp"

#include <stdexcept>

namespace reconlab {

void BitString::push_bit(bool b) {
  const std::size_t byte = nbits_ / 8;
  if (byte == bytes_.size()) bytes_.push_back(0);
  if (b) bytes_[byte] |= static_cast<std::uint8_t>(0x80u >> (nbits_ % 8));
  ++nbits_;
}

void BitString::append_uint(std::uint64_t value, unsigned width) {
  if (width > 64) throw std::invalid_argument("BitString: field width > 64");
  if (width < 64 && (value >> width) != 0)
    throw std::invalid_argument("BitString: value does not fit field width");
  for (unsigned i = width; i-- > 0;) push_bit((value >> i) & 1u);
}

void BitString::append_int(const Int& value, unsigned width) {
  if (value < 0) throw std::invalid_argument("BitString: negative value");
  if (bit_length(value) > width)
    throw std::invalid_argument("BitString: value does not fit field width");
  for (unsigned i = width; i-- > 0;) push_bit(boost::multiprecision::bit_test(value, i));
}

bool BitString::bit(std::size_t i) const {
  if (i >= nbits_) throw std::out_of_range("BitString: bit index out of range");
  return (bytes_[i / 8] >> (7 - i % 8)) & 1u;
}

std::string BitString::to_hex() const {
  static const char* digits = "0123456789abcdef";
  std::string out;
  out.reserve(bytes_.size() * 2);
  for (std::uint8_t b : bytes_) {
    out.push_back(digits[b >> 4]);
    out.push_back(digits[b & 0x0f]);
  }
  return out;
}

BitString BitString::from_hex(std::string_view hex, std::size_t nbits) {
  if (hex.size() != (nbits + 7) / 8 * 2)
    throw std::invalid_argument("BitString: hex length does not match bit count");
  BitString s;
  s.nbits_ = nbits;
  s.bytes_.resize((nbits + 7) / 8, 0);
  for (std::size_t i = 0; i < s.bytes_.size(); ++i) {
    auto nib = [&](char c) -> std::uint8_t {
      if (c >= '0' && c <= '9') return static_cast<std::uint8_t>(c - '0');
      if (c >= 'a' && c <= 'f') return static_cast<std::uint8_t>(c - 'a' + 10);
      if (c >= 'A' && c <= 'F') return static_cast<std::uint8_t>(c - 'A' + 10);
      throw std::invalid_argument("BitString: bad hex digit");
    };
    s.bytes_[i] = static_cast<std::uint8_t>(nib(hex[2 * i]) << 4 | nib(hex[2 * i + 1]));
  }
  // Trailing pad bits must be zero so equal bit strings have equal hex forms.
  for (std::size_t i = nbits; i < s.bytes_.size() * 8; ++i)
    if ((s.bytes_[i / 8] >> (7 - i % 8)) & 1u)
      throw std::invalid_argument("BitString: nonzero padding bits");
  return s;
}

bool BitReader::read_bit() {
  if (remaining() == 0) throw std::out_of_range("BitReader: past end");
  return s_->bit(pos_++);
}

std::uint64_t BitReader::read_uint(unsigned width) {
  if (width > 64) throw std::invalid_argument("BitReader: field width > 64");
  std::uint64_t v = 0;
  for (unsigned i = 0; i < width; ++i) v = (v << 1) | (read_bit() ? 1u : 0u);
  return v;
}

Int BitReader::read_int(unsigned width) {
  Int v = 0;
  for (unsigned i = 0; i < width; ++i) {
    v <<= 1;
    if (read_bit()) v |= 1;
  }
  return v;
}

}  // namespace reconlab
