#include "reconlab/transcript.hpp"

namespace reconlab {

const char* direction_name(Direction d) { return d == Direction::AToB ? "A->B" : "B->A"; }

const char* message_kind_name(MessageKind k) {
  return k == MessageKind::Payload ? "payload" : "control";
}

std::size_t Transcript::payload_bits() const {
  std::size_t total = 0;
  for (const auto& m : messages)
    if (m.kind == MessageKind::Payload) total += m.bits.size();
  return total;
}

std::size_t Transcript::control_bits() const {
  std::size_t total = 0;
  for (const auto& m : messages)
    if (m.kind == MessageKind::Control) total += m.bits.size();
  return total;
}

std::size_t Transcript::bits_a_to_b() const {
  std::size_t total = 0;
  for (const auto& m : messages)
    if (m.dir == Direction::AToB) total += m.bits.size();
  return total;
}

std::size_t Transcript::bits_b_to_a() const {
  std::size_t total = 0;
  for (const auto& m : messages)
    if (m.dir == Direction::BToA) total += m.bits.size();
  return total;
}

}  // namespace reconlab
