#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "reconlab/bitstream.hpp"

namespace reconlab {

enum class Direction { AToB, BToA };
enum class MessageKind { Payload, Control };

const char* direction_name(Direction d);
const char* message_kind_name(MessageKind k);

struct Message {
  Direction dir;
  MessageKind kind;
  BitString bits;
};

/// The full ordered record of one protocol run. Totals are derived from the
/// message list, so they cannot drift out of sync with it. Control messages
/// (loop continue/stop signaling) are accounted separately from payload,
/// mirroring an accounting that counts no signaling.
struct Transcript {
  std::vector<Message> messages;

  std::size_t rounds() const { return messages.size(); }
  std::size_t payload_bits() const;
  std::size_t control_bits() const;
  std::size_t bits_a_to_b() const;
  std::size_t bits_b_to_a() const;
  std::size_t total_bits(bool include_control) const {
    return payload_bits() + (include_control ? control_bits() : 0);
  }
};

}  // namespace reconlab
