#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "reconlab/instance.hpp"
#include "reconlab/transcript.hpp"

namespace reconlab {

enum class RunStatus { Ok, RoundCapExceeded };

const char* run_status_name(RunStatus s);

/// Result of one protocol run. A party's value is absent when the protocol
/// never delivers the answer to that side (and on round-cap abort, where no
/// value may be reported at all). When both values are present and the status
/// is Ok they are equal.
struct Outcome {
  std::optional<Value> value_a;
  std::optional<Value> value_b;
  Transcript transcript;
  RunStatus status = RunStatus::Ok;
  bool oracle_match = false;
  std::size_t loop_rounds = 0;  // retry-loop iterations; 0 for loop-free protocols
};

struct RunOptions {
  std::size_t round_cap = 10000;
  bool count_control_bits = false;  // include control bits in reported totals
  bool dedup_hashes = false;        // deduplicate hash fields in lv-sum rounds
  bool send_verdict = false;        // disj-via-sum: also tell B the verdict
  std::optional<unsigned> hash_width;  // k for hash protocols
  std::string sum_protocol = "trivial-sum";
  std::string intersection_protocol = "naive-intersection";
};

/// Records messages as the parties exchange them. Zero-length sends are
/// rejected; a protocol step whose encoding is empty sends nothing.
class Channel {
 public:
  void send(Direction dir, MessageKind kind, BitString bits);
  const Message& last() const { return transcript_.messages.back(); }
  Transcript take() { return std::move(transcript_); }

 private:
  Transcript transcript_;
};

struct ProtocolDescriptor {
  std::string id;
  Func func;
  /// Throws std::domain_error when the protocol cannot run on the instance.
  std::function<void(const Instance&, const RunOptions&)> check;
  std::function<void(const Instance&, std::uint64_t shared_seed, const RunOptions&, Channel&,
                     Outcome&)>
      run;
};

const std::map<std::string, ProtocolDescriptor>& protocol_registry();
const ProtocolDescriptor& protocol_descriptor(const std::string& id);
std::vector<std::string> protocol_ids();

/// Runs the two party state machines and returns the bit-exact outcome.
/// Deterministic in (protocol_id, instance, shared_seed, options).
Outcome run_protocol(const std::string& protocol_id, const Instance& inst,
                     std::uint64_t shared_seed, const RunOptions& opts = {});

}  // namespace reconlab
