#include "reconlab/engine.hpp"

#include <stdexcept>

#include "reconlab/protocols.hpp"

namespace reconlab {

const char* run_status_name(RunStatus s) {
  return s == RunStatus::Ok ? "ok" : "round_cap_exceeded";
}

void Channel::send(Direction dir, MessageKind kind, BitString bits) {
  if (bits.empty()) throw std::logic_error("Channel: zero-length message");
  transcript_.messages.push_back(Message{dir, kind, std::move(bits)});
}

const std::map<std::string, ProtocolDescriptor>& protocol_registry() {
  static const auto registry = [] {
    std::map<std::string, ProtocolDescriptor> r;
    register_builtin_protocols(r);
    return r;
  }();
  return registry;
}

const ProtocolDescriptor& protocol_descriptor(const std::string& id) {
  const auto& registry = protocol_registry();
  const auto it = registry.find(id);
  if (it == registry.end()) throw std::invalid_argument("unknown protocol: " + id);
  return it->second;
}

std::vector<std::string> protocol_ids() {
  std::vector<std::string> ids;
  for (const auto& [id, _] : protocol_registry()) ids.push_back(id);
  return ids;
}

Outcome run_protocol(const std::string& protocol_id, const Instance& inst,
                     std::uint64_t shared_seed, const RunOptions& opts) {
  const auto& desc = protocol_descriptor(protocol_id);
  desc.check(inst, opts);

  Channel channel;
  Outcome out;
  desc.run(inst, shared_seed, opts, channel, out);
  out.transcript = channel.take();

  if (out.status == RunStatus::Ok) {
    if (out.value_a && out.value_b && !value_equal(*out.value_a, *out.value_b))
      throw std::logic_error("protocol delivered different values to the parties");
    const Value expected = oracle_value(inst, desc.func);
    bool any = false, all = true;
    for (const auto* v : {&out.value_a, &out.value_b})
      if (v->has_value()) {
        any = true;
        all = all && value_equal(**v, expected);
      }
    out.oracle_match = any && all;
  } else {
    // A capped run reports no value, never a wrong one.
    out.value_a.reset();
    out.value_b.reset();
    out.oracle_match = false;
  }
  return out;
}

}  // namespace reconlab
