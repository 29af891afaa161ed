#include "reconlab/protocols.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <unordered_set>

#include "reconlab/gf2_hash.hpp"
#include "reconlab/rng.hpp"

namespace reconlab {

namespace {

unsigned sum_field_width(unsigned n) { return 2 * n - 1; }

Int sum_of(const ElementSet& s) {
  Int total = 0;
  for (Element x : s) total += x;
  return total;
}

BitString one_bit(bool b) {
  BitString s;
  s.push_bit(b);
  return s;
}

// Characteristic vector over values lo..2^n-1; bit p stands for value lo+p.
BitString encode_char_vector(const ElementSet& set, unsigned n, Element lo) {
  BitString s;
  const std::uint64_t domain = std::uint64_t(1) << n;
  auto it = set.begin();
  for (std::uint64_t v = lo; v < domain; ++v) {
    while (it != set.end() && *it < v) ++it;
    s.push_bit(it != set.end() && *it == v);
  }
  return s;
}

ElementSet decode_char_vector(const BitString& bits, Element lo) {
  ElementSet set;
  for (std::size_t p = 0; p < bits.size(); ++p)
    if (bits.bit(p)) set.push_back(lo + p);
  return set;
}

ElementSet sorted_union(const ElementSet& a, const ElementSet& b) {
  ElementSet u;
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(u));
  return u;
}

void require(bool cond, const std::string& what) {
  if (!cond) throw std::domain_error(what);
}

// ---------------------------------------------------------------------------
// Idempotent exchange: each party folds its own set, the two folds are
// exchanged (n bits each way), and the fold of the folds is the answer.

Element fold_idempotent(Func f, const ElementSet& s) {
  Element acc = s.front();
  for (Element x : s) {
    switch (f) {
      case Func::Max: acc = std::max(acc, x); break;
      case Func::Min: acc = std::min(acc, x); break;
      case Func::BitOr: acc |= x; break;
      case Func::BitAnd: acc &= x; break;
      default: throw std::logic_error("not an idempotent fold");
    }
  }
  return acc;
}

Element combine_idempotent(Func f, Element a, Element b) {
  switch (f) {
    case Func::Max: return std::max(a, b);
    case Func::Min: return std::min(a, b);
    case Func::BitOr: return a | b;
    case Func::BitAnd: return a & b;
    default: throw std::logic_error("not an idempotent fold");
  }
}

void run_idempotent(Func f, const Instance& inst, std::uint64_t seed, const RunOptions&,
                    Channel& ch, Outcome& out) {
  const PartyView a = view_of(inst, Role::A, seed);
  const PartyView b = view_of(inst, Role::B, seed);
  const unsigned n = inst.n;

  const Element x_a = fold_idempotent(f, a.own_set);
  BitString msg_a;
  msg_a.append_uint(x_a, n);
  ch.send(Direction::AToB, MessageKind::Payload, msg_a);
  const Element x_a_at_b = BitReader(ch.last().bits).read_uint(n);

  const Element x_b = fold_idempotent(f, b.own_set);
  BitString msg_b;
  msg_b.append_uint(x_b, n);
  ch.send(Direction::BToA, MessageKind::Payload, msg_b);
  const Element x_b_at_a = BitReader(ch.last().bits).read_uint(n);

  out.value_a = Int(combine_idempotent(f, x_a, x_b_at_a));
  out.value_b = Int(combine_idempotent(f, x_a_at_b, x_b));
}

// ---------------------------------------------------------------------------
// Trivial sum: A ships the characteristic vector of S_A minus the value 0
// (which cannot change a sum), B answers with the total. 2^n + 2n - 2 bits.

void run_trivial_sum(const Instance& inst, std::uint64_t seed, const RunOptions&, Channel& ch,
                     Outcome& out) {
  const PartyView a = view_of(inst, Role::A, seed);
  const PartyView b = view_of(inst, Role::B, seed);
  const unsigned n = inst.n;

  ch.send(Direction::AToB, MessageKind::Payload, encode_char_vector(a.own_set, n, 1));
  const ElementSet a_nonzero = decode_char_vector(ch.last().bits, 1);

  const Int total = sum_of(sorted_union(a_nonzero, b.own_set));
  BitString reply;
  reply.append_int(total, sum_field_width(n));
  ch.send(Direction::BToA, MessageKind::Payload, reply);

  out.value_a = BitReader(ch.last().bits).read_int(sum_field_width(n));
  out.value_b = total;
}

// ---------------------------------------------------------------------------
// Las Vegas sum. Round i: B sends the h_i-images of its whole set (m_b fields
// of k bits, ascending element order). A keeps the elements whose hash does
// not appear; |L_i| = d_a certifies L_i = S_A \ S_0, because elements of the
// intersection always hash into K_i and |L_i| can only fall short of d_a.
// A answers every round with a one-bit stop/continue control message.

void run_lv_sum(const Instance& inst, std::uint64_t seed, const RunOptions& opts, Channel& ch,
                Outcome& out) {
  const PartyView a = view_of(inst, Role::A, seed);
  const PartyView b = view_of(inst, Role::B, seed);
  const unsigned n = inst.n;
  const unsigned k = opts.hash_width.value_or(default_hash_width(inst));
  const HashSequence hashes(seed, n, k);

  ElementSet survivors;
  bool accepted = false;
  for (std::size_t i = 0; i < opts.round_cap; ++i) {
    const LinearHash h = hashes.at(i);

    std::vector<std::uint64_t> received;
    if (!b.own_set.empty()) {
      BitString k_msg;
      if (opts.dedup_hashes) {
        std::vector<std::uint64_t> uniq;
        for (Element x : b.own_set) uniq.push_back(h.apply(x));
        std::sort(uniq.begin(), uniq.end());
        uniq.erase(std::unique(uniq.begin(), uniq.end()), uniq.end());
        for (std::uint64_t v : uniq) k_msg.append_uint(v, k);
      } else {
        for (Element x : b.own_set) k_msg.append_uint(h.apply(x), k);
      }
      ch.send(Direction::BToA, MessageKind::Payload, k_msg);

      BitReader reader(ch.last().bits);
      while (reader.remaining() >= k) received.push_back(reader.read_uint(k));
    }

    const std::unordered_set<std::uint64_t> k_set(received.begin(), received.end());
    survivors.clear();
    for (Element x : a.own_set)
      if (!k_set.contains(h.apply(x))) survivors.push_back(x);

    accepted = survivors.size() == a.known_d_own;
    ch.send(Direction::AToB, MessageKind::Control, one_bit(accepted));
    if (accepted) {
      out.loop_rounds = i + 1;
      break;
    }
  }
  if (!accepted) {
    out.status = RunStatus::RoundCapExceeded;
    out.loop_rounds = opts.round_cap;
    return;
  }

  const unsigned w = sum_field_width(n);
  BitString s_msg;
  s_msg.append_int(sum_of(survivors), w);
  ch.send(Direction::AToB, MessageKind::Payload, s_msg);

  const Int s_at_b = BitReader(ch.last().bits).read_int(w);
  const Int s_prime = s_at_b + sum_of(b.own_set);
  BitString s_prime_msg;
  s_prime_msg.append_int(s_prime, w);
  ch.send(Direction::BToA, MessageKind::Payload, s_prime_msg);

  out.value_a = BitReader(ch.last().bits).read_int(w);
  out.value_b = s_prime;
}

// ---------------------------------------------------------------------------
// Nested subprotocol run sharing the caller's channel and seed.

Outcome run_nested(const std::string& id, const Instance& inst, std::uint64_t seed,
                   const RunOptions& opts, Channel& ch) {
  const auto& desc = protocol_descriptor(id);
  desc.check(inst, opts);
  Outcome sub;
  desc.run(inst, seed, opts, ch, sub);
  return sub;
}

// Disjointness reduced to a sum protocol. The value 0 is invisible to sums,
// so it gets one explicit payload bit up front; afterwards the sets are
// disjoint iff x_a + x_b equals the sum over the union.

void run_disj_via_sum(const Instance& inst, std::uint64_t seed, const RunOptions& opts,
                      Channel& ch, Outcome& out) {
  const PartyView a = view_of(inst, Role::A, seed);
  const PartyView b = view_of(inst, Role::B, seed);
  const unsigned n = inst.n;

  const bool a_has_zero = std::binary_search(a.own_set.begin(), a.own_set.end(), 0);
  ch.send(Direction::AToB, MessageKind::Payload, one_bit(a_has_zero));
  const bool b_sees_zero_flag = BitReader(ch.last().bits).read_bit();

  const bool b_has_zero = std::binary_search(b.own_set.begin(), b.own_set.end(), 0);
  if (b_sees_zero_flag && b_has_zero) {
    // B announces the answer and the parties halt.
    ch.send(Direction::BToA, MessageKind::Payload, one_bit(true));
    out.value_a = Int(0);
    out.value_b = Int(0);
    return;
  }

  const Outcome sub = run_nested(opts.sum_protocol, inst, seed, opts, ch);
  out.loop_rounds = sub.loop_rounds;
  if (sub.status != RunStatus::Ok) {
    out.status = sub.status;
    return;
  }
  const Int y_at_a = std::get<Int>(*sub.value_a);

  const unsigned w = sum_field_width(n);
  BitString xb_msg;
  xb_msg.append_int(sum_of(b.own_set), w);
  ch.send(Direction::BToA, MessageKind::Payload, xb_msg);
  const Int x_b_at_a = BitReader(ch.last().bits).read_int(w);

  const Int verdict = (sum_of(a.own_set) + x_b_at_a == y_at_a) ? 1 : 0;
  out.value_a = verdict;
  if (opts.send_verdict) {
    ch.send(Direction::AToB, MessageKind::Payload, one_bit(verdict == 1));
    out.value_b = Int(BitReader(ch.last().bits).read_bit() ? 1 : 0);
  }
}

// Sum via an intersection subprotocol: once both sides hold the overlap, two
// full sums cross the wire and each party corrects the double count.

void run_sum_via_intersection(const Instance& inst, std::uint64_t seed, const RunOptions& opts,
                              Channel& ch, Outcome& out) {
  const PartyView a = view_of(inst, Role::A, seed);
  const PartyView b = view_of(inst, Role::B, seed);
  const unsigned n = inst.n;

  const Outcome sub = run_nested(opts.intersection_protocol, inst, seed, opts, ch);
  out.loop_rounds = sub.loop_rounds;
  if (sub.status != RunStatus::Ok) {
    out.status = sub.status;
    return;
  }
  const Int overlap_a = sum_of(std::get<ElementSet>(*sub.value_a));
  const Int overlap_b = sum_of(std::get<ElementSet>(*sub.value_b));

  const unsigned w = sum_field_width(n);
  BitString xa_msg;
  xa_msg.append_int(sum_of(a.own_set), w);
  ch.send(Direction::AToB, MessageKind::Payload, xa_msg);
  const Int x_a_at_b = BitReader(ch.last().bits).read_int(w);

  BitString xb_msg;
  xb_msg.append_int(sum_of(b.own_set), w);
  ch.send(Direction::BToA, MessageKind::Payload, xb_msg);
  const Int x_b_at_a = BitReader(ch.last().bits).read_int(w);

  out.value_a = sum_of(a.own_set) + x_b_at_a - overlap_a;
  out.value_b = x_a_at_b + sum_of(b.own_set) - overlap_b;
}

// Baseline intersection: A ships its set in whichever encoding is shorter
// (full characteristic vector, or element list behind a log2(kappa+1)-bit
// count), B answers with the intersection as a counted list. The receiver
// tells the encodings apart by message length; the list is only chosen when
// strictly shorter, so a 2^n-bit message is always the vector.

void run_naive_intersection(const Instance& inst, std::uint64_t seed, const RunOptions&,
                            Channel& ch, Outcome& out) {
  const PartyView a = view_of(inst, Role::A, seed);
  const PartyView b = view_of(inst, Role::B, seed);
  const unsigned n = inst.n;
  const unsigned count_w = inst.kappa == 0 ? 0 : ceil_log2(Int(inst.kappa) + 1);

  const Int char_bits = n <= 24 ? pow2(n) : Int(-1);  // -1: not encodable
  const Int list_bits = Int(count_w) + Int(a.own_set.size()) * n;
  const bool use_list = char_bits < 0 || list_bits < char_bits;

  BitString msg;
  if (use_list) {
    msg.append_uint(a.own_set.size(), count_w);
    for (Element x : a.own_set) msg.append_uint(x, n);
  } else {
    msg = encode_char_vector(a.own_set, n, 0);
  }
  ElementSet a_set_at_b;
  if (!msg.empty()) {
    ch.send(Direction::AToB, MessageKind::Payload, msg);
    const BitString& wire = ch.last().bits;
    if (n <= 24 && wire.size() == std::size_t(1) << n) {
      a_set_at_b = decode_char_vector(wire, 0);
    } else {
      BitReader reader(wire);
      const std::uint64_t count = reader.read_uint(count_w);
      for (std::uint64_t i = 0; i < count; ++i) a_set_at_b.push_back(reader.read_uint(n));
    }
  }

  ElementSet common;
  std::set_intersection(a_set_at_b.begin(), a_set_at_b.end(), b.own_set.begin(),
                        b.own_set.end(), std::back_inserter(common));
  BitString reply;
  reply.append_uint(common.size(), count_w);
  for (Element x : common) reply.append_uint(x, n);

  ElementSet common_at_a;
  if (!reply.empty()) {
    ch.send(Direction::BToA, MessageKind::Payload, reply);
    BitReader reader(ch.last().bits);
    const std::uint64_t count = reader.read_uint(count_w);
    for (std::uint64_t i = 0; i < count; ++i) common_at_a.push_back(reader.read_uint(n));
  }

  out.value_a = common_at_a;
  out.value_b = common;
}

// One-directional reconciliation: A ships the full 2^n-bit characteristic
// vector, B reconciles, computes the function, and returns just the value.

void run_reconcile(Func f, const Instance& inst, std::uint64_t seed, const RunOptions&,
                   Channel& ch, Outcome& out) {
  const PartyView a = view_of(inst, Role::A, seed);
  const PartyView b = view_of(inst, Role::B, seed);
  const unsigned n = inst.n;

  ch.send(Direction::AToB, MessageKind::Payload, encode_char_vector(a.own_set, n, 0));
  const ElementSet u = sorted_union(decode_char_vector(ch.last().bits, 0), b.own_set);

  BitString reply;
  Int value_b;
  switch (f) {
    case Func::Sum:
      value_b = sum_of(u);
      reply.append_int(value_b, sum_field_width(n));
      break;
    case Func::Max:
    case Func::Min:
      value_b = Int(fold_idempotent(f, u));
      reply.append_int(value_b, n);
      break;
    case Func::Product: {
      value_b = 1;
      for (Element x : u) value_b *= x;
      const unsigned len = bit_length(value_b);
      reply.append_uint(len, 32);
      if (len > 0) reply.append_int(value_b, len);
      break;
    }
    default:
      throw std::logic_error("reconcile: unsupported function");
  }
  ch.send(Direction::BToA, MessageKind::Payload, reply);

  BitReader reader(ch.last().bits);
  Int value_a;
  switch (f) {
    case Func::Sum: value_a = reader.read_int(sum_field_width(n)); break;
    case Func::Max:
    case Func::Min: value_a = reader.read_int(n); break;
    default: {
      const unsigned len = static_cast<unsigned>(reader.read_uint(32));
      value_a = len == 0 ? Int(0) : reader.read_int(len);
      break;
    }
  }
  out.value_a = value_a;
  out.value_b = value_b;
}

// ---------------------------------------------------------------------------
// Applicability checks.

void check_nonempty_sets(const Instance& inst, const RunOptions&) {
  require(!inst.set_a.empty() && !inst.set_b.empty(),
          "idempotent exchange needs a nonempty set at each party");
}

void check_char_vector(const Instance& inst, const RunOptions&) {
  require(inst.n <= 24, "characteristic-vector protocols require n <= 24");
}

void check_lv_sum(const Instance& inst, const RunOptions& opts) {
  const unsigned k = opts.hash_width.value_or(default_hash_width(inst));
  if (k < 1) throw std::invalid_argument("lv-sum: hash width must be >= 1");
  require(k <= inst.n, "lv-sum: hash width must not exceed n");
  if (opts.round_cap < 1) throw std::invalid_argument("lv-sum: round cap must be >= 1");
}

void check_naive_intersection(const Instance& inst, const RunOptions&) {
  require(inst.n <= 24 || Int(inst.m_a) * inst.n <= pow2(inst.n),
          "naive-intersection: instance too large for either encoding");
}

void check_subprotocol(const std::string& id, Func expected, const Instance& inst,
                       const RunOptions& opts) {
  const auto& desc = protocol_descriptor(id);
  if (desc.func != expected)
    throw std::invalid_argument("subprotocol " + id + " does not compute " +
                                func_name(expected));
  desc.check(inst, opts);
}

void check_reconcile(Func f, const Instance& inst, const RunOptions& opts) {
  check_char_vector(inst, opts);
  if (f == Func::Max || f == Func::Min)
    require(inst.m_a + inst.m_b > 0, "max/min of an empty union is undefined");
}

}  // namespace

unsigned default_hash_width(const Instance& inst) {
  const double d = static_cast<double>(std::max<std::size_t>(inst.d_a, 1));
  const long k = std::lround(std::log2(d));
  return static_cast<unsigned>(std::clamp<long>(k, 1, inst.n));
}

void register_builtin_protocols(std::map<std::string, ProtocolDescriptor>& registry) {
  auto add = [&registry](ProtocolDescriptor desc) {
    registry.emplace(desc.id, std::move(desc));
  };

  const std::pair<const char*, Func> idempotent[] = {
      {"idempotent-max", Func::Max},
      {"idempotent-min", Func::Min},
      {"idempotent-or", Func::BitOr},
      {"idempotent-and", Func::BitAnd},
  };
  for (const auto& [id, f] : idempotent) {
    add({id, f, check_nonempty_sets,
         [f](const Instance& inst, std::uint64_t seed, const RunOptions& opts, Channel& ch,
             Outcome& out) { run_idempotent(f, inst, seed, opts, ch, out); }});
  }

  add({"trivial-sum", Func::Sum, check_char_vector, run_trivial_sum});
  add({"lv-sum", Func::Sum, check_lv_sum, run_lv_sum});

  add({"disj-via-sum", Func::Disjointness,
       [](const Instance& inst, const RunOptions& opts) {
         check_subprotocol(opts.sum_protocol, Func::Sum, inst, opts);
       },
       run_disj_via_sum});

  add({"sum-via-intersection", Func::Sum,
       [](const Instance& inst, const RunOptions& opts) {
         check_subprotocol(opts.intersection_protocol, Func::Intersection, inst, opts);
       },
       run_sum_via_intersection});

  add({"naive-intersection", Func::Intersection, check_naive_intersection,
       run_naive_intersection});

  const std::pair<const char*, Func> reconcile[] = {
      {"reconcile-sum", Func::Sum},
      {"reconcile-product", Func::Product},
      {"reconcile-max", Func::Max},
      {"reconcile-min", Func::Min},
  };
  for (const auto& [id, f] : reconcile) {
    add({id, f,
         [f](const Instance& inst, const RunOptions& opts) { check_reconcile(f, inst, opts); },
         [f](const Instance& inst, std::uint64_t seed, const RunOptions& opts, Channel& ch,
             Outcome& out) { run_reconcile(f, inst, seed, opts, ch, out); }});
  }
}

}  // namespace reconlab
