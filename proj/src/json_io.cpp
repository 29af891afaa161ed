#include "reconlab/json_io.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

namespace reconlab {

namespace {

std::string to_hex(Element v) {
  std::ostringstream os;
  os << "0x" << std::hex << v;
  return os.str();
}

Element parse_hex(const std::string& s) {
  if (s.size() < 3 || s[0] != '0' || (s[1] != 'x' && s[1] != 'X'))
    throw std::invalid_argument("element must be a 0x-prefixed hex string: " + s);
  std::size_t used = 0;
  const Element v = std::stoull(s.substr(2), &used, 16);
  if (used != s.size() - 2) throw std::invalid_argument("bad hex element: " + s);
  return v;
}

Json element_list(const ElementSet& set) {
  Json arr = Json::array();
  for (Element v : set) arr.push_back(to_hex(v));
  return arr;
}

Json value_to_json(const Value& v) {
  if (std::holds_alternative<ElementSet>(v)) return element_list(std::get<ElementSet>(v));
  const Int& i = std::get<Int>(v);
  if (i <= std::numeric_limits<std::uint64_t>::max())
    return static_cast<std::uint64_t>(i);
  return i.str();
}

}  // namespace

Json instance_to_json(const Instance& inst) {
  return Json{{"n", inst.n}, {"set_a", element_list(inst.set_a)},
              {"set_b", element_list(inst.set_b)}};
}

Instance instance_from_json(const Json& j) {
  const unsigned n = j.at("n").get<unsigned>();
  ElementSet a, b;
  for (const auto& e : j.at("set_a")) a.push_back(parse_hex(e.get<std::string>()));
  for (const auto& e : j.at("set_b")) b.push_back(parse_hex(e.get<std::string>()));
  return make_instance(n, std::move(a), std::move(b));
}

Instance load_instance(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open instance file: " + path);
  Json j;
  in >> j;
  return instance_from_json(j);
}

void save_instance(const Instance& inst, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write instance file: " + path);
  out << instance_to_json(inst).dump(2) << "\n";
}

Json transcript_to_json(const Transcript& t) {
  Json arr = Json::array();
  for (const auto& m : t.messages)
    arr.push_back(Json{{"dir", direction_name(m.dir)},
                       {"kind", message_kind_name(m.kind)},
                       {"len_bits", m.bits.size()},
                       {"bits_hex", m.bits.to_hex()}});
  return arr;
}

Json outcome_to_json(const Outcome& out, const std::string& protocol_id,
                     bool count_control_bits) {
  Json j{
      {"protocol", protocol_id},
      {"status", run_status_name(out.status)},
      {"value_a", out.value_a ? value_to_json(*out.value_a) : Json(nullptr)},
      {"value_b", out.value_b ? value_to_json(*out.value_b) : Json(nullptr)},
      {"oracle_match", out.oracle_match},
      {"payload_bits", out.transcript.payload_bits()},
      {"control_bits", out.transcript.control_bits()},
      {"bits_total", out.transcript.total_bits(count_control_bits)},
      {"bits_a_to_b", out.transcript.bits_a_to_b()},
      {"bits_b_to_a", out.transcript.bits_b_to_a()},
      {"rounds", out.transcript.rounds()},
      {"loop_rounds", out.loop_rounds},
  };
  j["transcript"] = transcript_to_json(out.transcript);
  return j;
}

Json bounds_report_to_json(Func kind, unsigned n, const std::vector<FoolingFamily>& families,
                           const FoolingReport& report) {
  Json fams = Json::array();
  for (const auto& f : families)
    fams.push_back(Json{{"label", f.label},
                        {"size", f.pairs.size()},
                        {"value_dec", f.common_value.str()}});
  Json violations = Json::array();
  for (const auto& v : report.violations)
    violations.push_back(Json{{"label", v.label}, {"i", v.i}, {"j", v.j}});
  return Json{{"kind", func_name(kind)},
              {"n", n},
              {"families", fams},
              {"count_lower_bound", rectangle_count_lower_bound(n, kind).str()},
              {"comm_lower_bound_bits", comm_lower_bound(n, kind)},
              {"pair_count", report.pair_count},
              {"checked_pairs", report.checked_pairs},
              {"evaluations", report.evaluations},
              {"exhaustive", report.exhaustive},
              {"violations", violations},
              {"pass", report.pass}};
}

Json analysis_report_to_json(const AnalysisParams& params, bool include_bounded,
                             const SimulationReport* sim) {
  const Rational coll = collision_probability(params.n, params.k);
  const Rational pa = accept_probability(params.n, params.k, params.d_a);
  const Rational e_inf = expected_bits_unbounded(params.n, params.k, params.m_b, params.d_a);

  Json model{
      {"collision", static_cast<double>(coll)},
      {"collision_exact", Rational(coll).str()},
      {"p_a", static_cast<double>(pa)},
      {"p_a_exact", Rational(pa).str()},
      {"e_bits_inf", static_cast<double>(e_inf)},
      {"e_bits_inf_exact", Rational(e_inf).str()},
      {"t0", round_payload_bits(params).str()},
      {"t1", tail_field_bits(params.n)},
      {"t2", tail_field_bits(params.n)},
  };
  if (include_bounded) {
    const Rational e_r = expected_bits_bounded(params);
    model["e_bits_r"] = static_cast<double>(e_r);
    model["e_bits_r_exact"] = Rational(e_r).str();
  }
  if (params.d_a >= 1 && params.m_b >= 1) {
    model["k_opt"] = optimal_k(params.n, params.m_b, params.d_a);
    model["heuristic_k"] = heuristic_k(params.d_a, params.c);
  }
  // The closed form is derived under k << n; flag parameter points outside it.
  model["k_over_half_n"] = params.k * 2 > params.n;

  Json j{{"params",
          Json{{"n", params.n},
               {"k", params.k},
               {"m_b", params.m_b},
               {"d_a", params.d_a},
               {"r", params.r},
               {"c", params.c}}},
         {"model", model}};
  if (sim != nullptr) {
    j["empirical"] = Json{{"trials", sim->trials},       {"p_hat", sim->p_hat},
                          {"rounds_mean", sim->rounds_mean}, {"bits_mean", sim->bits_mean},
                          {"capped_runs", sim->capped_runs}, {"m_0", sim->m_0}};
    j["rel_err"] = sim->rel_err;
  }
  return j;
}

}  // namespace reconlab
