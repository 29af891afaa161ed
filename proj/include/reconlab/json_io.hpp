#pragma once

#include <string>

#include <json.hpp>

#include "reconlab/analysis.hpp"
#include "reconlab/engine.hpp"
#include "reconlab/rectangles.hpp"

namespace reconlab {

using Json = nlohmann::json;

/// Instance file format: {"n": int, "set_a": ["0x.."], "set_b": ["0x.."]}.
Json instance_to_json(const Instance& inst);
Instance instance_from_json(const Json& j);
Instance load_instance(const std::string& path);
void save_instance(const Instance& inst, const std::string& path);

/// Transcript dump: array of {dir, kind, len_bits, bits_hex}.
Json transcript_to_json(const Transcript& t);

/// Full outcome record; integer values that fit 64 bits are JSON numbers,
/// larger ones decimal strings, set values arrays of hex strings.
Json outcome_to_json(const Outcome& out, const std::string& protocol_id,
                     bool count_control_bits);

/// verify-bounds report: {kind, n, families: [{label, size, value_dec}],
/// count_lower_bound, comm_lower_bound_bits, pass}.
Json bounds_report_to_json(Func kind, unsigned n, const std::vector<FoolingFamily>& families,
                           const FoolingReport& report);

/// analyze report: {params, model: {...}, empirical: {...}, rel_err}.
Json analysis_report_to_json(const AnalysisParams& params, bool include_bounded,
                             const SimulationReport* sim);

}  // namespace reconlab
