// reconlab: two-party protocols over reconciled sets, their measured bit
// costs, and the counting bounds they are measured against.

#include <chrono>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "reconlab/analysis.hpp"
#include "reconlab/json_io.hpp"
#include "reconlab/protocols.hpp"
#include "reconlab/rectangles.hpp"
#include "reconlab/rng.hpp"

using namespace reconlab;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitCheckFailed = 1;
constexpr int kExitUsage = 2;

std::map<std::string, std::size_t> parse_kv_sizes(const std::string& spec) {
  std::map<std::string, std::size_t> out;
  std::stringstream ss(spec);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto eq = item.find('=');
    if (eq == std::string::npos)
      throw CLI::ValidationError("--random", "expected k=v pairs, got '" + item + "'");
    out[item.substr(0, eq)] = std::stoull(item.substr(eq + 1));
  }
  return out;
}

Instance instance_from_args(const std::string& instance_path, const std::string& random_spec,
                            std::uint64_t seed) {
  if (!instance_path.empty()) return load_instance(instance_path);
  if (random_spec.empty())
    throw CLI::ValidationError("run", "need --instance FILE or --random n=..,ma=..,mb=..,m0=..");
  auto kv = parse_kv_sizes(random_spec);
  for (const char* key : {"n", "ma", "mb", "m0"})
    if (!kv.count(key))
      throw CLI::ValidationError("--random", std::string("missing '") + key + "'");
  return random_instance(static_cast<unsigned>(kv["n"]), kv["ma"], kv["mb"], kv["m0"],
                         mix_seed(seed, 0x9e4));
}

struct ProtocolFlags {
  std::uint64_t seed = 0;
  std::optional<unsigned> k;
  std::size_t round_cap = 10000;
  bool count_control_bits = false;
  bool dedup = false;
  bool verdict_bit = false;
  std::string sum_protocol = "trivial-sum";
  std::string intersection_protocol = "naive-intersection";

  RunOptions to_options() const {
    RunOptions opts;
    opts.round_cap = round_cap;
    opts.count_control_bits = count_control_bits;
    opts.dedup_hashes = dedup;
    opts.send_verdict = verdict_bit;
    opts.hash_width = k;
    opts.sum_protocol = sum_protocol;
    opts.intersection_protocol = intersection_protocol;
    return opts;
  }
};

void add_protocol_flags(CLI::App* cmd, ProtocolFlags& flags, bool with_hash_width = true) {
  cmd->add_option("--seed", flags.seed, "shared random seed");
  if (with_hash_width) cmd->add_option("--k", flags.k, "hash width for lv-sum");
  cmd->add_option("--round-cap", flags.round_cap, "retry-loop bound for lv-sum");
  cmd->add_flag("--count-control-bits", flags.count_control_bits,
                "include control bits in bits_total");
  cmd->add_flag("--dedup", flags.dedup, "deduplicate hash fields in lv-sum rounds");
  cmd->add_flag("--verdict-bit", flags.verdict_bit, "disj-via-sum: send A's verdict to B");
  cmd->add_option("--sum-protocol", flags.sum_protocol, "subprotocol for disj-via-sum");
  cmd->add_option("--intersection-protocol", flags.intersection_protocol,
                  "subprotocol for sum-via-intersection");
}

// ---------------------------------------------------------------------------

int cmd_run(const std::string& protocol, const std::string& instance_path,
            const std::string& random_spec, const ProtocolFlags& flags) {
  const Instance inst = instance_from_args(instance_path, random_spec, flags.seed);
  const Outcome out =
      run_protocol(protocol, inst, mix_seed(flags.seed, 0x5eed), flags.to_options());
  Json j = outcome_to_json(out, protocol, flags.count_control_bits);
  j["instance"] = instance_to_json(inst);
  std::cout << j.dump(2) << "\n";
  return out.status == RunStatus::Ok && out.oracle_match ? kExitOk : kExitCheckFailed;
}

int cmd_gen(unsigned n, std::size_t ma, std::size_t mb, std::size_t m0, std::uint64_t seed,
            const std::string& out_path) {
  const Instance inst = random_instance(n, ma, mb, m0, seed);
  if (!out_path.empty()) {
    save_instance(inst, out_path);
    // Loading back must reproduce the derived sizes exactly.
    const Instance reloaded = load_instance(out_path);
    if (reloaded.set_a != inst.set_a || reloaded.set_b != inst.set_b)
      throw std::logic_error("gen: file round-trip mismatch");
  } else {
    std::cout << instance_to_json(inst).dump(2) << "\n";
  }
  return kExitOk;
}

int cmd_verify_bounds(const std::string& kind_name, unsigned n, bool exhaustive,
                      std::size_t samples, std::uint64_t seed) {
  const Func kind = parse_func(kind_name);
  const auto start = std::chrono::steady_clock::now();
  const auto families =
      kind == Func::Sum ? sum_fooling_families(n) : product_fooling_families(n);
  VerifyOptions opts;
  opts.force_exhaustive = exhaustive;
  opts.sample_pairs = samples;
  opts.seed = seed;
  const FoolingReport report = verify_fooling(families, kind, opts);
  const auto elapsed = std::chrono::steady_clock::now() - start;

  Int materialized = 0;
  for (const auto& f : families) materialized += f.pairs.size();
  const bool counts_agree = materialized == rectangle_count_lower_bound(n, kind);
  const unsigned closed_form =
      kind == Func::Sum ? (1u << n) + n - 1 : (1u << n) + n - 2;
  const bool bound_matches = comm_lower_bound(n, kind) == closed_form;

  Json j = bounds_report_to_json(kind, n, families, report);
  j["count_matches_closed_form"] = counts_agree;
  j["bound_matches_theorem"] = bound_matches;
  j["runtime_ms"] =
      std::chrono::duration_cast<std::chrono::milliseconds>(elapsed).count();
  std::cout << j.dump(2) << "\n";
  return report.pass && counts_agree && bound_matches ? kExitOk : kExitCheckFailed;
}

int cmd_analyze(const AnalysisParams& params, bool sweep, bool simulate, std::size_t trials,
                std::size_t m0, std::uint64_t seed) {
  std::optional<SimulationReport> sim;
  if (simulate)
    sim = simulate_vs_formula(params.n, params.k, params.m_b, params.d_a, trials, seed, m0);
  Json j = analysis_report_to_json(params, true, sim ? &*sim : nullptr);
  if (sweep && params.d_a >= 1 && params.m_b >= 1) {
    Json arr = Json::array();
    for (unsigned k = 1; k <= params.n; ++k) {
      const Rational e = expected_bits_unbounded(params.n, k, params.m_b, params.d_a);
      arr.push_back(Json{{"k", k},
                         {"e_bits_inf", static_cast<double>(e)},
                         {"e_bits_inf_exact", Rational(e).str()}});
    }
    j["sweep"] = arr;
  }
  std::cout << j.dump(2) << "\n";
  return kExitOk;
}

// ---------------------------------------------------------------------------
// bench: Monte Carlo sweep over (n, m_a, m_b, m_0)[, k] cells per protocol,
// with the closed-form reference columns alongside the measurements.

struct BenchRecord {
  std::string protocol;
  unsigned n = 0;
  std::size_t m_a = 0, m_b = 0, m_0 = 0;
  std::optional<unsigned> k;
  std::size_t trials = 0;
  std::size_t ok = 0, failed = 0;
  std::string status = "ok";  // ok | infeasible | inapplicable
  double bits_mean = 0;
  std::size_t bits_min = 0, bits_max = 0;
  double control_bits_mean = 0;
  double rounds_mean = 0;
  double usec_per_trial = 0;
  Int lower_bound_sum_det;
  Int upper_bound_trivial_sum;
  std::optional<double> lv_model_bits;
};

bool protocol_uses_hash_width(const std::string& id) { return id == "lv-sum"; }

BenchRecord bench_cell(const std::string& protocol, unsigned n, std::size_t ma, std::size_t mb,
                       std::size_t m0, std::optional<unsigned> k, std::size_t trials,
                       std::uint64_t cell_seed, const ProtocolFlags& flags) {
  BenchRecord rec;
  rec.protocol = protocol;
  rec.n = n;
  rec.m_a = ma;
  rec.m_b = mb;
  rec.m_0 = m0;
  rec.k = k;
  rec.trials = trials;
  rec.lower_bound_sum_det = pow2(n) + n - 1;
  rec.upper_bound_trivial_sum = pow2(n) + 2 * n - 2;

  if (m0 > std::min(ma, mb) || Int(ma) + mb - m0 > pow2(n)) {
    rec.status = "infeasible";
    return rec;
  }
  if (k && protocol_uses_hash_width(protocol)) {
    const std::size_t d_a = ma - m0;
    if (d_a >= 1 && *k <= n)
      rec.lv_model_bits = static_cast<double>(expected_bits_unbounded(n, *k, mb, d_a));
    else if (*k <= n)
      rec.lv_model_bits = static_cast<double>(Int(*k) * mb + 4 * n - 2);
  }

  RunOptions opts = flags.to_options();
  opts.hash_width = k;

  double bits_sum = 0, control_sum = 0, rounds_sum = 0;
  const auto start = std::chrono::steady_clock::now();
  for (std::size_t t = 0; t < trials; ++t) {
    const Instance inst = random_instance(n, ma, mb, m0, mix_seed(cell_seed, 2 * t));
    Outcome out;
    try {
      out = run_protocol(protocol, inst, mix_seed(cell_seed, 2 * t + 1), opts);
    } catch (const std::domain_error&) {
      rec.status = "inapplicable";
      return rec;
    }
    if (out.status != RunStatus::Ok) {
      ++rec.failed;
      continue;
    }
    if (!out.oracle_match)
      throw std::logic_error("bench: protocol output disagreed with the oracle");
    const std::size_t bits = out.transcript.total_bits(flags.count_control_bits);
    bits_sum += static_cast<double>(bits);
    control_sum += static_cast<double>(out.transcript.control_bits());
    rounds_sum += static_cast<double>(std::max<std::size_t>(out.loop_rounds, 1));
    rec.bits_min = rec.ok == 0 ? bits : std::min(rec.bits_min, bits);
    rec.bits_max = std::max(rec.bits_max, bits);
    ++rec.ok;
  }
  const auto elapsed = std::chrono::steady_clock::now() - start;
  if (rec.ok > 0) {
    bits_sum /= static_cast<double>(rec.ok);
    rec.bits_mean = bits_sum;
    rec.control_bits_mean = control_sum / static_cast<double>(rec.ok);
    rec.rounds_mean = rounds_sum / static_cast<double>(rec.ok);
  }
  rec.usec_per_trial =
      std::chrono::duration_cast<std::chrono::duration<double, std::micro>>(elapsed).count() /
      static_cast<double>(trials);
  return rec;
}

Json bench_record_to_json(const BenchRecord& r) {
  Json j{{"protocol", r.protocol},
         {"n", r.n},
         {"m_a", r.m_a},
         {"m_b", r.m_b},
         {"m_0", r.m_0},
         {"k", r.k ? Json(*r.k) : Json(nullptr)},
         {"trials", r.trials},
         {"ok", r.ok},
         {"failed", r.failed},
         {"status", r.status},
         {"bits_mean", r.bits_mean},
         {"bits_min", r.bits_min},
         {"bits_max", r.bits_max},
         {"control_bits_mean", r.control_bits_mean},
         {"rounds_mean", r.rounds_mean},
         {"usec_per_trial", r.usec_per_trial},
         {"lower_bound_sum_det", r.lower_bound_sum_det.str()},
         {"upper_bound_trivial_sum", r.upper_bound_trivial_sum.str()},
         {"lv_model_bits", r.lv_model_bits ? Json(*r.lv_model_bits) : Json(nullptr)}};
  return j;
}

const char* kBenchCsvHeader =
    "protocol,n,m_a,m_b,m_0,k,trials,ok,failed,status,bits_mean,bits_min,bits_max,"
    "control_bits_mean,rounds_mean,usec_per_trial,lower_bound_sum_det,"
    "upper_bound_trivial_sum,lv_model_bits";

std::string bench_record_to_csv(const BenchRecord& r) {
  std::ostringstream os;
  os << r.protocol << ',' << r.n << ',' << r.m_a << ',' << r.m_b << ',' << r.m_0 << ',';
  if (r.k) os << *r.k;
  os << ',' << r.trials << ',' << r.ok << ',' << r.failed << ',' << r.status << ','
     << r.bits_mean << ',' << r.bits_min << ',' << r.bits_max << ',' << r.control_bits_mean
     << ',' << r.rounds_mean << ',' << r.usec_per_trial << ',' << r.lower_bound_sum_det << ','
     << r.upper_bound_trivial_sum << ',';
  if (r.lv_model_bits) os << *r.lv_model_bits;
  return os.str();
}

int cmd_bench(const std::vector<std::string>& protocols, const std::vector<unsigned>& ns,
              const std::vector<std::size_t>& mas, const std::vector<std::size_t>& mbs,
              const std::vector<std::size_t>& m0s, const std::vector<unsigned>& ks,
              std::size_t trials, bool csv, const std::string& out_path,
              const ProtocolFlags& flags) {
  for (const auto& p : protocols) protocol_descriptor(p);  // fail fast on bad ids

  std::vector<BenchRecord> records;
  std::size_t cell_index = 0;
  for (const auto& protocol : protocols)
    for (unsigned n : ns)
      for (std::size_t ma : mas)
        for (std::size_t mb : mbs)
          for (std::size_t m0 : m0s) {
            const std::uint64_t base = mix_seed(flags.seed, cell_index++);
            if (protocol_uses_hash_width(protocol)) {
              for (unsigned k : ks)
                records.push_back(
                    bench_cell(protocol, n, ma, mb, m0, k, trials,
                               mix_seed(base, k), flags));
            } else {
              records.push_back(
                  bench_cell(protocol, n, ma, mb, m0, std::nullopt, trials, base, flags));
            }
          }

  // Byte-stable output order regardless of how cells were produced.
  std::sort(records.begin(), records.end(), [](const BenchRecord& a, const BenchRecord& b) {
    const auto key = [](const BenchRecord& r) {
      return std::make_tuple(r.protocol, r.n, r.m_a, r.m_b, r.m_0, r.k.value_or(0));
    };
    return key(a) < key(b);
  });

  std::ostringstream body;
  if (csv) {
    body << kBenchCsvHeader << "\n";
    for (const auto& r : records) body << bench_record_to_csv(r) << "\n";
  } else {
    Json arr = Json::array();
    for (const auto& r : records) arr.push_back(bench_record_to_json(r));
    body << arr.dump(2) << "\n";
  }

  if (out_path.empty()) {
    std::cout << body.str();
  } else {
    std::ofstream out(out_path);
    if (!out) throw std::runtime_error("cannot write " + out_path);
    out << body.str();
  }
  return kExitOk;
}

std::vector<unsigned> to_unsigned(const std::vector<std::size_t>& v) {
  return {v.begin(), v.end()};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"two-party function computation on reconciled sets"};
  app.require_subcommand(1);

  // run ----------------------------------------------------------------
  std::string run_protocol_id, run_instance, run_random;
  ProtocolFlags run_flags;
  auto* run = app.add_subcommand("run", "run one protocol and print the outcome");
  run->add_option("--protocol", run_protocol_id, "protocol id")->required();
  run->add_option("--instance", run_instance, "instance JSON file");
  run->add_option("--random", run_random, "random instance spec n=..,ma=..,mb=..,m0=..");
  add_protocol_flags(run, run_flags);

  // gen ----------------------------------------------------------------
  std::size_t gen_n = 0, gen_ma = 0, gen_mb = 0, gen_m0 = 0;
  std::uint64_t gen_seed = 0;
  std::string gen_out;
  auto* gen = app.add_subcommand("gen", "generate an instance file");
  gen->add_option("--n", gen_n, "bit width")->required();
  gen->add_option("--ma", gen_ma, "size of set A")->required();
  gen->add_option("--mb", gen_mb, "size of set B")->required();
  gen->add_option("--m0", gen_m0, "intersection size")->required();
  gen->add_option("--seed", gen_seed, "sampling seed");
  gen->add_option("--out", gen_out, "output path (stdout when omitted)");

  // verify-bounds --------------------------------------------------------
  std::string vb_kind = "sum";
  unsigned vb_n = 2;
  bool vb_exhaustive = false;
  std::size_t vb_samples = 1000000;
  std::uint64_t vb_seed = 0x7ec7a;
  auto* vb = app.add_subcommand("verify-bounds",
                                "build the fooling families and certify the bounds");
  vb->add_option("--kind", vb_kind, "sum or product")->required();
  vb->add_option("--n", vb_n, "bit width (families materialize for n <= 4)")->required();
  vb->add_flag("--exhaustive", vb_exhaustive, "force the full pairwise check");
  vb->add_option("--samples", vb_samples, "sampled pair checks when not exhaustive");
  vb->add_option("--seed", vb_seed, "sampling seed");

  // analyze --------------------------------------------------------------
  AnalysisParams an_params;
  bool an_sweep = false, an_simulate = false;
  std::size_t an_trials = 10000, an_m0 = 0;
  std::uint64_t an_seed = 1;
  auto* an = app.add_subcommand("analyze", "evaluate the lv-sum cost model");
  an->add_option("--n", an_params.n, "bit width")->required();
  an->add_option("--k", an_params.k, "hash width")->required();
  an->add_option("--mb", an_params.m_b, "size of set B")->required();
  an->add_option("--da", an_params.d_a, "difference size d_a")->required();
  an->add_option("--r", an_params.r, "round bound for E[T_r]");
  an->add_option("--c", an_params.c, "heuristic constant");
  an->add_flag("--sweep-k", an_sweep, "include the full k sweep");
  an->add_flag("--simulate", an_simulate, "run lv-sum and report empirical columns");
  an->add_option("--trials", an_trials, "simulation trials");
  an->add_option("--m0", an_m0, "intersection size for simulated instances");
  an->add_option("--seed", an_seed, "simulation seed");

  // bench ----------------------------------------------------------------
  std::vector<std::string> bench_protocols;
  std::vector<std::size_t> bench_n, bench_ma, bench_mb, bench_m0, bench_k;
  std::size_t bench_trials = 100;
  bool bench_csv = false;
  std::string bench_out;
  ProtocolFlags bench_flags;
  auto* bench = app.add_subcommand("bench", "Monte Carlo sweep with reference columns");
  bench->add_option("--protocols", bench_protocols, "protocol ids")
      ->required()
      ->delimiter(',');
  bench->add_option("--n", bench_n, "bit widths")->required()->delimiter(',');
  bench->add_option("--ma", bench_ma, "sizes of set A")->required()->delimiter(',');
  bench->add_option("--mb", bench_mb, "sizes of set B")->required()->delimiter(',');
  bench->add_option("--m0", bench_m0, "intersection sizes")->required()->delimiter(',');
  bench->add_option("--k", bench_k, "hash widths for lv-sum")->delimiter(',');
  bench->add_option("--trials", bench_trials, "trials per cell");
  bench->add_flag("--csv", bench_csv, "CSV output (default JSON)");
  bench->add_option("--out", bench_out, "output path (stdout when omitted)");
  add_protocol_flags(bench, bench_flags, /*with_hash_width=*/false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*run) return cmd_run(run_protocol_id, run_instance, run_random, run_flags);
    if (*gen)
      return cmd_gen(static_cast<unsigned>(gen_n), gen_ma, gen_mb, gen_m0, gen_seed, gen_out);
    if (*vb) return cmd_verify_bounds(vb_kind, vb_n, vb_exhaustive, vb_samples, vb_seed);
    if (*an) return cmd_analyze(an_params, an_sweep, an_simulate, an_trials, an_m0, an_seed);
    if (*bench) {
      if (bench_k.empty()) bench_k = {3};
      return cmd_bench(bench_protocols, to_unsigned(bench_n), bench_ma, bench_mb, bench_m0,
                       to_unsigned(bench_k), bench_trials, bench_csv, bench_out, bench_flags);
    }
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitCheckFailed;
  }
  return kExitUsage;
}
