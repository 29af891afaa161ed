#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "reconlab/analysis.hpp"
#include "reconlab/gf2_hash.hpp"
#include "reconlab/json_io.hpp"
#include "reconlab/protocols.hpp"
#include "reconlab/rectangles.hpp"
#include "reconlab/rng.hpp"

namespace py = pybind11;
using namespace reconlab;

namespace {

py::int_ to_py_int(const Int& v) {
  // Arbitrary precision crosses the boundary as text.
  return py::cast<py::int_>(py::module_::import("builtins").attr("int")(v.str()));
}

py::object value_to_py(const std::optional<Value>& v) {
  if (!v) return py::none();
  if (std::holds_alternative<Int>(*v)) return to_py_int(std::get<Int>(*v));
  return py::cast(std::get<ElementSet>(*v));
}

py::object json_to_py(const Json& j) {
  return py::module_::import("json").attr("loads")(j.dump());
}

RunOptions make_options(std::optional<unsigned> k, std::size_t round_cap,
                        bool count_control_bits, bool dedup, bool verdict_bit,
                        const std::string& sum_protocol,
                        const std::string& intersection_protocol) {
  RunOptions opts;
  opts.hash_width = k;
  opts.round_cap = round_cap;
  opts.count_control_bits = count_control_bits;
  opts.dedup_hashes = dedup;
  opts.send_verdict = verdict_bit;
  opts.sum_protocol = sum_protocol;
  opts.intersection_protocol = intersection_protocol;
  return opts;
}

py::tuple rational_parts(const Rational& r) {
  return py::make_tuple(to_py_int(boost::multiprecision::numerator(r)),
                        to_py_int(boost::multiprecision::denominator(r)));
}

}  // namespace

PYBIND11_MODULE(reconlab, m) {
  m.doc() = "two-party function computation on reconciled sets";

  py::class_<Instance>(m, "Instance")
      .def_readonly("n", &Instance::n)
      .def_readonly("set_a", &Instance::set_a)
      .def_readonly("set_b", &Instance::set_b)
      .def_readonly("m_a", &Instance::m_a)
      .def_readonly("m_b", &Instance::m_b)
      .def_readonly("m_0", &Instance::m_0)
      .def_readonly("d_a", &Instance::d_a)
      .def_readonly("d_b", &Instance::d_b)
      .def_readonly("kappa", &Instance::kappa)
      .def("d", &Instance::d)
      .def("__repr__", [](const Instance& inst) {
        return "Instance(n=" + std::to_string(inst.n) + ", m_a=" + std::to_string(inst.m_a) +
               ", m_b=" + std::to_string(inst.m_b) + ", m_0=" + std::to_string(inst.m_0) + ")";
      });

  py::class_<Outcome>(m, "Outcome")
      .def_property_readonly("status",
                             [](const Outcome& o) { return run_status_name(o.status); })
      .def_property_readonly("value_a", [](const Outcome& o) { return value_to_py(o.value_a); })
      .def_property_readonly("value_b", [](const Outcome& o) { return value_to_py(o.value_b); })
      .def_readonly("oracle_match", &Outcome::oracle_match)
      .def_readonly("loop_rounds", &Outcome::loop_rounds)
      .def_property_readonly("payload_bits",
                             [](const Outcome& o) { return o.transcript.payload_bits(); })
      .def_property_readonly("control_bits",
                             [](const Outcome& o) { return o.transcript.control_bits(); })
      .def_property_readonly("bits_a_to_b",
                             [](const Outcome& o) { return o.transcript.bits_a_to_b(); })
      .def_property_readonly("bits_b_to_a",
                             [](const Outcome& o) { return o.transcript.bits_b_to_a(); })
      .def_property_readonly("message_count",
                             [](const Outcome& o) { return o.transcript.rounds(); })
      .def("transcript", [](const Outcome& o) { return json_to_py(transcript_to_json(o.transcript)); });

  py::class_<LinearHash>(m, "LinearHash")
      .def(py::init<unsigned, unsigned, std::vector<std::uint64_t>>(), py::arg("n"),
           py::arg("k"), py::arg("rows"))
      .def_property_readonly("n", &LinearHash::input_width)
      .def_property_readonly("k", &LinearHash::output_width)
      .def_property_readonly("rows", &LinearHash::rows)
      .def("apply", &LinearHash::apply)
      .def("dump", &LinearHash::dump)
      .def_static("parse", &LinearHash::parse)
      .def_static("identity", &LinearHash::identity);

  m.def("make_instance", &make_instance, py::arg("n"), py::arg("set_a"), py::arg("set_b"));
  m.def("random_instance", &random_instance, py::arg("n"), py::arg("m_a"), py::arg("m_b"),
        py::arg("m_0"), py::arg("seed"));
  m.def(
      "oracle_value",
      [](const Instance& inst, const std::string& kind) {
        return value_to_py(oracle_value(inst, parse_func(kind)));
      },
      py::arg("instance"), py::arg("kind"));

  m.def("protocol_ids", &protocol_ids);
  m.def(
      "run_protocol",
      [](const std::string& protocol, const Instance& inst, std::uint64_t seed,
         std::optional<unsigned> k, std::size_t round_cap, bool count_control_bits, bool dedup,
         bool verdict_bit, const std::string& sum_protocol,
         const std::string& intersection_protocol) {
        return run_protocol(protocol, inst, seed,
                            make_options(k, round_cap, count_control_bits, dedup, verdict_bit,
                                         sum_protocol, intersection_protocol));
      },
      py::arg("protocol"), py::arg("instance"), py::arg("seed") = 0,
      py::kw_only(), py::arg("k") = py::none(), py::arg("round_cap") = 10000,
      py::arg("count_control_bits") = false, py::arg("dedup") = false,
      py::arg("verdict_bit") = false, py::arg("sum_protocol") = "trivial-sum",
      py::arg("intersection_protocol") = "naive-intersection");

  m.def(
      "sample_full_rank",
      [](unsigned n, unsigned k, std::uint64_t seed) {
        SplitMix64 rng(seed);
        return sample_full_rank(n, k, rng);
      },
      py::arg("n"), py::arg("k"), py::arg("seed"));
  m.def(
      "hash_at",
      [](std::uint64_t shared_seed, unsigned n, unsigned k, std::size_t index) {
        return HashSequence(shared_seed, n, k).at(index);
      },
      py::arg("shared_seed"), py::arg("n"), py::arg("k"), py::arg("index"));
  m.def("preimage_histogram", &preimage_histogram);
  m.def(
      "collision_rate_mc",
      [](unsigned n, unsigned k, std::size_t trials, std::uint64_t seed) {
        SplitMix64 rng(seed);
        return collision_rate_mc(n, k, trials, rng);
      },
      py::arg("n"), py::arg("k"), py::arg("trials"), py::arg("seed"));

  m.def(
      "verify_bounds",
      [](const std::string& kind_name, unsigned n, bool exhaustive, std::size_t samples,
         std::uint64_t seed) {
        const Func kind = parse_func(kind_name);
        const auto families =
            kind == Func::Sum ? sum_fooling_families(n) : product_fooling_families(n);
        VerifyOptions opts;
        opts.force_exhaustive = exhaustive;
        opts.sample_pairs = samples;
        opts.seed = seed;
        const auto report = verify_fooling(families, kind, opts);
        return json_to_py(bounds_report_to_json(kind, n, families, report));
      },
      py::arg("kind"), py::arg("n"), py::arg("exhaustive") = false,
      py::arg("samples") = 1000000, py::arg("seed") = 0x7ec7a);
  m.def("rectangle_count_lower_bound",
        [](unsigned n, const std::string& kind) {
          return to_py_int(rectangle_count_lower_bound(n, parse_func(kind)));
        });
  m.def("comm_lower_bound", [](unsigned n, const std::string& kind) {
    return comm_lower_bound(n, parse_func(kind));
  });
  m.def("literature_bounds", [](unsigned n) {
    const auto b = literature_bounds(n);
    py::dict d;
    d["disj_det"] = to_py_int(b.disj_det);
    d["sum_det"] = to_py_int(b.sum_det);
    d["sum_randomized_order"] = to_py_int(b.sum_randomized_order);
    return d;
  });

  m.def("collision_probability", [](unsigned n, unsigned k) {
    return static_cast<double>(collision_probability(n, k));
  });
  m.def("collision_probability_exact", [](unsigned n, unsigned k) {
    return rational_parts(collision_probability(n, k));
  });
  m.def("accept_probability", [](unsigned n, unsigned k, std::size_t d_a) {
    return static_cast<double>(accept_probability(n, k, d_a));
  });
  m.def("accept_probability_exact", [](unsigned n, unsigned k, std::size_t d_a) {
    return rational_parts(accept_probability(n, k, d_a));
  });
  m.def(
      "expected_bits_bounded",
      [](unsigned n, unsigned k, std::size_t m_b, std::size_t d_a, std::size_t r) {
        return static_cast<double>(expected_bits_bounded({n, k, m_b, d_a, r}));
      },
      py::arg("n"), py::arg("k"), py::arg("m_b"), py::arg("d_a"), py::arg("r") = 1000);
  m.def(
      "expected_bits_bounded_exact",
      [](unsigned n, unsigned k, std::size_t m_b, std::size_t d_a, std::size_t r) {
        return rational_parts(expected_bits_bounded({n, k, m_b, d_a, r}));
      },
      py::arg("n"), py::arg("k"), py::arg("m_b"), py::arg("d_a"), py::arg("r") = 1000);
  m.def("expected_bits_unbounded",
        [](unsigned n, unsigned k, std::size_t m_b, std::size_t d_a) {
          return static_cast<double>(expected_bits_unbounded(n, k, m_b, d_a));
        });
  m.def("expected_bits_unbounded_exact",
        [](unsigned n, unsigned k, std::size_t m_b, std::size_t d_a) {
          return rational_parts(expected_bits_unbounded(n, k, m_b, d_a));
        });
  m.def("optimal_k", &optimal_k, py::arg("n"), py::arg("m_b"), py::arg("d_a"));
  m.def("heuristic_k", &heuristic_k, py::arg("d_a"), py::arg("c") = 1.0);
  m.def(
      "simulate_vs_formula",
      [](unsigned n, unsigned k, std::size_t m_b, std::size_t d_a, std::size_t trials,
         std::uint64_t seed, std::size_t m_0) {
        const auto rep = simulate_vs_formula(n, k, m_b, d_a, trials, seed, m_0);
        AnalysisParams params{n, k, m_b, d_a};
        return json_to_py(analysis_report_to_json(params, false, &rep));
      },
      py::arg("n"), py::arg("k"), py::arg("m_b"), py::arg("d_a"), py::arg("trials"),
      py::arg("seed"), py::arg("m_0") = 0);

  m.attr("__version__") = "0.1.0";
}
