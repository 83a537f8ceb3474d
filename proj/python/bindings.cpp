#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>

#include "dagtrace/builders.hpp"
#include "dagtrace/dagfile.hpp"
#include "dagtrace/oracle.hpp"
#include "dagtrace/traceback.hpp"

namespace py = pybind11;
using namespace dagtrace;

namespace {

AssertLevel parse_level(const std::string& s) {
    if (s == "off") return AssertLevel::Off;
    if (s == "decomposition") return AssertLevel::Decomposition;
    if (s == "full") return AssertLevel::Full;
    throw py::value_error("assert_level must be off|decomposition|full");
}

std::optional<std::int64_t> payload_or_none(Value v) {
    if (v.is_bottom()) return std::nullopt;
    return v.payload();
}

py::dict metrics_dict(const RunMetrics& m) {
    py::dict d;
    d["peak_live_words"] = m.peak_live_words;
    d["max_recursion_depth"] = m.max_recursion_depth;
    d["forward_passes"] = m.forward_pass_count;
    d["vertex_visits"] = m.vertex_visit_count;
    d["root_boundary_words"] = m.root_boundary_words;
    return d;
}

TracebackConfig config_of(std::int64_t base_case, const std::string& assert_level) {
    TracebackConfig config;
    config.base_case_threshold = static_cast<Vertex>(base_case);
    config.assert_level = parse_level(assert_level);
    return config;
}

} // namespace

PYBIND11_MODULE(_dagtrace, m) {
    m.doc() = "Canonical witness-path traceback on DP DAGs in frontier-width-bounded space";

    py::register_exception<ValidationError>(m, "ValidationError", PyExc_ValueError);
    py::register_exception<NoWitnessError>(m, "NoWitnessError", PyExc_RuntimeError);
    py::register_exception<IoError>(m, "IoError", PyExc_OSError);

    py::class_<DpDag>(m, "DpDag")
        .def_property_readonly("vertex_count", &DpDag::vertex_count)
        .def_property_readonly("edge_count", &DpDag::edge_count)
        .def_property_readonly("omega", &DpDag::frontier_width)
        .def_property_readonly("delta_max", &DpDag::delta_max)
        .def_property_readonly("semiring",
                               [](const DpDag& dag) { return to_string(dag.semiring_tag()); })
        .def_property_readonly("sinks",
                               [](const DpDag& dag) {
                                   return std::vector<Vertex>(dag.sinks().begin(),
                                                              dag.sinks().end());
                               })
        .def_property_readonly("sources",
                               [](const DpDag& dag) {
                                   std::vector<std::pair<Vertex, std::int64_t>> out;
                                   for (const SourceSpec& s : dag.sources()) {
                                       out.emplace_back(s.vertex, s.init.payload());
                                   }
                                   return out;
                               })
        .def("frontier_at", &DpDag::frontier_at, py::arg("ell"))
        .def("middle_frontier",
             [](const DpDag& dag, Vertex lo, Vertex hi) {
                 return dag.middle_frontier({lo, hi});
             },
             py::arg("lo"), py::arg("hi"))
        .def("__repr__", [](const DpDag& dag) {
            return "<DpDag T=" + std::to_string(dag.vertex_count()) +
                   " omega=" + std::to_string(dag.frontier_width()) + ">";
        });

    m.def(
        "build_grid",
        [](const std::string& a, const std::string& b, std::int64_t match, std::int64_t mismatch,
           std::int64_t gap, const std::string& order, std::optional<int> band) {
            GridSpec spec;
            spec.a = a;
            spec.b = b;
            spec.scoring.match = Value::of(match);
            spec.scoring.mismatch = Value::of(mismatch);
            spec.scoring.gap = Value::of(gap);
            if (order == "column") {
                spec.order = GridOrder::ColumnMajor;
            } else if (order == "row") {
                spec.order = GridOrder::RowMajor;
            } else {
                throw py::value_error("order must be column|row");
            }
            spec.band = band;
            return build_grid(spec);
        },
        py::arg("a"), py::arg("b"), py::arg("match") = 1, py::arg("mismatch") = 0,
        py::arg("gap") = 0, py::arg("order") = "column", py::arg("band") = py::none());

    m.def(
        "build_chain",
        [](std::int64_t length, int step, std::uint64_t seed) {
            ChainSpec spec;
            spec.length = static_cast<Vertex>(length);
            spec.step = step;
            spec.seed = seed;
            return build_chain(spec);
        },
        py::arg("length"), py::arg("step") = 1, py::arg("seed") = 0);

    m.def(
        "build_layered",
        [](int layers, int width, double density, std::uint64_t seed) {
            return build_random_layered({layers, width, density, seed});
        },
        py::arg("layers"), py::arg("width"), py::arg("density") = 0.5, py::arg("seed") = 0);

    m.def(
        "build_gadget",
        [](int omega, const std::string& pattern, int layers, bool encode_pattern) {
            GadgetSpec spec;
            spec.omega = omega;
            for (char c : pattern) {
                if (c != '0' && c != '1') throw py::value_error("pattern must be a 0/1 string");
                spec.pattern.push_back(c == '1');
            }
            spec.layer_count = layers;
            spec.encode_pattern = encode_pattern;
            return build_lb_gadget(spec);
        },
        py::arg("omega"), py::arg("pattern"), py::arg("layers") = 0,
        py::arg("encode_pattern") = true);

    m.def("load", [](const std::string& path) { return read_dag_file(std::filesystem::path(path)); },
          py::arg("path"));
    m.def("save",
          [](const DpDag& dag, const std::string& path) {
              write_dag_file(dag, std::filesystem::path(path));
          },
          py::arg("dag"), py::arg("path"));

    m.def(
        "global_forward",
        [](const DpDag& dag, Vertex target) { return payload_or_none(global_forward(dag, target)); },
        py::arg("dag"), py::arg("target"));

    m.def(
        "traceback",
        [](const DpDag& dag, Vertex sink, std::int64_t base_case,
           const std::string& assert_level) {
            const auto [path, metrics] = traceback(dag, sink, config_of(base_case, assert_level));
            return py::make_tuple(path.vertices, metrics_dict(metrics));
        },
        py::arg("dag"), py::arg("sink"), py::arg("base_case") = 0,
        py::arg("assert_level") = "decomposition");

    m.def(
        "oracle_value",
        [](const DpDag& dag, Vertex sink) {
            return payload_or_none(oracle_solve(dag).value(sink));
        },
        py::arg("dag"), py::arg("sink"));

    m.def(
        "oracle_path",
        [](const DpDag& dag, Vertex sink) {
            const FullTable table = oracle_solve(dag);
            return oracle_traceback(dag, table, sink).vertices;
        },
        py::arg("dag"), py::arg("sink"));

    m.def(
        "oracle_canonical_path",
        [](const DpDag& dag, Vertex sink, std::int64_t base_case) {
            return oracle_canonical_path(dag, sink, static_cast<Vertex>(base_case)).vertices;
        },
        py::arg("dag"), py::arg("sink"), py::arg("base_case") = 0);

    m.def(
        "verify",
        [](const DpDag& dag, Vertex sink, std::int64_t base_case) {
            if (sink == 0) sink = dag.sinks().back();
            const Vertex threshold = base_case > 0
                                         ? static_cast<Vertex>(base_case)
                                         : default_base_case_threshold(dag.vertex_count());
            const FullTable table = oracle_solve(dag);
            py::dict out;
            if (table.value(sink).is_bottom()) {
                bool engine_agrees = false;
                try {
                    (void)traceback(dag, sink, config_of(threshold, "full"));
                } catch (const NoWitnessError&) {
                    engine_agrees = true;
                }
                out["no_witness"] = true;
                out["paths_equal"] = engine_agrees;
                out["values_equal"] = engine_agrees;
                return out;
            }
            const auto [path, metrics] = traceback(dag, sink, config_of(threshold, "full"));
            RunMetrics oracle_metrics = oracle_solve_metrics(dag);
            const WitnessPath reference = oracle_canonical_path(dag, sink, threshold,
                                                                &oracle_metrics);
            out["no_witness"] = false;
            out["paths_equal"] = path.vertices == reference.vertices;
            out["values_equal"] = path_value(dag, path) == table.value(sink);
            out["value"] = table.value(sink).payload();
            out["peak_live_words_engine"] = metrics.peak_live_words;
            out["peak_live_words_oracle"] = oracle_metrics.peak_live_words;
            out["depth"] = metrics.max_recursion_depth;
            return out;
        },
        py::arg("dag"), py::arg("sink") = 0, py::arg("base_case") = 0);

    m.def("default_base_case_threshold", &default_base_case_threshold, py::arg("vertex_count"));
}
