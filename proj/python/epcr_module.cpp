#include <memory>
#include <optional>
#include <string>

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "epcr/cycles.hpp"
#include "epcr/epg_io.hpp"
#include "epcr/errors.hpp"
#include "epcr/json_io.hpp"
#include "epcr/solve.hpp"

namespace py = pybind11;
using namespace epcr;

namespace {

using GraphPtr = std::shared_ptr<EdgePeriodicGraph>; // pybind11 holders cannot be const

// nlohmann -> Python through the json module keeps the binding small.
py::object to_python(const json& j) {
    return py::module_::import("json").attr("loads")(j.dump());
}

GraphPtr share(EdgePeriodicGraph g) {
    return std::make_shared<EdgePeriodicGraph>(std::move(g));
}

py::list edge_list(const EdgePeriodicGraph& g) {
    py::list out;
    for (EdgeId e = 0; e < g.edge_count(); ++e)
        out.append(py::make_tuple(g.edges()[e].u, g.edges()[e].v, g.pattern(e).to_string()));
    return out;
}

GraphPtr from_edges(std::uint32_t n, const std::vector<std::tuple<Vertex, Vertex, std::string>>& edges) {
    EdgePeriodicGraph::Builder b(n);
    for (const auto& [u, v, bits] : edges)
        b.add_edge(u, v, Pattern::from_string(bits));
    return share(std::move(b).build());
}

} // namespace

PYBIND11_MODULE(_epcr, m) {
    m.doc() = "Edge-periodic cops and robbers solver";

    py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);
    py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
    py::register_exception<ResourceError>(m, "ResourceError", PyExc_MemoryError);
    py::register_exception<RuleViolation>(m, "RuleViolation", PyExc_ValueError);

    py::class_<EdgePeriodicGraph, GraphPtr>(m, "Graph")
        .def(py::init(&from_edges), py::arg("n"), py::arg("edges") = std::vector<std::tuple<Vertex, Vertex, std::string>>{})
        .def_property_readonly("n", &EdgePeriodicGraph::vertex_count)
        .def_property_readonly("edges", &edge_list)
        .def_property_readonly("lcm", [](const EdgePeriodicGraph& g) { return g.period().lcm; })
        .def_property_readonly("bound_multiplier", [](const EdgePeriodicGraph& g) { return g.period().bound_multiplier; })
        .def("edge_present", py::overload_cast<Vertex, Vertex, std::uint64_t>(&EdgePeriodicGraph::edge_present, py::const_),
             py::arg("u"), py::arg("v"), py::arg("t"))
        .def("serialize", [](const EdgePeriodicGraph& g) { return serialize_epg(g); })
        .def("__eq__", [](const EdgePeriodicGraph& a, const EdgePeriodicGraph& b) { return a == b; })
        .def("__repr__", [](const EdgePeriodicGraph& g) {
            return "<epcr.Graph n=" + std::to_string(g.vertex_count()) + " edges=" + std::to_string(g.edge_count()) +
                   " lcm=" + std::to_string(g.period().lcm) + ">";
        });

    m.def("parse_epg", [](const std::string& text) { return share(parse_epg(text)); }, py::arg("text"));
    m.def("load_epg", [](const std::string& path) { return share(load_epg(path)); }, py::arg("path"));
    m.def("serialize_epg", [](const EdgePeriodicGraph& g) { return serialize_epg(g); }, py::arg("graph"));

    m.def(
        "decide",
        [](GraphPtr g, bool strategy, std::uint64_t max_states) {
            SolveOptions opts;
            opts.build.max_states = max_states;
            SolveResult res;
            {
                py::gil_scoped_release release;
                res = decide(std::move(g), opts);
            }
            SolveJsonOptions jo;
            jo.strategy = strategy;
            return to_python(to_json(res, jo));
        },
        py::arg("graph"), py::arg("strategy") = false, py::arg("max_states") = BuildOptions{}.max_states);

    m.def(
        "decide_k_cops",
        [](const EdgePeriodicGraph& g, std::uint32_t k) {
            const auto v = decide_k_cops(g, k);
            json j;
            j["winner"] = to_string(v.winner);
            j["cop_start"] = v.cop_start ? json(*v.cop_start) : json(nullptr);
            j["state_count"] = v.states;
            j["edge_count"] = v.edges;
            return to_python(j);
        },
        py::arg("graph"), py::arg("k"));

    m.def("gen_theorem17_cycle", [](std::uint32_t M) { return share(gen_theorem17_cycle(M).to_graph()); }, py::arg("M"));
    m.def("gen_theorem18_cycle", [](std::uint32_t M) { return share(gen_theorem18_cycle(M).to_graph()); }, py::arg("M"));
    m.def("theorem17_cop_start", &theorem17_cop_start, py::arg("M"));
    m.def(
        "gen_random_cycle",
        [](std::uint32_t n, std::uint32_t max_len, std::uint64_t seed) {
            return share(gen_random_cycle(n, max_len, seed).to_graph());
        },
        py::arg("n"), py::arg("max_len"), py::arg("seed"));
    m.def(
        "extend_cycle",
        [](const EdgePeriodicGraph& g, std::uint32_t length) {
            return share(extend_cycle(CycleSpec::from_graph(g), length).to_graph());
        },
        py::arg("graph"), py::arg("length"));

    m.def(
        "simulate",
        [](GraphPtr g, const std::string& cop, const std::string& robber, std::uint64_t seed, std::uint64_t max_steps,
           std::optional<Vertex> cop_start, std::optional<Vertex> robber_start) {
            const auto res = decide(g);
            const Policy cp = policy_by_name(cop, res, Mover::Cop, seed);
            const Policy rp = policy_by_name(robber, res, Mover::Robber, seed + 1);
            const Vertex cs = cop_start.value_or(optimal_cop_start(res));
            const Vertex rs = robber_start.value_or(optimal_robber_start(res, cs));
            PlayoutOptions po;
            po.max_steps = max_steps;
            json j = to_json(playout(*g, cp, rp, cs, rs, po));
            j["winner"] = to_string(res.winner);
            return to_python(j);
        },
        py::arg("graph"), py::arg("cop") = "optimal", py::arg("robber") = "optimal", py::arg("seed") = 1,
        py::arg("max_steps") = 0, py::arg("cop_start") = std::nullopt, py::arg("robber_start") = std::nullopt);

    m.def(
        "legal_moves",
        [](const EdgePeriodicGraph& g, Vertex cop, Vertex robber, const std::string& mover, std::uint64_t time) {
            return legal_moves(g, {cop, robber, mover == "robber" ? Mover::Robber : Mover::Cop, time});
        },
        py::arg("graph"), py::arg("cop"), py::arg("robber"), py::arg("mover"), py::arg("time"));

    m.def(
        "verify_bounds",
        [](const std::vector<std::uint32_t>& lengths, const std::vector<std::string>& patterns, std::size_t samples,
           bool at_threshold, std::uint64_t seed, unsigned threads) {
            std::vector<Pattern> pool;
            for (const auto& p : patterns)
                pool.push_back(Pattern::from_string(p));
            SweepOptions o;
            o.mode = samples ? SweepMode::Sample : SweepMode::Exhaustive;
            o.samples = samples;
            o.at_threshold = at_threshold;
            o.seed = seed;
            o.threads = threads;
            SweepReport rep;
            {
                py::gil_scoped_release release;
                rep = verify_theorem16(lengths, pool, o);
            }
            return to_python(to_json(rep));
        },
        py::arg("lengths"), py::arg("patterns"), py::arg("samples") = 0, py::arg("at_threshold") = false,
        py::arg("seed") = 1, py::arg("threads") = 0);

    m.def(
        "strip_analysis",
        [](const EdgePeriodicGraph& g, Vertex cop_start, int direction, std::uint64_t t0, std::uint64_t horizon) {
            return to_python(to_json(strip_analysis(CycleSpec::from_graph(g), cop_start, direction, t0, horizon)));
        },
        py::arg("graph"), py::arg("cop_start"), py::arg("direction") = 1, py::arg("t0") = 0, py::arg("horizon") = 0);
}
