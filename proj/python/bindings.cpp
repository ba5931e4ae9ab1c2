#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "dioph/analysis.hpp"
#include "dioph/coloring.hpp"
#include "dioph/extension.hpp"
#include "dioph/graph_io.hpp"

namespace py = pybind11;
using namespace dioph;

namespace {

py::int_ to_py(const BigInt& v) {
    return py::reinterpret_steal<py::int_>(PyLong_FromString(v.get_str().c_str(), nullptr, 10));
}

BigInt from_py(const py::int_& v) { return BigInt(py::str(v).cast<std::string>()); }

std::vector<BigInt> from_py_list(const std::vector<py::int_>& values) {
    std::vector<BigInt> out;
    out.reserve(values.size());
    for (const auto& v : values) out.push_back(from_py(v));
    return out;
}

py::list to_py_list(const std::vector<BigInt>& values) {
    py::list out;
    for (const auto& v : values) out.append(to_py(v));
    return out;
}

py::dict stats_dict(const GraphStats& s) {
    py::dict d;
    d["n"] = s.n;
    d["e"] = s.e;
    d["density"] = py::make_tuple(s.density_num, s.density_den);
    d["degree_histogram"] = s.degree_histogram;
    d["clique_number"] = s.clique_number;
    d["components"] = s.components;
    return d;
}

py::dict extension_dict(const ExtensionReport& r) {
    py::dict d;
    d["mode"] = to_string(r.mode);
    d["values"] = to_py_list(r.values);
    d["linked"] = r.linked;
    d["modulus"] = to_py(r.modulus);
    d["residue"] = to_py(r.residue);
    d["primes"] = r.primes;
    d["aux_prime"] = r.aux_prime;
    d["pell_d"] = r.pell_d;
    d["unit_order"] = r.unit_order;
    return d;
}

SimpleGraph simple_from_edges(int n, const std::vector<std::pair<int, int>>& edges) {
    if (n < 0) throw std::invalid_argument("negative vertex count");
    SimpleGraph g(n);
    for (auto [a, b] : edges) {
        if (a < 0 || b < 0 || a >= n || b >= n || a == b) throw std::invalid_argument("bad edge");
        g.add_edge(a, b);
    }
    return g;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Diophantine graphs: ab + 1 is a perfect square";

    py::register_exception<InvariantViolation>(m, "InvariantViolation");
    py::register_exception<BudgetExceeded>(m, "BudgetExceeded");
    py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);

    m.def("is_square", [](const py::int_& n) { return is_square(from_py(n)); }, py::arg("n"));
    m.def("factorize", [](u64 n) { return factorize(n).factors(); }, py::arg("n"));
    m.def("square_free_part", &square_free_part, py::arg("n"));
    m.def("unit_roots_mod", [](u64 a) { return unit_roots_mod(a).roots; }, py::arg("a"));
    m.def("count_unit_roots", py::overload_cast<u64>(&count_unit_roots), py::arg("a"));

    m.def(
        "fundamental_unit",
        [](u64 D) {
            const PellUnit u = fundamental_unit(D);
            return py::make_tuple(to_py(u.mu), to_py(u.nu));
        },
        py::arg("D"));
    m.def(
        "unit_order_mod",
        [](u64 D, u64 modulus) { return unit_order_mod(fundamental_unit(D), modulus); }, py::arg("D"),
        py::arg("m"));

    py::class_<DiophGraph>(m, "DiophGraph")
        .def_property_readonly("vertices", &DiophGraph::vertices)
        .def_property_readonly("shift", &DiophGraph::shift)
        .def("__len__", &DiophGraph::size)
        .def("edge_count", &DiophGraph::edge_count)
        .def("edges", &DiophGraph::edges)
        .def("neighbors",
             [](const DiophGraph& g, u64 v) {
                 const auto n = g.neighbors(v);
                 return std::vector<u64>(n.begin(), n.end());
             })
        .def("degree", &DiophGraph::degree)
        .def("adjacent", &DiophGraph::adjacent)
        .def("stats", [](const DiophGraph& g) { return stats_dict(stats(g)); })
        .def("to_json", &graph_to_json)
        .def("__eq__", [](const DiophGraph& a, const DiophGraph& b) { return a == b; });

    m.def("edge_test", [](const py::int_& a, const py::int_& b, u64 shift) { return edge_test(from_py(a), from_py(b), shift); },
          py::arg("a"), py::arg("b"), py::arg("shift") = 1);
    m.def("build_range", &build_range, py::arg("N"), py::arg("shift") = 1, py::arg("threads") = 0,
          py::call_guard<py::gil_scoped_release>());
    m.def("build_set", [](const std::vector<u64>& v, u64 shift) { return build_set(v, shift); }, py::arg("values"),
          py::arg("shift") = 1);
    m.def("graph_from_json", &graph_from_json, py::arg("text"));
    m.def("degree_bound_max_ratio", [](const DiophGraph& g) { return degree_bound_check(g).max_ratio; });

    m.def(
        "k_colorable",
        [](const DiophGraph& g, unsigned k, const std::vector<u64>& order) {
            const ColoringResult r = k_colorable(g, k, order);
            py::dict d;
            d["colorable"] = r.colorable;
            py::dict colors;
            if (r.colorable) {
                for (std::size_t i = 0; i < g.size(); ++i) colors[py::int_(g.vertices()[i])] = r.colors[i];
            }
            d["coloring"] = colors;
            d["nodes"] = r.stats.nodes;
            d["peak_open_branches"] = r.stats.peak_open;
            return d;
        },
        py::arg("graph"), py::arg("k"), py::arg("order") = std::vector<u64>{});
    m.def("chromatic_number", py::overload_cast<const DiophGraph&, const std::vector<u64>&>(&chromatic_number),
          py::arg("graph"), py::arg("order") = std::vector<u64>{});
    m.def(
        "minimality_check",
        [](const DiophGraph& g, unsigned k, const std::vector<u64>& order) {
            const MinimalityReport r = minimality_check(g, k, order);
            return py::make_tuple(r.minimal, r.critical);
        },
        py::arg("graph"), py::arg("k"), py::arg("order") = std::vector<u64>{});

    m.def("extend_isolated", [](const std::vector<py::int_>& V, std::size_t count) {
        return extension_dict(extend_isolated(from_py_list(V), count));
    }, py::arg("V"), py::arg("count"));
    m.def("extend_pendant", [](const std::vector<py::int_>& V, std::size_t i, std::size_t count) {
        return extension_dict(extend_pendant(from_py_list(V), i, count));
    }, py::arg("V"), py::arg("i"), py::arg("count"));
    m.def("extend_double", [](const std::vector<py::int_>& V, std::size_t i, std::size_t j, std::size_t count) {
        return extension_dict(extend_double(from_py_list(V), i, j, count));
    }, py::arg("V"), py::arg("i"), py::arg("j"), py::arg("count"));
    m.def("common_neighbors_equal_sqfree", &common_neighbors_equal_sqfree, py::arg("a"), py::arg("b"));
    m.def("common_neighbors_bounded",
          [](const std::vector<u64>& S, u64 bound) { return common_neighbors_bounded(S, bound); }, py::arg("S"),
          py::arg("bound"));
    m.def(
        "regular_extensions",
        [](const py::int_& a, const py::int_& b, const py::int_& c) {
            const auto [lo, hi] = regular_extensions(RegularTriple::make(from_py(a), from_py(b), from_py(c)));
            return py::make_tuple(to_py(lo), to_py(hi));
        },
        py::arg("a"), py::arg("b"), py::arg("c"));
    m.def(
        "family_k5_minus_edge",
        [](u64 k) {
            const FamilyMember f = family_k5_minus_edge(k);
            return py::make_tuple(to_py_list(std::vector<BigInt>(f.values.begin(), f.values.end())), f.missing_edge);
        },
        py::arg("k"));
    m.def(
        "represent_graph",
        [](int n, const std::vector<std::pair<int, int>>& edges, u64 bound) {
            RepresentOptions opts;
            opts.search_bound = bound;
            const RepresentResult r = represent_graph(simple_from_edges(n, edges), opts);
            py::dict d;
            d["found"] = r.status == RepresentStatus::found;
            d["witness"] = to_py_list(r.witness);
            d["method"] = r.method;
            d["known_impossible"] = r.known_impossible;
            return d;
        },
        py::arg("n"), py::arg("edges"), py::arg("bound") = 1000);

    m.def(
        "prune_low_degree",
        [](const DiophGraph& g) {
            auto [pruned, trace] = prune_low_degree(g);
            py::list steps;
            for (const auto& s : trace.steps) steps.append(py::make_tuple(s.vertex, s.degree));
            return py::make_tuple(std::move(pruned), steps);
        },
        py::arg("graph"));
    m.def("heuristic_top", &heuristic_top, py::arg("N"), py::arg("count"));
    m.def("omega_distribution", [](u64 x) { return omega_distribution(x).counts; }, py::arg("x"));
    m.def("near_hamiltonian_path", &near_hamiltonian_path, py::arg("N"));
    m.def("hamiltonian_path_16k2", &hamiltonian_path_16k2, py::arg("k"));
    m.def(
        "hamiltonian_path",
        [](const DiophGraph& g, std::size_t cap) {
            const HamiltonResult r = hamiltonian_path_exists(g, cap);
            return py::make_tuple(to_string(r.verdict), r.method, r.witness);
        },
        py::arg("graph"), py::arg("cap") = 40);
    m.def(
        "hamiltonian_cycle",
        [](const DiophGraph& g) {
            const HamiltonResult r = hamiltonian_cycle_search(g);
            return py::make_tuple(to_string(r.verdict), r.witness);
        },
        py::arg("graph"));
}
