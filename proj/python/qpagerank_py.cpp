#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <utility>
#include <vector>

#include "qpagerank/analysis.hpp"
#include "qpagerank/classical.hpp"
#include "qpagerank/error.hpp"
#include "qpagerank/generators.hpp"
#include "qpagerank/graph.hpp"
#include "qpagerank/graph_io.hpp"
#include "qpagerank/quantum_walk.hpp"

namespace py = pybind11;
using namespace qpr;

namespace {

py::array_t<double> to_array(std::span<const double> values) {
  py::array_t<double> out(static_cast<py::ssize_t>(values.size()));
  std::copy(values.begin(), values.end(), out.mutable_data());
  return out;
}

RankVector to_rank(const std::vector<double>& values) { return RankVector(values); }

Backend backend_from(const std::string& name) {
  if (name == "auto") return Backend::Auto;
  if (name == "direct") return Backend::Direct;
  if (name == "spectral") return Backend::Spectral;
  throw Error(ErrorKind::InvalidArgument, "backend must be auto, direct or spectral");
}

Ranker make_ranker(const std::string& kind, double alpha, std::size_t steps) {
  Ranker r;
  r.kind = parse_ranker(kind);
  r.alpha = alpha;
  r.evolve.steps = steps;
  return r;
}

DirectedGraph make_graph(std::size_t n, const std::vector<std::pair<NodeId, NodeId>>& arcs,
                         std::vector<std::string> labels) {
  std::vector<Arc> a;
  a.reserve(arcs.size());
  for (auto [s, d] : arcs) a.push_back({s, d});
  return DirectedGraph(n, std::move(a), std::move(labels));
}

}  // namespace

PYBIND11_MODULE(_qpagerank, m) {
  m.doc() = "Classical and quantum PageRank on directed networks";
  m.attr("__version__") = "0.1.0";

  static py::exception<Error> error(m, "QprError", PyExc_ValueError);
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      PyErr_SetString(error.ptr(), e.what());
    }
  });

  py::class_<DirectedGraph>(m, "DirectedGraph")
      .def(py::init(&make_graph), py::arg("nodes"), py::arg("arcs"),
           py::arg("labels") = std::vector<std::string>{})
      .def_property_readonly("node_count", &DirectedGraph::node_count)
      .def_property_readonly("arc_count", &DirectedGraph::arc_count)
      .def_property_readonly("arcs",
                             [](const DirectedGraph& g) {
                               std::vector<std::pair<NodeId, NodeId>> out;
                               for (const Arc& a : g.arcs()) out.emplace_back(a.src, a.dst);
                               return out;
                             })
      .def_property_readonly("labels", &DirectedGraph::labels)
      .def("label", &DirectedGraph::label)
      .def("out_degree", &DirectedGraph::out_degree)
      .def("has_arc", &DirectedGraph::has_arc)
      .def("__eq__", [](const DirectedGraph& a, const DirectedGraph& b) { return a == b; })
      .def("__len__", &DirectedGraph::node_count)
      .def("__repr__", [](const DirectedGraph& g) {
        return "<DirectedGraph nodes=" + std::to_string(g.node_count()) +
               " arcs=" + std::to_string(g.arc_count()) + ">";
      });

  m.def("parse_edge_list", py::overload_cast<std::string_view>(&parse_edge_list));
  m.def("parse_pajek", py::overload_cast<std::string_view>(&parse_pajek));
  m.def("to_edge_list", &to_edge_list);
  m.def("to_pajek", &to_pajek);
  m.def("load_graph", [](const std::string& path) { return load_graph(path); });
  m.def("graph_hash", &graph_hash_hex);
  m.def("remove_nodes", [](const DirectedGraph& g, const std::vector<NodeId>& victims) {
    ReducedGraph r = remove_nodes(g, victims);
    return std::make_pair(std::move(r.graph), std::move(r.original_index));
  });

  m.def("scale_free_graph", [](std::size_t n, std::uint64_t seed) { return generate_scale_free(n, seed); },
        py::arg("nodes"), py::arg("seed"));
  m.def(
      "hierarchical_graph",
      [](unsigned gen, bool toward_root) {
        return generate_hierarchical(gen, toward_root ? RootOrientation::TowardRoot : RootOrientation::AwayFromRoot);
      },
      py::arg("generation"), py::arg("toward_root") = true);
  m.def("binary_tree", &generate_binary_tree, py::arg("levels"));
  m.def("benchmark_graph", [](const std::string& name) { return benchmark_graph(parse_benchmark(name)); });

  m.def(
      "classical_pagerank",
      [](const DirectedGraph& g, double alpha) { return to_array(classical_pagerank(g, alpha).values()); },
      py::arg("graph"), py::arg("alpha") = 0.85);
  m.def(
      "google_matrix",
      [](const DirectedGraph& g, double alpha) {
        const Eigen::MatrixXd d = google_matrix(g, alpha).dense();
        py::array_t<double> out({d.rows(), d.cols()});
        auto view = out.mutable_unchecked<2>();
        for (Eigen::Index i = 0; i < d.rows(); ++i)
          for (Eigen::Index j = 0; j < d.cols(); ++j) view(i, j) = d(i, j);
        return out;
      },
      py::arg("graph"), py::arg("alpha") = 0.85);
  m.def(
      "bare_power_method",
      [](const DirectedGraph& g, const std::string& matrix, std::vector<double> initial) {
        if (initial.empty()) {
          initial.assign(g.node_count(), 0.0);
          initial[0] = 1.0;
        }
        PowerMethodResult r;
        if (matrix == "H") r = power_method(hyperlink_matrix(g), initial);
        else if (matrix == "E") r = power_method(patch_dangling(hyperlink_matrix(g)), initial);
        else throw Error(ErrorKind::InvalidArgument, "matrix must be 'E' or 'H'");
        py::dict out;
        out["ranks"] = to_array(r.ranks.values());
        out["iterations"] = r.iterations;
        out["converged"] = r.converged;
        out["degenerate"] = r.degenerate;
        out["cycle_period"] = r.cycle_period;
        return out;
      },
      py::arg("graph"), py::arg("matrix") = "E", py::arg("initial") = std::vector<double>{});
  m.def(
      "second_eigenvalue_modulus",
      [](const DirectedGraph& g, double alpha) { return second_eigenvalue_modulus(google_matrix(g, alpha)); },
      py::arg("graph"), py::arg("alpha") = 0.85);

  m.def(
      "quantum_series",
      [](const DirectedGraph& g, double alpha, std::size_t steps, const std::string& backend) {
        EvolveOptions opts;
        opts.steps = steps;
        const SzegedyOperator op(google_matrix(g, alpha));
        const QuantumRankSeries s = quantum_rank_series(op, opts, backend_from(backend));
        py::array_t<double> rows({s.steps(), s.nodes()});
        auto view = rows.mutable_unchecked<2>();
        for (std::size_t t = 0; t < s.steps(); ++t) {
          const auto row = s.row(t);
          for (std::size_t i = 0; i < s.nodes(); ++i) view(t, i) = row[i];
        }
        return py::make_tuple(rows, to_array(s.average().values()));
      },
      py::arg("graph"), py::arg("alpha") = 0.85, py::arg("steps") = 2048, py::arg("backend") = "auto");
  m.def(
      "quantum_pagerank",
      [](const DirectedGraph& g, double alpha, std::size_t steps) {
        EvolveOptions opts;
        opts.steps = steps;
        return to_array(quantum_pagerank(g, alpha, opts).values());
      },
      py::arg("graph"), py::arg("alpha") = 0.85, py::arg("steps") = 2048);
  m.def("subspace_dimension", [](const DirectedGraph& g, double alpha) {
    return build_dynamical_subspace(SzegedyOperator(google_matrix(g, alpha))).dimension();
  }, py::arg("graph"), py::arg("alpha") = 0.85);

  m.def("ipr", [](const std::vector<double>& p) { return ipr(to_rank(p)); });
  m.def("fidelity", [](const std::vector<double>& p, const std::vector<double>& q) {
    return fidelity(to_rank(p), to_rank(q));
  });
  m.def("kendall_tau", [](const std::vector<double>& a, const std::vector<double>& b) {
    return kendall_tau_b(a, b);
  });
  m.def("power_law_fit", [](const std::vector<double>& p) {
    const PowerLawFit f = power_law_fit(to_rank(p));
    py::dict out;
    out["exponent"] = f.exponent;
    out["intercept"] = f.intercept;
    out["r_squared"] = f.r_squared;
    out["range"] = py::make_tuple(f.range.first, f.range.last);
    return out;
  });
  m.def(
      "degeneracy_classes",
      [](const std::vector<double>& p, double delta) { return degeneracy_profile(to_rank(p), delta).class_sizes; },
      py::arg("values"), py::arg("delta") = 1e-4);
  m.def(
      "damping_sweep",
      [](const DirectedGraph& g, const std::vector<double>& grid, const std::string& ranker, std::size_t steps) {
        const FidelitySweep s = damping_sweep(g, grid, make_ranker(ranker, 0.85, steps));
        const std::size_t n = grid.size();
        py::array_t<double> matrix({n, n});
        std::copy(s.pairwise.begin(), s.pairwise.end(), matrix.mutable_data());
        return matrix;
      },
      py::arg("graph"), py::arg("grid"), py::arg("ranker") = "quantum", py::arg("steps") = 2048);
  m.def(
      "attack",
      [](const DirectedGraph& g, std::size_t k, const std::string& ranker, double alpha, std::size_t steps) {
        const AttackReport r = attack_sensitivity(g, k, make_ranker(ranker, alpha, steps));
        py::dict out;
        out["removed"] = r.removed;
        out["survivors"] = r.survivors;
        out["rank_correlation"] = r.rank_correlation;
        out["mean_displacement"] = r.mean_displacement;
        out["max_displacement"] = r.max_displacement;
        return out;
      },
      py::arg("graph"), py::arg("k"), py::arg("ranker") = "quantum", py::arg("alpha") = 0.85,
      py::arg("steps") = 2048);
}
