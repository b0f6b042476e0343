#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <nlohmann/json.hpp>

#include "kingman/coalescent.hpp"
#include "kingman/edge_reveal.hpp"
#include "kingman/errors.hpp"
#include "kingman/experiment.hpp"
#include "kingman/forest.hpp"
#include "kingman/graph.hpp"
#include "kingman/oracle.hpp"
#include "kingman/suites.hpp"
#include "kingman/urrf.hpp"

namespace py = pybind11;
using namespace kingman;

namespace {

using EdgeList = std::vector<std::pair<Vertex, Vertex>>;

Graph to_graph(std::size_t n, const EdgeList& edges) {
  std::vector<Edge> es;
  es.reserve(edges.size());
  for (const auto& [u, v] : edges) es.push_back({u, v});
  return Graph::from_edges(n, es);
}

EdgeList from_graph(const Graph& g) {
  EdgeList out;
  for (const auto& e : g.edges()) out.emplace_back(e.u, e.v);
  return out;
}

// Parent map with 0 for roots, indexed by vertex - 1.
std::vector<Vertex> parents_of(std::span<const Vertex> parents) { return {parents.begin(), parents.end()}; }

py::dict forest_dict(const RootedLabeledForest& f) {
  py::list edges;
  for (const auto& e : f.edges()) edges.append(py::make_tuple(e.tail, e.head, e.label));
  py::dict d;
  d["n"] = f.n();
  d["edges"] = edges;
  d["roots"] = f.roots();
  d["tree_count"] = f.root_count();
  d["sizes"] = tree_sizes(f);
  d["height"] = height(f);
  return d;
}

RootedLabeledForest forest_from(std::size_t n, const std::vector<std::tuple<Vertex, Vertex, std::uint32_t>>& edges) {
  std::vector<LabeledEdge> es;
  for (const auto& [t, h, l] : edges) es.push_back({t, h, l});
  return RootedLabeledForest::from_edges(n, es);
}

py::dict walk_dict(const WalkTrace& w) {
  py::dict d;
  d["n"] = w.n;
  d["p"] = w.p;
  d["m"] = w.m;
  d["j_star"] = w.j_star ? py::cast(*w.j_star) : py::none();
  d["tree_count"] = w.tree_count;
  return d;
}

py::dict distribution_dict(const ExactDistribution& dist) {
  py::dict d;
  d["support"] = dist.support;
  d["prob"] = dist.probabilities();
  return d;
}

py::dict report_dict(const TestReport& r) {
  py::dict d;
  d["suite"] = r.suite;
  d["statistic"] = r.statistic;
  d["p_value"] = r.p_value ? py::cast(*r.p_value) : py::none();
  d["threshold"] = r.threshold;
  d["passed"] = r.pass;
  d["trials"] = r.trials;
  d["seed"] = r.seed;
  d["notes"] = r.notes;
  return d;
}

py::dict record_dict(const TrialRecord& r) {
  py::dict d;
  d["trial"] = r.trial;
  d["n"] = r.n;
  d["p"] = r.p;
  d["method"] = std::string(method_name(r.method));
  d["tree_count"] = r.tree_count;
  d["height"] = r.height ? py::cast(*r.height) : py::none();
  d["sizes"] = r.sizes;
  d["elapsed_us"] = r.elapsed_us;
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Kingman coalescent on graphs: native core";

  py::register_exception<ParameterError>(m, "ParameterError", PyExc_ValueError);
  py::register_exception<InvalidEdgeError>(m, "InvalidEdgeError", PyExc_ValueError);
  py::register_exception<InvalidMergeError>(m, "InvalidMergeError", PyExc_ValueError);
  py::register_exception<ValidationError>(m, "ValidationError", PyExc_RuntimeError);
  py::register_exception<CapacityError>(m, "CapacityError", PyExc_RuntimeError);

  m.def("sample_gnp", [](std::size_t n, double p, std::uint64_t seed, std::uint64_t stream) {
    RngStream rng(seed, stream);
    return from_graph(sample_gnp(n, p, rng));
  }, py::arg("n"), py::arg("p"), py::arg("seed") = 1, py::arg("stream") = 0,
     "Edges of a G(n, p) sample as (u, v) pairs with u < v.");

  m.def("run_kingman", [](std::size_t n, const EdgeList& edges, std::uint64_t seed, std::uint64_t stream) {
    RngStream rng(seed, stream);
    return forest_dict(run_kingman(to_graph(n, edges), rng).final_forest);
  }, py::arg("n"), py::arg("edges"), py::arg("seed") = 1, py::arg("stream") = 0,
     "Kingman forest of the given graph.");

  m.def("run_erp", [](std::size_t n, double p, std::uint64_t seed, std::uint64_t stream) {
    RngStream rng(seed, stream);
    auto run = run_erp(n, p, rng);
    py::dict d = walk_dict(run.walk);
    d["forest"] = forest_dict(run.state.forest());
    d["steps"] = run.state.step_count();
    return d;
  }, py::arg("n"), py::arg("p"), py::arg("seed") = 1, py::arg("stream") = 0);

  m.def("fast_walk", [](std::size_t n, double p, std::uint64_t seed, std::uint64_t stream) {
    RngStream rng(seed, stream);
    return walk_dict(fast_walk(n, p, rng));
  }, py::arg("n"), py::arg("p"), py::arg("seed") = 1, py::arg("stream") = 0);

  m.def("exact_c_distribution", [](std::size_t n, const EdgeList& edges) {
    return distribution_dict(exact_c_distribution(to_graph(n, edges)));
  }, py::arg("n"), py::arg("edges"));

  m.def("exact_cnp_distribution", [](std::size_t n, double p) {
    return distribution_dict(exact_cnp_distribution(n, p));
  }, py::arg("n"), py::arg("p"));

  m.def("exact_mean_c", [](std::size_t n, double p) { return static_cast<double>(exact_mean_c(n, p)); },
        py::arg("n"), py::arg("p"));

  m.def("phi", [](std::size_t n, const std::vector<std::tuple<Vertex, Vertex, std::uint32_t>>& edges) {
    return parents_of(phi(forest_from(n, edges)).parents());
  }, py::arg("n"), py::arg("edges"),
     "Increasing forest (parent list, 0 for roots) of an edge-labelled forest given as (tail, head, label).");

  m.def("sample_urrf", [](std::size_t n, std::size_t k, std::uint64_t seed, std::uint64_t stream) {
    RngStream rng(seed, stream);
    return parents_of(sample_urrf(n, k, rng).forest.parents());
  }, py::arg("n"), py::arg("k"), py::arg("seed") = 1, py::arg("stream") = 0);

  m.def("labeled_forest_count", &labeled_forest_count, py::arg("n"), py::arg("k"));
  m.def("increasing_forest_count", &increasing_forest_count, py::arg("n"), py::arg("k"));

  m.def("simulate", [](const std::string& method, std::size_t n, double p, std::uint64_t trials,
                       std::uint64_t seed, std::size_t threads) {
    std::vector<TrialRecord> records;
    {
      py::gil_scoped_release release;
      records = simulate(parse_method(method), n, p, trials, seed, threads);
    }
    py::list out;
    for (const auto& r : records) out.append(record_dict(r));
    return out;
  }, py::arg("method"), py::arg("n"), py::arg("p"), py::arg("trials"), py::arg("seed") = 1,
     py::arg("threads") = 1);

  m.def("suite_names", &suite_names);

  m.def("run_suite", [](const std::string& name, std::optional<std::size_t> n, std::optional<double> p,
                        std::optional<std::uint64_t> trials, std::uint64_t seed, std::size_t threads) {
    std::vector<TestReport> reports;
    {
      py::gil_scoped_release release;
      reports = run_suite(name, SuiteConfig{n, p, trials, seed, threads});
    }
    py::list out;
    for (const auto& r : reports) out.append(report_dict(r));
    return out;
  }, py::arg("name"), py::arg("n") = py::none(), py::arg("p") = py::none(), py::arg("trials") = py::none(),
     py::arg("seed") = 1, py::arg("threads") = 1);
}
