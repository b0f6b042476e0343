#include "kingman/graph.hpp"

#include <cmath>
#include <nlohmann/json.hpp>
#include <string>

#include "kingman/distributions.hpp"
#include "kingman/errors.hpp"

namespace kingman {

Graph::Graph(std::size_t n) : n_(n), bits_((pair_count() + 63) / 64, 0) {}

Graph Graph::complete(std::size_t n) {
  Graph g(n);
  for (std::size_t i = 0; i < g.pair_count(); ++i) g.bits_[i >> 6] |= std::uint64_t{1} << (i & 63);
  g.edge_count_ = g.pair_count();
  return g;
}

Graph Graph::from_edges(std::size_t n, const std::vector<Edge>& edges) {
  Graph g(n);
  for (const auto& e : edges) g.insert_edge(e.u, e.v);
  return g;
}

Graph Graph::from_pair_mask(std::size_t n, std::uint64_t mask) {
  Graph g(n);
  if (g.pair_count() < 64 && (mask >> g.pair_count()) != 0) {
    throw InvalidEdgeError("Graph::from_pair_mask: mask selects pairs beyond C(n, 2)");
  }
  if (!g.bits_.empty()) g.bits_[0] = mask;
  g.edge_count_ = static_cast<std::size_t>(__builtin_popcountll(mask));
  return g;
}

std::size_t Graph::pair_index(Vertex u, Vertex v) const {
  if (u == v) throw InvalidEdgeError("self-loop {" + std::to_string(u) + "," + std::to_string(v) + "}");
  if (u < 1 || v < 1 || u > n_ || v > n_) {
    throw InvalidEdgeError("edge {" + std::to_string(u) + "," + std::to_string(v) +
                           "} outside vertex set 1.." + std::to_string(n_));
  }
  if (u > v) std::swap(u, v);
  const std::size_t a = u - 1;
  const std::size_t b = v - 1;
  return a * (2 * n_ - a - 1) / 2 + (b - a - 1);
}

Edge Graph::pair_at(std::size_t index) const {
  if (index >= pair_count()) throw InvalidEdgeError("pair index out of range");
  // Row a holds n-1-a pairs.
  std::size_t a = 0;
  std::size_t row = n_ - 1;
  while (index >= row) {
    index -= row;
    ++a;
    --row;
  }
  return Edge{static_cast<Vertex>(a + 1), static_cast<Vertex>(a + 2 + index)};
}

bool Graph::has_edge(Vertex u, Vertex v) const { return test(pair_index(u, v)); }

bool Graph::insert_edge(Vertex u, Vertex v) {
  const std::size_t i = pair_index(u, v);
  if (test(i)) return false;
  bits_[i >> 6] |= std::uint64_t{1} << (i & 63);
  ++edge_count_;
  return true;
}

bool Graph::erase_edge(Vertex u, Vertex v) {
  const std::size_t i = pair_index(u, v);
  if (!test(i)) return false;
  bits_[i >> 6] &= ~(std::uint64_t{1} << (i & 63));
  --edge_count_;
  return true;
}

std::size_t Graph::degree(Vertex v) const {
  if (v < 1 || v > n_) throw InvalidEdgeError("vertex " + std::to_string(v) + " out of range");
  std::size_t d = 0;
  for (Vertex w = 1; w <= n_; ++w) {
    if (w != v && test(pair_index(v, w))) ++d;
  }
  return d;
}

std::vector<Vertex> Graph::neighbors(Vertex v) const {
  if (v < 1 || v > n_) throw InvalidEdgeError("vertex " + std::to_string(v) + " out of range");
  std::vector<Vertex> out;
  for (Vertex w = 1; w <= n_; ++w) {
    if (w != v && test(pair_index(v, w))) out.push_back(w);
  }
  return out;
}

std::vector<Edge> Graph::edges() const {
  std::vector<Edge> out;
  out.reserve(edge_count_);
  std::size_t i = 0;
  for (Vertex u = 1; u <= n_; ++u) {
    for (Vertex v = u + 1; v <= n_; ++v, ++i) {
      if (test(i)) out.push_back({u, v});
    }
  }
  return out;
}

Graph sample_gnp(std::size_t n, double p, RngStream& rng) {
  if (n < 1) throw ParameterError("sample_gnp: n must be >= 1");
  if (!(p >= 0.0 && p <= 1.0)) throw ParameterError("sample_gnp: p outside [0, 1]");
  if (p == 1.0) return Graph::complete(n);
  Graph g(n);
  std::size_t i = 0;
  for (Vertex u = 1; u <= n; ++u) {
    for (Vertex v = u + 1; v <= n; ++v, ++i) {
      if (sample_bernoulli(p, rng)) g.insert_edge(u, v);
    }
  }
  return g;
}

Graph add_edge(const Graph& g, Edge e) {
  Graph out = g;
  out.insert_edge(e.u, e.v);
  return out;
}

std::size_t degree(const Graph& g, Vertex v) { return g.degree(v); }

void to_json(nlohmann::ordered_json& j, const Graph& g) {
  auto edges = nlohmann::ordered_json::array();
  for (const auto& e : g.edges()) edges.push_back({e.u, e.v});
  j = nlohmann::ordered_json{{"n", g.n()}, {"edges", std::move(edges)}};
}

void from_json(const nlohmann::ordered_json& j, Graph& g) {
  Graph out(j.at("n").get<std::size_t>());
  for (const auto& e : j.at("edges")) out.insert_edge(e.at(0).get<Vertex>(), e.at(1).get<Vertex>());
  g = std::move(out);
}

}  // namespace kingman
