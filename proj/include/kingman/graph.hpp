#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "kingman/rng.hpp"

namespace kingman {

/// Vertices are 1-based everywhere in the public interface.
using Vertex = std::uint32_t;

struct Edge {
  Vertex u;
  Vertex v;
  friend bool operator==(const Edge&, const Edge&) = default;
  friend auto operator<=>(const Edge&, const Edge&) = default;
};

/// Simple undirected graph on {1..n} with bit-packed pair membership.
///
/// Unordered pairs are linearized row-major over u < v; the same ordering is
/// used by the exact oracle when it enumerates edge subsets as bitmasks.
class Graph {
 public:
  explicit Graph(std::size_t n = 0);

  static Graph complete(std::size_t n);
  static Graph from_edges(std::size_t n, const std::vector<Edge>& edges);
  /// Bit i of `mask` selects the pair with linear index i.
  static Graph from_pair_mask(std::size_t n, std::uint64_t mask);

  std::size_t n() const { return n_; }
  std::size_t edge_count() const { return edge_count_; }
  std::size_t pair_count() const { return n_ < 2 ? 0 : n_ * (n_ - 1) / 2; }

  bool has_edge(Vertex u, Vertex v) const;
  /// In-place G + e; returns false when e was already present.
  bool insert_edge(Vertex u, Vertex v);
  bool erase_edge(Vertex u, Vertex v);

  std::size_t degree(Vertex v) const;
  std::vector<Vertex> neighbors(Vertex v) const;
  /// Edges with u < v in lexicographic order.
  std::vector<Edge> edges() const;

  /// Linear index of {u, v}; throws InvalidEdgeError on self-loops or
  /// out-of-range endpoints.
  std::size_t pair_index(Vertex u, Vertex v) const;
  Edge pair_at(std::size_t index) const;

  friend bool operator==(const Graph& a, const Graph& b) {
    return a.n_ == b.n_ && a.bits_ == b.bits_;
  }

 private:
  bool test(std::size_t i) const { return (bits_[i >> 6] >> (i & 63)) & 1U; }

  std::size_t n_;
  std::size_t edge_count_ = 0;
  std::vector<std::uint64_t> bits_;
};

/// Erdos-Renyi G(n, p): each pair independently with probability p, drawn in
/// linear pair order.
Graph sample_gnp(std::size_t n, double p, RngStream& rng);

/// G + e as a new value.
Graph add_edge(const Graph& g, Edge e);
std::size_t degree(const Graph& g, Vertex v);

void to_json(nlohmann::ordered_json& j, const Graph& g);
void from_json(const nlohmann::ordered_json& j, Graph& g);

}  // namespace kingman
