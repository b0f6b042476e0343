#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "kingman/graph.hpp"

namespace kingman {

struct LabeledEdge {
  Vertex tail;
  Vertex head;
  std::uint32_t label;
  friend bool operator==(const LabeledEdge&, const LabeledEdge&) = default;
};

/// Rooted forest on {1..n} whose m edges carry distinct labels 1..m that
/// decrease along every root-to-leaf path. Edges point child -> parent.
///
/// Built by successive merges: the i-th merge adds the edge labelled i, which
/// is exactly the labelling the coalescent produces.
class RootedLabeledForest {
 public:
  explicit RootedLabeledForest(std::size_t n = 0);

  /// Builds and validates; throws ValidationError on any invariant breach.
  static RootedLabeledForest from_edges(std::size_t n, const std::vector<LabeledEdge>& edges);

  std::size_t n() const { return parent_.size(); }
  std::size_t edge_count() const { return by_label_.size(); }
  std::size_t root_count() const { return n() - edge_count(); }

  bool is_root(Vertex v) const;
  /// 0 when v is a root.
  Vertex parent_of(Vertex v) const;
  /// Label of the edge leaving v; 0 when v is a root.
  std::uint32_t label_of(Vertex v) const;
  std::vector<Vertex> roots() const;
  /// Sorted by label.
  std::vector<LabeledEdge> edges() const;
  std::span<const Vertex> parents() const { return parent_; }

  /// Adds tail -> head with label m + 1. Both must be distinct roots.
  void merge(Vertex tail, Vertex head);
  RootedLabeledForest merged(Vertex tail, Vertex head) const;
  /// Reverts the most recent merge (the edge with the largest label).
  void undo_last_merge();

  void validate() const;
  /// Injective text key: edges by label as "tail>head" joined with ';'.
  std::string key() const;

  friend bool operator==(const RootedLabeledForest&, const RootedLabeledForest&) = default;

 private:
  void check_vertex(Vertex v) const;

  std::vector<Vertex> parent_;
  std::vector<std::uint32_t> label_;
  std::vector<Vertex> by_label_;  // tail of the edge with label i + 1
};

/// Rooted forest on {1..n} without edge labels.
class PlainRootedForest {
 public:
  explicit PlainRootedForest(std::size_t n = 0);
  /// parents[v - 1] is the parent of v or 0 for a root; validated acyclic.
  static PlainRootedForest from_parents(std::vector<Vertex> parents);

  std::size_t n() const { return parent_.size(); }
  std::size_t edge_count() const;
  std::size_t root_count() const { return n() - edge_count(); }
  bool is_root(Vertex v) const;
  Vertex parent_of(Vertex v) const;
  std::vector<Vertex> roots() const;
  std::span<const Vertex> parents() const { return parent_; }

  void set_parent(Vertex child, Vertex parent);
  void make_root(Vertex v);

  /// Every non-root has a parent with a smaller label.
  bool is_increasing() const;
  void validate() const;
  /// Parent map in vertex order, e.g. "0,1,1,2".
  std::string key() const;

  friend bool operator==(const PlainRootedForest&, const PlainRootedForest&) = default;

 private:
  void check_vertex(Vertex v) const;
  std::vector<Vertex> parent_;
};

/// Graph distance from v to its root (roots have height 0).
std::size_t height(std::span<const Vertex> parents, Vertex v);
/// Maximum vertex height; 0 for an edgeless forest.
std::size_t height(std::span<const Vertex> parents);
/// One size per tree, ordered by root label; sums to n.
std::vector<std::size_t> tree_sizes(std::span<const Vertex> parents);

template <class Forest>
std::size_t height(const Forest& f, Vertex v) {
  return height(f.parents(), v);
}
template <class Forest>
std::size_t height(const Forest& f) {
  return height(f.parents());
}
template <class Forest>
std::vector<std::size_t> tree_sizes(const Forest& f) {
  return tree_sizes(f.parents());
}

/// Size guards for exhaustive enumeration.
inline constexpr std::size_t kMaxLabeledEnumerationN = 7;
inline constexpr std::size_t kMaxIncreasingEnumerationN = 8;

/// Visits every element of F_{n,m} exactly once.
void for_each_labeled_forest(std::size_t n, std::size_t m,
                             const std::function<void(const RootedLabeledForest&)>& visit);
std::vector<RootedLabeledForest> enumerate_labeled_forests(std::size_t n, std::size_t m);

/// Visits every increasing forest on {1..n} with roots exactly {1..k}.
void for_each_increasing_forest(std::size_t n, std::size_t k,
                                const std::function<void(const PlainRootedForest&)>& visit);
std::vector<PlainRootedForest> enumerate_increasing_forests(std::size_t n, std::size_t k);

/// n!(n-1)! / (k!(k-1)!) = |F_{n,n-k}|.
std::uint64_t labeled_forest_count(std::size_t n, std::size_t k);
/// (n-1)! / (k-1)! = |R_{n,k}|.
std::uint64_t increasing_forest_count(std::size_t n, std::size_t k);

void to_json(nlohmann::ordered_json& j, const RootedLabeledForest& f);
void from_json(const nlohmann::ordered_json& j, RootedLabeledForest& f);
void to_json(nlohmann::ordered_json& j, const PlainRootedForest& f);
void from_json(const nlohmann::ordered_json& j, PlainRootedForest& f);

}  // namespace kingman
