#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "kingman/forest.hpp"
#include "kingman/graph.hpp"
#include "kingman/rng.hpp"

namespace kingman {

/// Edge-count walk M_0, M_1, ... observed at coalescing times.
///
/// `m` runs up to and including the freeze index j_star: the first j with
/// M_j > C(n - j, 2), which is reached exactly when every pair of the n - j + 1
/// surviving roots has been verified to be a non-edge. The walk never freezes
/// when it coalesces down to one root; then j_star is empty, `m` holds
/// M_0..M_{n-1} and the tree count is 1. In both cases
/// tree_count = n - j_star + 1 with j_star := n for the unfrozen walk.
struct WalkTrace {
  std::size_t n = 0;
  double p = 0.0;
  std::vector<std::uint64_t> m;
  std::optional<std::size_t> j_star;
  std::size_t tree_count = 0;
};

/// What a single query did to the process.
enum class StepRule {
  kNonEdge,       // bit 0
  kRevealOnly,    // bit 1, pair not inside the root set
  kCoalesce,      // bit 1, both endpoints roots: merge
  kOutsideRoots,  // pair not inside the root set and bits outside it are not tracked
};

struct ErpOptions {
  /// Resolve the bit of every queried pair and keep the revealed graph G_k.
  /// Off by default: pairs outside the root set cannot influence the forest
  /// or the complement graph, so their bits are left unsampled.
  bool reveal_graph = false;
};

/// Full state of the edge-reveal process after some number of queries.
class ErpState {
 public:
  ErpState(std::size_t n, double p, ErpOptions options = {});

  std::size_t n() const { return forest_.n(); }
  double p() const { return p_; }
  const ErpOptions& options() const { return options_; }

  bool is_root(Vertex v) const { return forest_.is_root(v); }
  std::size_t root_count() const { return forest_.root_count(); }
  std::vector<Vertex> roots() const { return forest_.roots(); }
  const RootedLabeledForest& forest() const { return forest_; }
  /// Revealed edges; forest edges only unless reveal_graph is set.
  const Graph& revealed() const { return revealed_; }

  /// Pairs of current roots verified to be non-edges (the complement graph).
  std::vector<Edge> complement_edges() const;
  std::uint64_t complement_edge_count() const { return nonedges_; }
  std::size_t complement_degree(Vertex v) const;
  /// Memoized bit of {u, v}, if it has been resolved.
  std::optional<bool> bit(Vertex u, Vertex v) const;

  std::uint64_t step_count() const { return steps_; }
  std::size_t coalescences() const { return forest_.edge_count(); }
  /// N at each coalescing time: M_0, ..., M_{coalescences()}.
  const std::vector<std::uint64_t>& m_trace() const { return m_trace_; }
  /// Coalescing index of m_trace()[0]; nonzero for states built by
  /// conditioned_state, whose earlier history is not materialized.
  std::size_t trace_start() const { return trace_start_; }
  /// All pairs inside the root set are verified non-edges; nothing can change.
  bool terminated() const;

  /// New non-edges verified among roots since the last coalescence.
  std::uint64_t epoch_nonedges() const { return epoch_nonedges_; }
  /// Complement degree of the tail removed at the last coalescence.
  std::uint64_t last_tail_degree() const { return last_tail_degree_; }
  /// Non-edges verified in the epoch that ended with the last coalescence.
  std::uint64_t last_epoch_nonedges() const { return last_epoch_nonedges_; }

  /// Queries a uniform pair of {1..n}.
  StepRule step(RngStream& rng);
  /// Queries the given pair; bits and orientation still come from `rng`.
  StepRule query(Edge e, RngStream& rng);

  /// Samples every still-unresolved bit and returns the whole graph, whose law
  /// is G(n, p) jointly with the forest built so far.
  Graph materialize_graph(RngStream& rng) const;

  /// Throws ValidationError if any documented invariant fails.
  void validate() const;

 private:
  friend ErpState conditioned_state(std::size_t, std::size_t, std::uint64_t, double, RngStream&);

  std::int8_t& memo(Vertex u, Vertex v) { return bits_[revealed_.pair_index(u, v)]; }
  std::int8_t memo(Vertex u, Vertex v) const { return bits_[revealed_.pair_index(u, v)]; }
  std::int8_t resolve(Vertex u, Vertex v, RngStream& rng);
  void record_nonedge(Vertex u, Vertex v);
  void remove_root(Vertex u);

  double p_;
  ErpOptions options_;
  RootedLabeledForest forest_;
  Graph revealed_;
  std::vector<std::int8_t> bits_;  // -1 unknown, 0, 1
  std::vector<Vertex> root_list_;
  std::vector<std::size_t> root_pos_;
  std::vector<std::uint64_t> cdeg_;
  std::uint64_t nonedges_ = 0;
  std::uint64_t steps_ = 0;
  std::vector<std::uint64_t> m_trace_;
  std::size_t trace_start_ = 0;
  std::uint64_t epoch_nonedges_ = 0;
  std::uint64_t last_epoch_nonedges_ = 0;
  std::uint64_t last_tail_degree_ = 0;
};

/// Value-semantics wrapper around ErpState::step.
ErpState erp_step(ErpState state, RngStream& rng);

struct ErpRun {
  ErpState state;
  WalkTrace walk;
};

/// Runs the edge-reveal process to termination. p = 0 is accepted: the run
/// ends once every pair has been queried, leaving n trees.
ErpRun run_erp(std::size_t n, double p, RngStream& rng, ErpOptions options = {});

/// Edge-count walk of a (possibly unfinished) state; frozen if terminated.
WalkTrace walk_from_state(const ErpState& state);

/// Samples the edge-count walk directly: X_k is Geo(p) capped at
/// C(n-k, 2) - M_k, and Y_k ~ HG(n-k-2, M_k + X_k, C(n-k, 2) - 1) unless the
/// cap was reached, in which case the walk freezes.
WalkTrace fast_walk(std::size_t n, double p, RngStream& rng);

/// State at a coalescing time with `surviving_roots` roots and `m_edges`
/// verified non-edges among them: the forest is uniform over
/// F_{n, n - surviving_roots} and the complement graph uniform over graphs on
/// the roots with m_edges edges.
ErpState conditioned_state(std::size_t n, std::size_t surviving_roots, std::uint64_t m_edges,
                           double p, RngStream& rng);

/// {"n", "p", "j_star", "tree_count"} plus "m" when include_m is set.
nlohmann::ordered_json walk_to_json(const WalkTrace& walk, bool include_m);
WalkTrace walk_from_json(const nlohmann::ordered_json& j);

}  // namespace kingman
