#include "kingman/edge_reveal.hpp"

#include <nlohmann/json.hpp>
#include <numeric>
#include <string>

#include "kingman/distributions.hpp"
#include "kingman/errors.hpp"
#include "kingman/urrf.hpp"

namespace kingman {

ErpState::ErpState(std::size_t n, double p, ErpOptions options)
    : p_(p),
      options_(options),
      forest_(n),
      revealed_(n),
      bits_(revealed_.pair_count(), -1),
      root_list_(n),
      root_pos_(n),
      cdeg_(n, 0),
      m_trace_{0} {
  if (n < 1) throw ParameterError("edge reveal process: n must be >= 1");
  if (!(p >= 0.0 && p <= 1.0)) throw ParameterError("edge reveal process: p outside [0, 1]");
  std::iota(root_list_.begin(), root_list_.end(), Vertex{1});
  std::iota(root_pos_.begin(), root_pos_.end(), std::size_t{0});
}

std::vector<Edge> ErpState::complement_edges() const {
  std::vector<Edge> out;
  out.reserve(nonedges_);
  const auto roots = forest_.roots();
  for (std::size_t i = 0; i < roots.size(); ++i) {
    for (std::size_t j = i + 1; j < roots.size(); ++j) {
      if (memo(roots[i], roots[j]) == 0) out.push_back({roots[i], roots[j]});
    }
  }
  return out;
}

std::size_t ErpState::complement_degree(Vertex v) const {
  if (!forest_.is_root(v)) return 0;
  return cdeg_[v - 1];
}

std::optional<bool> ErpState::bit(Vertex u, Vertex v) const {
  const std::int8_t b = memo(u, v);
  if (b < 0) return std::nullopt;
  return b == 1;
}

bool ErpState::terminated() const { return nonedges_ == choose2(root_count()); }

std::int8_t ErpState::resolve(Vertex u, Vertex v, RngStream& rng) {
  std::int8_t& slot = memo(u, v);
  if (slot < 0) slot = sample_bernoulli(p_, rng) ? 1 : 0;
  return slot;
}

void ErpState::record_nonedge(Vertex u, Vertex v) {
  ++nonedges_;
  ++cdeg_[u - 1];
  ++cdeg_[v - 1];
}

void ErpState::remove_root(Vertex u) {
  for (Vertex w : root_list_) {
    if (w != u && memo(u, w) == 0) --cdeg_[w - 1];
  }
  nonedges_ -= cdeg_[u - 1];
  cdeg_[u - 1] = 0;
  const std::size_t pos = root_pos_[u - 1];
  const Vertex last = root_list_.back();
  root_list_[pos] = last;
  root_pos_[last - 1] = pos;
  root_list_.pop_back();
}

StepRule ErpState::step(RngStream& rng) {
  if (n() < 2) {
    ++steps_;
    return StepRule::kOutsideRoots;
  }
  return query(revealed_.pair_at(rng.below(revealed_.pair_count())), rng);
}

StepRule ErpState::query(Edge e, RngStream& rng) {
  const Vertex u = e.u;
  const Vertex v = e.v;
  (void)revealed_.pair_index(u, v);  // validates the pair
  ++steps_;
  if (!forest_.is_root(u) || !forest_.is_root(v)) {
    if (!options_.reveal_graph) return StepRule::kOutsideRoots;
    if (resolve(u, v, rng) == 1) {
      revealed_.insert_edge(u, v);
      return StepRule::kRevealOnly;
    }
    return StepRule::kNonEdge;
  }
  // Inside the root set a resolved 1 would already have merged, so the slot
  // is either a verified non-edge or fresh.
  if (memo(u, v) == 0) return StepRule::kNonEdge;
  if (resolve(u, v, rng) == 0) {
    record_nonedge(u, v);
    ++epoch_nonedges_;
    return StepRule::kNonEdge;
  }
  const bool flip = rng.below(2) == 1;
  const Vertex tail = flip ? v : u;
  const Vertex head = flip ? u : v;
  last_tail_degree_ = cdeg_[tail - 1];
  remove_root(tail);
  forest_.merge(tail, head);
  revealed_.insert_edge(u, v);
  m_trace_.push_back(nonedges_);
  last_epoch_nonedges_ = epoch_nonedges_;
  epoch_nonedges_ = 0;
  return StepRule::kCoalesce;
}

Graph ErpState::materialize_graph(RngStream& rng) const {
  Graph g = revealed_;
  for (std::size_t i = 0; i < bits_.size(); ++i) {
    const std::int8_t b = bits_[i];
    if (b == 0) continue;
    if (b == 1 || sample_bernoulli(p_, rng)) {
      const Edge e = g.pair_at(i);
      g.insert_edge(e.u, e.v);
    }
  }
  return g;
}

void ErpState::validate() const {
  forest_.validate();
  if (root_list_.size() != n() - forest_.edge_count()) {
    throw ValidationError("ERP: |roots| != n - |E(forest)|");
  }
  for (const auto& e : forest_.edges()) {
    if (memo(e.tail, e.head) != 1 || !revealed_.has_edge(e.tail, e.head)) {
      throw ValidationError("ERP: forest edge without a revealed 1 bit");
    }
  }
  for (const auto& e : revealed_.edges()) {
    if (memo(e.u, e.v) != 1) throw ValidationError("ERP: revealed edge with bit != 1");
  }
  std::uint64_t count = 0;
  for (Vertex r : root_list_) {
    std::uint64_t d = 0;
    for (Vertex w : root_list_) {
      if (w != r && memo(r, w) == 0) ++d;
    }
    if (d != cdeg_[r - 1]) throw ValidationError("ERP: complement degree out of sync");
    count += d;
  }
  if (count != 2 * nonedges_) throw ValidationError("ERP: complement edge count out of sync");
  for (std::size_t j = 0; j < m_trace_.size(); ++j) {
    const std::size_t idx = trace_start_ + j;
    if (m_trace_[j] > choose2(n() - idx)) throw ValidationError("ERP: M_j exceeds C(n - j, 2)");
  }
}

ErpState erp_step(ErpState state, RngStream& rng) {
  state.step(rng);
  return state;
}

WalkTrace walk_from_state(const ErpState& state) {
  if (state.trace_start() != 0) {
    throw ValidationError("walk_from_state: state does not carry its history from M_0");
  }
  WalkTrace walk{state.n(), state.p(), state.m_trace(), std::nullopt, state.root_count()};
  const std::size_t roots = state.root_count();
  if (state.terminated() && roots >= 2) {
    // Termination without a merge: the next walk value is the full pair count
    // of the surviving roots, the first strict crossing.
    walk.m.push_back(choose2(roots));
    walk.j_star = state.coalescences() + 1;
  }
  return walk;
}

ErpRun run_erp(std::size_t n, double p, RngStream& rng, ErpOptions options) {
  ErpState state(n, p, options);
  while (!state.terminated()) state.step(rng);
  WalkTrace walk = walk_from_state(state);
  return ErpRun{std::move(state), std::move(walk)};
}

WalkTrace fast_walk(std::size_t n, double p, RngStream& rng) {
  if (n < 1) throw ParameterError("fast_walk: n must be >= 1");
  if (!(p > 0.0 && p < 1.0)) throw ParameterError("fast_walk: p outside (0, 1)");
  WalkTrace walk{n, p, {0}, std::nullopt, 1};
  walk.m.reserve(n);
  std::uint64_t m = 0;
  for (std::size_t k = 0; k + 2 <= n; ++k) {
    const std::uint64_t pairs = choose2(n - k);
    const std::uint64_t cap = pairs - m;
    const std::uint64_t x = sample_truncated_geometric(p, cap, rng);
    if (x == cap) {
      walk.m.push_back(pairs);
      walk.j_star = k + 1;
      walk.tree_count = n - k;
      return walk;
    }
    const std::uint64_t y = sample_hypergeometric(n - k - 2, m + x, pairs - 1, rng);
    m = m + x - y;
    walk.m.push_back(m);
  }
  return walk;
}

ErpState conditioned_state(std::size_t n, std::size_t surviving_roots, std::uint64_t m_edges,
                           double p, RngStream& rng) {
  if (surviving_roots < 1 || surviving_roots > n) {
    throw ParameterError("conditioned_state: need 1 <= surviving_roots <= n");
  }
  if (m_edges > choose2(surviving_roots)) {
    throw ParameterError("conditioned_state: m_edges = " + std::to_string(m_edges) +
                         " exceeds C(" + std::to_string(surviving_roots) + ", 2)");
  }
  ErpState s(n, p);
  const UrrfSample urrf = sample_urrf(n, surviving_roots, rng);
  const RootedLabeledForest forest = phi_fiber_sample(urrf.forest, rng);
  for (const auto& e : forest.edges()) {
    s.remove_root(e.tail);
    s.forest_.merge(e.tail, e.head);
    s.memo(e.tail, e.head) = 1;
    s.revealed_.insert_edge(e.tail, e.head);
  }
  // Uniform m-subset of the root pairs by a partial Fisher-Yates shuffle.
  const auto roots = s.forest_.roots();
  std::vector<Edge> pairs;
  pairs.reserve(choose2(roots.size()));
  for (std::size_t i = 0; i < roots.size(); ++i) {
    for (std::size_t j = i + 1; j < roots.size(); ++j) pairs.push_back({roots[i], roots[j]});
  }
  for (std::uint64_t i = 0; i < m_edges; ++i) {
    const std::size_t j = i + rng.below(pairs.size() - i);
    std::swap(pairs[i], pairs[j]);
    s.memo(pairs[i].u, pairs[i].v) = 0;
    s.record_nonedge(pairs[i].u, pairs[i].v);
  }
  s.trace_start_ = s.forest_.edge_count();
  s.m_trace_ = {m_edges};
  return s;
}

nlohmann::ordered_json walk_to_json(const WalkTrace& walk, bool include_m) {
  nlohmann::ordered_json j;
  j["n"] = walk.n;
  j["p"] = walk.p;
  j["j_star"] = walk.j_star ? nlohmann::ordered_json(*walk.j_star) : nlohmann::ordered_json(nullptr);
  j["tree_count"] = walk.tree_count;
  if (include_m) j["m"] = walk.m;
  return j;
}

WalkTrace walk_from_json(const nlohmann::ordered_json& j) {
  WalkTrace walk;
  walk.n = j.at("n").get<std::size_t>();
  walk.p = j.at("p").get<double>();
  if (!j.at("j_star").is_null()) walk.j_star = j.at("j_star").get<std::size_t>();
  walk.tree_count = j.at("tree_count").get<std::size_t>();
  if (j.contains("m")) walk.m = j.at("m").get<std::vector<std::uint64_t>>();
  return walk;
}

}  // namespace kingman
