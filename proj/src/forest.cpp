#include "kingman/forest.hpp"

#include <algorithm>
#include <nlohmann/json.hpp>
#include <string>

#include "kingman/errors.hpp"

namespace kingman {

// ---- RootedLabeledForest ----

RootedLabeledForest::RootedLabeledForest(std::size_t n) : parent_(n, 0), label_(n, 0) {}

RootedLabeledForest RootedLabeledForest::from_edges(std::size_t n,
                                                    const std::vector<LabeledEdge>& edges) {
  RootedLabeledForest f(n);
  if (edges.size() >= std::max<std::size_t>(n, 1)) {
    throw ValidationError("forest on " + std::to_string(n) + " vertices cannot have " +
                          std::to_string(edges.size()) + " edges");
  }
  f.by_label_.assign(edges.size(), 0);
  for (const auto& e : edges) {
    if (e.tail < 1 || e.tail > n || e.head < 1 || e.head > n || e.tail == e.head) {
      throw ValidationError("forest edge endpoints invalid");
    }
    if (e.label < 1 || e.label > edges.size() || f.by_label_[e.label - 1] != 0) {
      throw ValidationError("forest edge labels must be a bijection onto 1..m");
    }
    if (f.parent_[e.tail - 1] != 0) {
      throw ValidationError("vertex " + std::to_string(e.tail) + " has two parents");
    }
    f.parent_[e.tail - 1] = e.head;
    f.label_[e.tail - 1] = e.label;
    f.by_label_[e.label - 1] = e.tail;
  }
  f.validate();
  return f;
}

void RootedLabeledForest::check_vertex(Vertex v) const {
  if (v < 1 || v > n()) {
    throw InvalidEdgeError("vertex " + std::to_string(v) + " outside 1.." + std::to_string(n()));
  }
}

bool RootedLabeledForest::is_root(Vertex v) const {
  check_vertex(v);
  return parent_[v - 1] == 0;
}

Vertex RootedLabeledForest::parent_of(Vertex v) const {
  check_vertex(v);
  return parent_[v - 1];
}

std::uint32_t RootedLabeledForest::label_of(Vertex v) const {
  check_vertex(v);
  return label_[v - 1];
}

std::vector<Vertex> RootedLabeledForest::roots() const {
  std::vector<Vertex> out;
  out.reserve(root_count());
  for (Vertex v = 1; v <= n(); ++v) {
    if (parent_[v - 1] == 0) out.push_back(v);
  }
  return out;
}

std::vector<LabeledEdge> RootedLabeledForest::edges() const {
  std::vector<LabeledEdge> out;
  out.reserve(by_label_.size());
  for (std::size_t i = 0; i < by_label_.size(); ++i) {
    const Vertex t = by_label_[i];
    out.push_back({t, parent_[t - 1], static_cast<std::uint32_t>(i + 1)});
  }
  return out;
}

void RootedLabeledForest::merge(Vertex tail, Vertex head) {
  check_vertex(tail);
  check_vertex(head);
  if (tail == head) throw InvalidMergeError("merge of a root with itself");
  if (parent_[tail - 1] != 0 || parent_[head - 1] != 0) {
    throw InvalidMergeError("merge(" + std::to_string(tail) + ", " + std::to_string(head) +
                            "): both endpoints must be roots");
  }
  parent_[tail - 1] = head;
  by_label_.push_back(tail);
  label_[tail - 1] = static_cast<std::uint32_t>(by_label_.size());
}

RootedLabeledForest RootedLabeledForest::merged(Vertex tail, Vertex head) const {
  RootedLabeledForest out = *this;
  out.merge(tail, head);
  return out;
}

void RootedLabeledForest::undo_last_merge() {
  if (by_label_.empty()) throw InvalidMergeError("undo_last_merge on an edgeless forest");
  const Vertex t = by_label_.back();
  by_label_.pop_back();
  parent_[t - 1] = 0;
  label_[t - 1] = 0;
}

void RootedLabeledForest::validate() const {
  for (Vertex v = 1; v <= n(); ++v) {
    const Vertex w = parent_[v - 1];
    if (w == 0) continue;
    // Labels strictly grow toward the root, which also rules out cycles.
    if (parent_[w - 1] != 0 && label_[v - 1] >= label_[w - 1]) {
      throw ValidationError("edge labels must decrease along root-to-leaf paths (at vertex " +
                            std::to_string(v) + ")");
    }
  }
}

std::string RootedLabeledForest::key() const {
  std::string out;
  for (const auto& e : edges()) {
    if (!out.empty()) out += ';';
    out += std::to_string(e.tail) + '>' + std::to_string(e.head);
  }
  return std::to_string(n()) + ':' + out;
}

// ---- PlainRootedForest ----

PlainRootedForest::PlainRootedForest(std::size_t n) : parent_(n, 0) {}

PlainRootedForest PlainRootedForest::from_parents(std::vector<Vertex> parents) {
  PlainRootedForest f;
  f.parent_ = std::move(parents);
  f.validate();
  return f;
}

void PlainRootedForest::check_vertex(Vertex v) const {
  if (v < 1 || v > n()) {
    throw InvalidEdgeError("vertex " + std::to_string(v) + " outside 1.." + std::to_string(n()));
  }
}

std::size_t PlainRootedForest::edge_count() const {
  return static_cast<std::size_t>(
      std::count_if(parent_.begin(), parent_.end(), [](Vertex w) { return w != 0; }));
}

bool PlainRootedForest::is_root(Vertex v) const {
  check_vertex(v);
  return parent_[v - 1] == 0;
}

Vertex PlainRootedForest::parent_of(Vertex v) const {
  check_vertex(v);
  return parent_[v - 1];
}

std::vector<Vertex> PlainRootedForest::roots() const {
  std::vector<Vertex> out;
  for (Vertex v = 1; v <= n(); ++v) {
    if (parent_[v - 1] == 0) out.push_back(v);
  }
  return out;
}

void PlainRootedForest::set_parent(Vertex child, Vertex parent) {
  check_vertex(child);
  check_vertex(parent);
  if (child == parent) throw InvalidEdgeError("self-loop in forest");
  parent_[child - 1] = parent;
}

void PlainRootedForest::make_root(Vertex v) {
  check_vertex(v);
  parent_[v - 1] = 0;
}

bool PlainRootedForest::is_increasing() const {
  for (Vertex v = 1; v <= n(); ++v) {
    const Vertex w = parent_[v - 1];
    if (w != 0 && w >= v) return false;
  }
  return true;
}

void PlainRootedForest::validate() const {
  // 0 = unvisited, 1 = on current path, 2 = done.
  std::vector<std::uint8_t> state(n(), 0);
  std::vector<Vertex> path;
  for (Vertex s = 1; s <= n(); ++s) {
    Vertex v = s;
    path.clear();
    while (v != 0 && state[v - 1] == 0) {
      state[v - 1] = 1;
      path.push_back(v);
      const Vertex w = parent_[v - 1];
      if (w > n() || w == v) throw ValidationError("forest parent out of range");
      v = w;
    }
    if (v != 0 && state[v - 1] == 1) throw ValidationError("forest parent map has a cycle");
    for (Vertex u : path) state[u - 1] = 2;
  }
}

std::string PlainRootedForest::key() const {
  std::string out;
  for (std::size_t i = 0; i < parent_.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(parent_[i]);
  }
  return out;
}

// ---- statistics ----

namespace {

// depth[v - 1] and root[v - 1] for every vertex, O(n) overall.
void depths_and_roots(std::span<const Vertex> parents, std::vector<std::size_t>& depth,
                      std::vector<Vertex>& root) {
  const std::size_t n = parents.size();
  constexpr std::size_t kUnknown = static_cast<std::size_t>(-1);
  depth.assign(n, kUnknown);
  root.assign(n, 0);
  std::vector<Vertex> path;
  for (Vertex s = 1; s <= n; ++s) {
    Vertex v = s;
    path.clear();
    while (depth[v - 1] == kUnknown && parents[v - 1] != 0) {
      path.push_back(v);
      v = parents[v - 1];
      if (path.size() > n) throw ValidationError("forest parent map has a cycle");
    }
    if (depth[v - 1] == kUnknown) {
      depth[v - 1] = 0;
      root[v - 1] = v;
    }
    std::size_t d = depth[v - 1];
    const Vertex r = root[v - 1];
    for (auto it = path.rbegin(); it != path.rend(); ++it) {
      depth[*it - 1] = ++d;
      root[*it - 1] = r;
    }
  }
}

}  // namespace

std::size_t height(std::span<const Vertex> parents, Vertex v) {
  if (v < 1 || v > parents.size()) throw InvalidEdgeError("vertex out of range");
  std::size_t h = 0;
  while (parents[v - 1] != 0) {
    v = parents[v - 1];
    if (++h > parents.size()) throw ValidationError("forest parent map has a cycle");
  }
  return h;
}

std::size_t height(std::span<const Vertex> parents) {
  std::vector<std::size_t> depth;
  std::vector<Vertex> root;
  depths_and_roots(parents, depth, root);
  return depth.empty() ? 0 : *std::max_element(depth.begin(), depth.end());
}

std::vector<std::size_t> tree_sizes(std::span<const Vertex> parents) {
  std::vector<std::size_t> depth;
  std::vector<Vertex> root;
  depths_and_roots(parents, depth, root);
  std::vector<std::size_t> count(parents.size(), 0);
  for (Vertex r : root) ++count[r - 1];
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < parents.size(); ++i) {
    if (parents[i] == 0) out.push_back(count[i]);
  }
  return out;
}

// ---- enumeration ----

namespace {

void labeled_dfs(RootedLabeledForest& f, std::vector<Vertex>& roots, std::size_t remaining,
                 const std::function<void(const RootedLabeledForest&)>& visit) {
  if (remaining == 0) {
    visit(f);
    return;
  }
  const std::size_t r = roots.size();
  for (std::size_t ti = 0; ti < r; ++ti) {
    for (std::size_t hi = 0; hi < r; ++hi) {
      if (ti == hi) continue;
      const Vertex tail = roots[ti];
      f.merge(tail, roots[hi]);
      roots.erase(roots.begin() + static_cast<std::ptrdiff_t>(ti));
      labeled_dfs(f, roots, remaining - 1, visit);
      roots.insert(roots.begin() + static_cast<std::ptrdiff_t>(ti), tail);
      f.undo_last_merge();
    }
  }
}

void increasing_dfs(PlainRootedForest& f, Vertex v, const std::function<void(const PlainRootedForest&)>& visit) {
  if (v > f.n()) {
    visit(f);
    return;
  }
  for (Vertex w = 1; w < v; ++w) {
    f.set_parent(v, w);
    increasing_dfs(f, v + 1, visit);
  }
  f.make_root(v);
}

}  // namespace

void for_each_labeled_forest(std::size_t n, std::size_t m,
                             const std::function<void(const RootedLabeledForest&)>& visit) {
  if (n > kMaxLabeledEnumerationN) {
    throw CapacityError("enumerate_labeled_forests: n = " + std::to_string(n) +
                        " exceeds the limit of " + std::to_string(kMaxLabeledEnumerationN));
  }
  if (n == 0 ? m != 0 : m > n - 1) {
    throw ParameterError("enumerate_labeled_forests: need 0 <= m <= n - 1");
  }
  // Every element of F_{n,m} is the record of a unique sequence of m merges
  // between distinct roots; the i-th merge carries label i.
  RootedLabeledForest f(n);
  std::vector<Vertex> roots;
  for (Vertex v = 1; v <= n; ++v) roots.push_back(v);
  labeled_dfs(f, roots, m, visit);
}

std::vector<RootedLabeledForest> enumerate_labeled_forests(std::size_t n, std::size_t m) {
  std::vector<RootedLabeledForest> out;
  for_each_labeled_forest(n, m, [&](const RootedLabeledForest& f) { out.push_back(f); });
  return out;
}

void for_each_increasing_forest(std::size_t n, std::size_t k,
                                const std::function<void(const PlainRootedForest&)>& visit) {
  if (n > kMaxIncreasingEnumerationN) {
    throw CapacityError("enumerate_increasing_forests: n = " + std::to_string(n) +
                        " exceeds the limit of " + std::to_string(kMaxIncreasingEnumerationN));
  }
  if (k < 1 || k > n) throw ParameterError("enumerate_increasing_forests: need 1 <= k <= n");
  PlainRootedForest f(n);
  increasing_dfs(f, static_cast<Vertex>(k + 1), visit);
}

std::vector<PlainRootedForest> enumerate_increasing_forests(std::size_t n, std::size_t k) {
  std::vector<PlainRootedForest> out;
  for_each_increasing_forest(n, k, [&](const PlainRootedForest& f) { out.push_back(f); });
  return out;
}

namespace {

std::uint64_t checked_product(std::uint64_t from, std::uint64_t to) {
  std::uint64_t acc = 1;
  for (std::uint64_t i = from; i <= to; ++i) {
    if (__builtin_mul_overflow(acc, i, &acc)) throw CapacityError("forest count overflows 64 bits");
  }
  return acc;
}

}  // namespace

std::uint64_t labeled_forest_count(std::size_t n, std::size_t k) {
  if (k < 1 || k > n) throw ParameterError("labeled_forest_count: need 1 <= k <= n");
  // n!/k! * (n-1)!/(k-1)!
  const std::uint64_t a = checked_product(k + 1, n);
  const std::uint64_t b = checked_product(k, n - 1);
  std::uint64_t out = 0;
  if (__builtin_mul_overflow(a, b, &out)) throw CapacityError("forest count overflows 64 bits");
  return out;
}

std::uint64_t increasing_forest_count(std::size_t n, std::size_t k) {
  if (k < 1 || k > n) throw ParameterError("increasing_forest_count: need 1 <= k <= n");
  return checked_product(k, n - 1);
}

// ---- JSON ----

void to_json(nlohmann::ordered_json& j, const RootedLabeledForest& f) {
  auto edges = nlohmann::ordered_json::array();
  for (const auto& e : f.edges()) {
    edges.push_back({{"tail", e.tail}, {"head", e.head}, {"label", e.label}});
  }
  j = nlohmann::ordered_json{{"n", f.n()}, {"edges", std::move(edges)}};
}

void from_json(const nlohmann::ordered_json& j, RootedLabeledForest& f) {
  std::vector<LabeledEdge> edges;
  for (const auto& e : j.at("edges")) {
    edges.push_back({e.at("tail").get<Vertex>(), e.at("head").get<Vertex>(),
                     e.at("label").get<std::uint32_t>()});
  }
  f = RootedLabeledForest::from_edges(j.at("n").get<std::size_t>(), edges);
}

void to_json(nlohmann::ordered_json& j, const PlainRootedForest& f) {
  auto edges = nlohmann::ordered_json::array();
  for (Vertex v = 1; v <= f.n(); ++v) {
    if (!f.is_root(v)) edges.push_back({{"tail", v}, {"head", f.parent_of(v)}});
  }
  j = nlohmann::ordered_json{{"n", f.n()}, {"edges", std::move(edges)}};
}

void from_json(const nlohmann::ordered_json& j, PlainRootedForest& f) {
  std::vector<Vertex> parents(j.at("n").get<std::size_t>(), 0);
  for (const auto& e : j.at("edges")) {
    const auto tail = e.at("tail").get<Vertex>();
    if (tail < 1 || tail > parents.size()) throw ValidationError("forest edge tail out of range");
    parents[tail - 1] = e.at("head").get<Vertex>();
  }
  f = PlainRootedForest::from_parents(std::move(parents));
}

}  // namespace kingman
