#include "kingman/urrf.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "kingman/errors.hpp"

namespace kingman {

UrrfSample sample_urrf(std::size_t n, std::size_t k, RngStream& rng) {
  if (k < 1 || k > n) {
    throw ParameterError("sample_urrf: need 1 <= k <= n (k = " + std::to_string(k) +
                         ", n = " + std::to_string(n) + ")");
  }
  UrrfSample s{n, k, PlainRootedForest(n), {}};
  s.attachment_order.reserve(n - k);
  for (std::size_t v = k + 1; v <= n; ++v) {
    const auto parent = static_cast<Vertex>(rng.below(v - 1) + 1);
    s.forest.set_parent(static_cast<Vertex>(v), parent);
    s.attachment_order.emplace_back(static_cast<Vertex>(v), parent);
  }
  return s;
}

UrrfSample sample_urrt(std::size_t n, RngStream& rng) {
  if (n < 1) throw ParameterError("sample_urrt: n must be >= 1");
  return sample_urrf(n, 1, rng);
}

PlainRootedForest phi(const RootedLabeledForest& f) {
  f.validate();
  const std::size_t n = f.n();
  std::vector<Vertex> relabel(n + 1, 0);
  Vertex next_root = 1;
  for (Vertex v = 1; v <= n; ++v) {
    if (f.is_root(v)) {
      relabel[v] = next_root++;
    } else {
      relabel[v] = static_cast<Vertex>(n - f.label_of(v) + 1);
    }
  }
  std::vector<Vertex> parents(n, 0);
  for (Vertex v = 1; v <= n; ++v) {
    if (!f.is_root(v)) parents[relabel[v] - 1] = relabel[f.parent_of(v)];
  }
  return PlainRootedForest::from_parents(std::move(parents));
}

namespace {

void require_increasing_target(const PlainRootedForest& target) {
  target.validate();
  const std::size_t k = target.root_count();
  for (Vertex v = 1; v <= target.n(); ++v) {
    if (target.is_root(v) != (v <= k)) {
      throw ValidationError("phi target must have roots exactly 1..k");
    }
  }
  if (!target.is_increasing()) throw ValidationError("phi target is not an increasing forest");
}

RootedLabeledForest relabelled_preimage(const PlainRootedForest& target,
                                        const std::vector<Vertex>& sigma) {
  // The edge whose child carries label v gets edge label n - v + 1; vertex v of
  // the target is renamed sigma[v].
  const std::size_t n = target.n();
  std::vector<LabeledEdge> edges;
  edges.reserve(target.edge_count());
  for (Vertex v = 1; v <= n; ++v) {
    if (target.is_root(v)) continue;
    edges.push_back({sigma[v], sigma[target.parent_of(v)], static_cast<std::uint32_t>(n - v + 1)});
  }
  return RootedLabeledForest::from_edges(n, edges);
}

}  // namespace

RootedLabeledForest phi_canonical_preimage(const PlainRootedForest& target) {
  require_increasing_target(target);
  std::vector<Vertex> identity(target.n() + 1);
  std::iota(identity.begin(), identity.end(), Vertex{0});
  return relabelled_preimage(target, identity);
}

RootedLabeledForest phi_fiber_sample(const PlainRootedForest& target, RngStream& rng) {
  require_increasing_target(target);
  const std::size_t n = target.n();
  const std::size_t k = target.root_count();
  // A uniform permutation of {1..n}, then the images of the roots 1..k are
  // sorted so that root order is preserved. This is uniform over the n!/k!
  // permutations with sigma(1) < ... < sigma(k).
  std::vector<Vertex> perm(n);
  std::iota(perm.begin(), perm.end(), Vertex{1});
  for (std::size_t i = n; i > 1; --i) {
    const std::size_t j = rng.below(i);
    std::swap(perm[i - 1], perm[j]);
  }
  std::sort(perm.begin(), perm.begin() + static_cast<std::ptrdiff_t>(k));
  std::vector<Vertex> sigma(n + 1, 0);
  for (std::size_t v = 1; v <= n; ++v) sigma[v] = perm[v - 1];
  return relabelled_preimage(target, sigma);
}

PlainRootedForest sample_kingman_forest_structure(std::size_t n, std::size_t tree_count,
                                                  RngStream& rng) {
  if (tree_count < 1 || tree_count > n) {
    throw ParameterError("sample_kingman_forest_structure: need 1 <= tree_count <= n");
  }
  return sample_urrf(n, tree_count, rng).forest;
}

std::uint64_t UrnState::total() const {
  return std::accumulate(counts.begin(), counts.end(), std::uint64_t{0});
}

UrnState polya_urn(std::size_t k, std::uint64_t steps, RngStream& rng) {
  if (k < 1) throw ParameterError("polya_urn: k must be >= 1");
  UrnState urn{k, std::vector<std::uint64_t>(k, 1)};
  // Colour of every ball so far; drawing a uniform ball is drawing a colour
  // proportionally to its count.
  std::vector<std::uint32_t> balls(k);
  std::iota(balls.begin(), balls.end(), std::uint32_t{0});
  balls.reserve(k + steps);
  for (std::uint64_t s = 0; s < steps; ++s) {
    const std::uint32_t colour = balls[rng.below(balls.size())];
    balls.push_back(colour);
    ++urn.counts[colour];
  }
  return urn;
}

PlainRootedForest delete_root_block_edges(const UrrfSample& tree, std::size_t c) {
  if (tree.k != 1) throw ParameterError("delete_root_block_edges: expects a recursive tree (k = 1)");
  if (c < 1 || c > tree.n) throw ParameterError("delete_root_block_edges: need 1 <= c <= n");
  PlainRootedForest out = tree.forest;
  for (Vertex v = 2; v <= c; ++v) {
    const Vertex parent = out.parent_of(v);
    if (parent != 0 && parent <= c) out.make_root(v);
  }
  return out;
}

}  // namespace kingman
