#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "kingman/forest.hpp"
#include "kingman/rng.hpp"

namespace kingman {

/// A uniform random recursive forest with k trees: roots {1..k}, and each
/// later vertex v attached to a uniform vertex of {1..v-1}.
struct UrrfSample {
  std::size_t n = 0;
  std::size_t k = 0;
  PlainRootedForest forest;
  /// (new vertex, chosen parent) in order of arrival.
  std::vector<std::pair<Vertex, Vertex>> attachment_order;
};

UrrfSample sample_urrt(std::size_t n, RngStream& rng);
UrrfSample sample_urrf(std::size_t n, std::size_t k, RngStream& rng);

/// Relabels an edge-labelled forest into an increasing forest: the sorted roots
/// become 1..k and a non-root whose outgoing edge has label l becomes n - l + 1.
PlainRootedForest phi(const RootedLabeledForest& f);

/// Uniform element of the preimage of `target` under phi; every preimage has
/// n!/k! elements.
RootedLabeledForest phi_fiber_sample(const PlainRootedForest& target, RngStream& rng);

/// Canonical preimage (identity vertex relabelling) of an increasing forest.
RootedLabeledForest phi_canonical_preimage(const PlainRootedForest& target);

/// Graph structure of a Kingman forest on G(n, p) given its tree count.
PlainRootedForest sample_kingman_forest_structure(std::size_t n, std::size_t tree_count,
                                                  RngStream& rng);

struct UrnState {
  std::size_t k = 0;
  std::vector<std::uint64_t> counts;
  std::uint64_t total() const;
};

/// Polya urn started with one ball of each of k colours.
UrnState polya_urn(std::size_t k, std::uint64_t steps, RngStream& rng);

/// Removes every edge of a recursive tree with both endpoints in {1..c},
/// leaving c trees rooted at 1..c.
PlainRootedForest delete_root_block_edges(const UrrfSample& tree, std::size_t c);

}  // namespace kingman
