#pragma once

#include <vector>

#include "kingman/forest.hpp"
#include "kingman/graph.hpp"
#include "kingman/rng.hpp"

namespace kingman {

/// One realization of the Kingman coalescent on a fixed graph.
struct CoalescentRun {
  Graph graph;
  /// f_1, f_2, ... after each merge; empty unless recording was requested.
  std::vector<RootedLabeledForest> trajectory;
  RootedLabeledForest final_forest;
  std::size_t tree_count = 0;
};

/// Repeatedly merges the two roots of a uniformly chosen graph edge joining
/// distinct roots, orienting it uniformly (the tail stops being a root), until
/// the surviving roots are an independent set of `g`.
CoalescentRun run_kingman(const Graph& g, RngStream& rng, bool record_trajectory = false);

/// Number of trees in the final forest, n minus the number of merges.
std::size_t count_trees(const CoalescentRun& run);

}  // namespace kingman
