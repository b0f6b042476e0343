#include "kingman/coalescent.hpp"

namespace kingman {

CoalescentRun run_kingman(const Graph& g, RngStream& rng, bool record_trajectory) {
  CoalescentRun run{g, {}, RootedLabeledForest(g.n()), g.n()};
  RootedLabeledForest& forest = run.final_forest;

  // Candidate root-root edges. An entry goes stale once either endpoint loses
  // root status; stale entries are discarded when drawn, so each accepted draw
  // is uniform over the edges that still join two roots.
  std::vector<Edge> candidates = g.edges();
  while (!candidates.empty()) {
    const std::size_t i = rng.below(candidates.size());
    const Edge e = candidates[i];
    candidates[i] = candidates.back();
    candidates.pop_back();
    if (!forest.is_root(e.u) || !forest.is_root(e.v)) continue;
    if (rng.below(2) == 0) {
      forest.merge(e.u, e.v);
    } else {
      forest.merge(e.v, e.u);
    }
    --run.tree_count;
    if (record_trajectory) run.trajectory.push_back(forest);
  }
  return run;
}

std::size_t count_trees(const CoalescentRun& run) { return run.final_forest.root_count(); }

}  // namespace kingman
