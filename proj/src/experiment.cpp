#include "kingman/experiment.hpp"

#include <chrono>
#include <nlohmann/json.hpp>

#include "kingman/coalescent.hpp"
#include "kingman/edge_reveal.hpp"
#include "kingman/errors.hpp"
#include "kingman/forest.hpp"
#include "kingman/graph.hpp"
#include "kingman/parallel.hpp"
#include "kingman/rng.hpp"
#include "kingman/urrf.hpp"

namespace kingman {

Method parse_method(std::string_view name) {
  if (name == "direct") return Method::kDirect;
  if (name == "erp") return Method::kErp;
  if (name == "walk") return Method::kWalk;
  if (name == "urrt-coupling") return Method::kUrrtCoupling;
  throw ParameterError("unknown method '" + std::string(name) + "'");
}

std::string_view method_name(Method m) {
  switch (m) {
    case Method::kDirect: return "direct";
    case Method::kErp: return "erp";
    case Method::kWalk: return "walk";
    case Method::kUrrtCoupling: return "urrt-coupling";
  }
  return "?";
}

namespace {

template <class Forest>
void fill_structure(TrialRecord& r, const Forest& f) {
  r.tree_count = f.root_count();
  r.height = height(f);
  r.sizes = tree_sizes(f);
}

}  // namespace

TrialRecord simulate_trial(Method method, std::size_t n, double p, std::uint64_t seed,
                           std::uint64_t trial, bool timing) {
  const auto start = std::chrono::steady_clock::now();
  RngStream rng(seed, trial);
  TrialRecord r{trial, n, p, method, 0, std::nullopt, {}, 0};
  switch (method) {
    case Method::kDirect: {
      const auto run = run_kingman(sample_gnp(n, p, rng), rng);
      fill_structure(r, run.final_forest);
      break;
    }
    case Method::kErp: {
      const auto run = run_erp(n, p, rng);
      fill_structure(r, run.state.forest());
      break;
    }
    case Method::kWalk:
      r.tree_count = fast_walk(n, p, rng).tree_count;
      break;
    case Method::kUrrtCoupling: {
      const std::size_t c = fast_walk(n, p, rng).tree_count;
      fill_structure(r, delete_root_block_edges(sample_urrt(n, rng), c));
      break;
    }
  }
  if (timing) {
    r.elapsed_us = static_cast<std::uint64_t>(
        std::chrono::duration_cast<std::chrono::microseconds>(std::chrono::steady_clock::now() - start)
            .count());
  }
  return r;
}

std::vector<TrialRecord> simulate(Method method, std::size_t n, double p, std::uint64_t trials,
                                  std::uint64_t seed, std::size_t threads, bool timing) {
  return parallel_trials(trials, threads, [&](std::uint64_t t) {
    return simulate_trial(method, n, p, seed, t, timing);
  });
}

std::string format_real(double x) { return nlohmann::json(x).dump(); }

nlohmann::ordered_json record_to_json(const TrialRecord& r) {
  nlohmann::ordered_json j;
  j["trial"] = r.trial;
  j["n"] = r.n;
  j["p"] = r.p;
  j["method"] = method_name(r.method);
  j["tree_count"] = r.tree_count;
  j["height"] = r.height ? nlohmann::ordered_json(*r.height) : nlohmann::ordered_json(nullptr);
  j["sizes"] = r.sizes;
  j["elapsed_us"] = r.elapsed_us;
  return j;
}

std::string record_to_csv(const TrialRecord& r) {
  std::string sizes;
  for (std::size_t i = 0; i < r.sizes.size(); ++i) {
    if (i) sizes += ';';
    sizes += std::to_string(r.sizes[i]);
  }
  std::string out = std::to_string(r.trial) + "," + std::to_string(r.n) + "," + format_real(r.p) + "," +
                    std::string(method_name(r.method)) + "," + std::to_string(r.tree_count) + ",";
  if (r.height) out += std::to_string(*r.height);
  out += "," + sizes + "," + std::to_string(r.elapsed_us);
  return out;
}

}  // namespace kingman
