#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json_fwd.hpp>

namespace kingman {

enum class Method { kDirect, kErp, kWalk, kUrrtCoupling };

Method parse_method(std::string_view name);
std::string_view method_name(Method m);

/// One simulated Kingman forest (or its tree count alone for kWalk).
struct TrialRecord {
  std::uint64_t trial = 0;
  std::size_t n = 0;
  double p = 0.0;
  Method method = Method::kDirect;
  std::size_t tree_count = 0;
  std::optional<std::size_t> height;  // absent for kWalk
  std::vector<std::size_t> sizes;     // tree sizes in root order; empty for kWalk
  std::uint64_t elapsed_us = 0;
};

/// Trial `trial` of an experiment draws from RngStream(seed, trial):
///   direct        G(n, p) then the coalescent on it
///   erp           the edge-reveal process
///   walk          the edge-count walk (tree count only)
///   urrt-coupling walk tree count C, then a recursive tree on n vertices
///                 with the edges inside {1..C} deleted
/// elapsed_us is measured only when `timing` is set, so that records are
/// reproducible by default.
TrialRecord simulate_trial(Method method, std::size_t n, double p, std::uint64_t seed,
                           std::uint64_t trial, bool timing = false);

std::vector<TrialRecord> simulate(Method method, std::size_t n, double p, std::uint64_t trials,
                                  std::uint64_t seed, std::size_t threads, bool timing = false);

nlohmann::ordered_json record_to_json(const TrialRecord& r);
inline constexpr std::string_view kCsvHeader = "trial,n,p,method,tree_count,height,sizes,elapsed_us";
std::string record_to_csv(const TrialRecord& r);

/// Shortest decimal form that round-trips, as used in every output format.
std::string format_real(double x);

}  // namespace kingman
