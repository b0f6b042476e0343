#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "kingman/stats.hpp"

namespace kingman {

/// Overrides for a verification suite; unset fields take the suite defaults.
struct SuiteConfig {
  std::optional<std::size_t> n;
  std::optional<double> p;
  std::optional<std::uint64_t> trials;
  std::uint64_t seed = 1;
  std::size_t threads = 1;
};

/// Names accepted by run_suite, in a fixed order.
const std::vector<std::string>& suite_names();
bool is_suite(const std::string& name);

/// Runs one suite and returns its reports in a fixed order. Every random draw
/// comes from RngStream(config.seed, block_stream(block, trial)) with a block
/// constant private to the sub-experiment, so output does not depend on the
/// thread count. Throws ParameterError for an unknown suite name.
std::vector<TestReport> run_suite(const std::string& name, const SuiteConfig& config);

/// Stream blocks, one per independent sub-experiment.
namespace blocks {
inline constexpr std::uint64_t kEquivalence = 16;   // + 3 * case + method
inline constexpr std::uint64_t kUniformity = 40;
inline constexpr std::uint64_t kStepLaw = 41;
inline constexpr std::uint64_t kDirichletWalk = 42;
inline constexpr std::uint64_t kDirichletForest = 43;
inline constexpr std::uint64_t kHeight = 44;
inline constexpr std::uint64_t kMonotonicity = 48;  // + index of n
inline constexpr std::uint64_t kBounds = 56;
inline constexpr std::uint64_t kNullCalibration = 64;  // + test index
inline constexpr std::uint64_t kSamplers = 80;          // + sampler index
inline constexpr std::uint64_t kSmallP = 120;
}  // namespace blocks

}  // namespace kingman
