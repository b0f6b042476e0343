#pragma once

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/cpp_int.hpp>
#include <cstddef>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "kingman/graph.hpp"

namespace kingman {

using ExactReal = boost::multiprecision::cpp_bin_float_quad;
using ExactRational = boost::multiprecision::cpp_rational;

/// Law of a tree count: support ascending, probabilities parallel to it.
template <class T>
struct BasicExactDistribution {
  std::vector<std::size_t> support;
  std::vector<T> prob;

  T mass_at(std::size_t c) const {
    for (std::size_t i = 0; i < support.size(); ++i) {
      if (support[i] == c) return prob[i];
    }
    return T(0);
  }
  T total() const {
    T s(0);
    for (const auto& x : prob) s += x;
    return s;
  }
  T mean() const {
    T s(0);
    for (std::size_t i = 0; i < support.size(); ++i) s += prob[i] * T(support[i]);
    return s;
  }
  std::vector<double> probabilities() const {
    std::vector<double> out;
    out.reserve(prob.size());
    for (const auto& x : prob) out.push_back(static_cast<double>(x));
    return out;
  }
};

using ExactDistribution = BasicExactDistribution<ExactReal>;
using RationalDistribution = BasicExactDistribution<ExactRational>;

inline constexpr std::size_t kMaxOracleGraphN = 14;
inline constexpr std::size_t kMaxOracleCnpN = 6;
inline constexpr std::size_t kMaxWalkOracleN = 40;

/// Exact law of the Kingman tree count on a fixed graph.
///
/// Future merges depend only on the set of surviving roots, so a dynamic
/// program over root subsets integrates the process exactly: a subset with no
/// internal edge is terminal, otherwise average over the uniform edge and the
/// uniform choice of which endpoint stops being a root.
ExactDistribution exact_c_distribution(const Graph& g);
RationalDistribution exact_c_distribution_rational(const Graph& g);

/// Exact law of C_{n,p}: the graph law summed over all 2^{C(n,2)} graphs.
ExactDistribution exact_cnp_distribution(std::size_t n, double p);
RationalDistribution exact_cnp_distribution_rational(std::size_t n, const ExactRational& p);

ExactReal exact_mean_c(std::size_t n, double p);

/// Law of n - J* + 1 computed by propagating the edge-count walk's transition
/// kernel exactly (capped geometric + hypergeometric). An independent route to
/// the same law as exact_cnp_distribution, usable up to n = 40.
ExactDistribution walk_cnp_distribution(std::size_t n, double p);

/// {"support": [...], "prob": [...]} with probabilities as doubles.
nlohmann::ordered_json distribution_to_json(const ExactDistribution& d);

}  // namespace kingman
