#pragma once

#include <cstdint>
#include <vector>

#include "kingman/rng.hpp"

namespace kingman {

// Samplers. Each throws ParameterError outside its parameter domain.

bool sample_bernoulli(double p, RngStream& rng);

/// Failures before the first success: P(X = k) = (1-p)^k p, 0 < p <= 1.
std::uint64_t sample_geometric(double p, RngStream& rng);

/// min(Geo(p), cap).
std::uint64_t sample_truncated_geometric(double p, std::uint64_t cap,
                                         RngStream& rng);

/// Successes among `draws` items taken without replacement from `population`
/// items of which `successes` are marked.
///
/// Small populations (<= kHypergeometricWalkLimit) and narrow supports use an
/// exact inverse-cdf walk; larger cases use Stadlober's ratio-of-uniforms
/// (HRUA) so the cost per draw stays O(1) in expectation.
std::uint64_t sample_hypergeometric(std::uint64_t draws, std::uint64_t successes,
                                    std::uint64_t population, RngStream& rng);

inline constexpr std::uint64_t kHypergeometricWalkLimit = 500;

/// Sum of r independent Geo(p) draws.
std::uint64_t sample_negative_binomial(std::uint64_t r, double p, RngStream& rng);

/// Standard exponential via -log(U), U in (0, 1].
double sample_exponential(RngStream& rng);

/// Uniform point on the (k-1)-simplex (flat Dirichlet).
std::vector<double> sample_dirichlet_uniform(std::size_t k, RngStream& rng);

// Probability mass functions used as reference laws in tests and suites.

double geometric_pmf(std::uint64_t k, double p);
double truncated_geometric_pmf(std::uint64_t k, double p, std::uint64_t cap);
double hypergeometric_pmf(std::uint64_t j, std::uint64_t draws,
                          std::uint64_t successes, std::uint64_t population);
double negative_binomial_pmf(std::uint64_t k, std::uint64_t r, double p);
/// log C(n, k); -inf when k > n.
double log_binomial(std::uint64_t n, std::uint64_t k);

/// C(n, 2) without overflow for n < 2^32.
constexpr std::uint64_t choose2(std::uint64_t n) {
  return n < 2 ? 0 : n * (n - 1) / 2;
}

struct BoundParams {
  double delta = 0.5;
  double mu = 0.0;
  std::uint64_t r = 1;
  double p = 0.5;
};

struct BoundValues {
  double hypergeometric_sum;      // 2 exp(-delta^2 mu / 3)
  double negative_binomial_upper;  // exp(-((1-p) delta)^2 r / 6)
  double negative_binomial_lower;  // exp(-((1-p) delta)^2 r / (3 (1 - delta (1-p))))
};

/// Chernoff-type tail bounds for hypergeometric sums and negative binomials.
BoundValues eval_bounds(const BoundParams& params);

}  // namespace kingman
