#include "kingman/distributions.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "kingman/errors.hpp"

namespace kingman {
namespace {

void require_probability(double p, const char* who) {
  if (!(p >= 0.0 && p <= 1.0)) {
    throw ParameterError(std::string(who) + ": probability " + std::to_string(p) +
                         " outside [0, 1]");
  }
}

void require_positive_probability(double p, const char* who) {
  if (!(p > 0.0 && p <= 1.0)) {
    throw ParameterError(std::string(who) + ": probability " + std::to_string(p) +
                         " outside (0, 1]");
  }
}

double log_factorial(std::uint64_t k) {
  return std::lgamma(static_cast<double>(k) + 1.0);
}

constexpr std::uint64_t kGeometricCeiling = std::uint64_t{1} << 62;

std::uint64_t hypergeometric_walk(std::uint64_t draws, std::uint64_t successes,
                                  std::uint64_t population, RngStream& rng) {
  const std::uint64_t lo =
      draws + successes > population ? draws + successes - population : 0;
  const std::uint64_t hi = std::min(draws, successes);
  if (lo == hi) return lo;
  double mass = hypergeometric_pmf(lo, draws, successes, population);
  double u = rng.uniform();
  std::uint64_t j = lo;
  while (j < hi) {
    if (u < mass) return j;
    u -= mass;
    // P(j+1) / P(j) for the hypergeometric law.
    const double num = static_cast<double>(successes - j) * static_cast<double>(draws - j);
    const double den = static_cast<double>(j + 1) *
                       static_cast<double>(population - successes - draws + j + 1);
    mass *= num / den;
    ++j;
  }
  return hi;
}

// Stadlober's HRUA ratio-of-uniforms sampler, in the arrangement used by
// NumPy's legacy generator.
std::uint64_t hypergeometric_hrua(std::uint64_t draws, std::uint64_t successes,
                                  std::uint64_t population, RngStream& rng) {
  constexpr double kD1 = 1.7155277699214135;
  constexpr double kD2 = 0.8989161620588988;
  const std::uint64_t good = successes;
  const std::uint64_t bad = population - successes;
  const std::uint64_t sample = std::min(draws, population - draws);
  const std::uint64_t min_gb = std::min(good, bad);
  const std::uint64_t max_gb = std::max(good, bad);
  const auto pop = static_cast<double>(population);

  const double p = static_cast<double>(min_gb) / pop;
  const double q = static_cast<double>(max_gb) / pop;
  const double mu = static_cast<double>(sample) * p;
  const double a = mu + 0.5;
  const double var = (pop - static_cast<double>(sample)) * static_cast<double>(sample) *
                     p * q / (pop - 1.0);
  const double c = std::sqrt(var + 0.5);
  const double h = kD1 * c + kD2;
  const auto mode = static_cast<std::uint64_t>(
      std::floor(static_cast<double>(sample + 1) * static_cast<double>(min_gb + 1) /
                 (pop + 2.0)));
  const double g = log_factorial(mode) + log_factorial(min_gb - mode) +
                   log_factorial(sample - mode) + log_factorial(max_gb - sample + mode);
  const double b = std::min(static_cast<double>(std::min(sample, min_gb) + 1),
                            std::floor(a + 16.0 * c));

  std::uint64_t k = 0;
  while (true) {
    const double u = rng.uniform_pos();
    const double v = rng.uniform();
    const double x = a + h * (v - 0.5) / u;
    if (x < 0.0 || x >= b) continue;
    k = static_cast<std::uint64_t>(std::floor(x));
    const double gp = log_factorial(k) + log_factorial(min_gb - k) +
                      log_factorial(sample - k) + log_factorial(max_gb - sample + k);
    const double t = g - gp;
    if (u * (4.0 - u) - 3.0 <= t) break;
    if (u * (u - t) >= 1.0) continue;
    if (2.0 * std::log(u) <= t) break;
  }
  if (good > bad) k = sample - k;
  if (sample < draws) k = good - k;
  return k;
}

}  // namespace

bool sample_bernoulli(double p, RngStream& rng) {
  require_probability(p, "sample_bernoulli");
  if (p == 0.0) return false;
  if (p == 1.0) return true;
  return rng.uniform() < p;
}

std::uint64_t sample_geometric(double p, RngStream& rng) {
  require_positive_probability(p, "sample_geometric");
  if (p == 1.0) return 0;
  const double x = std::floor(std::log(rng.uniform_pos()) / std::log1p(-p));
  if (!(x < static_cast<double>(kGeometricCeiling))) return kGeometricCeiling;
  return static_cast<std::uint64_t>(x);
}

std::uint64_t sample_truncated_geometric(double p, std::uint64_t cap, RngStream& rng) {
  return std::min(sample_geometric(p, rng), cap);
}

std::uint64_t sample_hypergeometric(std::uint64_t draws, std::uint64_t successes,
                                    std::uint64_t population, RngStream& rng) {
  if (successes > population || draws > population) {
    throw ParameterError("sample_hypergeometric: need successes <= population and "
                         "draws <= population");
  }
  if (draws == 0 || successes == 0) return 0;
  if (successes == population) return draws;
  if (draws == population) return successes;
  const std::uint64_t narrow = std::min(draws, population - draws);
  if (population <= kHypergeometricWalkLimit || narrow < 10) {
    return hypergeometric_walk(draws, successes, population, rng);
  }
  return hypergeometric_hrua(draws, successes, population, rng);
}

std::uint64_t sample_negative_binomial(std::uint64_t r, double p, RngStream& rng) {
  if (r == 0) throw ParameterError("sample_negative_binomial: r must be >= 1");
  require_positive_probability(p, "sample_negative_binomial");
  std::uint64_t total = 0;
  for (std::uint64_t i = 0; i < r; ++i) total += sample_geometric(p, rng);
  return total;
}

double sample_exponential(RngStream& rng) { return -std::log(rng.uniform_pos()); }

std::vector<double> sample_dirichlet_uniform(std::size_t k, RngStream& rng) {
  if (k == 0) throw ParameterError("sample_dirichlet_uniform: k must be >= 1");
  std::vector<double> point(k);
  double total = 0.0;
  do {
    total = 0.0;
    for (auto& t : point) {
      t = sample_exponential(rng);
      total += t;
    }
  } while (total == 0.0);
  for (auto& t : point) t /= total;
  return point;
}

double log_binomial(std::uint64_t n, std::uint64_t k) {
  if (k > n) return -std::numeric_limits<double>::infinity();
  return log_factorial(n) - log_factorial(k) - log_factorial(n - k);
}

double geometric_pmf(std::uint64_t k, double p) {
  require_positive_probability(p, "geometric_pmf");
  if (p == 1.0) return k == 0 ? 1.0 : 0.0;
  return std::exp(static_cast<double>(k) * std::log1p(-p)) * p;
}

double truncated_geometric_pmf(std::uint64_t k, double p, std::uint64_t cap) {
  require_positive_probability(p, "truncated_geometric_pmf");
  if (k > cap) return 0.0;
  if (k < cap) return geometric_pmf(k, p);
  // All mass at or beyond the cap: (1-p)^cap.
  if (p == 1.0) return cap == 0 ? 1.0 : 0.0;
  return std::exp(static_cast<double>(cap) * std::log1p(-p));
}

double hypergeometric_pmf(std::uint64_t j, std::uint64_t draws, std::uint64_t successes,
                          std::uint64_t population) {
  if (successes > population || draws > population) {
    throw ParameterError("hypergeometric_pmf: need successes <= population and "
                         "draws <= population");
  }
  if (j > draws || j > successes) return 0.0;
  if (draws - j > population - successes) return 0.0;
  return std::exp(log_binomial(successes, j) +
                  log_binomial(population - successes, draws - j) -
                  log_binomial(population, draws));
}

double negative_binomial_pmf(std::uint64_t k, std::uint64_t r, double p) {
  if (r == 0) throw ParameterError("negative_binomial_pmf: r must be >= 1");
  require_positive_probability(p, "negative_binomial_pmf");
  if (p == 1.0) return k == 0 ? 1.0 : 0.0;
  return std::exp(log_binomial(k + r - 1, k) + static_cast<double>(k) * std::log1p(-p) +
                  static_cast<double>(r) * std::log(p));
}

BoundValues eval_bounds(const BoundParams& params) {
  const double delta = params.delta;
  if (!(delta > 0.0 && delta < 1.0)) throw ParameterError("eval_bounds: delta outside (0, 1)");
  if (!(params.mu >= 0.0)) throw ParameterError("eval_bounds: mu must be >= 0");
  if (params.r < 1) throw ParameterError("eval_bounds: r must be >= 1");
  if (!(params.p > 0.0 && params.p < 1.0)) throw ParameterError("eval_bounds: p outside (0, 1)");
  const double q = 1.0 - params.p;
  const auto r = static_cast<double>(params.r);
  const double shrink = (q * delta) * (q * delta) * r;
  return BoundValues{
      2.0 * std::exp(-delta * delta * params.mu / 3.0),
      std::exp(-shrink / 6.0),
      std::exp(-shrink / (3.0 * (1.0 - delta * q))),
  };
}

}  // namespace kingman
