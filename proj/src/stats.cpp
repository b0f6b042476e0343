#include "kingman/stats.hpp"

#include <algorithm>
#include <boost/math/special_functions/gamma.hpp>
#include <cmath>
#include <limits>
#include <nlohmann/json.hpp>
#include <numeric>

#include "kingman/errors.hpp"

namespace kingman {

TestReport make_p_value_report(std::string suite, double statistic, double p_value,
                               double threshold, std::uint64_t trials, std::uint64_t seed,
                               std::string notes) {
  return TestReport{std::move(suite), statistic, p_value, threshold, p_value >= threshold,
                    trials, seed, std::move(notes)};
}

TestReport make_statistic_report(std::string suite, double statistic, double threshold,
                                 std::uint64_t trials, std::uint64_t seed, std::string notes) {
  return TestReport{std::move(suite), statistic, std::nullopt, threshold,
                    std::abs(statistic) <= threshold, trials, seed, std::move(notes)};
}

nlohmann::ordered_json report_to_json(const TestReport& r) {
  nlohmann::ordered_json j;
  j["suite"] = r.suite;
  j["statistic"] = std::isfinite(r.statistic) ? nlohmann::ordered_json(r.statistic)
                                              : nlohmann::ordered_json("inf");
  j["p_value"] = r.p_value ? nlohmann::ordered_json(*r.p_value) : nlohmann::ordered_json(nullptr);
  j["threshold"] = r.threshold;
  j["pass"] = r.pass;
  j["trials"] = r.trials;
  j["seed"] = r.seed;
  j["notes"] = r.notes;
  return j;
}

double kolmogorov_survival(double lambda) {
  if (lambda <= 0.0) return 1.0;
  if (lambda < 0.2) return 1.0;  // the series is 1 to double precision here
  double sum = 0.0;
  for (int j = 1; j <= 100; ++j) {
    const double term = std::exp(-2.0 * j * j * lambda * lambda);
    sum += (j % 2 == 1 ? term : -term);
    if (term < 1e-17) break;
  }
  return std::clamp(2.0 * sum, 0.0, 1.0);
}

double chi_square_survival(double statistic, double dof) {
  if (!std::isfinite(statistic)) return 0.0;
  if (dof <= 0.0) return 1.0;
  if (statistic <= 0.0) return 1.0;
  return boost::math::gamma_q(dof / 2.0, statistic / 2.0);
}

TestReport ks_test(std::span<const double> samples, const std::function<double(double)>& cdf,
                   double alpha) {
  if (samples.size() < kMinKsSamples) {
    throw CapacityError("ks_test: need at least " + std::to_string(kMinKsSamples) + " samples");
  }
  std::vector<double> sorted(samples.begin(), samples.end());
  std::sort(sorted.begin(), sorted.end());
  const auto n = static_cast<double>(sorted.size());
  double d = 0.0;
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    const double f = cdf(sorted[i]);
    d = std::max({d, (static_cast<double>(i) + 1.0) / n - f, f - static_cast<double>(i) / n});
  }
  const double root_n = std::sqrt(n);
  const double p = kolmogorov_survival((root_n + 0.12 + 0.11 / root_n) * d);
  return make_p_value_report("ks", d, p, alpha, sorted.size(), 0);
}

TestReport ks_two_sample(std::span<const double> a, std::span<const double> b, double alpha) {
  if (a.size() < kMinKsSamples || b.size() < kMinKsSamples) {
    throw CapacityError("ks_two_sample: need at least " + std::to_string(kMinKsSamples) +
                        " samples per side");
  }
  std::vector<double> x(a.begin(), a.end());
  std::vector<double> y(b.begin(), b.end());
  std::sort(x.begin(), x.end());
  std::sort(y.begin(), y.end());
  const auto nx = static_cast<double>(x.size());
  const auto ny = static_cast<double>(y.size());
  std::size_t i = 0;
  std::size_t j = 0;
  double d = 0.0;
  while (i < x.size() && j < y.size()) {
    const double v = std::min(x[i], y[j]);
    while (i < x.size() && x[i] <= v) ++i;
    while (j < y.size() && y[j] <= v) ++j;
    d = std::max(d, std::abs(static_cast<double>(i) / nx - static_cast<double>(j) / ny));
  }
  const double ne = std::sqrt(nx * ny / (nx + ny));
  const double p = kolmogorov_survival((ne + 0.12 + 0.11 / ne) * d);
  return make_p_value_report("ks2", d, p, alpha, x.size() + y.size(), 0);
}

namespace {

struct Bucket {
  double weight;  // expected probability (or pooled frequency)
  std::string key;
  std::vector<double> observed;  // one entry per sample
};

// Pools the rarest buckets until every bucket's expected count reaches 5.
void pool_buckets(std::vector<Bucket>& buckets, double scale) {
  auto rarer = [](const Bucket& a, const Bucket& b) {
    return a.weight != b.weight ? a.weight < b.weight : a.key < b.key;
  };
  while (buckets.size() > 1) {
    std::sort(buckets.begin(), buckets.end(), rarer);
    if (buckets.front().weight * scale >= 5.0) break;
    Bucket merged = buckets[0];
    merged.weight += buckets[1].weight;
    merged.key += "+" + buckets[1].key;
    for (std::size_t i = 0; i < merged.observed.size(); ++i) merged.observed[i] += buckets[1].observed[i];
    buckets.erase(buckets.begin(), buckets.begin() + 2);
    buckets.push_back(std::move(merged));
  }
}

}  // namespace

TestReport chi_square_test(const CountMap& observed, const ProbabilityMap& expected,
                           std::uint64_t trials, double alpha) {
  bool overlap = false;
  for (const auto& [key, count] : observed) {
    if (count > 0 && expected.count(key)) overlap = true;
  }
  if (!overlap) throw ValidationError("chi_square_test: observed and expected supports are disjoint");

  std::uint64_t outside = 0;
  for (const auto& [key, count] : observed) {
    if (!expected.count(key) || expected.at(key) <= 0.0) outside += count;
  }
  const auto n = static_cast<double>(trials);
  if (outside > 0) {
    return make_p_value_report("chi-square", std::numeric_limits<double>::infinity(), 0.0, alpha,
                               trials, 0, std::to_string(outside) + " observations outside support");
  }
  std::vector<Bucket> buckets;
  for (const auto& [key, prob] : expected) {
    if (prob <= 0.0) continue;
    const auto it = observed.find(key);
    buckets.push_back({prob, key, {it == observed.end() ? 0.0 : static_cast<double>(it->second)}});
  }
  pool_buckets(buckets, n);
  double stat = 0.0;
  for (const auto& b : buckets) {
    const double e = b.weight * n;
    const double diff = b.observed[0] - e;
    stat += diff * diff / e;
  }
  const double dof = static_cast<double>(buckets.size()) - 1.0;
  return make_p_value_report("chi-square", stat, chi_square_survival(stat, dof), alpha, trials, 0,
                             "buckets=" + std::to_string(buckets.size()));
}

TestReport chi_square_homogeneity(const CountMap& a, const CountMap& b, double alpha) {
  const double na = std::accumulate(a.begin(), a.end(), 0.0,
                                    [](double s, const auto& kv) { return s + static_cast<double>(kv.second); });
  const double nb = std::accumulate(b.begin(), b.end(), 0.0,
                                    [](double s, const auto& kv) { return s + static_cast<double>(kv.second); });
  if (na == 0.0 || nb == 0.0) throw ValidationError("chi_square_homogeneity: empty sample");
  std::map<std::string, std::pair<double, double>> joint;
  for (const auto& [k, c] : a) joint[k].first += static_cast<double>(c);
  for (const auto& [k, c] : b) joint[k].second += static_cast<double>(c);
  std::vector<Bucket> buckets;
  for (const auto& [k, c] : joint) {
    if (c.first + c.second == 0.0) continue;
    buckets.push_back({(c.first + c.second) / (na + nb), k, {c.first, c.second}});
  }
  // Expected count in the smaller sample must reach 5.
  pool_buckets(buckets, std::min(na, nb));
  double stat = 0.0;
  for (const auto& bk : buckets) {
    const double ea = bk.weight * na;
    const double eb = bk.weight * nb;
    stat += (bk.observed[0] - ea) * (bk.observed[0] - ea) / ea;
    stat += (bk.observed[1] - eb) * (bk.observed[1] - eb) / eb;
  }
  const double dof = static_cast<double>(buckets.size()) - 1.0;
  return make_p_value_report("chi-square-homogeneity", stat, chi_square_survival(stat, dof), alpha,
                             static_cast<std::uint64_t>(na + nb), 0,
                             "buckets=" + std::to_string(buckets.size()));
}

TestReport dominance_check(std::span<const double> samples_lo, std::span<const double> samples_hi) {
  std::vector<double> lo(samples_lo.begin(), samples_lo.end());
  std::vector<double> hi(samples_hi.begin(), samples_hi.end());
  std::sort(lo.begin(), lo.end());
  std::sort(hi.begin(), hi.end());
  std::vector<double> support;
  std::merge(lo.begin(), lo.end(), hi.begin(), hi.end(), std::back_inserter(support));
  support.erase(std::unique(support.begin(), support.end()), support.end());
  const auto nl = static_cast<double>(lo.size());
  const auto nh = static_cast<double>(hi.size());
  double worst = -std::numeric_limits<double>::infinity();
  for (const double x : support) {
    // P(X >= x)
    const double sl = static_cast<double>(lo.end() - std::lower_bound(lo.begin(), lo.end(), x)) / nl;
    const double sh = static_cast<double>(hi.end() - std::lower_bound(hi.begin(), hi.end(), x)) / nh;
    const double se = std::sqrt(sl * (1.0 - sl) / nl + sh * (1.0 - sh) / nh);
    worst = std::max(worst, sl - sh - 3.0 * se);
  }
  if (support.empty()) worst = 0.0;
  TestReport r{"dominance", worst, std::nullopt, 0.0, worst <= 0.0,
               lo.size() + hi.size(), 0, "worst signed violation after 3 standard errors"};
  return r;
}

MeanInterval mean_ci(std::span<const double> samples) {
  if (samples.size() < 30) throw CapacityError("mean_ci: need at least 30 samples");
  const auto n = static_cast<double>(samples.size());
  const double mean = std::accumulate(samples.begin(), samples.end(), 0.0) / n;
  double ss = 0.0;
  for (const double x : samples) ss += (x - mean) * (x - mean);
  const double sd = std::sqrt(ss / (n - 1.0));
  return {mean, 4.0 * sd / std::sqrt(n)};
}

std::string category_key(std::uint64_t value) { return std::to_string(value); }

CountMap count_categories(std::span<const std::uint64_t> values) {
  CountMap out;
  for (const auto v : values) ++out[category_key(v)];
  return out;
}

}  // namespace kingman
