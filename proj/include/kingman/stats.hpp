#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

namespace kingman {

/// Verdict of one statistical or exact check.
///
/// pass is p_value >= threshold when a p-value is present, otherwise
/// |statistic| <= threshold.
struct TestReport {
  std::string suite;
  double statistic = 0.0;
  std::optional<double> p_value;
  double threshold = 0.0;
  bool pass = false;
  std::uint64_t trials = 0;
  std::uint64_t seed = 0;
  std::string notes;
};

TestReport make_p_value_report(std::string suite, double statistic, double p_value,
                               double threshold, std::uint64_t trials, std::uint64_t seed,
                               std::string notes = {});
TestReport make_statistic_report(std::string suite, double statistic, double threshold,
                                 std::uint64_t trials, std::uint64_t seed, std::string notes = {});

nlohmann::ordered_json report_to_json(const TestReport& r);

/// Asymptotic Kolmogorov survival function Q(lambda) = 2 sum (-1)^{j-1} e^{-2 j^2 lambda^2}.
double kolmogorov_survival(double lambda);
/// Upper tail of the chi-square law with `dof` degrees of freedom.
double chi_square_survival(double statistic, double dof);

inline constexpr double kDefaultAlpha = 0.01;
inline constexpr std::size_t kMinKsSamples = 50;

/// One-sample Kolmogorov-Smirnov test against a continuous cdf.
TestReport ks_test(std::span<const double> samples, const std::function<double(double)>& cdf,
                   double alpha = kDefaultAlpha);

/// Two-sample Kolmogorov-Smirnov test.
TestReport ks_two_sample(std::span<const double> a, std::span<const double> b,
                         double alpha = kDefaultAlpha);

using CountMap = std::map<std::string, std::uint64_t>;
using ProbabilityMap = std::map<std::string, double>;

/// Pearson goodness of fit of observed counts against expected probabilities.
///
/// Buckets with expected count below 5 are pooled, rarest first (ties by
/// category key), until every bucket reaches 5. Observations in categories
/// outside the expected support make the statistic infinite.
TestReport chi_square_test(const CountMap& observed, const ProbabilityMap& expected,
                           std::uint64_t trials, double alpha = kDefaultAlpha);

/// Pearson test of homogeneity between two samples over the union of their
/// categories, with the same pooling rule applied to the pooled frequencies.
TestReport chi_square_homogeneity(const CountMap& a, const CountMap& b,
                                  double alpha = kDefaultAlpha);

/// Checks that samples_hi stochastically dominates samples_lo: at every
/// support point x, P_hi(X >= x) >= P_lo(X >= x) - 3 pooled standard errors.
/// The statistic is the worst signed violation; pass iff it is <= 0.
TestReport dominance_check(std::span<const double> samples_lo, std::span<const double> samples_hi);

struct MeanInterval {
  double mean;
  double halfwidth;  // 4 standard errors
};
MeanInterval mean_ci(std::span<const double> samples);

/// Helpers that turn integer observations into category maps.
CountMap count_categories(std::span<const std::uint64_t> values);
std::string category_key(std::uint64_t value);

}  // namespace kingman
