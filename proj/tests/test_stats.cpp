#include <algorithm>
#include <cmath>
#include <nlohmann/json.hpp>
#include <vector>

#include "doctest.h"
#include "kingman/distributions.hpp"
#include "kingman/errors.hpp"
#include "kingman/rng.hpp"
#include "kingman/stats.hpp"

using namespace kingman;

namespace {

double uniform_cdf(double x) { return std::clamp(x, 0.0, 1.0); }

}  // namespace

TEST_CASE("reference tail values") {
  CHECK(chi_square_survival(3.0, 2) == doctest::Approx(0.22313016014842982).epsilon(1e-12));
  CHECK(chi_square_survival(10.5, 4) == doctest::Approx(0.03279698999488366).epsilon(1e-12));
  CHECK(chi_square_survival(120.0, 100) == doctest::Approx(0.08440668109369177).epsilon(1e-12));
  CHECK(kolmogorov_survival(0.5) == doctest::Approx(0.9639452436648751).epsilon(1e-12));
  CHECK(kolmogorov_survival(1.0) == doctest::Approx(0.26999967167735456).epsilon(1e-12));
  CHECK(kolmogorov_survival(1.6) == doctest::Approx(0.011952043239196616).epsilon(1e-12));
  CHECK(kolmogorov_survival(0.0) == 1.0);
}

TEST_CASE("report invariant") {
  const auto a = make_p_value_report("x", 3.0, 0.2, 0.01, 10, 1);
  CHECK(a.pass);
  CHECK_FALSE(make_p_value_report("x", 3.0, 0.005, 0.01, 10, 1).pass);
  CHECK(make_statistic_report("y", -0.5, 1.0, 10, 1).pass);
  CHECK_FALSE(make_statistic_report("y", 1.5, 1.0, 10, 1).pass);
  const auto j = report_to_json(a);
  CHECK(j.dump() ==
        R"({"suite":"x","statistic":3.0,"p_value":0.2,"threshold":0.01,"pass":true,"trials":10,"seed":1,"notes":""})");
}

TEST_CASE("ks_test") {
  std::vector<double> few(49, 0.5);
  CHECK_THROWS_AS(ks_test(few, uniform_cdf), CapacityError);
  std::vector<double> constant(1000, 0.5);
  const auto bad = ks_test(constant, uniform_cdf);
  CHECK(bad.statistic >= 0.5);
  CHECK_FALSE(bad.pass);
  RngStream rng(1, 0);
  std::vector<double> beta;
  for (int i = 0; i < 10000; ++i) beta.push_back(sample_dirichlet_uniform(4, rng)[0]);
  CHECK(ks_test(beta, [](double x) { return 1 - std::pow(1 - std::clamp(x, 0.0, 1.0), 3); }).pass);
  CHECK_FALSE(ks_test(beta, uniform_cdf).pass);
}

TEST_CASE("ks null calibration") {
  int rejections = 0;
  for (std::uint64_t rep = 0; rep < 1000; ++rep) {
    RngStream rng(2, rep);
    std::vector<double> xs(2000);
    for (auto& x : xs) x = rng.uniform();
    rejections += !ks_test(xs, uniform_cdf).pass;
  }
  CHECK(rejections <= 20);
}

TEST_CASE("two-sample ks") {
  RngStream rng(3, 0);
  std::vector<double> a(5000), b(5000), c(5000);
  for (auto& x : a) x = rng.uniform();
  for (auto& x : b) x = rng.uniform();
  for (auto& x : c) x = std::sqrt(rng.uniform());
  CHECK(ks_two_sample(a, b).pass);
  CHECK_FALSE(ks_two_sample(a, c).pass);
}

TEST_CASE("chi-square against a known hand computation") {
  const CountMap obs = {{"a", 18}, {"b", 22}, {"c", 35}, {"d", 25}};
  const ProbabilityMap exp = {{"a", 0.2}, {"b", 0.25}, {"c", 0.3}, {"d", 0.25}};
  const auto r = chi_square_test(obs, exp, 100);
  CHECK(r.statistic == doctest::Approx(1.3933333333333335));
  CHECK(*r.p_value == doctest::Approx(0.7070981764915207).epsilon(1e-9));
}

TEST_CASE("chi-square pools rare buckets") {
  // Expected counts 50, 45, 3, 2 at 100 trials: the two rare buckets pool
  // into one bucket of expected count 5.
  const ProbabilityMap exp = {{"a", 0.5}, {"b", 0.45}, {"c", 0.03}, {"d", 0.02}};
  const CountMap obs = {{"a", 50}, {"b", 45}, {"c", 3}, {"d", 2}};
  const auto r = chi_square_test(obs, exp, 100);
  CHECK(r.statistic == doctest::Approx(0.0));
  CHECK(r.notes == "buckets=3");
  const auto r2 = chi_square_test({{"a", 50}, {"b", 47}, {"c", 3}}, {{"a", 0.5}, {"b", 0.47}, {"c", 0.03}}, 100);
  CHECK(r2.notes == "buckets=2");
  CHECK_THROWS_AS(chi_square_test({{"z", 5}}, exp, 5), ValidationError);
  const auto outside = chi_square_test({{"a", 5}, {"z", 1}}, exp, 6);
  CHECK_FALSE(outside.pass);
}

TEST_CASE("chi-square null calibration and power") {
  const std::vector<double> pmf = {0.1, 0.2, 0.3, 0.25, 0.15};
  ProbabilityMap exp;
  for (std::size_t i = 0; i < pmf.size(); ++i) exp[category_key(i)] = pmf[i];
  auto draw_from = [](const std::vector<double>& w, RngStream& rng) {
    double u = rng.uniform();
    for (std::size_t i = 0; i < w.size(); ++i) {
      if (u < w[i]) return i;
      u -= w[i];
    }
    return w.size() - 1;
  };
  int rejections = 0;
  for (std::uint64_t rep = 0; rep < 100; ++rep) {
    RngStream rng(4, rep);
    CountMap obs;
    for (int i = 0; i < 100000; ++i) ++obs[category_key(draw_from(pmf, rng))];
    rejections += !chi_square_test(obs, exp, 100000).pass;
  }
  CHECK(rejections <= 3);
  RngStream rng(5, 0);
  CountMap shifted;
  const std::vector<double> other = {0.11, 0.19, 0.3, 0.25, 0.15};
  for (int i = 0; i < 100000; ++i) ++shifted[category_key(draw_from(other, rng))];
  CHECK_FALSE(chi_square_test(shifted, exp, 100000).pass);
}

TEST_CASE("chi-square homogeneity") {
  RngStream rng(6, 0);
  CountMap a, b, c;
  for (int i = 0; i < 20000; ++i) {
    ++a[category_key(sample_geometric(0.4, rng))];
    ++b[category_key(sample_geometric(0.4, rng))];
    ++c[category_key(sample_geometric(0.5, rng))];
  }
  CHECK(chi_square_homogeneity(a, b).pass);
  CHECK_FALSE(chi_square_homogeneity(a, c).pass);
}

TEST_CASE("dominance") {
  RngStream rng(7, 0);
  std::vector<double> same(2000);
  for (auto& x : same) x = double(sample_geometric(0.5, rng));
  CHECK(dominance_check(same, same).pass);
  CHECK(dominance_check(same, same).statistic <= 0);
  std::vector<double> lo(100000), hi(100000);
  for (auto& x : lo) x = double(sample_geometric(0.5, rng));
  for (auto& x : hi) x = double(sample_geometric(0.2, rng));
  CHECK(dominance_check(lo, hi).pass);
  CHECK_FALSE(dominance_check(hi, lo).pass);
}

TEST_CASE("mean_ci") {
  std::vector<double> few(29, 1.0);
  CHECK_THROWS_AS(mean_ci(few), CapacityError);
  std::vector<double> constant(100, 2.5);
  const auto c = mean_ci(constant);
  CHECK(c.mean == 2.5);
  CHECK(c.halfwidth == 0.0);
  RngStream rng(8, 0);
  std::vector<double> u(10000);
  for (auto& x : u) x = rng.uniform();
  const auto m = mean_ci(u);
  CHECK(std::abs(m.mean - 0.5) <= 0.012);
  CHECK(m.halfwidth == doctest::Approx(4 * std::sqrt(1.0 / 12) / 100).epsilon(0.05));
}
