#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "doctest.h"
#include "kingman/distributions.hpp"
#include "kingman/errors.hpp"
#include "kingman/rng.hpp"
#include "kingman/stats.hpp"
#include "test_util.hpp"

using namespace kingman;
using kingman::testing::pmf_fit_p_value;

namespace {

// Reference pmfs written directly from their closed forms.
double ref_log_choose(double n, double k) {
  return std::lgamma(n + 1) - std::lgamma(k + 1) - std::lgamma(n - k + 1);
}
double ref_choose(double n, double k) {
  if (k < 0 || k > n) return 0.0;
  return std::exp(ref_log_choose(n, k));
}
double ref_hypergeometric(int j, int draws, int succ, int pop) {
  if (j > succ || draws - j > pop - succ || j > draws) return 0.0;
  return std::exp(ref_log_choose(succ, j) + ref_log_choose(pop - succ, draws - j) - ref_log_choose(pop, draws));
}
double ref_negbin(int k, int r, double p) {
  return ref_choose(k + r - 1, k) * std::pow(1 - p, k) * std::pow(p, r);
}

template <class F>
std::vector<std::uint64_t> draw(std::size_t count, std::uint64_t stream, F&& f) {
  RngStream rng(2024, stream);
  std::vector<std::uint64_t> out(count);
  for (auto& x : out) x = f(rng);
  return out;
}

double mean_u(const std::vector<std::uint64_t>& xs) {
  return std::accumulate(xs.begin(), xs.end(), 0.0) / static_cast<double>(xs.size());
}

}  // namespace

TEST_CASE("rng streams are reproducible and distinct") {
  RngStream a(7, 3);
  RngStream b(7, 3);
  RngStream c(7, 4);
  RngStream d(8, 3);
  int same_c = 0;
  int same_d = 0;
  for (int i = 0; i < 1000; ++i) {
    const auto x = a.next_u64();
    CHECK(x == b.next_u64());
    same_c += (x == c.next_u64());
    same_d += (x == d.next_u64());
  }
  CHECK(same_c == 0);
  CHECK(same_d == 0);
  CHECK(a.seed() == 7);
  CHECK(a.stream_id() == 3);
}

TEST_CASE("uniform and below stay in range") {
  RngStream rng(1, 0);
  for (int i = 0; i < 100000; ++i) {
    const double u = rng.uniform();
    CHECK((u >= 0.0 && u < 1.0));
    const double v = rng.uniform_pos();
    CHECK((v > 0.0 && v <= 1.0));
    CHECK(rng.below(7) < 7);
  }
  CHECK(block_stream(1, 5) == (std::uint64_t{1} << 32) + 5);
}

TEST_CASE("bernoulli") {
  RngStream rng(3, 0);
  for (int i = 0; i < 1000; ++i) {
    CHECK_FALSE(sample_bernoulli(0.0, rng));
    CHECK(sample_bernoulli(1.0, rng));
  }
  const auto xs = draw(1000000, 1, [](RngStream& r) { return std::uint64_t(sample_bernoulli(0.5, r)); });
  CHECK(std::abs(mean_u(xs) - 0.5) <= 0.002);
  CHECK_THROWS_AS(sample_bernoulli(-0.1, rng), ParameterError);
  CHECK_THROWS_AS(sample_bernoulli(1.5, rng), ParameterError);
}

TEST_CASE("geometric") {
  RngStream rng(3, 1);
  for (int i = 0; i < 1000; ++i) CHECK(sample_geometric(1.0, rng) == 0);
  CHECK_THROWS_AS(sample_geometric(0.0, rng), ParameterError);
  const auto half = draw(1000000, 2, [](RngStream& r) { return sample_geometric(0.5, r); });
  CHECK(std::abs(mean_u(half) - 1.0) <= 0.01);
  const auto fifth = draw(1000000, 3, [](RngStream& r) { return sample_geometric(0.2, r); });
  const double zeros = std::count(fifth.begin(), fifth.end(), 0) / 1e6;
  CHECK(std::abs(zeros - 0.2) <= 0.002);
  std::vector<double> pmf;
  for (int k = 0; k < 200; ++k) {
    pmf.push_back(std::pow(0.8, k) * 0.2);
    CHECK(geometric_pmf(k, 0.2) == doctest::Approx(pmf.back()).epsilon(1e-12));
  }
  CHECK(pmf_fit_p_value(fifth, pmf) > 0.01);
}

TEST_CASE("truncated geometric") {
  RngStream rng(3, 4);
  for (int i = 0; i < 1000; ++i) {
    CHECK(sample_truncated_geometric(0.5, 0, rng) == 0);
    CHECK(sample_truncated_geometric(1.0, 7, rng) == 0);
    CHECK(sample_truncated_geometric(0.1, 3, rng) <= 3);
  }
  const auto xs = draw(1000000, 5, [](RngStream& r) { return sample_truncated_geometric(0.5, 2, r); });
  const double expect[] = {0.5, 0.25, 0.25};
  for (std::uint64_t v = 0; v < 3; ++v) {
    const double f = std::count(xs.begin(), xs.end(), v) / 1e6;
    CHECK(std::abs(f - expect[v]) <= 0.003);
    CHECK(truncated_geometric_pmf(v, 0.5, 2) == doctest::Approx(expect[v]));
  }
  CHECK(truncated_geometric_pmf(3, 0.5, 2) == 0.0);
  const auto ys = draw(1000000, 6, [](RngStream& r) { return sample_truncated_geometric(0.3, 6, r); });
  std::vector<double> pmf;
  for (int k = 0; k < 6; ++k) pmf.push_back(std::pow(0.7, k) * 0.3);
  pmf.push_back(std::pow(0.7, 6));
  CHECK(pmf_fit_p_value(ys, pmf) > 0.01);
}

TEST_CASE("hypergeometric small cases and errors") {
  RngStream rng(3, 7);
  for (int i = 0; i < 1000; ++i) CHECK(sample_hypergeometric(4, 0, 10, rng) == 0);
  CHECK(hypergeometric_pmf(1, 2, 2, 4) == doctest::Approx(2.0 / 3.0).epsilon(1e-12));
  CHECK_THROWS_AS(sample_hypergeometric(3, 5, 4, rng), ParameterError);
  CHECK_THROWS_AS(sample_hypergeometric(5, 2, 4, rng), ParameterError);
  const auto xs = draw(1000000, 8, [](RngStream& r) { return sample_hypergeometric(5, 10, 20, r); });
  CHECK(std::abs(mean_u(xs) - 2.5) <= 0.01);
  std::vector<double> pmf;
  for (int j = 0; j <= 5; ++j) {
    pmf.push_back(ref_hypergeometric(j, 5, 10, 20));
    CHECK(hypergeometric_pmf(j, 5, 10, 20) == doctest::Approx(pmf.back()).epsilon(1e-10));
  }
  CHECK(pmf_fit_p_value(xs, pmf) > 0.01);
}

TEST_CASE("hypergeometric support bounds hold on both sampling paths") {
  RngStream rng(3, 9);
  const std::uint64_t cases[][3] = {{3, 7, 9}, {30, 900, 1000}, {700, 200, 1000}, {5000, 6000, 12000}};
  for (const auto& c : cases) {
    for (int i = 0; i < 20000; ++i) {
      const auto j = sample_hypergeometric(c[0], c[1], c[2], rng);
      CHECK(j <= std::min(c[0], c[1]));
      CHECK(c[0] - j <= c[2] - c[1]);
    }
  }
}

TEST_CASE("hypergeometric rejection path matches the pmf") {
  struct Case { int draws, succ, pop; };
  const Case cases[] = {{300, 400, 1000}, {40, 1500, 2000}, {1200, 700, 3000}};
  std::uint64_t stream = 10;
  for (const auto& c : cases) {
    const auto xs = draw(200000, stream++, [&](RngStream& r) {
      return sample_hypergeometric(c.draws, c.succ, c.pop, r);
    });
    std::vector<double> pmf;
    for (int j = 0; j <= std::min(c.draws, c.succ); ++j) pmf.push_back(ref_hypergeometric(j, c.draws, c.succ, c.pop));
    CHECK(pmf_fit_p_value(xs, pmf) > 0.01);
  }
}

TEST_CASE("negative binomial") {
  RngStream rng(3, 20);
  for (int i = 0; i < 1000; ++i) CHECK(sample_negative_binomial(3, 1.0, rng) == 0);
  CHECK_THROWS_AS(sample_negative_binomial(0, 0.5, rng), ParameterError);
  CHECK_THROWS_AS(sample_negative_binomial(2, 0.0, rng), ParameterError);
  const auto xs = draw(1000000, 21, [](RngStream& r) { return sample_negative_binomial(4, 0.5, r); });
  CHECK(std::abs(mean_u(xs) - 4.0) <= 0.03);
  std::vector<double> pmf;
  for (int k = 0; k < 80; ++k) {
    pmf.push_back(ref_negbin(k, 4, 0.5));
    CHECK(negative_binomial_pmf(k, 4, 0.5) == doctest::Approx(pmf.back()).epsilon(1e-10));
  }
  CHECK(pmf_fit_p_value(xs, pmf) > 0.01);
  // r = 1 is the geometric law.
  const auto ys = draw(200000, 22, [](RngStream& r) { return sample_negative_binomial(1, 0.3, r); });
  std::vector<double> geo;
  for (int k = 0; k < 100; ++k) geo.push_back(std::pow(0.7, k) * 0.3);
  CHECK(pmf_fit_p_value(ys, geo) > 0.01);
}

TEST_CASE("flat dirichlet") {
  RngStream rng(3, 30);
  CHECK(sample_dirichlet_uniform(1, rng) == std::vector<double>{1.0});
  CHECK_THROWS_AS(sample_dirichlet_uniform(0, rng), ParameterError);
  std::vector<double> first2;
  std::vector<double> first4;
  for (int i = 0; i < 100000; ++i) {
    const auto t2 = sample_dirichlet_uniform(2, rng);
    const auto t4 = sample_dirichlet_uniform(4, rng);
    CHECK(std::abs(std::accumulate(t4.begin(), t4.end(), 0.0) - 1.0) <= 1e-12);
    CHECK(*std::min_element(t4.begin(), t4.end()) >= 0.0);
    first2.push_back(t2[0]);
    first4.push_back(t4[0]);
  }
  CHECK(ks_test(first2, [](double x) { return std::clamp(x, 0.0, 1.0); }).pass);
  CHECK(ks_test(first4, [](double x) {
          x = std::clamp(x, 0.0, 1.0);
          return 1.0 - std::pow(1.0 - x, 3);
        }).pass);
}

TEST_CASE("exponential draws") {
  std::vector<double> xs;
  RngStream rng(3, 31);
  for (int i = 0; i < 50000; ++i) xs.push_back(sample_exponential(rng));
  CHECK(ks_test(xs, [](double x) { return x <= 0 ? 0.0 : 1.0 - std::exp(-x); }).pass);
}

TEST_CASE("eval_bounds") {
  const auto a = eval_bounds({.delta = 0.5, .mu = 100, .r = 1, .p = 0.5});
  CHECK(a.hypergeometric_sum == doctest::Approx(2.0 * std::exp(-25.0 / 3.0)).epsilon(1e-14));
  const auto b = eval_bounds({.delta = 0.5, .mu = 0, .r = 100, .p = 0.5});
  CHECK(b.negative_binomial_upper == doctest::Approx(std::exp(-100.0 / 96.0)).epsilon(1e-14));
  CHECK(b.negative_binomial_lower ==
        doctest::Approx(std::exp(-(0.0625 * 100) / (3.0 * (1.0 - 0.25)))).epsilon(1e-14));
  const auto tiny = eval_bounds({.delta = 1e-12, .mu = 10, .r = 10, .p = 0.5});
  CHECK(tiny.hypergeometric_sum >= 1.0);
  CHECK(tiny.negative_binomial_upper >= 1.0);
  CHECK(tiny.negative_binomial_lower >= 1.0);
  double prev_mu = 3.0;
  double prev_r = 2.0;
  for (int i = 1; i < 50; ++i) {
    const auto v = eval_bounds({.delta = 0.3, .mu = double(i), .r = std::uint64_t(i), .p = 0.4});
    CHECK(v.hypergeometric_sum < prev_mu);
    CHECK(v.negative_binomial_upper < prev_r);
    prev_mu = v.hypergeometric_sum;
    prev_r = v.negative_binomial_upper;
  }
  CHECK_THROWS_AS(eval_bounds({.delta = 1.0, .mu = 1, .r = 1, .p = 0.5}), ParameterError);
  CHECK_THROWS_AS(eval_bounds({.delta = 0.5, .mu = -1, .r = 1, .p = 0.5}), ParameterError);
  CHECK_THROWS_AS(eval_bounds({.delta = 0.5, .mu = 1, .r = 0, .p = 0.5}), ParameterError);
}

TEST_CASE("choose2 and log_binomial") {
  CHECK(choose2(0) == 0);
  CHECK(choose2(1) == 0);
  CHECK(choose2(5) == 10);
  CHECK(std::exp(log_binomial(10, 3)) == doctest::Approx(120.0).epsilon(1e-12));
}
