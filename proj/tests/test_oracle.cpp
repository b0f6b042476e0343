#include <algorithm>
#include <map>
#include <nlohmann/json.hpp>
#include <numeric>
#include <vector>

#include "doctest.h"
#include "kingman/errors.hpp"
#include "kingman/graph.hpp"
#include "kingman/oracle.hpp"
#include "kingman/rng.hpp"

using namespace kingman;
using Q = ExactRational;

namespace {

// Plain recursion over (graph edges among surviving roots), no memo: an
// independent route to the tree-count law of a fixed graph.
void naive_law(const Graph& g, std::vector<bool>& alive, const Q& weight, std::map<std::size_t, Q>& out) {
  std::vector<Edge> inside;
  for (const auto& e : g.edges())
    if (alive[e.u] && alive[e.v]) inside.push_back(e);
  if (inside.empty()) {
    out[std::count(alive.begin() + 1, alive.end(), true)] += weight;
    return;
  }
  const Q w = weight / Q(2 * inside.size());
  for (const auto& e : inside) {
    for (const Vertex tail : {e.u, e.v}) {
      alive[tail] = false;
      naive_law(g, alive, w, out);
      alive[tail] = true;
    }
  }
}

std::map<std::size_t, Q> naive_law(const Graph& g) {
  std::vector<bool> alive(g.n() + 1, true);
  std::map<std::size_t, Q> out;
  naive_law(g, alive, Q(1), out);
  return out;
}

template <class D>
std::map<std::size_t, Q> as_map(const D& d) {
  std::map<std::size_t, Q> out;
  for (std::size_t i = 0; i < d.support.size(); ++i)
    if (d.prob[i] != 0) out[d.support[i]] = Q(d.prob[i]);
  return out;
}

Graph relabel(const Graph& g, const std::vector<Vertex>& perm) {
  Graph out(g.n());
  for (const auto& e : g.edges()) out.insert_edge(perm[e.u - 1], perm[e.v - 1]);
  return out;
}

}  // namespace

TEST_CASE("fixed-graph laws") {
  for (std::size_t n = 1; n <= 7; ++n) {
    const auto full = exact_c_distribution_rational(Graph::complete(n));
    CHECK(full.mass_at(1) == 1);
    const auto empty = exact_c_distribution_rational(Graph(n));
    CHECK(empty.mass_at(n) == 1);
  }
  const auto path = exact_c_distribution_rational(Graph::from_edges(3, {{1, 2}, {2, 3}}));
  CHECK(path.support == std::vector<std::size_t>{1, 2});
  CHECK(path.mass_at(1) == Q(1, 2));
  CHECK(path.mass_at(2) == Q(1, 2));
  CHECK_THROWS_AS(exact_c_distribution(Graph(15)), CapacityError);
}

TEST_CASE("subset dynamic program agrees with plain recursion on every small graph") {
  for (std::size_t n = 1; n <= 4; ++n) {
    const std::uint64_t graphs = std::uint64_t{1} << Graph(n).pair_count();
    for (std::uint64_t mask = 0; mask < graphs; ++mask) {
      const auto g = Graph::from_pair_mask(n, mask);
      CHECK(as_map(exact_c_distribution_rational(g)) == naive_law(g));
      const auto approx = exact_c_distribution(g);
      CHECK(abs(approx.total() - 1) < 1e-25);
    }
  }
  RngStream rng(1, 0);
  for (int i = 0; i < 20; ++i) {
    const auto g = sample_gnp(6, 0.5, rng);
    CHECK(as_map(exact_c_distribution_rational(g)) == naive_law(g));
  }
}

TEST_CASE("fixed-graph law is invariant under relabelling") {
  RngStream rng(2, 0);
  for (int i = 0; i < 40; ++i) {
    const std::size_t n = 2 + rng.below(5);
    const auto g = sample_gnp(n, 0.5, rng);
    std::vector<Vertex> perm(n);
    std::iota(perm.begin(), perm.end(), Vertex{1});
    std::shuffle(perm.begin(), perm.end(), rng);
    const auto a = exact_c_distribution_rational(g);
    const auto b = exact_c_distribution_rational(relabel(g, perm));
    CHECK(a.support == b.support);
    CHECK(a.prob == b.prob);
  }
}

TEST_CASE("C_{n,p} laws") {
  const auto two = exact_cnp_distribution_rational(2, Q(3, 10));
  CHECK(two.mass_at(1) == Q(3, 10));
  CHECK(two.mass_at(2) == Q(7, 10));
  CHECK(two.mean() == Q(17, 10));
  CHECK(static_cast<double>(exact_mean_c(2, 0.5)) == doctest::Approx(1.5).epsilon(1e-15));
  CHECK(static_cast<double>(exact_mean_c(3, 1.0)) == 1.0);
  for (std::size_t n = 1; n <= 6; ++n) {
    CHECK(exact_cnp_distribution(n, 1.0).mass_at(1) == 1);
    CHECK(exact_cnp_distribution(n, 0.0).mass_at(n) == 1);
  }
  // Independently computed with exact rational arithmetic.
  const auto three = exact_cnp_distribution_rational(3, Q(1, 2));
  CHECK(three.mass_at(1) == Q(5, 16));
  CHECK(three.mass_at(2) == Q(9, 16));
  CHECK(three.mass_at(3) == Q(1, 8));
  const auto four = exact_cnp_distribution_rational(4, Q(3, 10));
  CHECK(four.mass_at(1) == Q(297351, 5000000));
  CHECK(four.mass_at(2) == Q(930447, 2500000));
  CHECK(four.mass_at(3) == Q(225351, 500000));
  CHECK(four.mass_at(4) == Q(117649, 1000000));
  const auto five = exact_cnp_distribution_rational(5, Q(1, 2));
  CHECK(five.mass_at(1) == Q(2449, 14336));
  CHECK(five.mass_at(2) == Q(3659, 7168));
  CHECK(five.mass_at(3) == Q(2015, 7168));
  CHECK(five.mass_at(4) == Q(75, 2048));
  CHECK(five.mass_at(5) == Q(1, 1024));
  CHECK(five.mean() == Q(31345, 14336));
  CHECK(static_cast<double>(exact_mean_c(5, 0.5)) == doctest::Approx(31345.0 / 14336.0).epsilon(1e-15));
  CHECK_THROWS_AS(exact_cnp_distribution(7, 0.5), CapacityError);
  CHECK_THROWS_AS(exact_cnp_distribution(3, 1.5), ParameterError);
}

TEST_CASE("quad and rational oracles agree") {
  for (std::size_t n = 2; n <= 6; ++n) {
    const auto r = exact_cnp_distribution_rational(n, Q(2, 5));
    const auto d = exact_cnp_distribution(n, 0.4);
    REQUIRE(r.support == d.support);
    for (std::size_t i = 0; i < r.support.size(); ++i)
      CHECK(abs(ExactReal(r.prob[i]) - d.prob[i]) < 1e-15);
  }
}

TEST_CASE("walk kernel reproduces the graph-sum law") {
  for (std::size_t n = 1; n <= 6; ++n) {
    for (double p : {0.1, 0.3, 0.5, 0.8}) {
      const auto a = exact_cnp_distribution(n, p);
      const auto b = walk_cnp_distribution(n, p);
      for (std::size_t c = 1; c <= n; ++c) CHECK(abs(a.mass_at(c) - b.mass_at(c)) < 1e-13);
    }
  }
  const auto big = walk_cnp_distribution(40, 0.2);
  CHECK(abs(big.total() - 1) < 1e-12);
  CHECK_THROWS_AS(walk_cnp_distribution(41, 0.5), CapacityError);
}

TEST_CASE("exact means are nondecreasing in n") {
  for (double p : {0.2, 0.5, 0.7}) {
    ExactReal prev = 0;
    for (std::size_t n = 1; n <= 6; ++n) {
      const auto m = exact_mean_c(n, p);
      CHECK(m >= prev);
      prev = m;
    }
  }
}

TEST_CASE("distribution json") {
  CHECK(distribution_to_json(exact_cnp_distribution(2, 0.5)).dump() == R"({"support":[1,2],"prob":[0.5,0.5]})");
  CHECK(distribution_to_json(exact_cnp_distribution(3, 1.0)).dump() == R"({"support":[1],"prob":[1.0]})");
}
