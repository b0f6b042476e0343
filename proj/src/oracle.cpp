#include "kingman/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <nlohmann/json.hpp>
#include <string>

#include "kingman/distributions.hpp"
#include "kingman/errors.hpp"

namespace kingman {
namespace {

template <class T>
BasicExactDistribution<T> compact(const std::vector<T>& by_count) {
  BasicExactDistribution<T> out;
  for (std::size_t c = 0; c < by_count.size(); ++c) {
    if (by_count[c] != T(0)) {
      out.support.push_back(c);
      out.prob.push_back(by_count[c]);
    }
  }
  return out;
}

template <class T>
BasicExactDistribution<T> subset_dp(const Graph& g) {
  const std::size_t n = g.n();
  if (n > kMaxOracleGraphN) {
    throw CapacityError("exact_c_distribution: n = " + std::to_string(n) + " exceeds " +
                        std::to_string(kMaxOracleGraphN));
  }
  if (n == 0) return {{0}, {T(1)}};
  const std::size_t width = n + 1;
  const std::size_t states = std::size_t{1} << n;
  std::vector<T> table(states * width, T(0));
  std::vector<std::pair<std::uint32_t, std::uint32_t>> edges;  // bitmasks of endpoints
  for (const auto& e : g.edges()) edges.emplace_back(1U << (e.u - 1), 1U << (e.v - 1));

  std::vector<std::uint32_t> order(states);
  for (std::uint32_t s = 0; s < states; ++s) order[s] = s;
  std::stable_sort(order.begin(), order.end(), [](std::uint32_t a, std::uint32_t b) {
    return __builtin_popcount(a) < __builtin_popcount(b);
  });
  for (std::uint32_t s : order) {
    T* row = &table[s * width];
    std::size_t inside = 0;
    for (const auto& [a, b] : edges) {
      if ((s & a) && (s & b)) {
        ++inside;
        const T* ra = &table[(s & ~a) * width];
        const T* rb = &table[(s & ~b) * width];
        for (std::size_t c = 0; c < width; ++c) row[c] += ra[c] + rb[c];
      }
    }
    if (inside == 0) {
      row[static_cast<std::size_t>(__builtin_popcount(s))] = T(1);
    } else {
      const T scale = T(1) / T(2 * inside);
      for (std::size_t c = 0; c < width; ++c) row[c] *= scale;
    }
  }
  std::vector<T> last(table.end() - static_cast<std::ptrdiff_t>(width), table.end());
  return compact(last);
}

// Tree-count law for every graph on s vertices, indexed by the graph's pair
// mask in canonical order. Only the induced graph on the surviving roots
// matters, so relabelling the survivors to 1..s shares work across graphs.
template <class T>
std::vector<std::vector<T>> compact_graph_table(std::size_t n) {
  const std::size_t width = n + 1;
  std::vector<std::vector<T>> table(n + 1);
  table[0].assign(width, T(0));
  table[0][0] = T(1);
  for (std::size_t s = 1; s <= n; ++s) {
    const std::size_t pairs = choose2(s);
    const std::uint64_t masks = std::uint64_t{1} << pairs;
    // remap[x][i]: index of pair i after deleting vertex x, or -1.
    std::vector<std::vector<int>> remap(s, std::vector<int>(pairs, -1));
    std::vector<std::pair<int, int>> pair_ends;
    for (std::size_t a = 0; a < s; ++a) {
      for (std::size_t b = a + 1; b < s; ++b) pair_ends.emplace_back(static_cast<int>(a), static_cast<int>(b));
    }
    for (std::size_t x = 0; x < s; ++x) {
      int next = 0;
      for (std::size_t i = 0; i < pairs; ++i) {
        if (pair_ends[i].first != static_cast<int>(x) && pair_ends[i].second != static_cast<int>(x)) {
          remap[x][i] = next++;
        }
      }
    }
    const auto& prev = table[s - 1];
    std::vector<T>& cur = table[s];
    cur.assign(masks * width, T(0));
    for (std::uint64_t h = 0; h < masks; ++h) {
      T* row = &cur[h * width];
      const int inside = __builtin_popcountll(h);
      if (inside == 0) {
        row[s] = T(1);
        continue;
      }
      for (std::size_t i = 0; i < pairs; ++i) {
        if (!((h >> i) & 1U)) continue;
        for (int x : {pair_ends[i].first, pair_ends[i].second}) {
          std::uint64_t child = 0;
          for (std::size_t j = 0; j < pairs; ++j) {
            if (((h >> j) & 1U) && remap[x][j] >= 0) child |= std::uint64_t{1} << remap[x][j];
          }
          const T* src = &prev[child * width];
          for (std::size_t c = 0; c < width; ++c) row[c] += src[c];
        }
      }
      const T scale = T(1) / T(2 * inside);
      for (std::size_t c = 0; c < width; ++c) row[c] *= scale;
    }
  }
  return table;
}

template <class T>
BasicExactDistribution<T> cnp_sum(std::size_t n, const T& p) {
  if (n < 1) throw ParameterError("exact_cnp_distribution: n must be >= 1");
  if (n > kMaxOracleCnpN) {
    throw CapacityError("exact_cnp_distribution: n = " + std::to_string(n) + " exceeds " +
                        std::to_string(kMaxOracleCnpN) + " (2^C(n,2) graphs)");
  }
  if (p < T(0) || p > T(1)) throw ParameterError("exact_cnp_distribution: p outside [0, 1]");
  const std::size_t width = n + 1;
  const std::size_t pairs = choose2(n);
  const auto table = compact_graph_table<T>(n);
  // weight[e] = p^e (1-p)^(pairs - e)
  std::vector<T> weight(pairs + 1, T(1));
  for (std::size_t e = 0; e <= pairs; ++e) {
    T w(1);
    for (std::size_t i = 0; i < e; ++i) w *= p;
    for (std::size_t i = e; i < pairs; ++i) w *= (T(1) - p);
    weight[e] = w;
  }
  std::vector<T> by_count(width, T(0));
  const auto& top = table[n];
  for (std::uint64_t h = 0; h < (std::uint64_t{1} << pairs); ++h) {
    const T& w = weight[static_cast<std::size_t>(__builtin_popcountll(h))];
    if (w == T(0)) continue;
    const T* row = &top[h * width];
    for (std::size_t c = 0; c < width; ++c) {
      if (row[c] != T(0)) by_count[c] += w * row[c];
    }
  }
  return compact(by_count);
}

void check_real_mass(const ExactDistribution& d, const char* who) {
  using boost::multiprecision::abs;
  if (abs(d.total() - ExactReal(1)) > ExactReal(1e-12)) {
    throw ValidationError(std::string(who) + ": probability mass does not sum to 1");
  }
}

}  // namespace

ExactDistribution exact_c_distribution(const Graph& g) {
  auto d = subset_dp<ExactReal>(g);
  check_real_mass(d, "exact_c_distribution");
  return d;
}

RationalDistribution exact_c_distribution_rational(const Graph& g) {
  auto d = subset_dp<ExactRational>(g);
  if (d.total() != ExactRational(1)) throw ValidationError("exact_c_distribution: mass != 1");
  return d;
}

ExactDistribution exact_cnp_distribution(std::size_t n, double p) {
  auto d = cnp_sum<ExactReal>(n, ExactReal(p));
  check_real_mass(d, "exact_cnp_distribution");
  return d;
}

RationalDistribution exact_cnp_distribution_rational(std::size_t n, const ExactRational& p) {
  auto d = cnp_sum<ExactRational>(n, p);
  if (d.total() != ExactRational(1)) throw ValidationError("exact_cnp_distribution: mass != 1");
  return d;
}

ExactReal exact_mean_c(std::size_t n, double p) { return exact_cnp_distribution(n, p).mean(); }

ExactDistribution walk_cnp_distribution(std::size_t n, double p) {
  if (n < 1) throw ParameterError("walk_cnp_distribution: n must be >= 1");
  if (n > kMaxWalkOracleN) {
    throw CapacityError("walk_cnp_distribution: n = " + std::to_string(n) + " exceeds " +
                        std::to_string(kMaxWalkOracleN));
  }
  if (!(p > 0.0 && p < 1.0)) throw ParameterError("walk_cnp_distribution: p outside (0, 1)");
  using Real = long double;
  const std::size_t top = choose2(n);
  std::vector<Real> log_fact(top + 2, 0.0L);
  for (std::size_t i = 1; i < log_fact.size(); ++i) log_fact[i] = log_fact[i - 1] + std::log(static_cast<Real>(i));
  auto log_choose = [&](std::size_t a, std::size_t b) { return log_fact[a] - log_fact[b] - log_fact[a - b]; };
  const Real q = 1.0L - static_cast<Real>(p);

  std::vector<Real> by_count(n + 1, 0.0L);
  std::vector<Real> cur{1.0L};  // law of M_k
  for (std::size_t k = 0; k + 2 <= n; ++k) {
    const std::size_t pairs = choose2(n - k);
    const std::size_t draws = n - k - 2;
    const std::size_t population = pairs - 1;
    std::vector<Real> next(choose2(n - k - 1) + 1, 0.0L);
    for (std::size_t m = 0; m < cur.size(); ++m) {
      if (cur[m] == 0.0L) continue;
      const std::size_t cap = pairs - m;
      by_count[n - k] += cur[m] * std::pow(q, static_cast<Real>(cap));
      Real px = static_cast<Real>(p);
      for (std::size_t x = 0; x < cap; ++x, px *= q) {
        const std::size_t succ = m + x;
        const std::size_t lo = draws + succ > population ? draws + succ - population : 0;
        const std::size_t hi = std::min(draws, succ);
        const Real base = log_choose(population, draws);
        for (std::size_t y = lo; y <= hi; ++y) {
          const Real py = std::exp(log_choose(succ, y) + log_choose(population - succ, draws - y) - base);
          next[succ - y] += cur[m] * px * py;
        }
      }
    }
    cur = std::move(next);
  }
  for (const Real w : cur) by_count[1] += w;

  ExactDistribution out;
  for (std::size_t c = 0; c <= n; ++c) {
    if (by_count[c] > 0.0L) {
      out.support.push_back(c);
      out.prob.push_back(ExactReal(by_count[c]));
    }
  }
  return out;
}

nlohmann::ordered_json distribution_to_json(const ExactDistribution& d) {
  nlohmann::ordered_json j;
  j["support"] = d.support;
  j["prob"] = d.probabilities();
  return j;
}

}  // namespace kingman
