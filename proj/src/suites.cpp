#include "kingman/suites.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <map>
#include <numeric>
#include <set>
#include <string>
#include <utility>

#include "kingman/coalescent.hpp"
#include "kingman/distributions.hpp"
#include "kingman/edge_reveal.hpp"
#include "kingman/errors.hpp"
#include "kingman/forest.hpp"
#include "kingman/graph.hpp"
#include "kingman/oracle.hpp"
#include "kingman/parallel.hpp"
#include "kingman/rng.hpp"
#include "kingman/urrf.hpp"

namespace kingman {

namespace {

using Reports = std::vector<TestReport>;

RngStream stream(const SuiteConfig& c, std::uint64_t block, std::uint64_t trial) {
  return RngStream(c.seed, block_stream(block, trial));
}

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", x);
  return buf;
}

TestReport stamp(TestReport r, std::string suite, const SuiteConfig& c, std::uint64_t trials,
                 const std::string& notes) {
  r.suite = std::move(suite);
  r.seed = c.seed;
  r.trials = trials;
  if (!notes.empty()) r.notes = r.notes.empty() ? notes : notes + "; " + r.notes;
  return r;
}

TestReport exact_report(std::string suite, double mismatches, const SuiteConfig& c, std::uint64_t checked,
                        const std::string& notes) {
  return make_statistic_report(std::move(suite), mismatches, 0.0, checked, c.seed, notes);
}

std::string case_note(std::size_t n, double p) { return "n=" + std::to_string(n) + " p=" + fmt(p); }

std::uint64_t factorial(std::uint64_t n) { return n <= 1 ? 1 : n * factorial(n - 1); }

CountMap tally(const std::vector<std::size_t>& xs) {
  CountMap out;
  for (const auto x : xs) ++out[category_key(x)];
  return out;
}

ProbabilityMap law_of(const ExactDistribution& d) {
  ProbabilityMap out;
  for (std::size_t i = 0; i < d.support.size(); ++i) {
    const auto pr = static_cast<double>(d.prob[i]);
    if (pr > 0.0) out[category_key(d.support[i])] = pr;
  }
  return out;
}

std::size_t tree_count_by(int method, std::size_t n, double p, RngStream& rng) {
  switch (method) {
    case 0: return run_kingman(sample_gnp(n, p, rng), rng).tree_count;
    case 1: return run_erp(n, p, rng).walk.tree_count;
    default: return fast_walk(n, p, rng).tree_count;
  }
}

double require_open_p(double p, const char* who) {
  if (!(p > 0.0 && p < 1.0)) throw ParameterError(std::string(who) + ": p must lie in (0, 1)");
  return p;
}

// ---- counting -------------------------------------------------------------

Reports suite_counting(const SuiteConfig& c) {
  Reports out;
  std::uint64_t mismatches = 0;
  std::uint64_t checked = 0;
  for (std::size_t n = 1; n <= 6; ++n) {
    for (std::size_t k = 1; k <= n; ++k) {
      const std::uint64_t formula = factorial(n) * factorial(n - 1) / (factorial(k) * factorial(k - 1));
      std::set<std::string> keys;
      for_each_labeled_forest(n, n - k, [&](const RootedLabeledForest& f) {
        f.validate();
        keys.insert(f.key());
      });
      mismatches += keys.size() != formula;
      ++checked;
    }
  }
  out.push_back(exact_report("counting:labeled-forests", double(mismatches), c, checked,
                             "|F_{n,n-k}| = n!(n-1)!/(k!(k-1)!) for 1<=k<=n<=6; statistic = mismatching (n,k)"));
  mismatches = 0;
  checked = 0;
  for (std::size_t n = 1; n <= 7; ++n) {
    for (std::size_t k = 1; k <= n; ++k) {
      const std::uint64_t formula = factorial(n - 1) / factorial(k - 1);
      std::set<std::string> keys;
      bool ok = true;
      for_each_increasing_forest(n, k, [&](const PlainRootedForest& f) {
        ok = ok && f.is_increasing() && f.root_count() == k;
        keys.insert(f.key());
      });
      mismatches += !ok || keys.size() != formula;
      ++checked;
    }
  }
  out.push_back(exact_report("counting:increasing-forests", double(mismatches), c, checked,
                             "|R_{n,k}| = (n-1)!/(k-1)! for 1<=k<=n<=7; statistic = mismatching (n,k)"));
  return out;
}

// ---- phi ------------------------------------------------------------------

Reports suite_phi(const SuiteConfig& c) {
  Reports out;
  std::uint64_t bad = 0;
  std::uint64_t checked = 0;
  for (std::size_t n : {4, 5}) {
    for (std::size_t k = 1; k <= n; ++k) {
      std::map<std::string, std::uint64_t> fiber;
      for_each_labeled_forest(n, n - k, [&](const RootedLabeledForest& f) {
        const auto img = phi(f);
        if (!img.is_increasing() || img.root_count() != k) ++bad;
        ++fiber[img.key()];
      });
      std::set<std::string> targets;
      for (const auto& t : enumerate_increasing_forests(n, k)) targets.insert(t.key());
      for (const auto& [key, size] : fiber) {
        if (!targets.count(key) || size != factorial(n) / factorial(k)) ++bad;
      }
      bad += targets.size() - std::min(targets.size(), fiber.size());
      ++checked;
    }
  }
  out.push_back(exact_report("phi:fibers", double(bad), c, checked,
                             "phi maps F_{n,n-k} onto R_{n,k} with fibers of size n!/k!, n in {4,5}; "
                             "statistic = defects"));
  const auto fig = RootedLabeledForest::from_edges(5, {{3, 1, 1}, {4, 1, 2}, {1, 2, 3}});
  const auto expected = PlainRootedForest::from_parents({0, 0, 1, 3, 3});
  out.push_back(exact_report("phi:worked-example", phi(fig) == expected ? 0.0 : 1.0, c, 1,
                             "edges 3->1:1, 4->1:2, 1->2:3 on 5 vertices map to 3->1, 4->3, 5->3"));
  return out;
}

// ---- equivalence ----------------------------------------------------------

Reports suite_equivalence(const SuiteConfig& c) {
  std::vector<std::pair<std::size_t, double>> cases;
  if (c.n || c.p) {
    cases.emplace_back(c.n.value_or(5), require_open_p(c.p.value_or(0.5), "equivalence"));
  } else {
    cases = {{5, 0.5}, {4, 0.3}};
  }
  const std::uint64_t trials = c.trials.value_or(100000);
  const char* names[] = {"direct", "erp", "walk"};
  Reports out;
  for (std::size_t ci = 0; ci < cases.size(); ++ci) {
    const auto [n, p] = cases[ci];
    std::vector<CountMap> counts;
    for (int m = 0; m < 3; ++m) {
      const std::uint64_t block = blocks::kEquivalence + 3 * ci + static_cast<std::uint64_t>(m);
      counts.push_back(tally(parallel_trials(trials, c.threads, [&](std::uint64_t t) {
        auto rng = stream(c, block, t);
        return tree_count_by(m, n, p, rng);
      })));
    }
    const std::string note = case_note(n, p);
    for (int a = 0; a < 3; ++a) {
      for (int b = a + 1; b < 3; ++b) {
        out.push_back(stamp(chi_square_homogeneity(counts[a], counts[b]),
                            std::string("equivalence:") + names[a] + "-vs-" + names[b], c, 2 * trials, note));
      }
    }
    std::optional<ExactDistribution> law;
    if (n <= kMaxOracleCnpN) {
      law = exact_cnp_distribution(n, p);
    } else if (n <= kMaxWalkOracleN) {
      law = walk_cnp_distribution(n, p);
    }
    if (law) {
      const auto expected = law_of(*law);
      for (int m = 0; m < 3; ++m) {
        out.push_back(stamp(chi_square_test(counts[m], expected, trials),
                            std::string("equivalence:") + names[m] + "-vs-oracle", c, trials, note));
      }
    }
  }
  return out;
}

// ---- uniformity -----------------------------------------------------------

Reports suite_uniformity(const SuiteConfig& c) {
  const std::size_t n = c.n.value_or(4);
  if (n < 2 || n > 6) throw ParameterError("uniformity: n must lie in [2, 6]");
  const double p = require_open_p(c.p.value_or(0.5), "uniformity");
  const std::uint64_t trials = c.trials.value_or(200000);
  const auto forests = parallel_trials(trials, c.threads, [&](std::uint64_t t) {
    auto rng = stream(c, blocks::kUniformity, t);
    return run_kingman(sample_gnp(n, p, rng), rng).final_forest;
  });
  std::map<std::size_t, CountMap> groups;
  std::map<std::size_t, std::uint64_t> sizes;
  for (const auto& f : forests) {
    ++groups[f.root_count()][f.key()];
    ++sizes[f.root_count()];
  }
  const auto largest = std::max_element(sizes.begin(), sizes.end(), [](const auto& a, const auto& b) {
    return a.second < b.second;
  });
  const std::size_t count = largest->first;
  ProbabilityMap expected;
  const auto all = enumerate_labeled_forests(n, n - count);
  for (const auto& f : all) expected[f.key()] = 1.0 / static_cast<double>(all.size());
  return {stamp(chi_square_test(groups[count], expected, largest->second), "uniformity:largest-group", c,
                trials,
                case_note(n, p) + " tree_count=" + std::to_string(count) +
                    " group=" + std::to_string(largest->second) + " |F|=" + std::to_string(all.size()))};
}

// ---- step law ---------------------------------------------------------------

Reports suite_step_law(const SuiteConfig& c) {
  constexpr std::size_t n = 30;
  constexpr std::size_t roots = 20;
  constexpr std::uint64_t m0 = 40;
  const double p = require_open_p(c.p.value_or(0.2), "step-law");
  const std::uint64_t trials = c.trials.value_or(100000);
  const std::uint64_t pairs = choose2(roots);
  const std::uint64_t cap = pairs - m0;

  struct Step {
    std::uint64_t x;
    std::uint64_t y;
  };
  const auto steps = parallel_trials(trials, c.threads, [&](std::uint64_t t) {
    auto rng = stream(c, blocks::kStepLaw, t);
    auto s = conditioned_state(n, roots, m0, p, rng);
    while (!s.terminated() && s.coalescences() == n - roots) s.step(rng);
    if (s.coalescences() == n - roots) return Step{cap, 0};  // frozen
    return Step{s.last_epoch_nonedges(), s.last_tail_degree()};
  });

  ProbabilityMap x_law;
  ProbabilityMap y_law;
  for (std::uint64_t x = 0; x <= cap; ++x) {
    const double px = truncated_geometric_pmf(x, p, cap);
    if (px <= 0.0) continue;
    x_law[category_key(x)] = px;
    if (x == cap) {
      y_law[category_key(0)] += px;
      continue;
    }
    for (std::uint64_t y = 0; y <= roots - 2; ++y) {
      const double py = hypergeometric_pmf(y, roots - 2, m0 + x, pairs - 1);
      if (py > 0.0) y_law[category_key(y)] += px * py;
    }
  }
  CountMap xs;
  CountMap ys;
  for (const auto& s : steps) {
    ++xs[category_key(s.x)];
    ++ys[category_key(s.y)];
  }
  const std::string note = "conditioned_state(n=30, roots=20, m=40) p=" + fmt(p);
  return {stamp(chi_square_test(xs, x_law, trials), "step-law:X-truncated-geometric", c, trials, note),
          stamp(chi_square_test(ys, y_law, trials), "step-law:Y-hypergeometric", c, trials, note)};
}

// ---- dirichlet --------------------------------------------------------------

Reports suite_dirichlet(const SuiteConfig& c) {
  const std::size_t n = c.n.value_or(5000);
  const double p = require_open_p(c.p.value_or(0.4), "dirichlet");
  const std::uint64_t walks = c.trials.value_or(18000);
  constexpr std::size_t kMinSamples = 5000;
  const auto counts = parallel_trials(walks, c.threads, [&](std::uint64_t t) {
    auto rng = stream(c, blocks::kDirichletWalk, t);
    return fast_walk(n, p, rng).tree_count;
  });
  std::map<std::size_t, std::uint64_t> freq;
  for (const auto k : counts) ++freq[k];
  const auto mode = std::max_element(freq.begin(), freq.end(), [](const auto& a, const auto& b) {
                      return a.second < b.second;
                    })->first;
  std::vector<std::uint64_t> chosen;
  for (std::uint64_t t = 0; t < walks; ++t)
    if (counts[t] == mode) chosen.push_back(t);
  std::string note = case_note(n, p) + " modal tree count=" + std::to_string(mode) +
                     " samples=" + std::to_string(chosen.size());
  if (mode < 3 || chosen.size() < kMinSamples) {
    TestReport r = make_statistic_report("dirichlet:first-size", std::numeric_limits<double>::infinity(), 0.0,
                                         walks, c.seed, note + "; needs modal count >= 3 and >= 5000 samples");
    return {r};
  }
  const auto firsts = parallel_trials(chosen.size(), c.threads, [&](std::uint64_t i) {
    auto rng = stream(c, blocks::kDirichletForest, chosen[i]);
    const auto f = sample_kingman_forest_structure(n, mode, rng);
    return static_cast<double>(tree_sizes(f)[0]) / static_cast<double>(n);
  });
  const double shape = static_cast<double>(mode) - 1.0;
  auto cdf = [shape](double x) { return 1.0 - std::pow(1.0 - std::clamp(x, 0.0, 1.0), shape); };
  return {stamp(ks_test(firsts, cdf), "dirichlet:first-size", c, walks, note)};
}

// ---- height -----------------------------------------------------------------

Reports suite_height(const SuiteConfig& c) {
  const std::size_t n = c.n.value_or(3000);
  const double p = require_open_p(c.p.value_or(0.3), "height");
  const std::uint64_t trials = c.trials.value_or(10000);
  struct Draw {
    std::size_t tree_height;
    std::size_t forest_height;
    std::size_t count;
  };
  const auto draws = parallel_trials(trials, c.threads, [&](std::uint64_t t) {
    auto rng = stream(c, blocks::kHeight, t);
    const std::size_t count = fast_walk(n, p, rng).tree_count;
    const auto tree = sample_urrt(n, rng);
    const auto forest = delete_root_block_edges(tree, count);
    return Draw{height(tree.forest), height(forest), count};
  });
  std::uint64_t violations = 0;
  std::vector<double> heights;
  heights.reserve(draws.size());
  for (const auto& d : draws) {
    violations += d.forest_height > d.tree_height || d.forest_height + d.count < d.tree_height;
    heights.push_back(static_cast<double>(d.forest_height));
  }
  const double ln = std::log(static_cast<double>(n));
  const double centre = std::exp(1.0) * ln - 1.5 * std::log(ln);
  const auto ci = mean_ci(heights);
  const std::string note = case_note(n, p);
  return {exact_report("height:sandwich", double(violations), c, trials,
                       note + "; statistic = draws violating height(T)-C <= height(F) <= height(T)"),
          make_statistic_report("height:mean-window", ci.mean - centre, 5.0, trials, c.seed,
                                note + "; mean height " + fmt(ci.mean) + " +- " + fmt(ci.halfwidth) +
                                    " vs e ln n - 1.5 ln ln n = " + fmt(centre))};
}

// ---- monotonicity -------------------------------------------------------------

Reports suite_monotonicity(const SuiteConfig& c) {
  const double p = require_open_p(c.p.value_or(0.5), "monotonicity");
  const std::uint64_t trials = c.trials.value_or(100000);
  const std::size_t ns[] = {5, 10, 20, 40};
  std::vector<std::vector<double>> samples;
  for (std::size_t i = 0; i < 4; ++i) {
    const auto counts = parallel_trials(trials, c.threads, [&](std::uint64_t t) {
      auto rng = stream(c, blocks::kMonotonicity + i, t);
      return static_cast<double>(fast_walk(ns[i], p, rng).tree_count);
    });
    samples.push_back(counts);
  }
  Reports out;
  for (std::size_t i = 0; i + 1 < 4; ++i) {
    out.push_back(stamp(dominance_check(samples[i], samples[i + 1]), "monotonicity:dominance", c, 2 * trials,
                        "C_{" + std::to_string(ns[i]) + "} <= C_{" + std::to_string(ns[i + 1]) + "} p=" + fmt(p)));
  }
  std::uint64_t decreases = 0;
  ExactReal prev = 0;
  std::string means;
  for (std::size_t n = 1; n <= kMaxOracleCnpN; ++n) {
    const auto m = exact_mean_c(n, p);
    decreases += m < prev;
    prev = m;
    means += (n > 1 ? "," : "") + fmt(static_cast<double>(m));
  }
  out.push_back(exact_report("monotonicity:exact-means", double(decreases), c, kMaxOracleCnpN,
                             "exact E[C_{n,p}] for n=1..6 at p=" + fmt(p) + ": " + means));
  return out;
}

// ---- bounds (report only) -------------------------------------------------------

Reports suite_bounds(const SuiteConfig& c) {
  const std::size_t n = c.n.value_or(400);
  const double p = require_open_p(c.p.value_or(0.2), "bounds");
  const std::uint64_t trials = c.trials.value_or(2000);
  constexpr double eps = 0.5;
  // First coalescing index k at which M_k >= (1+eps)(1-p)(n-k)/p, or n if never.
  const auto first_hits = parallel_trials(trials, c.threads, [&](std::uint64_t t) {
    auto rng = stream(c, blocks::kBounds, t);
    const auto w = fast_walk(n, p, rng);
    for (std::size_t k = 0; k < w.m.size(); ++k) {
      if (static_cast<double>(w.m[k]) >= (1.0 + eps) * (1.0 - p) * static_cast<double>(n - k) / p) return k;
    }
    return n;
  });
  Reports out;
  const std::size_t steps = 8;
  for (std::size_t i = 1; i <= steps; ++i) {
    const std::size_t ell = i * n / (steps + 1);
    std::uint64_t hits = 0;
    for (const auto k : first_hits) hits += k <= n - ell;
    const double freq = static_cast<double>(hits) / static_cast<double>(trials);
    out.push_back(make_statistic_report("bounds:upper-crossing", freq, 1.0, trials, c.seed,
                                        "report-only; " + case_note(n, p) + " eps=0.5 ell=" + std::to_string(ell) +
                                            "; statistic = P(M_k >= (1+eps)(1-p)(n-k)/p for some k <= n-ell)"));
  }
  for (const double delta : {0.1, 0.25, 0.5}) {
    const auto v = eval_bounds({.delta = delta, .mu = (1.0 - p) * static_cast<double>(n) / p,
                                .r = static_cast<std::uint64_t>(n), .p = p});
    out.push_back(make_statistic_report("bounds:reference", v.negative_binomial_upper, 1.0, 0, c.seed,
                                        "report-only; delta=" + fmt(delta) + " hypergeometric=" +
                                            fmt(v.hypergeometric_sum) + " nb_upper=" +
                                            fmt(v.negative_binomial_upper) + " nb_lower=" +
                                            fmt(v.negative_binomial_lower)));
  }
  return out;
}

// ---- null calibration -----------------------------------------------------------

Reports suite_null_calibration(const SuiteConfig& c) {
  const std::uint64_t reps = c.trials.value_or(100);
  constexpr double kMaxRate = 0.03;
  const std::vector<double> pmf = {0.1, 0.2, 0.3, 0.25, 0.15};
  ProbabilityMap expected;
  for (std::size_t i = 0; i < pmf.size(); ++i) expected[category_key(i)] = pmf[i];
  auto draw_category = [&](RngStream& rng) {
    double u = rng.uniform();
    for (std::size_t i = 0; i + 1 < pmf.size(); ++i) {
      if (u < pmf[i]) return i;
      u -= pmf[i];
    }
    return pmf.size() - 1;
  };
  auto uniform_cdf = [](double x) { return std::clamp(x, 0.0, 1.0); };

  using Trial = std::function<bool(RngStream&)>;
  const std::vector<std::pair<std::string, Trial>> tests = {
      {"ks", [&](RngStream& rng) {
         std::vector<double> xs(10000);
         for (auto& x : xs) x = rng.uniform();
         return ks_test(xs, uniform_cdf).pass;
       }},
      {"chi-square", [&](RngStream& rng) {
         CountMap obs;
         for (int i = 0; i < 100000; ++i) ++obs[category_key(draw_category(rng))];
         return chi_square_test(obs, expected, 100000).pass;
       }},
      {"ks-two-sample", [&](RngStream& rng) {
         std::vector<double> a(5000);
         std::vector<double> b(5000);
         for (auto& x : a) x = rng.uniform();
         for (auto& x : b) x = rng.uniform();
         return ks_two_sample(a, b).pass;
       }},
      {"chi-square-homogeneity", [&](RngStream& rng) {
         CountMap a;
         CountMap b;
         for (int i = 0; i < 20000; ++i) {
           ++a[category_key(sample_geometric(0.4, rng))];
           ++b[category_key(sample_geometric(0.4, rng))];
         }
         return chi_square_homogeneity(a, b).pass;
       }},
  };
  Reports out;
  for (std::size_t i = 0; i < tests.size(); ++i) {
    const auto passes = parallel_trials(reps, c.threads, [&](std::uint64_t rep) {
      auto rng = stream(c, blocks::kNullCalibration + i, rep);
      return tests[i].second(rng);
    });
    const auto rejections = std::count(passes.begin(), passes.end(), false);
    out.push_back(make_statistic_report("null-calibration:" + tests[i].first,
                                        static_cast<double>(rejections) / static_cast<double>(reps), kMaxRate,
                                        reps, c.seed,
                                        "rejection rate at threshold 0.01 on true-null data; " +
                                            std::to_string(rejections) + " of " + std::to_string(reps)));
  }
  return out;
}

// ---- samplers ---------------------------------------------------------------------

Reports suite_samplers(const SuiteConfig& c) {
  const std::uint64_t draws = c.trials.value_or(1000000);
  Reports out;
  std::uint64_t index = 0;
  auto discrete = [&](const std::string& name, const std::function<std::uint64_t(RngStream&)>& sample,
                      const std::function<double(std::uint64_t)>& pmf, std::uint64_t support_max) {
    auto rng = stream(c, blocks::kSamplers + index++, 0);
    CountMap obs;
    for (std::uint64_t i = 0; i < draws; ++i) ++obs[category_key(sample(rng))];
    ProbabilityMap law;
    for (std::uint64_t k = 0; k <= support_max; ++k) {
      const double pk = pmf(k);
      if (pk > 0.0) law[category_key(k)] = pk;
    }
    out.push_back(stamp(chi_square_test(obs, law, draws), "samplers:" + name, c, draws, ""));
  };
  auto continuous = [&](const std::string& name, const std::function<double(RngStream&)>& sample,
                        const std::function<double(double)>& cdf) {
    auto rng = stream(c, blocks::kSamplers + index++, 0);
    std::vector<double> xs(draws);
    for (auto& x : xs) x = sample(rng);
    out.push_back(stamp(ks_test(xs, cdf), "samplers:" + name, c, draws, ""));
  };

  discrete("bernoulli(0.3)", [](RngStream& r) { return std::uint64_t(sample_bernoulli(0.3, r)); },
           [](std::uint64_t k) { return k == 0 ? 0.7 : 0.3; }, 1);
  discrete("uniform-int(7)", [](RngStream& r) { return r.below(7); }, [](std::uint64_t) { return 1.0 / 7; }, 6);
  discrete("geometric(0.2)", [](RngStream& r) { return sample_geometric(0.2, r); },
           [](std::uint64_t k) { return geometric_pmf(k, 0.2); }, 400);
  discrete("truncated-geometric(0.3,6)", [](RngStream& r) { return sample_truncated_geometric(0.3, 6, r); },
           [](std::uint64_t k) { return truncated_geometric_pmf(k, 0.3, 6); }, 6);
  discrete("hypergeometric(5,10,20)", [](RngStream& r) { return sample_hypergeometric(5, 10, 20, r); },
           [](std::uint64_t k) { return hypergeometric_pmf(k, 5, 10, 20); }, 5);
  discrete("hypergeometric(300,400,1000)", [](RngStream& r) { return sample_hypergeometric(300, 400, 1000, r); },
           [](std::uint64_t k) { return hypergeometric_pmf(k, 300, 400, 1000); }, 300);
  discrete("hypergeometric(40,1500,2000)", [](RngStream& r) { return sample_hypergeometric(40, 1500, 2000, r); },
           [](std::uint64_t k) { return hypergeometric_pmf(k, 40, 1500, 2000); }, 40);
  discrete("negative-binomial(4,0.5)", [](RngStream& r) { return sample_negative_binomial(4, 0.5, r); },
           [](std::uint64_t k) { return negative_binomial_pmf(k, 4, 0.5); }, 400);
  continuous("uniform", [](RngStream& r) { return r.uniform(); },
             [](double x) { return std::clamp(x, 0.0, 1.0); });
  continuous("exponential", [](RngStream& r) { return sample_exponential(r); },
             [](double x) { return x <= 0.0 ? 0.0 : -std::expm1(-x); });
  continuous("dirichlet(4)-first", [](RngStream& r) { return sample_dirichlet_uniform(4, r)[0]; },
             [](double x) { return 1.0 - std::pow(1.0 - std::clamp(x, 0.0, 1.0), 3); });

  const auto a = eval_bounds({.delta = 0.5, .mu = 100, .r = 1, .p = 0.5});
  out.push_back(exact_report("samplers:bound-hypergeometric", std::abs(a.hypergeometric_sum - 2.0 * std::exp(-25.0 / 3.0)),
                             c, 1, "delta=0.5 mu=100: 2 exp(-25/3)"));
  const auto b = eval_bounds({.delta = 0.5, .mu = 0, .r = 100, .p = 0.5});
  out.push_back(exact_report("samplers:bound-negative-binomial",
                             std::abs(b.negative_binomial_upper - std::exp(-100.0 / 96.0)), c, 1,
                             "delta=0.5 r=100 p=0.5: exp(-100/96)"));
  return out;
}

// ---- small p ----------------------------------------------------------------------

Reports suite_small_p(const SuiteConfig& c) {
  const std::size_t n = c.n.value_or(20000);
  const double p = require_open_p(c.p.value_or(0.01), "small-p");
  const std::uint64_t trials = c.trials.value_or(200);
  const auto scaled = parallel_trials(trials, c.threads, [&](std::uint64_t t) {
    auto rng = stream(c, blocks::kSmallP, t);
    return p * static_cast<double>(fast_walk(n, p, rng).tree_count) / (2.0 * (1.0 - p));
  });
  const double mean = std::accumulate(scaled.begin(), scaled.end(), 0.0) / static_cast<double>(trials);
  std::string note = case_note(n, p) + "; mean of p C / (2(1-p)) = " + fmt(mean);
  if (trials >= 30) note += " +- " + fmt(mean_ci(scaled).halfwidth);
  return {make_statistic_report("small-p:scaled-mean", mean - 1.0, 0.05, trials, c.seed, note)};
}

using SuiteFn = Reports (*)(const SuiteConfig&);

const std::vector<std::pair<std::string, SuiteFn>>& registry() {
  static const std::vector<std::pair<std::string, SuiteFn>> r = {
      {"counting", suite_counting},
      {"phi", suite_phi},
      {"equivalence", suite_equivalence},
      {"uniformity", suite_uniformity},
      {"step-law", suite_step_law},
      {"dirichlet", suite_dirichlet},
      {"height", suite_height},
      {"monotonicity", suite_monotonicity},
      {"bounds", suite_bounds},
      {"null-calibration", suite_null_calibration},
      {"samplers", suite_samplers},
      {"small-p", suite_small_p},
  };
  return r;
}

}  // namespace

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> out;
    for (const auto& [name, fn] : registry()) out.push_back(name);
    return out;
  }();
  return names;
}

bool is_suite(const std::string& name) {
  const auto& names = suite_names();
  return std::find(names.begin(), names.end(), name) != names.end();
}

std::vector<TestReport> run_suite(const std::string& name, const SuiteConfig& config) {
  for (const auto& [suite, fn] : registry()) {
    if (suite == name) return fn(config);
  }
  throw ParameterError("unknown suite '" + name + "'");
}

}  // namespace kingman
