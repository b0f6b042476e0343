#include <CLI11.hpp>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <nlohmann/json.hpp>
#include <optional>
#include <string>

#include "kingman/errors.hpp"
#include "kingman/experiment.hpp"
#include "kingman/graph.hpp"
#include "kingman/oracle.hpp"
#include "kingman/parallel.hpp"
#include "kingman/rng.hpp"
#include "kingman/suites.hpp"

namespace {

using namespace kingman;

constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;
constexpr int kExitUsage = 2;

struct Options {
  std::optional<std::size_t> n;
  std::optional<double> p;
  std::optional<std::uint64_t> trials;
  std::uint64_t seed = 1;
  std::optional<std::size_t> threads;
  std::string method;
  std::string suite;
  std::string output;
  std::string format = "jsonl";
  bool timing = false;
};

class Output {
 public:
  explicit Output(const std::string& path) {
    if (!path.empty() && path != "-") {
      file_.open(path);
      if (!file_) throw std::runtime_error("cannot open output file '" + path + "'");
    }
  }
  std::ostream& stream() { return file_.is_open() ? file_ : std::cout; }

 private:
  std::ofstream file_;
};

void require_probability(double p, bool open) {
  const bool ok = open ? (p > 0.0 && p < 1.0) : (p >= 0.0 && p <= 1.0);
  if (!ok) throw ParameterError(std::string("--p must lie in ") + (open ? "(0, 1)" : "[0, 1]"));
}

int cmd_simulate(const Options& o) {
  const Method method = parse_method(o.method);
  if (!o.n || *o.n < 1) throw ParameterError("simulate: --n >= 1 is required");
  if (!o.p) throw ParameterError("simulate: --p is required");
  const bool walk_based = method == Method::kWalk || method == Method::kUrrtCoupling;
  require_probability(*o.p, walk_based);
  if (method == Method::kErp && *o.p == 0.0 && *o.n >= 2) {
    std::cerr << "warning: erp with p = 0 queries every pair before stopping\n";
  }
  const std::uint64_t trials = o.trials.value_or(1);
  if (trials < 1) throw ParameterError("simulate: --trials must be >= 1");
  if (o.format != "jsonl" && o.format != "csv") throw ParameterError("--format must be jsonl or csv");
  const auto records = simulate(method, *o.n, *o.p, trials, o.seed, resolve_threads(o.threads), o.timing);
  Output out(o.output);
  auto& os = out.stream();
  if (o.format == "csv") {
    os << kCsvHeader << '\n';
    for (const auto& r : records) os << record_to_csv(r) << '\n';
  } else {
    for (const auto& r : records) os << record_to_json(r).dump() << '\n';
  }
  return kExitOk;
}

int cmd_verify(const Options& o) {
  if (!is_suite(o.suite)) {
    std::cerr << "unknown suite '" << o.suite << "'; expected one of:";
    for (const auto& s : suite_names()) std::cerr << ' ' << s;
    std::cerr << '\n';
    return kExitUsage;
  }
  SuiteConfig config{o.n, o.p, o.trials, o.seed, resolve_threads(o.threads)};
  const auto reports = run_suite(o.suite, config);
  Output out(o.output);
  bool all = true;
  for (const auto& r : reports) {
    out.stream() << report_to_json(r).dump() << '\n';
    all = all && r.pass;
  }
  return all ? kExitOk : kExitFailure;
}

int cmd_oracle(const Options& o) {
  if (!o.n || *o.n < 1) throw ParameterError("oracle: --n >= 1 is required");
  if (!o.p) throw ParameterError("oracle: --p is required");
  require_probability(*o.p, false);
  const auto d = exact_cnp_distribution(*o.n, *o.p);
  Output out(o.output);
  out.stream() << distribution_to_json(d).dump() << '\n';
  return kExitOk;
}

// Exploratory: does adding one edge ever raise the exact mean tree count?
int cmd_explore(const Options& o) {
  const std::size_t n = o.n.value_or(5);
  if (n < 2 || n > kMaxOracleGraphN) throw ParameterError("explore: --n must lie in [2, 14]");
  const double p = o.p.value_or(0.5);
  require_probability(p, false);
  const std::uint64_t trials = o.trials.value_or(20);
  Output out(o.output);
  for (std::uint64_t t = 0; t < trials; ++t) {
    RngStream rng(o.seed, t);
    const auto g = sample_gnp(n, p, rng);
    const double base = static_cast<double>(exact_c_distribution(g).mean());
    std::size_t increases = 0;
    double worst = -std::numeric_limits<double>::infinity();
    nlohmann::ordered_json worst_edge = nullptr;
    for (std::size_t i = 0; i < g.pair_count(); ++i) {
      const Edge e = g.pair_at(i);
      if (g.has_edge(e.u, e.v)) continue;
      const double after = static_cast<double>(exact_c_distribution(add_edge(g, e)).mean());
      if (after > base + 1e-12) ++increases;
      if (after - base > worst) {
        worst = after - base;
        worst_edge = {e.u, e.v};
      }
    }
    nlohmann::ordered_json j;
    j["trial"] = t;
    j["graph"] = g;
    j["mean"] = base;
    j["increases"] = increases;
    j["largest_change"] = std::isfinite(worst) ? nlohmann::ordered_json(worst) : nlohmann::ordered_json(nullptr);
    j["edge"] = worst_edge;
    out.stream() << j.dump() << '\n';
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Kingman coalescent on random graphs: simulation, exact laws and verification suites"};
  app.require_subcommand(1);
  Options o;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--n", o.n, "Number of vertices");
    sub->add_option("--p", o.p, "Edge probability");
    sub->add_option("--trials", o.trials, "Number of trials");
    sub->add_option("--seed", o.seed, "Base seed")->capture_default_str();
    sub->add_option("--threads", o.threads, "Worker threads (default: KINGMAN_THREADS or all cores)");
    sub->add_option("--output,-o", o.output, "Output file (default: standard output)");
  };

  auto* simulate_cmd = app.add_subcommand("simulate", "Simulate tree counts and forest structure");
  add_common(simulate_cmd);
  simulate_cmd->add_option("--method", o.method, "direct | erp | walk | urrt-coupling")->required();
  simulate_cmd->add_option("--format", o.format, "jsonl | csv")->capture_default_str();
  simulate_cmd->add_flag("--timing", o.timing, "Record wall time per trial (output no longer reproducible)");

  auto* verify_cmd = app.add_subcommand("verify", "Run a verification suite; exit 0 iff every check passes");
  add_common(verify_cmd);
  verify_cmd->add_option("suite", o.suite, "Suite name")->required();

  auto* oracle_cmd = app.add_subcommand("oracle", "Print the exact law of the tree count for n <= 6");
  add_common(oracle_cmd);

  auto* explore_cmd = app.add_subcommand("explore", "Exact effect of single edge additions on the mean tree count");
  add_common(explore_cmd);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*simulate_cmd) return cmd_simulate(o);
    if (*verify_cmd) return cmd_verify(o);
    if (*oracle_cmd) return cmd_oracle(o);
    if (*explore_cmd) return cmd_explore(o);
  } catch (const ParameterError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const CapacityError& e) {
    std::cerr << "capacity exceeded: " << e.what() << '\n';
    return kExitFailure;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitFailure;
  }
  return kExitUsage;
}
