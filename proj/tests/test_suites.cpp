#include <nlohmann/json.hpp>
#include <string>

#include "doctest.h"
#include "kingman/errors.hpp"
#include "kingman/experiment.hpp"
#include "kingman/parallel.hpp"
#include "kingman/suites.hpp"

using namespace kingman;

namespace {

std::string dump(const std::vector<TestReport>& reports) {
  std::string out;
  for (const auto& r : reports) out += report_to_json(r).dump() + "\n";
  return out;
}

}  // namespace

TEST_CASE("suite registry") {
  CHECK(suite_names().size() == 12);
  CHECK(is_suite("equivalence"));
  CHECK_FALSE(is_suite("nope"));
  CHECK_THROWS_AS(run_suite("nope", {}), ParameterError);
}

TEST_CASE("exact suites pass") {
  for (const auto* name : {"counting", "phi"}) {
    for (const auto& r : run_suite(name, {})) {
      INFO(report_to_json(r).dump());
      CHECK(r.pass);
    }
  }
}

TEST_CASE("suite output does not depend on the thread count") {
  SuiteConfig one{.n = 5, .p = 0.5, .trials = 3000, .seed = 11, .threads = 1};
  SuiteConfig many = one;
  many.threads = 4;
  const auto a = dump(run_suite("equivalence", one));
  CHECK(a == dump(run_suite("equivalence", many)));
  CHECK(a == dump(run_suite("equivalence", one)));
  one.seed = 12;
  CHECK(a != dump(run_suite("equivalence", one)));
}

TEST_CASE("report-only suite always passes") {
  for (const auto& r : run_suite("bounds", {.n = 100, .p = 0.2, .trials = 200})) CHECK(r.pass);
}

TEST_CASE("out-of-range parameters are rejected") {
  CHECK_THROWS_AS(run_suite("equivalence", {.n = 5, .p = 0.0, .trials = 10}), ParameterError);
  CHECK_THROWS_AS(run_suite("uniformity", {.n = 9}), ParameterError);
}

TEST_CASE("parallel trials keep trial order and propagate errors") {
  const auto squares = parallel_trials(1000, 4, [](std::uint64_t i) { return i * i; });
  for (std::uint64_t i = 0; i < 1000; ++i) CHECK(squares[i] == i * i);
  CHECK_THROWS_AS(parallel_trials(100, 3,
                                  [](std::uint64_t i) {
                                    if (i == 57) throw ValidationError("boom");
                                    return i;
                                  }),
                  ValidationError);
  CHECK(resolve_threads(3) == 3);
  CHECK_THROWS_AS(resolve_threads(0), ParameterError);
}

TEST_CASE("simulation records") {
  for (const auto m : {Method::kDirect, Method::kErp, Method::kWalk, Method::kUrrtCoupling}) {
    const auto a = simulate(m, 30, 0.3, 20, 7, 1);
    const auto b = simulate(m, 30, 0.3, 20, 7, 3);
    for (std::size_t i = 0; i < a.size(); ++i) {
      CHECK(record_to_json(a[i]) == record_to_json(b[i]));
      CHECK(a[i].trial == i);
      CHECK(a[i].elapsed_us == 0);
      if (m == Method::kWalk) {
        CHECK_FALSE(a[i].height.has_value());
      } else {
        std::size_t total = 0;
        for (auto s : a[i].sizes) total += s;
        CHECK(total == 30);
        CHECK(a[i].sizes.size() == a[i].tree_count);
      }
    }
  }
  const TrialRecord r{3, 5, 0.5, Method::kDirect, 2, 1, {4, 1}, 0};
  CHECK(record_to_csv(r) == "3,5,0.5,direct,2,1,4;1,0");
  CHECK(record_to_json(r).dump() ==
        R"({"trial":3,"n":5,"p":0.5,"method":"direct","tree_count":2,"height":1,"sizes":[4,1],"elapsed_us":0})");
  const TrialRecord w{0, 9, 0.25, Method::kWalk, 3, std::nullopt, {}, 0};
  CHECK(record_to_csv(w) == "0,9,0.25,walk,3,,,0");
  CHECK(parse_method("urrt-coupling") == Method::kUrrtCoupling);
  CHECK_THROWS_AS(parse_method("bogus"), ParameterError);
}
