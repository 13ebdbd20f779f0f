#include <doctest.h>
#include <json.hpp>

#include <limits>
#include <stdexcept>

#include "fraclab/verify.hpp"

using namespace fraclab;

TEST_CASE("check verdicts") {
  CHECK(make_check("a", "x", 1.0, Relation::at_most, 1.0).pass);
  CHECK_FALSE(make_check("a", "x", 1.5, Relation::at_most, 1.0).pass);
  CHECK(make_check("a", "x", 1.5, Relation::at_least, 1.2).pass);
  CHECK_FALSE(make_check("a", "x", std::numeric_limits<double>::quiet_NaN(), Relation::at_most, 1.0).pass);
}

TEST_CASE("report schema") {
  SuiteReport r{"demo",
                {{"grid.N", "8"}},
                {make_check("c1", "stmt", 0.5, Relation::at_most, 1.0, {{"m", 0.5}}),
                 make_check("c2", "stmt", std::numeric_limits<double>::infinity(), Relation::at_least, 2.0)}};
  CHECK(r.all_pass());
  SuiteReport failing = r;
  failing.checks.push_back(make_check("c3", "stmt", 3.0, Relation::at_most, 1.0));
  CHECK_FALSE(failing.all_pass());
  const auto j = nlohmann::json::parse(to_json(r));
  CHECK(j["suite"] == "demo");
  CHECK(j["environment"]["grid.N"] == "8");
  REQUIRE(j["checks"].size() == 2);
  const auto& c1 = j["checks"][0];
  CHECK(c1["id"] == "c1");
  CHECK(c1["paper_ref"] == "stmt");
  CHECK(c1["measured"]["m"] == 0.5);
  CHECK(c1["threshold"] == 1.0);
  CHECK(c1["verdict"] == "pass");
  CHECK(j["checks"][1]["value"] == "inf");
  CHECK(j["checks"][1]["verdict"] == "pass");

  const auto all = nlohmann::json::parse(to_json(std::vector<SuiteReport>{r, r}));
  CHECK(all["suites"].size() == 2);
}

TEST_CASE("suite names") {
  CHECK(suite_names().size() == 7);
  CHECK_THROWS_AS(run_suite("bogus", Config{}), std::invalid_argument);
}

TEST_CASE("divergence suite passes and is reproducible") {
  Config c;
  c.divergence = {64, 8.0};
  const auto a = run_suite("divergence", c), b = run_suite("divergence", c);
  REQUIRE(a.size() == 1);
  CHECK(a[0].all_pass());
  CHECK(to_json(a[0]) == to_json(b[0]));
}
