#include <doctest.h>

#include <set>
#include <stdexcept>
#include <string>

#include "fraclab/config.hpp"

using namespace fraclab;

TEST_CASE("defaults") {
  const Config c = parse_config("");
  CHECK(c.n == 1);
  CHECK(c.grid.N == 256);
  CHECK(c.solver.max_iter == 20000);
  CHECK(c.solver.tol_gap == 1e-4);
  CHECK(c.thresholds.inversion == 1e-6);
  CHECK(c.report_path == "report.json");
}

TEST_CASE("key = value lines") {
  const Config c = parse_config(
      "# comment\n"
      "\n"
      "grid.N = 512\n"
      "s_list = 0.2, 0.4\n"
      "solver.tol_gap=1e-5\n"
      "threshold.fs = 0.1\n"
      "output.report = out.json\n");
  CHECK(c.grid.N == 512);
  CHECK(c.s_list == std::vector<double>{0.2, 0.4});
  CHECK(c.solver.tol_gap == 1e-5);
  CHECK(c.thresholds.fs == 0.1);
  CHECK(c.report_path == "out.json");
}

TEST_CASE("rejected input") {
  CHECK_THROWS_AS(parse_config("grid.M = 3\n"), std::invalid_argument);
  CHECK_THROWS_AS(parse_config("grid.N = 64\ngrid.N = 128\n"), std::invalid_argument);
  CHECK_THROWS_AS(parse_config("grid.N = lots\n"), std::invalid_argument);
  CHECK_THROWS_AS(parse_config("no equals sign\n"), std::invalid_argument);
  try {
    parse_config("s = 0.5\nbogus = 1\n");
    FAIL("expected an error");
  } catch (const std::invalid_argument& e) {
    CHECK(std::string(e.what()).find("line 2") != std::string::npos);
  }
}

TEST_CASE("every key is documented and accepts its default") {
  std::set<std::string> seen;
  for (const ConfigKey& k : config_keys()) {
    CAPTURE(k.name);
    CHECK(seen.insert(k.name).second);
    CHECK(!k.doc.empty());
    Config c;
    CHECK_NOTHROW(set_config_value(c, k.name, k.default_value));
  }
  CHECK(seen.count("threshold.weak_capacitary") == 1);
  CHECK(seen.count("fs.N") == 1);
}

TEST_CASE("missing config file") {
  CHECK_THROWS(load_config("/nonexistent/fraclab.cfg"));
}
