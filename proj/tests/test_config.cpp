#include "horseshoe/config.hpp"

#include <string>

#include "doctest.h"

using namespace horseshoe;

TEST_CASE("config parsing applies exact keys over the base") {
  const RunConfig base;
  const std::string text =
      "# map family\n"
      "lambda = 0.2\n"
      "sigma = 5\n"
      "c = 25\n"
      "r5_orientation = reversing\n"
      "\n"
      "samples_returns = 500   # inline comment\n"
      "directions = 4\n"
      "max_period = 6\n"
      "out_dir = artifacts\n"
      "seed = 12345\n"
      "allow_invalid_params = true\n"
      "suites = periodic, lyapunov\n";
  const ConfigResult res = parse_config(text, base);
  REQUIRE(res.ok);
  CHECK(res.cfg.params.lambda == 0.2);
  CHECK(res.cfg.params.sigma == 5.0);
  CHECK(res.cfg.params.c == 25.0);
  CHECK(res.cfg.params.r5_orientation == R5Orientation::reversing);
  CHECK(res.cfg.samples_returns == 500);
  CHECK(res.cfg.directions == 4);
  CHECK(res.cfg.max_period == 6);
  CHECK(res.cfg.out_dir == "artifacts");
  CHECK(res.cfg.seed == 12345);
  CHECK(res.cfg.allow_invalid_params);
  REQUIRE(res.cfg.suites.size() == 2);
  CHECK(res.cfg.suites[0] == "periodic");
  CHECK(res.cfg.suites[1] == "lyapunov");

  // untouched keys keep their base values
  CHECK(res.cfg.params.q == base.params.q);
  CHECK(res.cfg.samples_cones == base.samples_cones);
}

TEST_CASE("config parsing rejects typos and malformed values") {
  const RunConfig base;

  ConfigResult res = parse_config("samples_return = 5\n", base);
  CHECK(!res.ok);
  CHECK(res.error.find("unknown key") != std::string::npos);
  CHECK(res.error.find("line 1") != std::string::npos);

  res = parse_config("lambda = fast\n", base);
  CHECK(!res.ok);
  CHECK(res.error.find("number") != std::string::npos);

  res = parse_config("lambda\n", base);
  CHECK(!res.ok);

  res = parse_config("r5_orientation = sideways\n", base);
  CHECK(!res.ok);

  res = parse_config("seed = -3\n", base);
  CHECK(!res.ok);

  res = parse_config("allow_invalid_params = yes\n", base);
  CHECK(!res.ok);

  res = parse_config("max_iter = 1e4\n", base);
  CHECK(!res.ok);

  // counts below one violate the run contract
  res = parse_config("samples_escape = 0\n", base);
  CHECK(!res.ok);
  CHECK(res.error.find("samples_escape") != std::string::npos);

  res = parse_config("suites = periodic, warp\n", base);
  CHECK(!res.ok);
  CHECK(res.error.find("unknown suite") != std::string::npos);
}

TEST_CASE("empty and comment-only configs keep defaults") {
  const RunConfig base;
  const ConfigResult res = parse_config("\n# nothing here\n   \n", base);
  REQUIRE(res.ok);
  CHECK(res.cfg.samples_returns == base.samples_returns);
  CHECK(res.cfg.seed == base.seed);
  CHECK(res.cfg.suites.empty());
}

TEST_CASE("missing config files are load errors") {
  const ConfigResult res =
      load_config("/nonexistent/path/run.conf", RunConfig{});
  CHECK(!res.ok);
  CHECK(res.error.find("cannot open") != std::string::npos);
}

TEST_CASE("suite name registry") {
  const std::vector<std::string>& names = suite_names();
  REQUIRE(names.size() == 7);
  CHECK(names[0] == "validate");
  CHECK(names[1] == "verify-cones");
  CHECK(names[2] == "verify-returns");
  CHECK(names[3] == "verify-escape");
  CHECK(names[4] == "periodic");
  CHECK(names[5] == "lyapunov");
  CHECK(names[6] == "nonuniformity");
}
