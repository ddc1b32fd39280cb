#include <catch2/catch_amalgamated.hpp>

#include "voamodes/verify/report.hpp"

using namespace voamodes;
using namespace voamodes::verify;

TEST_CASE("config defaults and validation") {
  RunConfig c;
  CHECK_NOTHROW(c.validate());
  CHECK(c.effective_cap() == 24);
  CHECK(c.selected_suites().size() == 14);
  c.N = 7;
  CHECK_THROWS_AS(c.validate(), ConfigError);
  RunConfig d;
  d.suites = {"nope"};
  CHECK_THROWS_AS(d.validate(), ConfigError);
}

TEST_CASE("config text parsing") {
  RunConfig c;
  load_config_text(c,
                   "# desk scale\n"
                   "N = 1\n"
                   "lmax = 4\n"
                   "charges = 0, -1/2, 3/4\n"
                   "p_window = -1, 1\n"
                   "suites = unit,binomial-218\n"
                   "seed = 9\n");
  CHECK(c.N == 1);
  CHECK(c.L_max == 4);
  CHECK(c.charges == std::vector<Rational>{0, make_rational(-1, 2), make_rational(3, 4)});
  CHECK(c.p_lo == -1);
  CHECK(c.p_hi == 1);
  CHECK(c.suites == std::vector<std::string>{"unit", "binomial-218"});
  CHECK(c.seed == 9);
  CHECK_THROWS_AS(load_config_text(c, "N 3\n"), ConfigError);
  CHECK_THROWS_AS(load_config_text(c, "colour = 3\n"), ConfigError);
  CHECK_THROWS_AS(load_config_text(c, "charges = 1/x\n"), ConfigError);
}

TEST_CASE("binomial suite size") {
  RunConfig c;
  c.suites = {"binomial-218"};
  Context ctx(c);
  RunResult r = run_suites(ctx);
  REQUIRE(r.suites.size() == 1);
  CHECK(r.suites[0].passed());
  CHECK(r.suites[0].tally.run >= 200);
}

TEST_CASE("reports are deterministic and timing is opt-in") {
  RunConfig c;
  c.N = 1;
  c.suites = {"unit", "opposite"};
  Context a(c), b(c);
  Json ja = report_json(c, run_suites(a), false);
  Json jb = report_json(c, run_suites(b), false);
  CHECK(ja.dump() == jb.dump());
  CHECK(ja["pass"] == true);
  CHECK(ja["schema_version"] == kReportSchemaVersion);
  CHECK_FALSE(ja["suites"][0].contains("wall_seconds"));
  Json jt = report_json(c, run_suites(a), true);
  CHECK(jt["suites"][0].contains("wall_seconds"));
}

TEST_CASE("tight truncation is reported as overflow") {
  RunConfig c;
  c.cap = 7;
  c.suites = {"exp-L"};
  Context ctx(c);
  RunResult r = run_suites(ctx);
  CHECK(r.overflow());
  CHECK_FALSE(r.passed());
}

TEST_CASE("failures carry both sides") {
  Tally t;
  t.record(true, [] { return Failure{"a", "1", "1"}; });
  t.record(false, [] { return Failure{"b", "1/2*()", "0"}; });
  t.record(false, [] { return Failure{"c", "x", "y"}; });
  CHECK(t.run == 3);
  CHECK(t.passed == 1);
  REQUIRE(t.first_failure);
  CHECK(t.first_failure->where == "b");
  CHECK(t.first_failure->lhs == "1/2*()");
}
