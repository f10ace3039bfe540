#include "doctest.h"
#include "modelborel/battery.hpp"

using namespace modelborel;

TEST_CASE("point battery mixes anchors with seeded randomness") {
  auto a = make_point_battery(12021, 40, 10, 5);
  auto b = make_point_battery(12021, 40, 10, 5);
  REQUIRE(a.size() == 40);
  CHECK(a == b);
  // fixed anchors cover the boundary behaviours
  CHECK(a[0].str() == ";0");
  CHECK(a[1].str() == ";1");
  bool has_evzero = false, has_infones = false;
  for (const auto& p : a) {
    has_evzero = has_evzero || p.eventually_zero();
    has_infones = has_infones || p.infinitely_many_ones();
  }
  CHECK(has_evzero);
  CHECK(has_infones);

  auto c = make_point_battery(99, 40, 10, 5);
  CHECK(!(a == c));  // seed matters past the anchors
}

TEST_CASE("single criterion runs are deterministic") {
  BatteryOptions opt;
  opt.only = {1};
  BatterySummary s1 = run_battery(opt);
  BatterySummary s2 = run_battery(opt);
  REQUIRE(s1.results.size() == 1);
  CHECK(s1.results[0].number == 1);
  CHECK(s1.results[0].pass);
  CHECK(s1.all_pass());
  CHECK(s1.to_text() == s2.to_text());
  // timing is reported out of band, never in the summary
  CHECK(s1.to_text().find("seconds") == std::string::npos);
}

TEST_CASE("result lines carry number, verdict and name") {
  CriterionResult r;
  r.number = 4;
  r.name = "demo-name";
  r.pass = true;
  r.detail = "points=3";
  CHECK(r.line() == "criterion 4 pass demo-name  [points=3]");
  r.pass = false;
  r.detail.clear();
  CHECK(r.line() == "criterion 4 FAIL demo-name");
}

TEST_CASE("injected broken fixtures must be caught and reported as failing") {
  BatteryOptions opt;
  opt.inject_broken = true;
  opt.only = {0};
  BatterySummary s = run_battery(opt);
  REQUIRE(s.results.size() == 1);
  const CriterionResult& r = s.results[0];
  CHECK(r.number == 0);
  CHECK(!r.pass);
  CHECK(r.detail.find("caught-underemit=yes") != std::string::npos);
  CHECK(r.detail.find("caught-stall=yes") != std::string::npos);
  CHECK(s.failed() == 1);
  CHECK(!s.all_pass());
  // without the flag the fixture is not part of the run
  BatteryOptions off;
  off.only = {0};
  CHECK(run_battery(off).results.empty());
}
