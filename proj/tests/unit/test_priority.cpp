#include "checks.hpp"
#include "doctest.h"
#include "modelborel/priority.hpp"

using namespace modelborel;

namespace {

std::size_t count_kind(const InjuryTrace& tr, const char* kind) {
  std::size_t n = 0;
  for (const auto& ev : tr)
    if (ev.kind == kind) ++n;
  return n;
}

std::vector<std::string> k0_estimates(const InjuryTrace& tr) {
  std::vector<std::string> out;
  for (const auto& ev : tr)
    if (ev.kind == "k0") out.push_back(ev.detail);
  return out;
}

}  // namespace

TEST_CASE("level one switching construction") {
  const std::pair<std::string, std::string> pair{"inf-coinf", "all-P"};
  // never a one read, so the off theory is built without any switch
  SimRun calm = run_corelemma(1, pair, UPPoint::parse("0;0"), 12);
  CHECK(calm.diagram.bits ==
        std::vector<std::uint8_t>(11, 1));  // P on every sealed element
  CHECK(count_kind(calm.trace, "switch") == 0);
  CHECK(count_kind(calm.trace, "commit") == 12);

  // a one at the very start switches once and alternates afterwards
  SimRun hot = run_corelemma(1, pair, UPPoint::parse("1;0"), 12);
  std::vector<std::uint8_t> alt;
  for (std::size_t i = 0; i < 11; ++i) alt.push_back(i % 2);
  CHECK(hot.diagram.bits == alt);
  CHECK(count_kind(hot.trace, "switch") == 1);

  // every switch is logged with a compatibility note
  CHECK(count_kind(hot.trace, "compat") == 1);
}

TEST_CASE("level two construction repairs on ones") {
  const std::pair<std::string, std::string> pair{"inf-inf-matching",
                                                 "perfect-matching"};
  SimRun calm = run_corelemma(2, pair, UPPoint::parse(";0"), 10);
  CHECK(count_kind(calm.trace, "injury-repair") == 0);
  // three elements per stage, newest still open
  CHECK(calm.diagram.bits.size() == 29 * 29);

  // the stage-s candidate becomes repairable at stage s+1
  SimRun busy = run_corelemma(2, pair, UPPoint::parse(";1"), 10);
  CHECK(count_kind(busy.trace, "injury-repair") == 9);
}

TEST_CASE("runs replay deterministically") {
  SimConfig cfg = core_config(1);
  UPPoint p = UPPoint::parse("001;01");
  SimRun a = run_corelemma(1, cfg.levels[0].pair, p, 40);
  SimRun b = run_corelemma(1, cfg.levels[0].pair, p, 40);
  CHECK(a.diagram.bits == b.diagram.bits);
  CHECK(trace_to_text(a.trace) == trace_to_text(b.trace));
}

TEST_CASE("index estimates follow the evidence") {
  UPPoint p = UPPoint::parse("001;0");
  const char* want1[] = {"all-P", "all-P", "inf-coinf",
                         "inf-coinf", "inf-coinf", "inf-coinf"};
  for (std::size_t s = 0; s <= 5; ++s)
    CHECK(approximate_indices(p, 1, s) == want1[s]);

  // level two answers per stage sign, so alternation keeps flipping it
  UPPoint q = UPPoint::parse(";10");
  for (std::size_t s = 0; s <= 8; ++s)
    CHECK(approximate_indices(q, 2, s) ==
          (s % 2 == 0 ? "perfect-matching" : "inf-inf-matching"));

  CHECK(shared_fragment_id(1) == "E1-shared");
  CHECK(shared_fragment_id(2) == "E2-shared");
}

TEST_CASE("tower logs its least failing level estimate") {
  SimConfig cfg = tower_config();
  // even track never a one: no level fails
  CHECK(k0_estimates(run_tower(cfg, UPPoint::parse(";01"), 8).trace) ==
        std::vector<std::string>(8, "none"));
  CHECK(k0_estimates(run_tower(cfg, UPPoint::parse(";0"), 8).trace) ==
        std::vector<std::string>(8, "none"));
  // a one on the even track pins the estimate to level one
  CHECK(k0_estimates(run_tower(cfg, UPPoint::parse("1;0"), 8).trace) ==
        std::vector<std::string>(8, "1"));
  // eventually zero odd track: level two evidence on the zero stages
  CHECK(k0_estimates(run_tower(cfg, UPPoint::parse(";0001"), 8).trace) ==
        std::vector<std::string>{"none", "none", "2", "none", "2", "none", "2",
                                 "none"});
}

TEST_CASE("demo configurations") {
  CHECK(core_config(1).name == "core1");
  CHECK(core_config(2).name == "core2");
  CHECK(tower_config().name == "tower2");
  CHECK(tower_config().levels.size() == 2);
  CHECK(demo_config("core1").name == "core1");
  CHECK_THROWS_AS(demo_config("core9"), PriorityError);
  CHECK_THROWS_AS(core_config(3), PriorityError);
}

TEST_CASE("verification accepts honest runs") {
  for (const char* name : {"core1", "core2", "tower2"}) {
    SimConfig cfg = demo_config(name);
    for (const char* pt : {"0;0", ";1", "01;10"}) {
      VerifyReport rep = run_and_verify(cfg, UPPoint::parse(pt), 60);
      CHECK(rep.clean());
      CHECK(rep.stages == 60);
      CHECK(rep.checks.size() >= 5);
      CHECK(rep.to_text().find("clean") != std::string::npos);
    }
  }
}

TEST_CASE("verification rejects a tampered diagram") {
  SimConfig cfg = core_config(1);
  UPPoint p = UPPoint::parse("0;0");
  SimRun run = run_corelemma(1, cfg.levels[0].pair, p, 30);
  VerifyReport good = verify_run(run.trace, run.diagram, p, cfg);
  REQUIRE(good.clean());

  SimRun bad = run;
  bad.diagram.bits[0] ^= 1;
  VerifyReport rep = verify_run(bad.trace, bad.diagram, p, cfg);
  CHECK(!rep.clean());
}

TEST_CASE("verification rejects a doctored trace") {
  SimConfig cfg = core_config(1);
  UPPoint p = UPPoint::parse("0;0");
  SimRun run = run_corelemma(1, cfg.levels[0].pair, p, 30);

  // drop a commit event
  SimRun dropped = run;
  for (std::size_t i = 0; i < dropped.trace.size(); ++i) {
    if (dropped.trace[i].kind == "commit") {
      dropped.trace.erase(dropped.trace.begin() + i);
      break;
    }
  }
  CHECK(!verify_run(dropped.trace, dropped.diagram, p, cfg).clean());

  // duplicate one instead
  SimRun doubled = run;
  for (const auto& ev : run.trace) {
    if (ev.kind == "commit") {
      doubled.trace.push_back(ev);
      break;
    }
  }
  CHECK(!verify_run(doubled.trace, doubled.diagram, p, cfg).clean());
}
