#include "doctest.h"
#include "modelborel/builder.hpp"

using namespace modelborel;

TEST_CASE("facts commit once and only against the newest element") {
  DiagramBuilder b(Vocabulary::parse_spec("P/1,R/2"));
  CHECK(b.elements() == 0);
  CHECK(b.sealed_ranks() == 0);
  CHECK_THROWS_AS(b.commit(0, {0}), BuildError);  // nothing exists yet
  CHECK_THROWS_AS(b.snapshot(), BuildError);

  CHECK(b.append_element() == 0);
  b.commit(0, {0});
  CHECK_THROWS_AS(b.commit(0, {0}), BuildError);  // committed twice

  CHECK(b.append_element() == 1);
  b.commit_sym(1, 0, 1);
  CHECK(b.fact(1, {0, 1}));
  CHECK(b.fact(1, {1, 0}));
  // element 0 is frozen now
  CHECK_THROWS_AS(b.commit(1, {0, 0}), BuildError);
  CHECK_THROWS_AS(b.commit(1, {0, 2}), BuildError);  // out of range
  CHECK_THROWS_AS(b.commit(2, {0}), BuildError);     // unknown symbol
  CHECK_THROWS_AS(b.commit(1, {0}), BuildError);     // arity mismatch

  CHECK(b.sealed_ranks() == 1);
  CHECK(b.diagram_bit(0) == 1);  // P(x0)
  CHECK_THROWS_AS(b.diagram_bit(2), BuildError);  // rank 1 not sealed

  b.append_element();
  CHECK(b.sealed_ranks() == 2);
  CHECK(b.diagram_bit(2) == 0);  // P(x1) never committed
  CHECK(b.diagram_bit(3) == 1);  // R(x0,x1)
  CHECK(b.diagram_bit(4) == 1);  // R(x1,x0)

  FiniteStructure snap = b.snapshot();
  CHECK(snap.size() == 3);
  CHECK(snap.describe() == "P(0) R(0,1) R(1,0)");
}

TEST_CASE("trace events round trip through text") {
  DiagramBuilder b(Vocabulary::parse_spec("P/1"));
  b.begin_stage(4);
  b.append_element();
  b.commit(0, {0});
  b.note("switch", "all-P -> inf-coinf");
  REQUIRE(b.trace().size() == 2);
  CHECK(b.trace()[0].stage == 4);
  CHECK(b.trace()[0].kind == "commit");
  CHECK(b.trace()[0].detail == "P(0)");
  CHECK(b.trace()[1].line() == "4 switch all-P -> inf-coinf");

  std::string text = trace_to_text(b.trace());
  std::vector<TraceEvent> back = trace_from_text(text);
  REQUIRE(back.size() == 2);
  CHECK(back[1].stage == 4);
  CHECK(back[1].kind == "switch");
  CHECK(back[1].detail == "all-P -> inf-coinf");
  CHECK_THROWS_AS(TraceEvent::parse_line("nonsense"), BuildError);
}

namespace {

// appends one element per stage and marks even ones
class EvenPlan final : public StagePlan {
 public:
  Vocabulary vocab() const override { return Vocabulary::parse_spec("P/1"); }
  void run_stage(std::size_t s, DiagramBuilder& b) override {
    std::size_t e = b.append_element();
    if (s % 2 == 0) b.commit(0, {e});
  }
};

}  // namespace

TEST_CASE("plan stream emits sealed rank segments") {
  PlanStream st(std::make_shared<EvenPlan>());
  auto bits = st.prefix(8);
  CHECK(bits == std::vector<std::uint8_t>{1, 0, 1, 0, 1, 0, 1, 0});
  CHECK(st.stages_run() >= 9);  // rank 7 sealed needs 9 elements

  std::size_t before = st.stages_run();
  st.run_stages(4);  // already past that; cumulative, not additive
  CHECK(st.stages_run() == before);
  st.run_stages(before + 3);
  CHECK(st.stages_run() == before + 3);

  FiniteStructure s = st.stage_by_elements(4);
  CHECK(s.describe() == "P(0) P(2)");
}
