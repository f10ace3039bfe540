#include <memory>

#include "checks.hpp"
#include "doctest.h"
#include "modelborel/reductions.hpp"

using namespace modelborel;
using testsupport::FedStream;

namespace {

std::shared_ptr<FedStream> monadic(const char* name, const char* point) {
  return std::make_shared<FedStream>(Vocabulary::parse_spec(name),
                                     UPPoint::parse(point).source());
}

}  // namespace

TEST_CASE("the copying reduction writes input bits as predicate facts") {
  auto r = run_transducer(r_infcoinf(), UPPoint::parse("101;0"), 5);
  CHECK(r.out == std::vector<std::uint8_t>{1, 0, 1, 0, 0});
  CHECK(r.consumed == 5);
}

TEST_CASE("padding interleaves zeros") {
  auto r = run_transducer(pad(), UPPoint::parse("11;0"), 6);
  CHECK(r.out == std::vector<std::uint8_t>{1, 0, 1, 0, 0, 0});
  // infinitely many ones survive, infinitely many zeros appear
  auto s = run_transducer(pad(), UPPoint::parse(";1"), 40);
  std::size_t ones = 0;
  for (auto b : s.out) ones += b;
  CHECK(ones == 20);
}

TEST_CASE("matching replay counts stage activity") {
  MatchingCounts c = replay_matching_counts(UPPoint::parse(";0").source(), 10);
  CHECK(c.stages == 10);
  CHECK(c.matched_pairs == 10);
  CHECK(c.matched_a == 0);
  CHECK(c.unmatched_a == 10);

  MatchingCounts d = replay_matching_counts(UPPoint::parse(";1").source(), 10);
  CHECK(d.matched_a + d.unmatched_a == d.stages);
  CHECK(d.matched_a == 4);

  // counts agree with the bits the transducer actually emits
  auto run = run_transducer(r_matching(), UPPoint::parse("0;0"), 64);
  std::string got;
  for (auto b : run.out) got.push_back('0' + b);
  CHECK(got ==
        "0000010100000000000000000000010000100000000000000000000000000000");
}

TEST_CASE("matching trend separates the two limit behaviours") {
  const char* members[] = {";0", "11;0", "1;001"};
  const char* non[] = {";1", "0;10", "0101;1"};
  for (const char* p : members)
    CHECK(analyze_matching_trend(UPPoint::parse(p)).unmatched_infinite);
  for (const char* p : non)
    CHECK(!analyze_matching_trend(UPPoint::parse(p)).unmatched_infinite);

  for (const auto& p : testsupport::sample_points(31, 40, 6, 4)) {
    MatchingTrend t = analyze_matching_trend(p);
    CHECK(t.unmatched_infinite == testsupport::oracle_pi3(p));
    CHECK(t.rows > 0);
    CHECK(t.horizon >= t.rows);
  }
}

TEST_CASE("marker extension recovers the source stagewise") {
  Vocabulary vp = Vocabulary::parse_spec("P/1");
  CHECK(marker_vocabulary(vp).spec() == "O/1,pP/1,nP/1,wP/2");
  CHECK(marker_vocabulary(Vocabulary::parse_spec("R/2,Q/1")).spec() ==
        "O/1,pR/1,nR/1,wR/3,pQ/1,nQ/1,wQ/2");

  auto ext = marker_extend(monadic("P/1", "0110;10"));
  CHECK(ext->vocab().spec() == "O/1,pP/1,nP/1,wP/2");
  MarkerRecovery rec(ext, vp);
  auto ref = monadic("P/1", "0110;10");
  for (std::size_t n = 1; n <= 10; ++n)
    CHECK(rec.stage_view(n) == ref->stage_by_elements(n));
}

TEST_CASE("axiom lifting relativizes and adds witness quantifiers") {
  Vocabulary vp = Vocabulary::parse_spec("P/1");
  Formula a1 = parse_formula("(forall x0 (P x0))", vp);
  Formula lifted = lift_axiom(a1, vp);
  // the witness existential sits inside the universal
  CHECK(classify(lifted).str() == "A2");
  Formula e2 = parse_formula(
      "(exists x0 (forall x1 (and (P x0) (not (P x1)))))", vp);
  CHECK(classify(e2).str() == "E2");
  CHECK(classify(lift_axiom(e2, vp)).str() == "E3");
  Formula open = parse_formula("(P x0)", vp);
  CHECK_THROWS_AS(lift_axiom(open, vp), ReductionError);
}

TEST_CASE("tagged join keeps both factors apart") {
  auto a = monadic("PA/1", "1;0");
  auto b = monadic("PB/1", ";1");
  auto j = diff_join(a, b);
  CHECK(j->vocab().spec() == "U/1,PA/1,PB/1");
  CHECK(j->stage_by_elements(6).describe() ==
        "U(0) U(2) U(4) PA(0) PB(1) PB(3) PB(5)");
  // clashing names are rejected
  CHECK_THROWS_AS(diff_join(monadic("P/1", ";0"), monadic("P/1", ";0")),
                  ReductionError);
  CHECK_THROWS_AS(diff_join(monadic("U/1", ";0"), monadic("P/1", ";0")),
                  ReductionError);
}

TEST_CASE("section tags every element with one flag") {
  auto sec = section_structure(2, monadic("P/1", "101;1"));
  CHECK(sec->vocab().spec() == "R0/1,R1/1,R2/1,R3/1,P/1");
  FiniteStructure s = sec->stage_by_elements(5);
  CHECK(s.count_of(2) == 5);  // the chosen flag
  CHECK(s.count_of(0) == 0);
  CHECK(s.count_of(1) == 0);
  CHECK(s.count_of(3) == 0);
  // the embedded copy keeps the source facts
  int p = sec->vocab().require("P");
  CHECK(s.holds(p, {0}));
  CHECK(!s.holds(p, {1}));
  CHECK(s.holds(p, {2}));
  CHECK_THROWS_AS(section_structure(kSectionCount, monadic("P/1", ";0")),
                  ReductionError);
}

TEST_CASE("graph coding round trips whole stages") {
  Vocabulary vp = Vocabulary::parse_spec("P/1");
  auto g = to_graph(monadic("P/1", "0110;10"));
  CHECK(g->vocab().spec() == "E/2");
  auto dec = decode_graph(g, vp);
  auto ref = monadic("P/1", "0110;10");
  for (std::size_t n = 1; n <= 8; ++n)
    CHECK(dec->stage_by_elements(n) == ref->stage_by_elements(n));

  // binary relations fit too
  Vocabulary vr = Vocabulary::parse_spec("R/2");
  auto dec2 = decode_graph(to_graph(monadic("R/2", "1;10")), vr);
  auto ref2 = monadic("R/2", "1;10");
  for (std::size_t n = 1; n <= 4; ++n)
    CHECK(dec2->stage_by_elements(n) == ref2->stage_by_elements(n));

  CHECK_THROWS_AS(to_graph(monadic("T/5", ";0")), ReductionError);
}

TEST_CASE("certificates hold on a point battery") {
  auto pts = testsupport::sample_points(17, 30, 8, 4);
  for (const ReductionCertificate& cert :
       {infcoinf_certificate(), matching_certificate()}) {
    CertificateCheck ck = check_certificate(cert, pts);
    CHECK(ck.points == pts.size());
    CHECK(ck.clean());
  }
  CHECK(infcoinf_certificate().source.name() == "Pi2_infones");
  CHECK(matching_certificate().source.name() == "Pi3_infemptycols");
  CHECK(matching_certificate().target_name == "matching[inf,inf]");
}

TEST_CASE("certificate checking notices a wrong target claim") {
  ReductionCertificate cert = infcoinf_certificate();
  cert.target_on_output = [](const UPPoint&) { return true; };
  CertificateCheck ck =
      check_certificate(cert, testsupport::sample_points(3, 12, 6, 3));
  CHECK(!ck.clean());
}

TEST_CASE("reduction catalogue") {
  auto names = reduction_names();
  const char* expect[] = {"infcoinf", "pad",    "matching", "linord",
                          "marker",   "diffjoin", "section",  "tograph"};
  REQUIRE(names.size() == 8);
  for (std::size_t i = 0; i < names.size(); ++i) CHECK(names[i] == expect[i]);
}
