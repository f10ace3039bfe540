#include <random>

#include "checks.hpp"
#include "doctest.h"
#include "modelborel/diagram.hpp"

using namespace modelborel;
using testsupport::FedStream;

TEST_CASE("atom enumeration order and counts") {
  AtomEnumeration en(Vocabulary::parse_spec("P/1,R/2"));
  // n elements see n + n*n atoms
  const std::size_t counts[] = {0, 2, 6, 12, 20};
  for (std::size_t n = 0; n <= 4; ++n) CHECK(en.count_below(n) == counts[n]);

  const char* order[] = {"P(x0)",     "R(x0,x0)", "P(x1)",    "R(x0,x1)",
                         "R(x1,x0)",  "R(x1,x1)", "P(x2)",    "R(x0,x2)",
                         "R(x1,x2)",  "R(x2,x0)", "R(x2,x1)", "R(x2,x2)"};
  for (std::size_t i = 0; i < 12; ++i) {
    CHECK(en.atom_text(i) == order[i]);
    auto a = en.atom(i);
    CHECK(en.index_of(a.symbol, a.tuple) == i);
    std::size_t rank = 0;
    for (std::size_t t : a.tuple) rank = std::max(rank, t);
    CHECK(en.rank_of(i) == rank);
  }
}

TEST_CASE("atom index is monotone in rank") {
  AtomEnumeration en(Vocabulary::parse_spec("T/3"));
  for (std::size_t i = 0; i + 1 < 100; ++i)
    CHECK(en.rank_of(i) <= en.rank_of(i + 1));
  CHECK(en.count_below(3) == 27);
}

TEST_CASE("encode and decode are inverse") {
  const char* specs[] = {"P/1", "R/2", "P/1,R/2", "E/2,Q/1", "T/3"};
  std::mt19937_64 rng(7);
  for (const char* spec : specs) {
    Vocabulary v = Vocabulary::parse_spec(spec);
    for (int trial = 0; trial < 40; ++trial) {
      std::size_t n = 1 + rng() % 4;
      FiniteStructure s = testsupport::random_structure(rng, v, n);
      DiagramPrefix p = encode(s);
      CHECK(p.bits.size() == AtomEnumeration(v).count_below(n));
      CHECK(decode(p, n) == s);
      // text form carries the same bits
      CHECK(DiagramPrefix::parse_bits(p.to_text()) == p.bits);
    }
  }
}

TEST_CASE("decode needs a full rank segment") {
  Vocabulary v = Vocabulary::parse_spec("R/2");
  DiagramPrefix p{v, {1, 0, 0}};
  CHECK_THROWS_AS(decode(p, 2), DiagramError);
  CHECK_THROWS_AS(decode(p, 0), DiagramError);
  CHECK(decode(p, 1).holds(0, {0, 0}));
}

TEST_CASE("diagram text uses 64 column blocks") {
  DiagramPrefix p{Vocabulary::parse_spec("P/1"), {}};
  p.bits.assign(70, 1);
  std::string text = p.to_text();
  CHECK(text.size() == 72);  // 64 + \n + 6 + \n
  CHECK(text[64] == '\n');
  CHECK(text.back() == '\n');
  CHECK(DiagramPrefix::parse_bits(text).size() == 70);
  CHECK_THROWS_AS(DiagramPrefix::parse_bits("01x"), DiagramError);
}

TEST_CASE("stream caches bits and serves stages") {
  Vocabulary v = Vocabulary::parse_spec("P/1");
  FedStream st(v, UPPoint::parse("0110;10").source());
  CHECK(st.bit(0) == 0);
  CHECK(st.bit(3) == 0);
  auto pre = st.prefix(6);
  CHECK(pre == std::vector<std::uint8_t>{0, 1, 1, 0, 1, 0});
  FiniteStructure s3 = st.stage_by_elements(3);
  CHECK(s3.size() == 3);
  CHECK(s3.describe() == "P(1) P(2)");
}

TEST_CASE("staged evaluation reports per stage verdicts") {
  Vocabulary v = Vocabulary::parse_spec("P/1");
  FedStream st(v, UPPoint::parse("0110;10").source());
  Formula f = parse_formula("(exists x0 (P x0))", v);
  StagedVerdict sv = eval_staged(f, st, 6);
  std::string got;
  for (Verdict q : sv.stages) got.push_back(verdict_char(q));
  CHECK(got == "?01111");
  CHECK(!sv.limit.has_value());

  FedStream st2(v, UPPoint::parse("0110;10").source());
  StagedVerdict sw = eval_staged(
      f, st2, 4, [](const Formula&) { return std::optional<bool>(true); },
      "demo-oracle");
  CHECK(sw.limit == true);
  CHECK(sw.limit_source == "demo-oracle");

  Formula open = parse_formula("(P x0)", v);
  CHECK_THROWS_AS(eval_staged(open, st, 3), FormulaError);
}
