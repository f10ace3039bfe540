#include "doctest.h"
#include "modelborel/formula.hpp"
#include "modelborel/prenex.hpp"

using namespace modelborel;

TEST_CASE("vocabulary spec roundtrip") {
  Vocabulary v = Vocabulary::parse_spec("lt/2,S/2");
  CHECK(v.size() == 2);
  CHECK(v.name(0) == "lt");
  CHECK(v.arity(0) == 2);
  CHECK(v.spec() == "lt/2,S/2");
  CHECK(v.require("S") == 1);
  CHECK(v.index_of("missing") == -1);
  CHECK_THROWS_AS(v.require("missing"), VocabError);
  CHECK_THROWS_AS(Vocabulary::parse_spec("P"), VocabError);
  CHECK_THROWS_AS((Vocabulary{{"P", 1}, {"P", 2}}), VocabError);
}

TEST_CASE("parse and print are inverse on canonical text") {
  Vocabulary v = Vocabulary::parse_spec("P/1,R/2");
  const char* samples[] = {
      "(P x0)",
      "(= x0 x1)",
      "(not (R x0 x1))",
      "(and (P x0) (R x0 x1) (P x1))",
      "(or (P x0) (not (P x0)))",
      "(implies (P x0) (R x0 x0))",
      "(exists x0 (forall x1 (R x0 x1)))",
      "(forall x0 (exists x1 (and (R x0 x1) (not (= x0 x1)))))",
  };
  for (const char* s : samples) {
    Formula f = parse_formula(s, v);
    CHECK(f.print(v) == s);
    CHECK(parse_formula(f.print(v), v).same_as(f));
  }
}

TEST_CASE("parse rejects malformed input with positions") {
  Vocabulary v = Vocabulary::parse_spec("P/1");
  CHECK_THROWS_AS(parse_formula("(P x0", v), ParseError);
  CHECK_THROWS_AS(parse_formula("(P x0 x1)", v), FormulaError);
  CHECK_THROWS_AS(parse_formula("(Q x0)", v), FormulaError);
  CHECK_THROWS_AS(parse_formula("(and (P x0))", v), FormulaError);
  CHECK_THROWS_AS(parse_formula("", v), FormulaError);
  CHECK_THROWS_AS(parse_formula("(not (P y))", v), FormulaError);
}

TEST_CASE("vocabulary inference from symbol usage") {
  auto [f, v] = parse_formula_infer("(exists x0 (and (R x0 x0) (P x0)))");
  CHECK(v.spec() == "R/2,P/1");
  CHECK(f.is_sentence());
  // inconsistent arity use is an error
  CHECK_THROWS_AS(parse_formula_infer("(and (R x0 x0) (R x0))"),
                  FormulaError);
}

TEST_CASE("free variables and quantifier counts") {
  Vocabulary v = Vocabulary::parse_spec("R/2");
  Formula f = parse_formula("(exists x1 (R x0 x1))", v);
  CHECK(f.free_vars() == std::vector<int>{0});
  CHECK(!f.is_sentence());
  CHECK(f.quantifier_count() == 1);
  CHECK(f.max_var() == 1);
  Formula g = parse_formula("(R x0 x1)", v);
  CHECK(g.quantifier_free());
  CHECK(g.free_vars() == std::vector<int>{0, 1});
}

TEST_CASE("level parse and print") {
  Level l = Level::parse("A2");
  CHECK(l.kind == Quant::A);
  CHECK(l.n == 2);
  CHECK(l.str() == "A2");
  CHECK(Level::parse("E0") == Level{Quant::E, 0});
  CHECK_THROWS_AS(Level::parse("B1"), FormulaError);
  CHECK_THROWS_AS(Level::parse("E"), FormulaError);
  CHECK(dual(Quant::E) == Quant::A);
}

TEST_CASE("classification of prefix shapes") {
  Vocabulary v = Vocabulary::parse_spec("P/1,R/2");
  auto cls = [&](const char* s) { return classify(parse_formula(s, v)).str(); };
  CHECK(cls("(P x0)") == "E0");
  CHECK(cls("(exists x0 (P x0))") == "E1");
  CHECK(cls("(forall x0 (P x0))") == "A1");
  CHECK(cls("(forall x0 (exists x1 (R x0 x1)))") == "A2");
  CHECK(cls("(exists x0 (forall x1 (R x0 x1)))") == "E2");
  // same-kind nesting stays one block
  CHECK(cls("(exists x0 (exists x1 (R x0 x1)))") == "E1");
  // negation flips the leading kind
  CHECK(cls("(not (forall x0 (exists x1 (R x0 x1))))") == "E2");
  // a conjunction of an E1 and an A1 fits both two-block shapes; ties pick E
  CHECK(cls("(and (exists x0 (P x0)) (forall x1 (P x1)))") == "E2");
}

TEST_CASE("shape minimization sees through double negation") {
  Vocabulary v = Vocabulary::parse_spec("R/2");
  Formula f = parse_formula("(not (not (forall x0 (exists x1 (R x0 x1)))))", v);
  LevelShape sh = shape_of(f);
  CHECK(sh.a == 2);
  CHECK(sh.level().str() == "A2");
  CHECK(sh.within(Level::parse("A2")));
  CHECK(sh.within(Level::parse("A3")));
  CHECK(!sh.within(Level::parse("A1")));
}

TEST_CASE("prenex produces an equivalent alternation-minimal form") {
  Vocabulary v = Vocabulary::parse_spec("P/1,R/2");
  Formula f = parse_formula(
      "(implies (exists x0 (P x0)) (forall x0 (exists x1 (R x0 x1))))", v);
  PrenexForm pf = prenex(f);
  // leading universal from the negated antecedent merges with the A block
  auto blocks = pf.blocks();
  REQUIRE(blocks.size() == 2);
  CHECK(blocks[0].first == Quant::A);
  CHECK(blocks[1].first == Quant::E);
  CHECK(pf.matrix.quantifier_free());
  CHECK(classify(pf.to_formula()) == classify(f));
}

TEST_CASE("prenex drops vacuous quantifiers") {
  Vocabulary v = Vocabulary::parse_spec("P/1");
  Formula f = parse_formula("(forall x1 (exists x0 (P x0)))", v);
  PrenexForm pf = prenex(f);
  CHECK(pf.prefix.size() == 1);
  CHECK(pf.prefix[0].first == Quant::E);
}

TEST_CASE("prenex output is byte stable") {
  Vocabulary v = Vocabulary::parse_spec("P/1,R/2");
  Formula f = parse_formula(
      "(and (exists x0 (P x0)) (forall x0 (exists x1 (R x0 x1))))", v);
  std::string once = prenex(f).to_formula().print(v);
  std::string twice = prenex(f).to_formula().print(v);
  CHECK(once == twice);
  CHECK(prenex(parse_formula(once, v)).to_formula().print(v) == once);
}
