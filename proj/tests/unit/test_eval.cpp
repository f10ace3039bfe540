#include "doctest.h"
#include "modelborel/eval.hpp"
#include "modelborel/structure.hpp"

using namespace modelborel;

TEST_CASE("finite evaluation on hand built structures") {
  Vocabulary v = Vocabulary::parse_spec("P/1,R/2");
  FiniteStructure s(v, 3);
  s.set(0, {0});
  s.set(0, {1});
  s.set(1, {0, 1});
  s.set(1, {1, 2});

  auto ev = [&](const char* t) { return eval_finite(parse_formula(t, v), s); };
  CHECK(ev("(exists x0 (P x0))"));
  CHECK(!ev("(forall x0 (P x0))"));
  CHECK(ev("(exists x0 (and (P x0) (not (exists x1 (R x1 x0)))))"));
  CHECK(ev("(forall x0 (forall x1 (implies (R x0 x1) (not (= x0 x1)))))"));
  CHECK(!ev("(forall x0 (exists x1 (R x0 x1)))"));  // 2 has no successor
  CHECK(ev("(exists x0 (exists x1 (and (R x0 x1) (not (P x1)))))"));

  // environments bind free variables
  Formula open = parse_formula("(R x0 x1)", v);
  std::vector<std::optional<std::size_t>> env(2);
  env[0] = 0;
  env[1] = 1;
  CHECK(eval_finite(open, s, env));
  env[1] = 2;
  CHECK(!eval_finite(open, s, env));
  CHECK_THROWS_AS(eval_finite(open, s), FormulaError);
}

TEST_CASE("structure bookkeeping") {
  Vocabulary v = Vocabulary::parse_spec("R/2");
  FiniteStructure s(v, 2);
  s.set(0, {1, 0});
  CHECK(s.count_of(0) == 1);
  CHECK(s.tuples_of(0) == std::vector<std::vector<std::size_t>>{{1, 0}});
  CHECK(s.describe() == "R(1,0)");
  CHECK(FiniteStructure(v, 2).describe() == "{}");
  FiniteStructure r = s.restrict_prefix(1);
  CHECK(r.size() == 1);
  CHECK(r.count_of(0) == 0);
  CHECK_THROWS_AS(s.holds(0, {0, 2}), StructureError);
}

TEST_CASE("structure enumeration covers the full table space") {
  Vocabulary v = Vocabulary::parse_spec("P/1");
  StructureEnumerator en(v, 2);
  CHECK(en.total() == 4);
  std::size_t seen = 0, with_p0 = 0;
  FiniteStructure s;
  while (en.next(s)) {
    ++seen;
    if (s.holds(0, {0})) ++with_p0;
  }
  CHECK(seen == 4);
  CHECK(with_p0 == 2);
}

TEST_CASE("small equivalence distinguishes inequivalent sentences") {
  Vocabulary v = Vocabulary::parse_spec("P/1");
  Formula a = parse_formula("(exists x0 (P x0))", v);
  Formula b = parse_formula("(not (forall x0 (not (P x0))))", v);
  Formula c = parse_formula("(forall x0 (P x0))", v);
  CHECK(equivalent_on_small(a, b, v, 3));
  CHECK(!equivalent_on_small(a, c, v, 2));
}

TEST_CASE("bounded model search") {
  Vocabulary v = Vocabulary::parse_spec("R/2");
  auto m = find_finite_model(
      parse_formula("(exists x0 (exists x1 (and (R x0 x1) (not (R x1 x0)))))",
                    v),
      v, 3);
  REQUIRE(m.has_value());
  CHECK(m->size() == 2);
  CHECK(eval_finite(
      parse_formula("(exists x0 (exists x1 (and (R x0 x1) (not (R x1 x0)))))",
                    v),
      *m));

  Vocabulary vp = Vocabulary::parse_spec("P/1");
  CHECK(!find_finite_model(
       parse_formula("(exists x0 (and (P x0) (not (P x0))))", vp), vp, 3)
       .has_value());

  auto u = find_finite_model(parse_formula("(forall x0 (P x0))", vp), vp, 3);
  REQUIRE(u.has_value());
  CHECK(u->size() == 1);
  CHECK(u->holds(0, {0}));

  // witness block then universal block is the supported shape
  auto mixed = find_finite_model(
      parse_formula("(exists x0 (forall x1 (not (R x1 x0))))", v), v, 2);
  REQUIRE(mixed.has_value());
  CHECK(eval_finite(
      parse_formula("(exists x0 (forall x1 (not (R x1 x0))))", v), *mixed));
}
