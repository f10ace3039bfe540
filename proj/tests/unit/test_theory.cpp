#include "checks.hpp"
#include "doctest.h"
#include "modelborel/reductions.hpp"
#include "modelborel/theory.hpp"

using namespace modelborel;

TEST_CASE("cardinalities parse and cap") {
  CHECK(Card::parse("inf") == Card::infinite());
  CHECK(Card::parse("3") == Card::finite(3));
  CHECK(Card::infinite().capped(4) == 4);
  CHECK(Card::finite(2).capped(4) == 2);
  CHECK(Card::finite(9).capped(4) == 4);
  CHECK(Card::finite(0).str() == "0");
  CHECK_THROWS_AS(Card::parse("many"), TheoryError);
  CHECK_THROWS_AS(Card::parse(""), TheoryError);
}

TEST_CASE("theory catalogue") {
  auto ids = theory_ids();
  const char* expect[] = {"all-P",  "inf-coinf", "perfect-matching",
                          "inf-inf-matching", "linord", "dense"};
  REQUIRE(ids.size() == 6);
  for (std::size_t i = 0; i < ids.size(); ++i) CHECK(ids[i] == expect[i]);
  for (const auto& id : ids) {
    TheoryHandle h = theory_by_id(id);
    CHECK(h.complete());
    if (h.vocabulary.index_of("lt") < 0) {
      REQUIRE(h.family != nullptr);
      // two infinite-or-capped region sizes, at least one infinite
      CHECK(h.family->members(4).size() == 9);
    }
  }
  CHECK_THROWS_AS(theory_by_id("no-such-theory"), TheoryError);
}

TEST_CASE("oracle decisions on the shipped theories") {
  TheoryHandle ic = theory_by_id("inf-coinf");
  Formula split_p = parse_formula(
      "(exists x0 (exists x1 (and (P x0) (not (P x1)))))", ic.vocabulary);
  CHECK(ic.decide(split_p));
  CHECK(!theory_by_id("all-P").decide(split_p));
  CHECK(theory_by_id("all-P").decide(
      parse_formula("(forall x0 (P x0))", ic.vocabulary)));

  TheoryHandle pm = theory_by_id("perfect-matching");
  Formula total = parse_formula("(forall x0 (exists x1 (R x0 x1)))",
                                pm.vocabulary);
  CHECK(pm.decide(total));
  CHECK(!theory_by_id("inf-inf-matching").decide(total));

  CHECK(matching_base_axioms(pm.vocabulary).size() == 3);
  for (const Formula& ax : matching_base_axioms(pm.vocabulary)) {
    CHECK(pm.decide(ax));
    CHECK(theory_by_id("inf-inf-matching").decide(ax));
  }
  CHECK_THROWS_AS(pm.decide(parse_formula("(R x0 x1)", pm.vocabulary)),
                  TheoryError);
}

TEST_CASE("config files select a family and a cap") {
  TheoryConfig tc = parse_theory_config("matching inf inf cap=2");
  CHECK(tc.handle.id == "matching[inf,inf]");
  CHECK(tc.handle.vocabulary.spec() == "R/2");
  CHECK(tc.rank_cap == 2);

  TheoryConfig tm = parse_theory_config("# demo\nmonadic P=inf notP=0\n");
  CHECK(tm.handle.id == "monadic[inf,0]");
  CHECK(tm.rank_cap == 3);

  CHECK(parse_theory_config("linord").handle.id == "linord");
  CHECK_THROWS_AS(parse_theory_config("swamp inf"), TheoryError);
  CHECK_THROWS_AS(parse_theory_config(""), TheoryError);
  CHECK_THROWS_AS(parse_theory_config("monadic P=inf"), TheoryError);
  CHECK_THROWS_AS(parse_theory_config("monadic P=0 notP=0"), TheoryError);
}

TEST_CASE("canonical sentence stock is deterministic and rank bounded") {
  Vocabulary vp = Vocabulary::parse_spec("P/1");
  auto s2 = canonical_sentences(vp, 2);
  CHECK(s2.size() == 174);
  CHECK(canonical_sentences(vp, 3).size() == 966);
  CHECK(canonical_sentences(Vocabulary::parse_spec("R/2"), 2).size() == 726);
  auto again = canonical_sentences(vp, 2);
  for (std::size_t i = 0; i < 20; ++i)
    CHECK(s2[i].print(vp) == again[i].print(vp));
  for (const Formula& f : s2) {
    CHECK(f.is_sentence());
    CHECK(f.quantifier_count() <= 2);
  }
}

TEST_CASE("fragment containment in one direction only") {
  Level e1 = Level::parse("E1");
  auto ok = check_fragment_containment(theory_by_id("all-P"),
                                       theory_by_id("inf-coinf"), e1, 2);
  CHECK(ok.checked == 51);
  CHECK(ok.contained());

  auto bad = check_fragment_containment(theory_by_id("inf-coinf"),
                                        theory_by_id("all-P"), e1, 2);
  CHECK(!bad.contained());
  CHECK(bad.counterexamples.size() == 15);
  CHECK(bad.counterexamples[0].print(theory_by_id("all-P").vocabulary) ==
        "(exists x0 (not (P x0)))");
}

TEST_CASE("completion splits a theory around a witness") {
  TheoryHandle ic = theory_by_id("inf-coinf");
  Formula w = parse_formula(
      "(exists x0 (exists x1 (and (P x0) (not (P x1)))))", ic.vocabulary);
  LindenbaumResult lr = lindenbaum_complete({}, w, Level::parse("A1"), ic, 2);
  CHECK(lr.avoided.str() == "A1");
  CHECK(lr.containment.str() == "E1");
  CHECK(lr.plus.value_of(w) == true);
  CHECK(lr.minus.value_of(w) == false);
  // both towers decide the whole stock
  CHECK(lr.plus.decisions.size() == 174);
  CHECK(lr.minus.decisions.size() == 174);
  CHECK(lr.containment_checked == 51);
  CHECK(lr.containment_ok());
  // containment-level truths of the minus tower all hold in the plus tower
  for (const TowerDecision& d : lr.minus.decisions) {
    if (!d.value || !shape_of(d.sentence).within(lr.containment)) continue;
    CHECK(lr.plus.value_of(d.sentence) == true);
  }
  // the reverse direction genuinely fails: the plus tower affirms low
  // sentences the minus tower denies
  bool reverse_gap = false;
  for (const TowerDecision& d : lr.plus.decisions) {
    if (!d.value || !shape_of(d.sentence).within(lr.containment)) continue;
    if (lr.minus.value_of(d.sentence) == false) reverse_gap = true;
  }
  CHECK(reverse_gap);
}

TEST_CASE("completion rejects unusable witnesses") {
  TheoryHandle ic = theory_by_id("inf-coinf");
  Formula low = parse_formula("(forall x0 (P x0))", ic.vocabulary);
  CHECK_THROWS_AS(
      lindenbaum_complete({}, low, Level::parse("A1"), ic, 2), TheoryError);

  Formula w = parse_formula(
      "(exists x0 (exists x1 (and (P x0) (not (P x1)))))", ic.vocabulary);
  CHECK_THROWS_AS(lindenbaum_complete({w}, w, Level::parse("A1"), ic, 2),
                  TheoryError);
}

TEST_CASE("witness search over the level fragment") {
  SplitResult sr =
      split_theory(theory_by_id("inf-inf-matching"), Level::parse("A2"), 2);
  REQUIRE(sr.found);
  CHECK(sr.witness->print(theory_by_id("inf-inf-matching").vocabulary) ==
        "(exists x0 (forall x1 (and (not (R x0 x0)) (not (R x0 x1)))))");
  REQUIRE(sr.towers.has_value());
  CHECK(sr.towers->containment_ok());
  CHECK(sr.towers->containment_checked == 552);

  SplitResult none = split_theory(theory_by_id("all-P"), Level::parse("A1"), 2);
  CHECK(!none.found);
  CHECK(!none.note.empty());

  SplitResult ic = split_theory(theory_by_id("inf-coinf"), Level::parse("A1"), 2);
  REQUIRE(ic.found);
  CHECK(ic.witness->print(theory_by_id("inf-coinf").vocabulary) ==
        "(exists x0 (P x0))");
}

TEST_CASE("axiom sets compile to codes at the right level") {
  Vocabulary v = Vocabulary::parse_spec("R/2");
  auto base = matching_base_axioms(v);
  BorelCode fixed = axioms_to_borel(base, Level::parse("A2"), v);
  CHECK(fixed.level().str() == "Pi2");
  CHECK(fixed.name() == "axioms-A2");
  BorelCode gen = axioms_to_borel(
      [v](std::size_t i) { return matching_axiom(v, i); }, Level::parse("E2"),
      v);
  CHECK(gen.level().str() == "Pi3");

  // a diagram with a self loop refutes irreflexivity at a finite stage
  std::vector<std::uint8_t> loop(24, 1);
  CHECK(verdict_prefix(fixed, loop) == SetVerdict::False);
  auto run = run_transducer(r_matching(), UPPoint::parse(";10"), 96);
  CHECK(verdict_prefix(fixed, run.out) != SetVerdict::False);
}

TEST_CASE("window classifier for unary predicate streams") {
  auto [p1, n1] = classify_monadic_bits(UPPoint::parse(";10").bits(16), 4);
  CHECK(p1 == Card::infinite());
  CHECK(n1 == Card::infinite());
  auto [p2, n2] = classify_monadic_bits(UPPoint::parse("1;0").bits(16), 4);
  CHECK(p2 == Card::finite(1));
  CHECK(n2 == Card::infinite());
}

TEST_CASE("exact truth in the two order presentations") {
  Vocabulary v = order_vocabulary();
  auto ev = [&](const char* t, bool pairs) {
    return linorder_eval(parse_formula(t, v), pairs);
  };
  // adjacent pairs exist only in the paired presentation
  CHECK(ev("(exists x0 (exists x1 (S x0 x1)))", true));
  CHECK(!ev("(exists x0 (exists x1 (S x0 x1)))", false));
  // no presentation gives every element a successor pair
  CHECK(!ev("(forall x0 (exists x1 (S x0 x1)))", true));
  CHECK(!ev("(forall x0 (exists x1 (S x0 x1)))", false));
  // both orders are endless
  CHECK(ev("(forall x0 (exists x1 (lt x0 x1)))", true));
  CHECK(ev("(forall x0 (exists x1 (lt x0 x1)))", false));
  // and have no least element
  CHECK(!ev("(exists x0 (forall x1 (not (lt x1 x0))))", true));
  CHECK(!ev("(exists x0 (forall x1 (not (lt x1 x0))))", false));
  // density separates them
  const char* dense =
      "(forall x0 (forall x1 (implies (lt x0 x1) "
      "(exists x2 (and (lt x0 x2) (lt x2 x1))))))";
  CHECK(!ev(dense, true));
  CHECK(ev(dense, false));
  // the distinguishing sentence
  CHECK(linorder_eval(sentence_star(), true));
  CHECK(!linorder_eval(sentence_star(), false));
  CHECK(classify(sentence_star()).str() == "E3");
}
