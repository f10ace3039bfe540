#include "checks.hpp"
#include "doctest.h"
#include "modelborel/pointclass.hpp"

using namespace modelborel;

TEST_CASE("ultimately periodic points") {
  UPPoint p = UPPoint::parse("001;10");
  CHECK(p.str() == "001;10");
  CHECK(p.prefix_len() == 3);
  CHECK(p.period_len() == 2);
  const std::uint8_t want[] = {0, 0, 1, 1, 0, 1, 0, 1};
  for (std::size_t i = 0; i < 8; ++i) CHECK(p.bit(i) == want[i]);
  CHECK(p.bits(4) == std::vector<std::uint8_t>{0, 0, 1, 1});
  CHECK(p.source()(5) == 1);
  CHECK(p.has_a_one());
  CHECK(p.first_one() == 2);
  CHECK(!p.last_one().has_value());
  CHECK(p.infinitely_many_ones());
  CHECK(!p.eventually_zero());

  UPPoint q = UPPoint::parse("01;0");
  CHECK(q.eventually_zero());
  CHECK(q.last_one() == 1);
  CHECK(!UPPoint::parse(";0").has_a_one());
  CHECK(!UPPoint::parse(";0").first_one().has_value());

  CHECK_THROWS_AS(UPPoint::parse("01"), PointError);    // no period
  CHECK_THROWS_AS(UPPoint::parse("0;"), PointError);    // empty period
  CHECK_THROWS_AS(UPPoint::parse("0;2"), PointError);   // bad digit
}

TEST_CASE("interleaved tracks") {
  UPPoint p = UPPoint::parse("001;10");
  UPPoint even = p.track(0), odd = p.track(1);
  for (std::size_t i = 0; i < 12; ++i) {
    CHECK(even.bit(i) == p.bit(2 * i));
    CHECK(odd.bit(i) == p.bit(2 * i + 1));
  }
  // interleaving all zeros with all ones
  UPPoint z = UPPoint::parse(";01");
  CHECK(!z.track(0).has_a_one());
  CHECK(!z.track(1).eventually_zero());
}

TEST_CASE("pairing function") {
  CHECK(pair_index(0, 0) == 0);
  for (std::size_t s = 0; s < 1000; ++s) {
    auto [m, n] = pair_unindex(s);
    CHECK(pair_index(m, n) == s);
  }
  // injectivity over a small grid
  std::vector<char> seen(190, 0);
  for (std::size_t m = 0; m < 10; ++m)
    for (std::size_t n = 0; n < 9; ++n) {
      std::size_t s = pair_index(m, n);
      if (s < seen.size()) {
        CHECK(!seen[s]);
        seen[s] = 1;
      }
    }
}

TEST_CASE("matrix view reads through the pairing") {
  MatrixPoint mp = MatrixPoint::parse("1;0");
  CHECK(mp.at(0, 0) == 1);
  CHECK(mp.at(1, 0) == 0);
  CHECK(mp.flat().prefix_len() == 1);
  // column 0 holds the single 1; every later column is empty
  CHECK(!mp.column_eventually_relevant_empty(0));
  CHECK(mp.column_eventually_relevant_empty(1));
  CHECK(mp.infinitely_many_empty_columns());
  CHECK(!MatrixPoint::parse(";1").infinitely_many_empty_columns());
}

TEST_CASE("canonical sets agree with independent membership rules") {
  auto pts = testsupport::sample_points(99, 60, 10, 5);
  BorelCode s1 = canonical_set("Sigma1");
  BorelCode s2 = canonical_set("Sigma2_evzero");
  BorelCode p2 = canonical_set("Pi2_infones");
  BorelCode p3 = canonical_set("Pi3_infemptycols");
  for (const auto& p : pts) {
    CHECK(member_up(s1, p) == testsupport::oracle_sigma1(p));
    CHECK(member_up(s2, p) == testsupport::oracle_evzero(p));
    CHECK(member_up(p2, p) == testsupport::oracle_infones(p));
    CHECK(member_up(p3, p) == testsupport::oracle_pi3(p));
    // complement flips membership
    CHECK(member_up(p2.complemented(), p) != member_up(p2, p));
  }
  CHECK(member_up(p3, MatrixPoint::parse(";0")));
}

TEST_CASE("canonical set catalogue") {
  auto names = canonical_set_names();
  REQUIRE(names.size() == 5);
  const char* levels[] = {"Sigma1", "Sigma2", "Pi2", "Pi3", "PiOmega"};
  const char* expect[] = {"Sigma1", "Sigma2_evzero", "Pi2_infones",
                          "Pi3_infemptycols", "PiOmega_tower"};
  for (std::size_t i = 0; i < names.size(); ++i) {
    CHECK(names[i] == expect[i]);
    CHECK(canonical_set(names[i]).level().str() == levels[i]);
    CHECK(canonical_set(names[i]).has_up_rule());
  }
  CHECK_THROWS_AS(canonical_set("no-such-set"), PointError);
}

TEST_CASE("prefix verdicts are sound and three valued") {
  std::vector<std::uint8_t> zeros{0, 0, 0}, one{1};
  CHECK(verdict_prefix(canonical_sigma1(), zeros) == SetVerdict::Unknown);
  CHECK(verdict_prefix(canonical_sigma1(), one) == SetVerdict::True);
  CHECK(verdict_prefix(canonical_sigma2_evzero(), zeros) ==
        SetVerdict::Unknown);
  CHECK(verdict_char(SetVerdict::False) == '0');

  // a cylinder decides as soon as its positions are covered
  BorelCode cyl(BorelCode::cylinder({{1, 1}}), SetLevel{}, "bit1");
  CHECK(verdict_prefix(cyl, one) == SetVerdict::Unknown);
  CHECK(verdict_prefix(cyl, {0, 1}) == SetVerdict::True);
  CHECK(verdict_prefix(cyl, {0, 0}) == SetVerdict::False);
  BorelCode neg = cyl.complemented();
  CHECK(verdict_prefix(neg, {0, 1}) == SetVerdict::False);
}

TEST_CASE("tower family decreases and stabilizes") {
  DecreasingFamily fam = tower_family();
  CHECK(fam.name == "tower");
  CHECK(fam.stabilization_bound == 2);
  auto pts = testsupport::sample_points(5, 30, 8, 4);
  for (const auto& p : pts) {
    bool l1 = fam.member(1, p);
    bool l2 = fam.member(2, p);
    if (l2) CHECK(l1);             // decreasing
    CHECK(fam.member(5, p) == l2); // stable past the bound
    CHECK(l1 == !testsupport::oracle_sigma1(p.track(0)));
    CHECK(l2 == (l1 && testsupport::oracle_infones(p.track(1))));
  }
  // the omega level intersects the whole family
  BorelCode po = canonical_pi_omega(fam);
  CHECK(po.level().str() == "PiOmega");
  CHECK(member_up(po, UPPoint::parse(";01")));
  CHECK(!member_up(po, UPPoint::parse(";10")));
}
