#include <memory>

#include "doctest.h"
#include "modelborel/reductions.hpp"
#include "modelborel/transducer.hpp"

using namespace modelborel;

namespace {

// claims one output per input but only emits on every second step
Transducer broken_halfrate() {
  class R final : public Transducer::Run {
   public:
    std::vector<std::uint8_t> step(std::uint8_t in) override {
      if (++n_ % 2) return {};
      return {in};
    }
   private:
    std::size_t n_ = 0;
  };
  return Transducer("broken-halfrate", [] { return std::make_unique<R>(); },
                    [](std::size_t n) { return n; });
}

// emits three bits and then goes silent forever
Transducer broken_stall() {
  class R final : public Transducer::Run {
   public:
    std::vector<std::uint8_t> step(std::uint8_t in) override {
      if (n_ >= 3) return {};
      ++n_;
      return {in};
    }
   private:
    std::size_t n_ = 0;
  };
  return Transducer("broken-stall", [] { return std::make_unique<R>(); },
                    [](std::size_t n) { return n; });
}

}  // namespace

TEST_CASE("identity copies its input") {
  Transducer id = Transducer::identity();
  CHECK(id.modulus(17) == 17);
  auto r = run_transducer(id, UPPoint::parse("0101;1"), 8);
  CHECK(r.productive);
  CHECK(r.consumed == 8);
  CHECK(r.out == std::vector<std::uint8_t>{0, 1, 0, 1, 1, 1, 1, 1});
}

TEST_CASE("runs respect caller supplied budgets") {
  Transducer id = Transducer::identity();
  auto r = run_transducer(id, UPPoint::parse(";1"), 10, 4);
  CHECK(!r.productive);
  CHECK(r.out.size() == 4);
  CHECK(r.consumed == 4);
}

TEST_CASE("composition chains runs and moduli") {
  Transducer c = Transducer::compose(pad(), r_infcoinf());
  CHECK(c.name() == "pad,infcoinf");
  CHECK(c.modulus(8) == 4);
  auto r = run_transducer(c, UPPoint::parse("11;0"), 6);
  CHECK(r.productive);
  CHECK(r.out == std::vector<std::uint8_t>{1, 0, 1, 0, 0, 0});

  // composing with identity changes nothing
  Transducer ci = Transducer::compose(Transducer::identity(), pad());
  auto a = run_transducer(ci, UPPoint::parse("101;0"), 6);
  auto b = run_transducer(pad(), UPPoint::parse("101;0"), 6);
  CHECK(a.out == b.out);
}

TEST_CASE("shipped machines pass the hygiene checks") {
  for (const Transducer& t :
       {r_infcoinf(), pad(), r_matching(), Transducer::identity()}) {
    MonotoneReport m = check_monotone(t, 300);
    CHECK(m.trials == 300);
    CHECK(m.clean());
    ProductiveReport pr = check_productive(t, UPPoint::parse("10;10"), 2000);
    CHECK(pr.ok);
    CHECK(pr.produced >= 2000);
    CHECK(pr.consumed <= pr.budget);
  }
}

TEST_CASE("hygiene checks expose cheating machines") {
  MonotoneReport m = check_monotone(broken_halfrate(), 200);
  CHECK(!m.clean());

  ProductiveReport pr = check_productive(broken_stall(), UPPoint::parse(";1"),
                                         100);
  CHECK(!pr.ok);
  CHECK(pr.produced == 3);
  CHECK(!pr.detail.empty());
}

TEST_CASE("monotone reports are seed deterministic") {
  MonotoneReport a = check_monotone(pad(), 50, 5);
  MonotoneReport b = check_monotone(pad(), 50, 5);
  CHECK(a.trials == b.trials);
  CHECK(a.violations == b.violations);
}
