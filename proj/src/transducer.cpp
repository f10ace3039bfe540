#include "modelborel/transducer.hpp"

#include <sstream>

namespace modelborel {

Transducer::Transducer(std::string name,
                       std::function<std::unique_ptr<Run>()> spawn,
                       std::function<std::size_t(std::size_t)> modulus)
    : name_(std::move(name)), spawn_(std::move(spawn)),
      modulus_(std::move(modulus)) {
  if (!spawn_ || !modulus_) throw TransducerError("transducer needs spawn and modulus");
}

namespace {

class IdentityRun : public Transducer::Run {
 public:
  std::vector<std::uint8_t> step(std::uint8_t in) override { return {in}; }
};

class ComposeRun : public Transducer::Run {
 public:
  ComposeRun(std::unique_ptr<Transducer::Run> a,
             std::unique_ptr<Transducer::Run> b)
      : a_(std::move(a)), b_(std::move(b)) {}

  std::vector<std::uint8_t> step(std::uint8_t in) override {
    std::vector<std::uint8_t> out;
    for (std::uint8_t mid : a_->step(in))
      for (std::uint8_t b : b_->step(mid)) out.push_back(b);
    return out;
  }

 private:
  std::unique_ptr<Transducer::Run> a_, b_;
};

}  // namespace

Transducer Transducer::identity() {
  return Transducer(
      "identity", [] { return std::make_unique<IdentityRun>(); },
      [](std::size_t n) { return n; });
}

Transducer Transducer::compose(const Transducer& t1, const Transducer& t2) {
  auto s1 = t1.spawn_;
  auto s2 = t2.spawn_;
  auto m1 = t1.modulus_;
  auto m2 = t2.modulus_;
  return Transducer(
      t1.name_ + "," + t2.name_,
      [s1, s2] { return std::make_unique<ComposeRun>(s1(), s2()); },
      [m1, m2](std::size_t n) { return m1(m2(n)); });
}

RunResult run_transducer(const Transducer& t, const BitSource& input,
                         std::size_t n_out,
                         std::optional<std::size_t> budget) {
  const std::size_t limit = budget ? *budget : t.modulus(n_out);
  RunResult r;
  auto run = t.spawn();
  while (r.out.size() < n_out && r.consumed < limit) {
    auto block = run->step(input(r.consumed));
    ++r.consumed;
    r.out.insert(r.out.end(), block.begin(), block.end());
  }
  r.productive = r.out.size() >= n_out;
  if (r.out.size() > n_out) r.out.resize(n_out);
  return r;
}

RunResult run_transducer(const Transducer& t, const UPPoint& input,
                         std::size_t n_out,
                         std::optional<std::size_t> budget) {
  return run_transducer(t, input.source(), n_out, budget);
}

namespace {

// largest n with m(n) <= consumed; capped scan keeps pathological moduli
// from looping
std::size_t pinned_outputs(const Transducer& t, std::size_t consumed) {
  std::size_t n = 0;
  while (n < 100000 && t.modulus(n + 1) <= consumed) ++n;
  return n;
}

std::vector<std::uint8_t> feed(const Transducer& t,
                               const std::vector<std::uint8_t>& bits) {
  auto run = t.spawn();
  std::vector<std::uint8_t> out;
  for (std::uint8_t b : bits) {
    auto block = run->step(b);
    out.insert(out.end(), block.begin(), block.end());
  }
  return out;
}

}  // namespace

MonotoneReport check_monotone(const Transducer& t, std::size_t trials,
                              std::uint64_t seed) {
  MonotoneReport rep;
  rep.trials = trials;
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> bit(0, 1);
  std::uniform_int_distribution<std::size_t> shared_len(0, 40);
  std::uniform_int_distribution<std::size_t> extra_len(0, 24);

  for (std::size_t trial = 0; trial < trials; ++trial) {
    const std::size_t shared = shared_len(rng);
    std::vector<std::uint8_t> common(shared);
    for (auto& b : common) b = static_cast<std::uint8_t>(bit(rng));

    std::vector<std::uint8_t> in1 = common, in2 = common;
    const std::size_t e1 = extra_len(rng), e2 = extra_len(rng);
    for (std::size_t i = 0; i < e1; ++i)
      in1.push_back(static_cast<std::uint8_t>(bit(rng)));
    for (std::size_t i = 0; i < e2; ++i)
      in2.push_back(static_cast<std::uint8_t>(bit(rng)));

    auto out1 = feed(t, in1);
    auto out2 = feed(t, in2);

    const std::size_t pinned_shared = pinned_outputs(t, shared);
    const std::size_t p1 = pinned_outputs(t, in1.size());
    const std::size_t p2 = pinned_outputs(t, in2.size());

    auto fail = [&](const std::string& why) {
      std::ostringstream os;
      os << "trial " << trial << " (shared " << shared << ", extras " << e1
         << "/" << e2 << "): " << why;
      rep.violations.push_back(os.str());
    };

    if (out1.size() < p1)
      fail("run 1 emitted " + std::to_string(out1.size()) + " < pinned " +
           std::to_string(p1));
    if (out2.size() < p2)
      fail("run 2 emitted " + std::to_string(out2.size()) + " < pinned " +
           std::to_string(p2));
    const std::size_t agree =
        std::min({pinned_shared, out1.size(), out2.size()});
    for (std::size_t i = 0; i < agree; ++i) {
      if (out1[i] != out2[i]) {
        fail("outputs differ at position " + std::to_string(i) +
             " inside the modulus window " + std::to_string(pinned_shared));
        break;
      }
    }
  }
  return rep;
}

ProductiveReport check_productive(const Transducer& t, const UPPoint& p,
                                  std::size_t n_out) {
  ProductiveReport rep;
  rep.requested = n_out;
  rep.budget = t.modulus(n_out);
  RunResult r = run_transducer(t, p, n_out);
  rep.produced = r.out.size();
  rep.consumed = r.consumed;
  rep.ok = r.productive;
  if (!rep.ok) {
    std::ostringstream os;
    os << t.name() << " produced " << rep.produced << "/" << n_out
       << " bits within budget " << rep.budget << " on " << p.str();
    rep.detail = os.str();
  }
  return rep;
}

}  // namespace modelborel
