#pragma once

#include <functional>
#include <memory>
#include <random>
#include <string>
#include <vector>

#include "modelborel/pointclass.hpp"

namespace modelborel {

struct TransducerError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

using BitSource = std::function<std::uint8_t(std::size_t)>;

// A deterministic prefix-monotone stream machine.  A Transducer value is an
// immutable description; spawn() creates a fresh run holding private state.
// The modulus m(n) declares how many input bits suffice to determine n
// output bits; harnesses hold the machine to that claim.
class Transducer {
 public:
  class Run {
   public:
    virtual ~Run() = default;
    // consume one input bit, emit zero or more output bits
    virtual std::vector<std::uint8_t> step(std::uint8_t in) = 0;
  };

  Transducer(std::string name,
             std::function<std::unique_ptr<Run>()> spawn,
             std::function<std::size_t(std::size_t)> modulus);

  const std::string& name() const { return name_; }
  std::unique_ptr<Run> spawn() const { return spawn_(); }
  std::size_t modulus(std::size_t n_out) const { return modulus_(n_out); }

  static Transducer identity();
  // feed t1's output into t2
  static Transducer compose(const Transducer& t1, const Transducer& t2);

 private:
  std::string name_;
  std::function<std::unique_ptr<Run>()> spawn_;
  std::function<std::size_t(std::size_t)> modulus_;
};

struct RunResult {
  std::vector<std::uint8_t> out;
  std::size_t consumed = 0;
  bool productive = false;  // n_out bits within the input budget
};

// Pull input bits until n_out outputs exist or the budget is exhausted.
// Default budget is the declared modulus.
RunResult run_transducer(const Transducer& t, const BitSource& input,
                         std::size_t n_out,
                         std::optional<std::size_t> budget = std::nullopt);
RunResult run_transducer(const Transducer& t, const UPPoint& input,
                         std::size_t n_out,
                         std::optional<std::size_t> budget = std::nullopt);

struct MonotoneReport {
  std::size_t trials = 0;
  std::vector<std::string> violations;
  bool clean() const { return violations.empty(); }
};

// Random pairs of inputs sharing a common prefix: outputs must agree on the
// n* = max{n : m(n) <= shared length} bits pinned by the modulus, and each
// run must emit at least the pinned amount for what it consumed.
MonotoneReport check_monotone(const Transducer& t, std::size_t trials,
                              std::uint64_t seed = 12021);

struct ProductiveReport {
  std::size_t requested = 0;
  std::size_t produced = 0;
  std::size_t consumed = 0;
  std::size_t budget = 0;
  bool ok = false;
  std::string detail;
};

ProductiveReport check_productive(const Transducer& t, const UPPoint& p,
                                  std::size_t n_out);

}  // namespace modelborel
