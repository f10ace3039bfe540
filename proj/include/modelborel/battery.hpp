#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "modelborel/pointclass.hpp"

namespace modelborel {

// One acceptance criterion, executed in isolation.  `detail` is a short
// human-readable account of what was measured; it never contains timing,
// so summaries are byte-stable across runs with the same seed.
struct CriterionResult {
  int number = 0;
  std::string name;
  bool pass = false;
  std::string detail;
  double seconds = 0.0;  // reported separately, never in to_text()

  std::string line() const;
};

struct BatteryOptions {
  std::uint64_t seed = 12021;
  std::size_t points = 200;     // certificate battery size floor
  bool inject_broken = false;   // add fixtures that must be caught
  std::vector<int> only;        // empty = run everything
};

struct BatterySummary {
  std::uint64_t seed = 0;
  std::vector<CriterionResult> results;

  std::size_t passed() const;
  std::size_t failed() const;
  bool all_pass() const { return failed() == 0; }
  std::string to_text() const;
};

// Deterministic mix of fixed anchor points and seeded random ones.
std::vector<UPPoint> make_point_battery(std::uint64_t seed, std::size_t count,
                                        std::size_t max_prefix,
                                        std::size_t max_period);

BatterySummary run_battery(const BatteryOptions& opt);

}  // namespace modelborel
