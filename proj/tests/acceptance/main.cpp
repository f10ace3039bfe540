// Acceptance gate: runs the full check battery with the pinned default
// seed and prints one line per criterion.  Exit status is nonzero when any
// criterion fails, so the gate never silently weakens.

#include <cstdio>

#include "modelborel/battery.hpp"

int main() {
  modelborel::BatteryOptions opt;  // defaults: seed 12021, 200 points
  modelborel::BatterySummary sum = modelborel::run_battery(opt);
  std::fputs(sum.to_text().c_str(), stdout);
  for (const auto& r : sum.results)
    std::fprintf(stdout, "# criterion %d took %.2fs\n", r.number, r.seconds);
  return sum.all_pass() ? 0 : 1;
}
