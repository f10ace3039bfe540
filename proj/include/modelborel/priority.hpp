#pragma once

#include "modelborel/reductions.hpp"

namespace modelborel {

struct PriorityError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// append-only event log of a simulation run
using InjuryTrace = std::vector<TraceEvent>;

// one level of a selection tower: a point set decided exactly on
// ultimately periodic points, and the theory pair the builder at this
// level toggles between (first id targeted on membership)
struct SimLevel {
  std::string set_name;
  SetLevel set_level;
  std::function<bool(const UPPoint&)> member;
  std::pair<std::string, std::string> pair;  // (on membership, off)
};

struct SimConfig {
  std::string name;  // "core1", "core2", "tower2"
  std::vector<SimLevel> levels;
  // switch source -> target pairs the factories may move between
  std::vector<std::pair<std::string, std::string>> compatible;
  std::size_t stage_budget = 0;
};

// shipped demos: the two switching constructions and the two-level tower
SimConfig core_config(int level);
SimConfig tower_config();
SimConfig demo_config(const std::string& name);

struct SimRun {
  DiagramPrefix diagram;  // all sealed ranks after the last stage
  InjuryTrace trace;
};

// Switching construction against one point.
//
// Level 1 (source: some bit is 1; pair infinite/coinfinite vs all-P):
// emit P-elements until a 1 is read, then alternate P and not-P.  At most
// one switch ever happens.
//
// Level 2 (source: eventually zero; pair (inf,inf)-matching vs perfect):
// per stage one matched pair and one unmatched candidate; a 1 repairs all
// pending candidates with fresh partners.  Injuries <= ones read.
//
// The pair must pass fragment containment at E(level), cap 3 (memoized).
SimRun run_corelemma(int level,
                     const std::pair<std::string, std::string>& pair,
                     const UPPoint& p, std::size_t stages);

// Two-level tower over {P/1, R/2}: the P-part runs the inverted level-1
// rule on the even track (alternate while all-zero, P-only growth after a
// 1), the R-part the level-2 rule on the odd track.  Each stage logs the
// current estimate of the least failing level as a note "k0=...".
SimRun run_tower(const SimConfig& cfg, const UPPoint& p, std::size_t stages);

// Stagewise theory-id approximation with a limit.  Level 1 answers the
// off-theory until a 1 has been read; level 2 answers the on-theory
// exactly at stages reading a 0 (the no-1-since-last-repair window).
std::string approximate_indices(const UPPoint& p, int level,
                                std::size_t stage);
// the id reported for every level below the queried one
std::string shared_fragment_id(int level);

struct VerifyReport {
  std::string config;
  std::size_t stages = 0;
  std::vector<std::string> checks;      // one line per passed check
  std::vector<std::string> violations;  // failures, human-readable
  bool clean() const { return violations.empty(); }
  std::string to_text() const;
};

// Certifies a finished run: (a) trace commits match the diagram and
// nothing was retracted or re-committed, (b) switch and injury counts
// stay within the level bounds, (c) the cardinality trend of the diagram
// matches the membership verdict on p, (d) the logged index estimates
// match an independent replay and stabilize where the point analysis says
// they must.
VerifyReport verify_run(const InjuryTrace& trace, const DiagramPrefix& diagram,
                        const UPPoint& p, const SimConfig& cfg);

// convenience: run the configured demo and verify it
VerifyReport run_and_verify(const SimConfig& cfg, const UPPoint& p,
                            std::size_t stages);

}  // namespace modelborel
