#include "modelborel/priority.hpp"

#include <map>
#include <mutex>
#include <set>
#include <sstream>

namespace modelborel {

namespace {

constexpr const char* kAllP = "all-P";
constexpr const char* kInfCoinf = "inf-coinf";
constexpr const char* kPerfect = "perfect-matching";
constexpr const char* kInfInf = "inf-inf-matching";
constexpr const char* kCofiniteP = "cofinite-P";  // failure variant label

// switch targets as capped cardinality shapes; the committed structure
// must fit one model of the target, so the check is a counting search
struct MonShape {
  Card p, not_p;
};
struct MatchShape {
  Card pairs, singles;
};

bool fits(Card c, std::size_t n) { return c.inf || n <= c.k; }

std::pair<std::size_t, std::size_t> monadic_counts(const FiniteStructure& s) {
  const int p = s.vocab().require("P");
  std::size_t in_p = 0;
  for (std::size_t e = 0; e < s.size(); ++e)
    if (s.holds(p, {e})) ++in_p;
  return {in_p, s.size() - in_p};
}

// decompose into matched pairs and isolated elements; throws if the edge
// relation is not a partial matching on the committed part
std::pair<std::size_t, std::size_t> matching_counts(const FiniteStructure& s) {
  const int r = s.vocab().require("R");
  std::vector<std::size_t> degree(s.size(), 0);
  std::size_t edges = 0;
  for (std::size_t a = 0; a < s.size(); ++a)
    for (std::size_t b = 0; b < s.size(); ++b)
      if (s.holds(r, {a, b})) {
        if (a == b) throw PriorityError("self edge in committed structure");
        if (!s.holds(r, {b, a}))
          throw PriorityError("asymmetric edge in committed structure");
        ++degree[a];
        if (a < b) ++edges;
      }
  for (std::size_t d : degree)
    if (d > 1) throw PriorityError("degree above 1 in committed structure");
  return {edges, s.size() - 2 * edges};
}

bool embeds_into_target(const FiniteStructure& s, const std::string& target) {
  if (target == kAllP || target == kInfCoinf || target == kCofiniteP) {
    auto [in_p, not_p] = monadic_counts(s);
    MonShape m;
    if (target == kAllP) m = {Card::infinite(), Card::finite(0)};
    else if (target == kInfCoinf) m = {Card::infinite(), Card::infinite()};
    else m = {Card::infinite(), Card::finite(not_p)};
    return fits(m.p, in_p) && fits(m.not_p, not_p);
  }
  if (target == kPerfect || target == kInfInf) {
    auto [pairs, singles] = matching_counts(s);
    MatchShape m;
    if (target == kPerfect) m = {Card::infinite(), Card::finite(0)};
    else m = {Card::infinite(), Card::infinite()};
    if (!fits(m.pairs, pairs)) return false;
    // a lone element may sit on a pair half whose partner stays outside
    return m.singles.inf || m.pairs.inf ||
           singles <= m.singles.k + (m.pairs.k - std::min(pairs, m.pairs.k));
  }
  throw PriorityError("no embedding rule for target " + target);
}

void check_switch(DiagramBuilder& b, const std::string& from,
                  const std::string& to, std::size_t stage) {
  if (b.elements() > 0 && !embeds_into_target(b.snapshot(), to))
    throw PriorityError("committed structure does not embed into " + to);
  b.note("switch", from + " -> " + to);
  b.note("compat", to + " ok at size " + std::to_string(b.elements()));
  (void)stage;
}

void require_declared(const SimConfig& cfg, const std::string& from,
                      const std::string& to) {
  for (const auto& [a, bnm] : cfg.compatible)
    if (a == from && bnm == to) return;
  throw PriorityError("repair between undeclared targets " + from + " -> " +
                      to);
}

// memoized containment gate for the corelemma pairs
void require_compatible_pair(int level,
                             const std::pair<std::string, std::string>& pr) {
  static std::map<std::pair<int, std::pair<std::string, std::string>>, bool>
      memo;
  static std::mutex mu;
  {
    std::lock_guard<std::mutex> lock(mu);
    auto it = memo.find({level, pr});
    if (it != memo.end()) {
      if (!it->second) throw PriorityError("incompatible pair");
      return;
    }
  }
  TheoryHandle plus = theory_by_id(pr.first);
  TheoryHandle minus = theory_by_id(pr.second);
  bool ok = false;
  if (plus.vocabulary == minus.vocabulary) {
    ContainmentReport rep = check_fragment_containment(
        minus, plus, Level{Quant::E, level}, 3);
    ok = rep.contained();
  }
  {
    std::lock_guard<std::mutex> lock(mu);
    memo[{level, pr}] = ok;
  }
  if (!ok)
    throw PriorityError("incompatible pair (" + pr.first + ", " + pr.second +
                        ") at level " + std::to_string(level));
}

SimRun finish(DiagramBuilder& b) {
  SimRun run;
  run.diagram.vocab = b.vocab();
  const std::size_t n = b.enumeration().count_below(b.sealed_ranks());
  run.diagram.bits.reserve(n);
  for (std::size_t i = 0; i < n; ++i)
    run.diagram.bits.push_back(b.diagram_bit(i));
  run.trace = b.trace();
  return run;
}

void run_core1(DiagramBuilder& b, const UPPoint& p, std::size_t stages) {
  const int P = b.vocab().require("P");
  bool switched = false;
  bool next_p = false;  // alternation phase after the switch
  for (std::size_t s = 0; s < stages; ++s) {
    b.begin_stage(s);
    b.note("index", approximate_indices(p, 1, s));
    if (!switched && p.bit(s)) {
      switched = true;
      check_switch(b, kAllP, kInfCoinf, s);
    }
    std::size_t e = b.append_element();
    bool in_p = true;
    if (switched) {
      in_p = next_p;
      next_p = !next_p;
    }
    if (in_p) b.commit(P, {e});
  }
}

// level-2 body, shared with the tower's R-part
struct Core2State {
  std::vector<std::size_t> pending;
};

void core2_stage(DiagramBuilder& b, int r, std::uint8_t bit, Core2State& st,
                 const SimConfig& cfg, const std::string& on_repair_from,
                 const std::string& on_repair_to) {
  if (bit && !st.pending.empty()) {
    require_declared(cfg, on_repair_from, on_repair_to);
    std::ostringstream names;
    for (std::size_t i = 0; i < st.pending.size(); ++i) {
      if (i) names << ',';
      names << st.pending[i];
    }
    for (std::size_t w : st.pending) {
      std::size_t x = b.append_element();
      b.commit_sym(r, w, x);
    }
    b.note("injury-repair", "candidates " + names.str());
    st.pending.clear();
  }
  std::size_t u = b.append_element();
  std::size_t v = b.append_element();
  b.commit_sym(r, u, v);
  st.pending.push_back(b.append_element());
}

void run_core2(DiagramBuilder& b, const UPPoint& p, std::size_t stages,
               const SimConfig& cfg) {
  const int r = b.vocab().require("R");
  Core2State st;
  for (std::size_t s = 0; s < stages; ++s) {
    b.begin_stage(s);
    b.note("index", approximate_indices(p, 2, s));
    core2_stage(b, r, p.bit(s), st, cfg, kInfInf, kPerfect);
  }
}

}  // namespace

SimConfig core_config(int level) {
  if (level == 1) {
    SimLevel l{"some bit is one",
               SetLevel{false, 1, false},
               [](const UPPoint& p) { return p.has_a_one(); },
               {kInfCoinf, kAllP}};
    return {"core1", {l}, {{kAllP, kInfCoinf}}, 100};
  }
  if (level == 2) {
    SimLevel l{"eventually zero",
               SetLevel{false, 2, false},
               [](const UPPoint& p) { return p.eventually_zero(); },
               {kInfInf, kPerfect}};
    return {"core2",
            {l},
            {{kInfInf, kPerfect}, {kPerfect, kInfInf}},
            100};
  }
  throw PriorityError("level must be 1 or 2");
}

SimConfig tower_config() {
  SimLevel l1{"even track all zero",
              SetLevel{true, 1, false},
              [](const UPPoint& p) { return !p.track(0).has_a_one(); },
              {kInfCoinf, kCofiniteP}};
  SimLevel l2{"even track zero, infinitely many odd ones",
              SetLevel{true, 2, false},
              [](const UPPoint& p) {
                return !p.track(0).has_a_one() &&
                       p.track(1).infinitely_many_ones();
              },
              {kPerfect, kInfInf}};
  return {"tower2",
          {l1, l2},
          {{kInfCoinf, kCofiniteP},
           {kInfInf, kPerfect},
           {kPerfect, kInfInf}},
          100};
}

SimConfig demo_config(const std::string& name) {
  if (name == "core1") return core_config(1);
  if (name == "core2") return core_config(2);
  if (name == "tower2") return tower_config();
  throw PriorityError("unknown demo " + name);
}

SimRun run_corelemma(int level,
                     const std::pair<std::string, std::string>& pair,
                     const UPPoint& p, std::size_t stages) {
  if (stages == 0) throw PriorityError("stage budget 0");
  if (level != 1 && level != 2)
    throw PriorityError("level must be 1 or 2");
  require_compatible_pair(level, pair);
  TheoryHandle plus = theory_by_id(pair.first);
  const std::string want = level == 1 ? "P/1" : "R/2";
  if (plus.vocabulary.spec() != want)
    throw PriorityError("level " + std::to_string(level) +
                        " runs over vocabulary " + want);
  DiagramBuilder b(plus.vocabulary);
  if (level == 1) run_core1(b, p, stages);
  else run_core2(b, p, stages, core_config(2));
  return finish(b);
}

SimRun run_tower(const SimConfig& cfg, const UPPoint& p, std::size_t stages) {
  if (stages == 0) throw PriorityError("stage budget 0");
  if (cfg.name != "tower2" || cfg.levels.size() != 2)
    throw PriorityError("malformed config");
  DiagramBuilder b(Vocabulary::parse_spec("P/1,R/2"));
  const int P = b.vocab().require("P");
  const int r = b.vocab().require("R");
  Core2State st;
  bool switched = false, even_seen = false, odd_seen = false;
  for (std::size_t s = 0; s < stages; ++s) {
    b.begin_stage(s);
    const std::uint8_t even = p.bit(2 * s);
    const std::uint8_t odd = p.bit(2 * s + 1);
    if (!switched && even) {
      switched = true;
      check_switch(b, cfg.levels[0].pair.first, cfg.levels[0].pair.second, s);
    }
    std::size_t e = b.append_element();
    b.note("p-elem", std::to_string(e));
    const bool in_p = switched || s % 2 == 0;
    if (in_p) b.commit(P, {e});

    core2_stage(b, r, odd, st, cfg, cfg.levels[1].pair.second,
                cfg.levels[1].pair.first);

    even_seen = even_seen || even;
    odd_seen = odd_seen || odd;
    std::string k0 = even_seen ? "1" : (odd_seen && !odd ? "2" : "none");
    b.note("k0", k0);
  }
  return finish(b);
}

std::string approximate_indices(const UPPoint& p, int level,
                                std::size_t stage) {
  if (level == 1) {
    for (std::size_t t = 0; t <= stage; ++t)
      if (p.bit(t)) return kInfCoinf;
    return kAllP;
  }
  if (level == 2) return p.bit(stage) ? kPerfect : kInfInf;
  throw PriorityError("level must be 1 or 2");
}

std::string shared_fragment_id(int level) {
  return "E" + std::to_string(level) + "-shared";
}

std::string VerifyReport::to_text() const {
  std::ostringstream os;
  os << "config " << config << " stages " << stages << '\n';
  for (const auto& c : checks) os << "ok " << c << '\n';
  for (const auto& v : violations) os << "violation " << v << '\n';
  os << (clean() ? "clean" : "dirty") << '\n';
  return os.str();
}

namespace {

struct TraceScan {
  std::size_t stages = 0;
  std::size_t switches = 0;
  std::size_t injuries = 0;
  std::vector<std::string> k0;             // by stage
  std::vector<std::string> index;          // by stage
  std::set<std::size_t> p_elems;
  std::vector<std::pair<int, std::vector<std::size_t>>> commits;
};

// "R(2,3)" -> (symbol, tuple)
std::optional<std::pair<int, std::vector<std::size_t>>> parse_commit(
    const std::string& detail, const Vocabulary& v) {
  auto open = detail.find('(');
  if (open == std::string::npos || detail.back() != ')') return std::nullopt;
  int sym = v.index_of(detail.substr(0, open));
  if (sym < 0) return std::nullopt;
  std::vector<std::size_t> tuple;
  std::size_t pos = open + 1;
  while (pos < detail.size() - 1) {
    std::size_t next = detail.find(',', pos);
    if (next == std::string::npos || next > detail.size() - 1)
      next = detail.size() - 1;
    try {
      tuple.push_back(std::stoul(detail.substr(pos, next - pos)));
    } catch (const std::exception&) {
      return std::nullopt;
    }
    pos = next + 1;
  }
  if (tuple.size() != v.arity(sym)) return std::nullopt;
  return std::make_pair(sym, std::move(tuple));
}

TraceScan scan_trace(const InjuryTrace& trace, const Vocabulary& v,
                     VerifyReport& rep) {
  TraceScan ts;
  auto at_stage = [&](std::vector<std::string>& slot, std::size_t stage,
                      const std::string& value) {
    if (slot.size() <= stage) slot.resize(stage + 1);
    slot[stage] = value;
  };
  for (const auto& ev : trace) {
    ts.stages = std::max(ts.stages, ev.stage + 1);
    if (ev.kind == "switch") ++ts.switches;
    else if (ev.kind == "injury-repair") ++ts.injuries;
    else if (ev.kind == "k0") at_stage(ts.k0, ev.stage, ev.detail);
    else if (ev.kind == "index") at_stage(ts.index, ev.stage, ev.detail);
    else if (ev.kind == "p-elem") {
      try {
        ts.p_elems.insert(std::stoul(ev.detail));
      } catch (const std::exception&) {
        rep.violations.push_back("unparsable p-elem note: " + ev.detail);
      }
    } else if (ev.kind == "commit") {
      auto parsed = parse_commit(ev.detail, v);
      if (!parsed)
        rep.violations.push_back("unparsable commit: " + ev.detail);
      else
        ts.commits.push_back(std::move(*parsed));
    }
  }
  return ts;
}

// (a) every commit lands in the diagram exactly once and nothing in the
// diagram lacks a commit
void check_commits(const TraceScan& ts, const DiagramPrefix& diagram,
                   VerifyReport& rep) {
  AtomEnumeration en(diagram.vocab);
  std::set<std::pair<int, std::vector<std::size_t>>> seen;
  std::set<std::size_t> committed;
  for (const auto& c : ts.commits) {
    if (!seen.insert(c).second) {
      rep.violations.push_back("fact committed twice: " +
                               en.atom_text(en.index_of(c.first, c.second)));
      continue;
    }
    std::size_t idx = en.index_of(c.first, c.second);
    if (idx < diagram.bits.size()) {
      committed.insert(idx);
      if (!diagram.bits[idx])
        rep.violations.push_back("committed bit retracted: " +
                                 en.atom_text(idx));
    }
  }
  for (std::size_t i = 0; i < diagram.bits.size(); ++i)
    if (diagram.bits[i] && !committed.count(i))
      rep.violations.push_back("diagram bit without commit: " +
                               en.atom_text(i));
  if (rep.violations.empty()) rep.checks.push_back("commit immutability");
}

std::size_t ones_among(const UPPoint& p, std::size_t n, int stride,
                       int offset) {
  std::size_t c = 0;
  for (std::size_t s = 0; s < n; ++s)
    c += p.bit(stride * s + offset);
  return c;
}

// elements spanned by a diagram over this vocabulary, or nullopt if the
// bit count is not a whole number of ranks
std::optional<std::size_t> element_span(const DiagramPrefix& d) {
  AtomEnumeration en(d.vocab);
  std::size_t n = 0;
  while (en.count_below(n) < d.bits.size()) ++n;
  if (en.count_below(n) != d.bits.size()) return std::nullopt;
  return n;
}

struct Counts {
  std::size_t a = 0, b = 0;  // monadic: P/notP; matching: pairs/singles
};

Counts measure_monadic(const FiniteStructure& s,
                       const std::set<std::size_t>* only) {
  Counts c;
  const int p = s.vocab().require("P");
  for (std::size_t e = 0; e < s.size(); ++e) {
    if (only && !only->count(e)) continue;
    if (s.holds(p, {e})) ++c.a;
    else ++c.b;
  }
  return c;
}

Counts measure_matching(const FiniteStructure& s,
                        const std::set<std::size_t>* skip) {
  Counts c;
  const int r = s.vocab().require("R");
  for (std::size_t e = 0; e < s.size(); ++e) {
    if (skip && skip->count(e)) continue;
    bool matched = false;
    for (std::size_t f = 0; f < s.size() && !matched; ++f)
      if (s.holds(r, {e, f})) matched = true;
    if (matched) ++c.a;
    else ++c.b;
  }
  return c;
}

void check_level1_trend(const Counts& c, bool expect_pure, const UPPoint& p,
                        std::size_t n, VerifyReport& rep,
                        const std::string& tag) {
  const std::size_t settle = p.prefix_len() + p.period_len() + 2;
  if (expect_pure) {
    if (c.b != 0)
      rep.violations.push_back(tag + ": off-theory elements in a member run");
    else rep.checks.push_back(tag + ": exact count");
  } else if (n > 2 * settle) {
    if (c.a + 1 < (n - settle) / 2 || c.b + 1 < (n - settle) / 2)
      rep.violations.push_back(tag + ": no two-sided growth");
    else rep.checks.push_back(tag + ": two-sided growth");
  } else {
    rep.checks.push_back(tag + ": too short to certify");
  }
}

void check_level2_trend(const Counts& c, bool source_member,
                        const UPPoint& track, std::size_t stages,
                        VerifyReport& rep, const std::string& tag) {
  const std::size_t u = track.prefix_len();
  const std::size_t ell = std::max<std::size_t>(track.period_len(), 1);
  if (stages <= u + ell + 6) {
    rep.checks.push_back(tag + ": too short to certify");
    return;
  }
  if (source_member) {
    // eventually zero: candidates accumulate
    if (c.b + u + 4 < stages || c.b > stages)
      rep.violations.push_back(tag + ": pending count off for member");
    else rep.checks.push_back(tag + ": pending growth");
  } else {
    if (c.b > u + ell + 3)
      rep.violations.push_back(tag + ": pending candidates pile up");
    else rep.checks.push_back(tag + ": pending stays bounded");
  }
  if (c.a + 4 < 2 * stages)
    rep.violations.push_back(tag + ": matched part not growing");
}

void check_index_trace(const std::vector<std::string>& logged,
                       const UPPoint& p, int level, std::size_t stages,
                       VerifyReport& rep) {
  const std::size_t settle = p.prefix_len() +
                             std::max<std::size_t>(p.period_len(), 1) + 1;
  std::string tail;
  for (std::size_t s = 0; s < stages; ++s) {
    std::string want = approximate_indices(p, level, s);
    if (s >= logged.size() || logged[s] != want) {
      rep.violations.push_back("index estimate diverges at stage " +
                               std::to_string(s));
      return;
    }
    if (level == 1 && s >= std::min(settle, stages - 1)) {
      if (tail.empty()) tail = want;
      else if (tail != want) {
        rep.violations.push_back("level-1 estimate unstable past stage " +
                                 std::to_string(settle));
        return;
      }
    }
  }
  rep.checks.push_back("index estimates match the evidence rule");
}

void check_k0_trace(const std::vector<std::string>& logged, const UPPoint& p,
                    std::size_t stages, VerifyReport& rep) {
  bool even_seen = false, odd_seen = false;
  std::string level1_tail;
  const std::size_t settle = p.prefix_len() + p.period_len() + 2;
  for (std::size_t s = 0; s < stages; ++s) {
    even_seen = even_seen || p.bit(2 * s);
    odd_seen = odd_seen || p.bit(2 * s + 1);
    std::string want =
        even_seen ? "1" : (odd_seen && !p.bit(2 * s + 1) ? "2" : "none");
    if (s >= logged.size() || logged[s] != want) {
      rep.violations.push_back("k0 estimate diverges at stage " +
                               std::to_string(s));
      return;
    }
    if (s >= std::min(settle, stages - 1)) {
      std::string l1 = even_seen ? "1" : "lower";
      if (level1_tail.empty()) level1_tail = l1;
      else if (level1_tail != l1) {
        rep.violations.push_back("level-1 k0 component unstable");
        return;
      }
    }
  }
  rep.checks.push_back("k0 trace matches the track analysis");
}

}  // namespace

VerifyReport verify_run(const InjuryTrace& trace, const DiagramPrefix& diagram,
                        const UPPoint& p, const SimConfig& cfg) {
  VerifyReport rep;
  rep.config = cfg.name;
  const std::string want_spec =
      cfg.name == "core1" ? "P/1" : (cfg.name == "core2" ? "R/2" : "P/1,R/2");
  if (diagram.vocab.spec() != want_spec) {
    rep.violations.push_back("diagram vocabulary mismatch");
    return rep;
  }
  TraceScan ts = scan_trace(trace, diagram.vocab, rep);
  rep.stages = ts.stages;
  if (ts.stages == 0) {
    rep.violations.push_back("empty trace");
    return rep;
  }

  check_commits(ts, diagram, rep);

  // (b) switch and injury bounds
  const bool tower = cfg.name == "tower2";
  const std::size_t max_switches = cfg.name == "core2" ? 0 : 1;
  if (ts.switches > max_switches)
    rep.violations.push_back("switch count " + std::to_string(ts.switches) +
                             " above bound " + std::to_string(max_switches));
  else rep.checks.push_back("switch bound");
  std::size_t ones = cfg.name == "core1"
                         ? 0
                         : (tower ? ones_among(p, ts.stages, 2, 1)
                                  : ones_among(p, ts.stages, 1, 0));
  if (cfg.name == "core1" && ts.injuries > 0)
    rep.violations.push_back("injury repairs in a level-1 run");
  else if (ts.injuries > ones)
    rep.violations.push_back("injuries " + std::to_string(ts.injuries) +
                             " above ones read " + std::to_string(ones));
  else rep.checks.push_back("injury bound");

  // (c) cardinality trend vs the membership verdict, plus determinism
  auto span = element_span(diagram);
  if (!span) {
    rep.violations.push_back("diagram is a ragged prefix");
    return rep;
  }
  FiniteStructure view = *span > 0 ? decode(diagram, *span)
                                   : FiniteStructure(diagram.vocab, 0);
  if (cfg.name == "core1") {
    bool member = cfg.levels[0].member(p);
    check_level1_trend(measure_monadic(view, nullptr), !member, p, *span, rep,
                       "P trend");
  } else if (cfg.name == "core2") {
    bool member = cfg.levels[0].member(p);
    check_level2_trend(measure_matching(view, nullptr), member, p, ts.stages,
                       rep, "R trend");
  } else {
    Counts pc = measure_monadic(view, &ts.p_elems);
    bool in_l1 = cfg.levels[0].member(p);
    if (in_l1) {
      // alternation forever: both sides near half
      if (pc.a > pc.b + 2 || pc.b > pc.a + 2)
        rep.violations.push_back("P parts unbalanced in a level-1 member run");
      else rep.checks.push_back("P trend: balanced alternation");
    } else {
      UPPoint even = p.track(0);
      const std::size_t settle = even.prefix_len() + even.period_len() + 2;
      if (ts.stages > 2 * settle + 4 && pc.b > settle + 2)
        rep.violations.push_back("P-only growth not honored after switch");
      else rep.checks.push_back("P trend: not-P stays finite");
    }
    std::set<std::size_t> skip = ts.p_elems;
    Counts rc = measure_matching(view, &skip);
    bool odd_inf = p.track(1).infinitely_many_ones();
    check_level2_trend(rc, !odd_inf, p.track(1), ts.stages, rep, "R trend");
  }

  SimRun rerun;
  try {
    if (tower) rerun = run_tower(cfg, p, ts.stages);
    else
      rerun = run_corelemma(cfg.name == "core1" ? 1 : 2, cfg.levels[0].pair,
                            p, ts.stages);
  } catch (const std::exception& e) {
    rep.violations.push_back(std::string("replay failed: ") + e.what());
    return rep;
  }
  if (rerun.diagram.bits != diagram.bits)
    rep.violations.push_back("diagram bits not reproducible");
  else rep.checks.push_back("deterministic replay");
  if (trace_to_text(rerun.trace) != trace_to_text(trace))
    rep.violations.push_back("trace not reproducible");

  // (d) logged estimates
  if (tower) check_k0_trace(ts.k0, p, ts.stages, rep);
  else
    check_index_trace(ts.index, p, cfg.name == "core1" ? 1 : 2, ts.stages,
                      rep);
  return rep;
}

VerifyReport run_and_verify(const SimConfig& cfg, const UPPoint& p,
                            std::size_t stages) {
  SimRun run = cfg.name == "tower2"
                   ? run_tower(cfg, p, stages)
                   : run_corelemma(cfg.name == "core1" ? 1 : 2,
                                   cfg.levels[0].pair, p, stages);
  return verify_run(run.trace, run.diagram, p, cfg);
}

}  // namespace modelborel
