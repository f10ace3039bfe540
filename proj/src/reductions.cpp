#include "modelborel/reductions.hpp"

#include <cmath>

namespace modelborel {

namespace {

std::size_t isqrt(std::size_t n) {
  auto r = static_cast<std::size_t>(std::sqrt(static_cast<double>(n)));
  while (r > 0 && r * r > n) --r;
  while ((r + 1) * (r + 1) <= n) ++r;
  return r;
}

class CopyRun : public Transducer::Run {
 public:
  std::vector<std::uint8_t> step(std::uint8_t in) override { return {in}; }
};

class PadRun : public Transducer::Run {
 public:
  std::vector<std::uint8_t> step(std::uint8_t in) override {
    return {in, 0};
  }
};

// one stage of the matching construction against a builder
struct MatchingState {
  std::vector<std::uint8_t> column_matched;
  std::vector<std::size_t> a_elem;
};

void matching_stage(DiagramBuilder& b, int r, std::size_t s,
                    std::uint8_t bit, MatchingState& st) {
  b.begin_stage(s);
  st.a_elem.push_back(b.append_element());
  std::size_t c = b.append_element();
  std::size_t d = b.append_element();
  b.commit_sym(r, c, d);
  auto [j, k] = pair_unindex(s);
  (void)k;
  if (j >= st.column_matched.size()) st.column_matched.resize(j + 1, 0);
  if (bit && !st.column_matched[j]) {
    st.column_matched[j] = 1;
    std::size_t partner = b.append_element();
    b.commit_sym(r, st.a_elem[j], partner);
    b.note("match", "column " + std::to_string(j));
  }
}

class MatchingRun : public Transducer::Run {
 public:
  MatchingRun()
      : builder_(Vocabulary::parse_spec("R/2")),
        r_(builder_.vocab().require("R")) {}

  std::vector<std::uint8_t> step(std::uint8_t in) override {
    matching_stage(builder_, r_, stage_++, in, state_);
    std::size_t sealed =
        builder_.enumeration().count_below(builder_.sealed_ranks());
    std::vector<std::uint8_t> out;
    for (std::size_t i = emitted_; i < sealed; ++i)
      out.push_back(builder_.diagram_bit(i));
    emitted_ = sealed;
    return out;
  }

 private:
  DiagramBuilder builder_;
  int r_;
  std::size_t stage_ = 0, emitted_ = 0;
  MatchingState state_;
};

}  // namespace

Transducer r_infcoinf() {
  return Transducer(
      "infcoinf", [] { return std::make_unique<CopyRun>(); },
      [](std::size_t n) { return n; });
}

Transducer pad() {
  return Transducer(
      "pad", [] { return std::make_unique<PadRun>(); },
      [](std::size_t n) { return (n + 1) / 2; });
}

Transducer r_matching() {
  // after s stages at least 3s elements exist, so all (3s-1)^2 bits below
  // the newest element are final; invert for the input budget
  return Transducer(
      "matching", [] { return std::make_unique<MatchingRun>(); },
      [](std::size_t n) { return (isqrt(n) + 4) / 3; });
}

MatchingCounts replay_matching_counts(const BitSource& bits,
                                      std::size_t stages) {
  MatchingCounts c;
  c.stages = stages;
  c.matched_pairs = stages;
  std::vector<std::uint8_t> seen;
  for (std::size_t s = 0; s < stages; ++s) {
    auto [j, k] = pair_unindex(s);
    (void)k;
    if (j >= seen.size()) seen.resize(j + 1, 0);
    if (bits(s) && !seen[j]) {
      seen[j] = 1;
      ++c.matched_a;
    }
  }
  c.unmatched_a = stages - c.matched_a;
  return c;
}

MatchingTrend analyze_matching_trend(const UPPoint& p) {
  MatchingTrend t;
  const std::size_t ell = std::max<std::size_t>(p.period_len(), 1);
  const std::size_t u = p.prefix_len();
  std::size_t m0 = 0;
  while (m0 * (m0 + 1) / 2 < u) ++m0;

  t.threshold = m0 + u + 2 * ell + 4;
  t.rows = m0 + 2 * ell * (t.threshold + 2);
  for (std::size_t j = 0; j < t.rows; ++j) {
    std::size_t n0 = 0;
    while (pair_index(j, n0) < u) ++n0;
    const std::size_t depth = n0 + 2 * ell;
    bool one = false;
    for (std::size_t k = 0; k < depth; ++k)
      if (p.bit(pair_index(j, k))) {
        one = true;
        break;
      }
    t.horizon = std::max(t.horizon, pair_index(j, depth) + 1);
    if (!one) ++t.isolated;
  }
  t.unmatched_infinite = t.isolated >= t.threshold;
  return t;
}

// ---- order presentations -----------------------------------------------

Vocabulary order_vocabulary() { return Vocabulary::parse_spec("lt/2,S/2"); }

namespace {

double dyadic(std::size_t s) {
  std::size_t level = 0;
  while ((std::size_t{2} << level) <= s + 1) ++level;
  std::size_t i = s + 1 - (std::size_t{1} << level);
  return static_cast<double>(2 * i + 1) /
         static_cast<double>(std::size_t{2} << level);
}

class OrderPlan : public StagePlan {
 public:
  explicit OrderPlan(bool with_pairs) : with_pairs_(with_pairs) {}

  Vocabulary vocab() const override { return order_vocabulary(); }

  void run_stage(std::size_t s, DiagramBuilder& b) override {
    b.begin_stage(s);
    const double q = dyadic(s);
    if (with_pairs_) {
      append_at(b, {0, q, 0}, false);
      append_at(b, {0, q, 1}, true);
      if (s == 0) append_at(b, {1, 0.0, 0}, false);
    }
    append_at(b, {2, q, 0}, false);
  }

 private:
  struct Pos {
    int region;
    double q;
    int layer;
    bool operator<(const Pos& o) const {
      if (region != o.region) return region < o.region;
      if (q != o.q) return q < o.q;
      return layer < o.layer;
    }
  };

  void append_at(DiagramBuilder& b, Pos p, bool close_pair) {
    const int lt = b.vocab().require("lt");
    const int su = b.vocab().require("S");
    std::size_t e = b.append_element();
    for (std::size_t f = 0; f < e; ++f) {
      if (pos_[f] < p) b.commit(lt, {f, e});
      else b.commit(lt, {e, f});
    }
    if (close_pair) b.commit(su, {e - 1, e});
    pos_.push_back(p);
  }

  bool with_pairs_;
  std::vector<Pos> pos_;
};

}  // namespace

std::shared_ptr<StagePlan> linorder_plan() {
  return std::make_shared<OrderPlan>(true);
}

std::shared_ptr<StagePlan> dense_plan() {
  return std::make_shared<OrderPlan>(false);
}

Formula sentence_star() {
  Vocabulary v = order_vocabulary();
  const int lt = v.require("lt");
  const int su = v.require("S");
  auto Lt = [&](int a, int b) { return Formula::atom(v, lt, {a, b}); };
  auto Su = [&](int a, int b) { return Formula::atom(v, su, {a, b}); };

  // below the witness: dense
  Formula left_dense = Formula::forall(
      1, Formula::implies(
             Lt(1, 0),
             Formula::exists(2, Formula::conj({Lt(1, 2), Lt(2, 0)}))));
  // above: dense, and nothing up there is a successor pair
  Formula right_plain = Formula::forall(
      1,
      Formula::implies(
          Lt(0, 1),
          Formula::conj(
              {Formula::exists(2, Formula::conj({Lt(0, 2), Lt(2, 1)})),
               Formula::forall(
                   3, Formula::implies(Lt(0, 3),
                                       Formula::neg(Su(1, 3))))})));
  // below: everything pairs up, and pairs do not chain
  Formula left_pairs = Formula::forall(
      1,
      Formula::implies(
          Lt(1, 0),
          Formula::conj(
              {Formula::exists(2, Formula::disj({Su(1, 2), Su(2, 1)})),
               Formula::implies(
                   Formula::exists(3, Su(1, 3)),
                   Formula::forall(4, Formula::neg(Su(4, 1))))})));

  return Formula::exists(
      0, Formula::conj({left_dense, right_plain, left_pairs}));
}

// ---- marker extension --------------------------------------------------

Vocabulary marker_vocabulary(const Vocabulary& v) {
  Vocabulary out;
  out.add("O", 1);
  for (std::size_t i = 0; i < v.size(); ++i) {
    const std::string& name = v.name(static_cast<int>(i));
    out.add("p" + name, 1);
    out.add("n" + name, 1);
    out.add("w" + name, v.arity(static_cast<int>(i)) + 1);
  }
  return out;
}

namespace {

Formula lift_matrix(const Formula::Node& n, const Vocabulary& v,
                    const Vocabulary& ext, int gvar) {
  switch (n.kind) {
    case Conn::Atom: {
      const std::string& name = v.name(n.symbol);
      std::vector<int> wargs{gvar};
      wargs.insert(wargs.end(), n.vars.begin(), n.vars.end());
      return Formula::exists(
          gvar, Formula::conj({Formula::atom(ext, "p" + name, {gvar}),
                               Formula::atom(ext, "w" + name, wargs)}));
    }
    case Conn::Eq:
      return Formula::eq(n.vars[0], n.vars[1]);
    case Conn::Not: {
      const Formula::Node& kid = *n.kids[0];
      if (kid.kind == Conn::Eq)
        return Formula::neg(Formula::eq(kid.vars[0], kid.vars[1]));
      if (kid.kind == Conn::Atom) {
        const std::string& name = v.name(kid.symbol);
        std::vector<int> wargs{gvar};
        wargs.insert(wargs.end(), kid.vars.begin(), kid.vars.end());
        return Formula::exists(
            gvar, Formula::conj({Formula::atom(ext, "n" + name, {gvar}),
                                 Formula::atom(ext, "w" + name, wargs)}));
      }
      throw ReductionError("negation not at a literal after prenexing");
    }
    case Conn::And: {
      std::vector<Formula> kids;
      for (const auto& k : n.kids)
        kids.push_back(lift_matrix(*k, v, ext, gvar));
      return Formula::conj(std::move(kids));
    }
    case Conn::Or: {
      std::vector<Formula> kids;
      for (const auto& k : n.kids)
        kids.push_back(lift_matrix(*k, v, ext, gvar));
      return Formula::disj(std::move(kids));
    }
    default:
      throw ReductionError("unexpected connective in a prenex matrix");
  }
}

}  // namespace

Formula lift_axiom(const Formula& axiom, const Vocabulary& v) {
  if (!axiom.is_sentence())
    throw ReductionError("only sentences can be lifted");
  Vocabulary ext = marker_vocabulary(v);
  PrenexForm pf = prenex(axiom);
  int gvar = 0;
  for (const auto& [kind, var] : pf.prefix) gvar = std::max(gvar, var + 1);
  gvar = std::max(gvar, pf.matrix.max_var() + 1);

  Formula body = lift_matrix(pf.matrix.node(), v, ext, gvar);
  const int o = ext.require("O");
  for (auto it = pf.prefix.rbegin(); it != pf.prefix.rend(); ++it) {
    Formula tag = Formula::atom(ext, o, {it->second});
    body = it->first == Quant::E
               ? Formula::exists(it->second,
                                 Formula::conj({std::move(tag), body}))
               : Formula::forall(it->second,
                                 Formula::implies(std::move(tag), body));
  }
  return body;
}

namespace {

class MarkerPlan : public StagePlan {
 public:
  explicit MarkerPlan(std::shared_ptr<StructureStream> src)
      : src_(std::move(src)), ext_(marker_vocabulary(src_->vocab())) {}

  Vocabulary vocab() const override { return ext_; }

  void run_stage(std::size_t s, DiagramBuilder& b) override {
    b.begin_stage(s);
    const auto& en = src_->enumeration();
    std::size_t e = b.append_element();
    b.commit(ext_.require("O"), {e});
    elem_.push_back(e);
    for (std::size_t idx = en.count_below(s); idx < en.count_below(s + 1);
         ++idx) {
      auto atom = en.atom(idx);
      const std::string& name = src_->vocab().name(atom.symbol);
      std::uint8_t bit = src_->bit(idx);
      std::size_t g = b.append_element();
      b.commit(ext_.require((bit ? "p" : "n") + name), {g});
      std::vector<std::size_t> tuple{g};
      for (std::size_t t : atom.tuple) tuple.push_back(elem_[t]);
      b.commit(ext_.require("w" + name), tuple);
    }
  }

 private:
  std::shared_ptr<StructureStream> src_;
  Vocabulary ext_;
  std::vector<std::size_t> elem_;
};

}  // namespace

std::shared_ptr<StructureStream> marker_extend(
    std::shared_ptr<StructureStream> st) {
  return std::make_shared<PlanStream>(
      std::make_shared<MarkerPlan>(std::move(st)));
}

MarkerRecovery::MarkerRecovery(std::shared_ptr<StructureStream> extended,
                               Vocabulary original)
    : extended_(std::move(extended)), original_(std::move(original)) {
  if (!(extended_->vocab() == marker_vocabulary(original_)))
    throw ReductionError("stream does not carry the extended signature");
}

FiniteStructure MarkerRecovery::stage_view(std::size_t stage) {
  AtomEnumeration orig_en(original_);
  const std::size_t ext_elems = stage + orig_en.count_below(stage);
  const std::size_t ext_bits =
      extended_->enumeration().count_below(ext_elems);
  FiniteStructure ext = decode(extended_->prefix_diagram(ext_bits), ext_elems);

  const Vocabulary& ev = ext.vocab();
  const int o = ev.require("O");
  std::vector<std::optional<std::size_t>> back(ext_elems);
  std::size_t n_orig = 0;
  for (std::size_t e = 0; e < ext_elems; ++e)
    if (ext.holds(o, {e})) back[e] = n_orig++;

  FiniteStructure out(original_, n_orig);
  for (std::size_t i = 0; i < original_.size(); ++i) {
    const int sym = static_cast<int>(i);
    const int w = ev.require("w" + original_.name(sym));
    const int pos = ev.require("p" + original_.name(sym));
    for (const auto& tuple : ext.tuples_of(w)) {
      if (!ext.holds(pos, {tuple[0]})) continue;
      std::vector<std::size_t> orig_tuple;
      for (std::size_t t = 1; t < tuple.size(); ++t) {
        if (!back[tuple[t]])
          throw ReductionError("witness links a non-original element");
        orig_tuple.push_back(*back[tuple[t]]);
      }
      out.set(sym, orig_tuple, true);
    }
  }
  return out;
}

// ---- joins, sections, graphs -------------------------------------------

namespace {

class JoinPlan : public StagePlan {
 public:
  JoinPlan(std::shared_ptr<StructureStream> a,
           std::shared_ptr<StructureStream> b)
      : a_(std::move(a)), b_(std::move(b)) {
    joined_.add("U", 1);
    for (std::size_t i = 0; i < a_->vocab().size(); ++i)
      amap_.push_back(joined_.add(a_->vocab().name(static_cast<int>(i)),
                                  a_->vocab().arity(static_cast<int>(i))));
    for (std::size_t i = 0; i < b_->vocab().size(); ++i)
      bmap_.push_back(joined_.add(b_->vocab().name(static_cast<int>(i)),
                                  b_->vocab().arity(static_cast<int>(i))));
  }

  Vocabulary vocab() const override { return joined_; }

  void run_stage(std::size_t s, DiagramBuilder& b) override {
    b.begin_stage(s);
    std::size_t ea = b.append_element();
    b.commit(joined_.require("U"), {ea});
    copy_rank(*a_, amap_, s, 0, b);
    b.append_element();
    copy_rank(*b_, bmap_, s, 1, b);
  }

 private:
  static void copy_rank(StructureStream& src, const std::vector<int>& map,
                        std::size_t rank, std::size_t parity,
                        DiagramBuilder& b) {
    const auto& en = src.enumeration();
    for (std::size_t idx = en.count_below(rank);
         idx < en.count_below(rank + 1); ++idx) {
      if (!src.bit(idx)) continue;
      auto atom = en.atom(idx);
      std::vector<std::size_t> tuple;
      for (std::size_t t : atom.tuple) tuple.push_back(2 * t + parity);
      b.commit(map[atom.symbol], tuple);
    }
  }

  std::shared_ptr<StructureStream> a_, b_;
  Vocabulary joined_;
  std::vector<int> amap_, bmap_;
};

}  // namespace

std::shared_ptr<StructureStream> diff_join(
    std::shared_ptr<StructureStream> a, std::shared_ptr<StructureStream> b) {
  for (std::size_t i = 0; i < a->vocab().size(); ++i) {
    const std::string& n = a->vocab().name(static_cast<int>(i));
    if (n == "U" || b->vocab().index_of(n) >= 0)
      throw ReductionError("vocabulary clash on symbol " + n);
  }
  for (std::size_t i = 0; i < b->vocab().size(); ++i)
    if (b->vocab().name(static_cast<int>(i)) == "U")
      throw ReductionError("vocabulary clash on symbol U");
  return std::make_shared<PlanStream>(
      std::make_shared<JoinPlan>(std::move(a), std::move(b)));
}

namespace {

class SectionPlan : public StagePlan {
 public:
  SectionPlan(std::size_t k, std::shared_ptr<StructureStream> st)
      : k_(k), st_(std::move(st)) {
    for (std::size_t i = 0; i < kSectionCount; ++i)
      sectioned_.add("R" + std::to_string(i), 1);
    for (std::size_t i = 0; i < st_->vocab().size(); ++i)
      map_.push_back(sectioned_.add(st_->vocab().name(static_cast<int>(i)),
                                    st_->vocab().arity(static_cast<int>(i))));
  }

  Vocabulary vocab() const override { return sectioned_; }

  void run_stage(std::size_t s, DiagramBuilder& b) override {
    b.begin_stage(s);
    std::size_t e = b.append_element();
    b.commit(static_cast<int>(k_), {e});
    const auto& en = st_->enumeration();
    for (std::size_t idx = en.count_below(s); idx < en.count_below(s + 1);
         ++idx) {
      if (!st_->bit(idx)) continue;
      auto atom = en.atom(idx);
      b.commit(map_[atom.symbol], atom.tuple);
    }
  }

 private:
  std::size_t k_;
  std::shared_ptr<StructureStream> st_;
  Vocabulary sectioned_;
  std::vector<int> map_;
};

}  // namespace

std::shared_ptr<StructureStream> section_structure(
    std::size_t k, std::shared_ptr<StructureStream> st) {
  if (k >= kSectionCount)
    throw ReductionError("section index out of range");
  return std::make_shared<PlanStream>(
      std::make_shared<SectionPlan>(k, std::move(st)));
}

namespace {

// Vertex blocks, in append order.  Element i: a triangle v,t,t'.  Held
// fact: a gadget vertex on a cycle of length 4+symbol, then per argument
// position p a fresh path of p+1 inner vertices ending at the argument's
// triangle vertex.  Tag-cycle and path vertices keep degree 2 forever, so
// the blocks parse back unambiguously from the edge bits alone.
class GraphPlan : public StagePlan {
 public:
  explicit GraphPlan(std::shared_ptr<StructureStream> st)
      : st_(std::move(st)) {
    for (std::size_t i = 0; i < st_->vocab().size(); ++i)
      if (static_cast<std::size_t>(st_->vocab().arity(static_cast<int>(i))) >
          kGraphArityBound)
        throw ReductionError("arity above the graph coding bound");
  }

  Vocabulary vocab() const override { return Vocabulary::parse_spec("E/2"); }

  void run_stage(std::size_t s, DiagramBuilder& b) override {
    b.begin_stage(s);
    const int e = b.vocab().require("E");
    std::size_t v = b.append_element();
    vmap_.push_back(v);
    std::size_t t1 = b.append_element();
    b.commit_sym(e, v, t1);
    std::size_t t2 = b.append_element();
    b.commit_sym(e, t1, t2);
    b.commit_sym(e, v, t2);

    const auto& en = st_->enumeration();
    for (std::size_t idx = en.count_below(s); idx < en.count_below(s + 1);
         ++idx) {
      if (!st_->bit(idx)) continue;
      auto atom = en.atom(idx);
      std::size_t g = b.append_element();
      const std::size_t cycle = 4 + static_cast<std::size_t>(atom.symbol);
      std::size_t prev = g;
      for (std::size_t i = 1; i < cycle; ++i) {
        std::size_t c = b.append_element();
        b.commit_sym(e, prev, c);
        if (i + 1 == cycle) b.commit_sym(e, c, g);
        prev = c;
      }
      for (std::size_t p = 0; p < atom.tuple.size(); ++p) {
        prev = g;
        for (std::size_t q = 0; q <= p; ++q) {
          std::size_t m = b.append_element();
          b.commit_sym(e, prev, m);
          prev = m;
        }
        b.commit_sym(e, prev, vmap_[atom.tuple[p]]);
      }
    }
  }

 private:
  std::shared_ptr<StructureStream> st_;
  std::vector<std::size_t> vmap_;
};

class GraphDecodeStream : public StructureStream {
 public:
  GraphDecodeStream(std::shared_ptr<StructureStream> graph,
                    const Vocabulary& original)
      : StructureStream(original), graph_(std::move(graph)) {
    if (graph_->vocab().spec() != "E/2")
      throw ReductionError("not an edge stream");
    if (original.size() == 0)
      throw ReductionError("empty target vocabulary");
  }

 protected:
  void produce(std::vector<std::uint8_t>& out) override {
    // one source rank per call: the element triangle, then the gadgets
    parse_triangle();
    const auto& en = enumeration();
    std::size_t idx = en.count_below(rank_);
    const std::size_t end = en.count_below(rank_ + 1);
    std::vector<std::uint8_t> bits(end - idx, 0);
    while (!next_is_triangle()) {
      auto [sym, tuple] = parse_gadget();
      std::size_t at = en.index_of(sym, tuple);
      if (at < idx || at >= end || bits[at - idx])
        throw ReductionError("gadget out of order in graph stream");
      bits[at - idx] = 1;
    }
    out.insert(out.end(), bits.begin(), bits.end());
    ++rank_;
  }

 private:
  bool edge(std::size_t a, std::size_t b) {
    const int e = graph_->vocab().require("E");
    return graph_->bit(graph_->enumeration().index_of(
               e, std::vector<std::size_t>{a, b})) != 0;
  }

  bool next_is_triangle() {
    return edge(pos_, pos_ + 1) && edge(pos_ + 1, pos_ + 2) &&
           edge(pos_, pos_ + 2);
  }

  void parse_triangle() {
    if (!next_is_triangle())
      throw ReductionError("expected an element triangle");
    vmap_.push_back(pos_);
    pos_ += 3;
  }

  std::pair<int, std::vector<std::size_t>> parse_gadget() {
    const std::size_t g = pos_;
    if (!edge(g, g + 1))
      throw ReductionError("expected a gadget cycle");
    std::size_t cycle = 4;
    while (cycle < 4 + vocab().size() && !edge(g + cycle - 1, g))
      ++cycle;
    if (!edge(g + cycle - 1, g))
      throw ReductionError("unterminated gadget cycle");
    for (std::size_t i = 1; i + 1 < cycle; ++i)
      if (!edge(g + i, g + i + 1))
        throw ReductionError("broken gadget cycle");
    const int sym = static_cast<int>(cycle - 4);

    std::vector<std::size_t> tuple;
    std::size_t q = g + cycle;
    const auto arity = static_cast<std::size_t>(vocab().arity(sym));
    for (std::size_t p = 0; p < arity; ++p) {
      std::size_t prev = g;
      for (std::size_t i = 0; i <= p; ++i) {
        if (!edge(prev, q))
          throw ReductionError("broken gadget path");
        prev = q++;
      }
      std::optional<std::size_t> target;
      for (std::size_t v = 0; v < vmap_.size(); ++v)
        if (edge(prev, vmap_[v])) {
          target = v;
          break;
        }
      if (!target) throw ReductionError("dangling gadget path");
      tuple.push_back(*target);
    }
    pos_ = q;
    return {sym, tuple};
  }

  std::shared_ptr<StructureStream> graph_;
  std::size_t pos_ = 0, rank_ = 0;
  std::vector<std::size_t> vmap_;  // triangle anchor per source element
};

}  // namespace

std::shared_ptr<StructureStream> to_graph(
    std::shared_ptr<StructureStream> st) {
  return std::make_shared<PlanStream>(
      std::make_shared<GraphPlan>(std::move(st)));
}

std::shared_ptr<StructureStream> decode_graph(
    std::shared_ptr<StructureStream> graph, const Vocabulary& original) {
  return std::make_shared<GraphDecodeStream>(std::move(graph), original);
}

// ---- certificates ------------------------------------------------------

ReductionCertificate infcoinf_certificate() {
  ReductionCertificate c{"pad-infcoinf",
                         Transducer::compose(pad(), r_infcoinf()),
                         canonical_set("Pi2_infones"),
                         "monadic[inf,inf]",
                         nullptr};
  c.target_on_output = [t = c.transducer](const UPPoint& p) {
    const std::size_t period = 2 * std::max<std::size_t>(p.period_len(), 1);
    const std::size_t n = 2 * p.prefix_len() + 4 * period + 8;
    RunResult r = run_transducer(t, p, n);
    auto [ones, zeros] = classify_monadic_bits(r.out, period + 2);
    return ones.inf && zeros.inf;
  };
  return c;
}

ReductionCertificate matching_certificate() {
  ReductionCertificate c{"matching", r_matching(),
                         canonical_set("Pi3_infemptycols"), "matching[inf,inf]",
                         nullptr};
  c.target_on_output = [](const UPPoint& p) {
    MatchingTrend t = analyze_matching_trend(p);
    // crosscheck the count replay against the trend analysis
    MatchingCounts counts = replay_matching_counts(p.source(), t.horizon);
    if (counts.matched_pairs != t.horizon)
      throw ReductionError("matched pair flow broken");
    return t.unmatched_infinite;
  };
  return c;
}

CertificateCheck check_certificate(const ReductionCertificate& cert,
                                   const std::vector<UPPoint>& battery) {
  CertificateCheck r;
  for (const auto& p : battery) {
    ++r.points;
    const bool src = cert.source.name() == "Pi3_infemptycols"
                         ? member_up(cert.source, MatrixPoint(p))
                         : member_up(cert.source, p);
    if (src != cert.target_on_output(p)) r.mismatches.push_back(p);
  }
  return r;
}

std::vector<std::string> reduction_names() {
  return {"infcoinf", "pad",     "matching", "linord",
          "marker",   "diffjoin", "section",  "tograph"};
}

}  // namespace modelborel
