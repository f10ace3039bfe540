#include "modelborel/theory.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

namespace modelborel {

Card Card::parse(const std::string& text) {
  if (text == "inf" || text == "infinity" || text == "\xE2\x88\x9E")
    return infinite();
  if (text.empty() ||
      !std::all_of(text.begin(), text.end(),
                   [](unsigned char c) { return std::isdigit(c); }))
    throw TheoryError("bad cardinality: " + text);
  return finite(static_cast<std::size_t>(std::stoull(text)));
}

bool TheoryHandle::decide(const Formula& sentence) const {
  if (!sentence.is_sentence())
    throw TheoryError("theory decision needs a sentence");
  if (oracle) return oracle->decide(sentence);
  if (!family) throw TheoryError("handle " + id + " cannot decide sentences");
  // entailment at a budget derived from the sentences involved
  std::size_t q = std::max<std::size_t>(sentence.quantifier_count(), 1);
  for (const auto& ax : axioms)
    q = std::max(q, static_cast<std::size_t>(ax.quantifier_count()));
  auto ms = family->members(q + 1);
  for (const auto& m : ms) {
    bool model = true;
    for (const auto& ax : axioms)
      if (!eval_finite(ax, m)) {
        model = false;
        break;
      }
    if (model && !eval_finite(sentence, m)) return false;
  }
  return true;
}

namespace {

Vocabulary monadic_vocab() { return Vocabulary::parse_spec("P/1"); }
Vocabulary matching_vocab() { return Vocabulary::parse_spec("R/2"); }
Vocabulary order_vocab() { return Vocabulary::parse_spec("lt/2,S/2"); }

// ---- families ----------------------------------------------------------

// region cardinalities (a, b), at least one infinite; infinite parts are
// realized as `budget` elements, which no sentence with fewer quantifiers
// can tell from infinity
class MonadicFamily : public ModelFamily {
 public:
  MonadicFamily() : vocab_(monadic_vocab()) {}
  std::string id() const override { return "monadic-family"; }
  const Vocabulary& vocab() const override { return vocab_; }

  std::vector<FiniteStructure> members(std::size_t budget) const override {
    std::vector<FiniteStructure> out;
    for (const Card& a : card_range(budget))
      for (const Card& b : card_range(budget)) {
        if (!a.inf && !b.inf) continue;
        std::size_t p = a.capped(budget), np = b.capped(budget);
        FiniteStructure s(vocab_, p + np);
        int sym = vocab_.require("P");
        for (std::size_t i = 0; i < p; ++i) s.set(sym, {i}, true);
        out.push_back(std::move(s));
      }
    return out;
  }

  static std::vector<Card> card_range(std::size_t budget) {
    std::vector<Card> cards;
    for (std::size_t k = 0; k < budget; ++k) cards.push_back(Card::finite(k));
    cards.push_back(Card::infinite());
    return cards;
  }

 private:
  Vocabulary vocab_;
};

// matched-pair count and unmatched count, at least one infinite
class MatchingFamily : public ModelFamily {
 public:
  MatchingFamily() : vocab_(matching_vocab()) {}
  std::string id() const override { return "matching-family"; }
  const Vocabulary& vocab() const override { return vocab_; }

  std::vector<FiniteStructure> members(std::size_t budget) const override {
    std::vector<FiniteStructure> out;
    for (const Card& mc : MonadicFamily::card_range(budget))
      for (const Card& uc : MonadicFamily::card_range(budget)) {
        if (!mc.inf && !uc.inf) continue;
        out.push_back(representative(vocab_, mc, uc, budget));
      }
    return out;
  }

  static FiniteStructure representative(const Vocabulary& v, Card matched,
                                        Card unmatched, std::size_t budget) {
    std::size_t m = matched.capped(budget), u = unmatched.capped(budget);
    if (m + u == 0) m = 1;  // never produce an empty universe
    FiniteStructure s(v, 2 * m + u);
    int sym = v.require("R");
    for (std::size_t i = 0; i < m; ++i) {
      s.set(sym, {2 * i, 2 * i + 1}, true);
      s.set(sym, {2 * i + 1, 2 * i}, true);
    }
    return s;
  }

 private:
  Vocabulary vocab_;
};

// ---- cardinality-threshold oracles -------------------------------------

class MonadicOracle : public TheoryOracle {
 public:
  MonadicOracle(Card p, Card np) : vocab_(monadic_vocab()), p_(p), np_(np) {
    if (!p.inf && !np.inf)
      throw TheoryError("monadic family needs an infinite region");
  }
  std::string id() const override {
    return "monadic[" + p_.str() + "," + np_.str() + "]";
  }
  const Vocabulary& vocab() const override { return vocab_; }

  bool decide(const Formula& sentence) const override {
    if (!sentence.is_sentence()) throw TheoryError("oracle needs a sentence");
    std::size_t q = std::max<std::size_t>(sentence.quantifier_count(), 1);
    std::size_t p = p_.capped(q), np = np_.capped(q);
    FiniteStructure s(vocab_, std::max<std::size_t>(p + np, 1));
    int sym = vocab_.require("P");
    for (std::size_t i = 0; i < p; ++i) s.set(sym, {i}, true);
    return eval_finite(sentence, s);
  }

  Card p_card() const { return p_; }
  Card np_card() const { return np_; }

 private:
  Vocabulary vocab_;
  Card p_, np_;
};

class MatchingOracle : public TheoryOracle {
 public:
  MatchingOracle(Card m, Card u) : vocab_(matching_vocab()), m_(m), u_(u) {
    if (!m.inf && !u.inf)
      throw TheoryError("matching family needs an infinite part");
  }
  std::string id() const override {
    return "matching[" + m_.str() + "," + u_.str() + "]";
  }
  const Vocabulary& vocab() const override { return vocab_; }

  bool decide(const Formula& sentence) const override {
    if (!sentence.is_sentence()) throw TheoryError("oracle needs a sentence");
    std::size_t q = std::max<std::size_t>(sentence.quantifier_count(), 1);
    return eval_finite(sentence,
                       MatchingFamily::representative(vocab_, m_, u_, q));
  }

  Card matched_card() const { return m_; }
  Card unmatched_card() const { return u_; }

 private:
  Vocabulary vocab_;
  Card m_, u_;
};

class LinorderOracle : public TheoryOracle {
 public:
  explicit LinorderOracle(bool with_pairs)
      : vocab_(order_vocab()), with_pairs_(with_pairs) {}
  std::string id() const override { return with_pairs_ ? "linord" : "dense"; }
  const Vocabulary& vocab() const override { return vocab_; }
  bool decide(const Formula& sentence) const override {
    return linorder_eval(sentence, with_pairs_);
  }

 private:
  Vocabulary vocab_;
  bool with_pairs_;
};

// ---- canonical presentations as stage plans ----------------------------

class MonadicPlan : public StagePlan {
 public:
  MonadicPlan(Card p, Card np) : p_(p), np_(np) {}
  Vocabulary vocab() const override { return monadic_vocab(); }
  void run_stage(std::size_t s, DiagramBuilder& b) override {
    std::size_t e = b.append_element();
    bool in_p;
    if (p_.inf && np_.inf) in_p = (s % 2 == 0);
    else if (np_.inf) in_p = s < p_.k;   // finitely many P first
    else in_p = s >= np_.k;              // finitely many non-P first
    if (in_p) b.commit(b.vocab().require("P"), {e});
  }

 private:
  Card p_, np_;
};

class MatchingPlan : public StagePlan {
 public:
  MatchingPlan(Card m, Card u) : m_(m), u_(u) {}
  Vocabulary vocab() const override { return matching_vocab(); }
  void run_stage(std::size_t s, DiagramBuilder& b) override {
    bool pair;
    if (m_.inf && u_.inf) pair = true;  // pair plus a candidate each stage
    else if (u_.inf) pair = s < m_.k;
    else pair = s >= u_.k;
    if (pair) {
      std::size_t c = b.append_element();
      std::size_t d = b.append_element();
      b.commit_sym(b.vocab().require("R"), c, d);
    }
    if ((m_.inf && u_.inf) || !pair) b.append_element();  // unmatched
  }

 private:
  Card m_, u_;
};

}  // namespace

TheoryHandle make_monadic(Card p, Card not_p) {
  TheoryHandle h;
  auto oracle = std::make_shared<MonadicOracle>(p, not_p);
  h.id = oracle->id();
  h.vocabulary = oracle->vocab();
  h.oracle = oracle;
  h.family = std::make_shared<MonadicFamily>();
  h.presentation = [p, not_p]() -> std::shared_ptr<StagePlan> {
    return std::make_shared<MonadicPlan>(p, not_p);
  };
  return h;
}

TheoryHandle make_matching(Card matched, Card unmatched) {
  TheoryHandle h;
  auto oracle = std::make_shared<MatchingOracle>(matched, unmatched);
  h.id = oracle->id();
  h.vocabulary = oracle->vocab();
  h.oracle = oracle;
  h.axioms = matching_base_axioms(h.vocabulary);
  h.family = std::make_shared<MatchingFamily>();
  h.presentation = [matched, unmatched]() -> std::shared_ptr<StagePlan> {
    return std::make_shared<MatchingPlan>(matched, unmatched);
  };
  return h;
}

std::vector<Formula> matching_base_axioms(const Vocabulary& v) {
  int r = v.require("R");
  Formula irr = Formula::forall(0, Formula::neg(Formula::atom(v, r, {0, 0})));
  Formula sym = Formula::forall(
      0, Formula::forall(1, Formula::implies(Formula::atom(v, r, {0, 1}),
                                             Formula::atom(v, r, {1, 0}))));
  Formula fun = Formula::forall(
      0,
      Formula::forall(
          1, Formula::forall(
                 2, Formula::implies(
                        Formula::conj({Formula::atom(v, r, {0, 1}),
                                       Formula::atom(v, r, {0, 2})}),
                        Formula::eq(1, 2)))));
  return {irr, sym, fun};
}

namespace {

Formula all_distinct(const std::vector<int>& vars) {
  std::vector<Formula> parts;
  for (std::size_t i = 0; i < vars.size(); ++i)
    for (std::size_t j = i + 1; j < vars.size(); ++j)
      parts.push_back(Formula::neg(Formula::eq(vars[i], vars[j])));
  if (parts.empty()) throw TheoryError("distinctness needs two variables");
  if (parts.size() == 1) return parts[0];
  return Formula::conj(parts);
}

}  // namespace

Formula matching_axiom(const Vocabulary& v, std::size_t index) {
  if (index < 3) return matching_base_axioms(v)[index];
  int r = v.require("R");
  std::size_t j = (index - 3) / 2 + 1;  // threshold
  const bool matched = ((index - 3) % 2 == 0);
  if (matched) {
    // j disjoint matched pairs exist
    std::vector<int> vars;
    std::vector<Formula> parts;
    for (std::size_t i = 0; i < j; ++i) {
      vars.push_back(static_cast<int>(2 * i));
      vars.push_back(static_cast<int>(2 * i + 1));
      parts.push_back(
          Formula::atom(v, r, {static_cast<int>(2 * i), static_cast<int>(2 * i + 1)}));
    }
    Formula body = (vars.size() >= 2)
                       ? Formula::conj({all_distinct(vars),
                                        parts.size() == 1 ? parts[0]
                                                          : Formula::conj(parts)})
                       : parts[0];
    for (std::size_t i = vars.size(); i-- > 0;)
      body = Formula::exists(vars[i], body);
    return body;
  }
  // j distinct elements, each unrelated to everything
  std::vector<int> vars;
  std::vector<Formula> parts;
  for (std::size_t i = 0; i < j; ++i) {
    int x = static_cast<int>(i);
    int y = static_cast<int>(j + i);
    vars.push_back(x);
    parts.push_back(Formula::forall(y, Formula::neg(Formula::atom(v, r, {x, y}))));
  }
  Formula inner = parts.size() == 1 ? parts[0] : Formula::conj(parts);
  Formula body = (vars.size() >= 2)
                     ? Formula::conj({all_distinct(vars), inner})
                     : inner;
  for (std::size_t i = vars.size(); i-- > 0;)
    body = Formula::exists(vars[i], body);
  return body;
}

TheoryHandle make_linorder() {
  TheoryHandle h;
  auto oracle = std::make_shared<LinorderOracle>(true);
  h.id = oracle->id();
  h.vocabulary = oracle->vocab();
  h.oracle = oracle;
  return h;
}

TheoryHandle make_dense() {
  TheoryHandle h;
  auto oracle = std::make_shared<LinorderOracle>(false);
  h.id = oracle->id();
  h.vocabulary = oracle->vocab();
  h.oracle = oracle;
  return h;
}

TheoryHandle make_axiomatic(const std::string& id, const Vocabulary& v,
                            std::vector<Formula> axioms,
                            std::shared_ptr<const ModelFamily> family) {
  TheoryHandle h;
  h.id = id;
  h.vocabulary = v;
  h.axioms = std::move(axioms);
  h.family = std::move(family);
  return h;
}

TheoryHandle theory_by_id(const std::string& id) {
  if (id == "all-P") {
    TheoryHandle h = make_monadic(Card::infinite(), Card::finite(0));
    h.id = "all-P";
    return h;
  }
  if (id == "inf-coinf") {
    TheoryHandle h = make_monadic(Card::infinite(), Card::infinite());
    h.id = "inf-coinf";
    return h;
  }
  if (id == "perfect-matching") {
    TheoryHandle h = make_matching(Card::infinite(), Card::finite(0));
    h.id = "perfect-matching";
    return h;
  }
  if (id == "inf-inf-matching") {
    TheoryHandle h = make_matching(Card::infinite(), Card::infinite());
    h.id = "inf-inf-matching";
    return h;
  }
  if (id == "linord") return make_linorder();
  if (id == "dense") return make_dense();
  throw TheoryError("unknown theory id: " + id);
}

std::vector<std::string> theory_ids() {
  return {"all-P",           "inf-coinf", "perfect-matching",
          "inf-inf-matching", "linord",    "dense"};
}

TheoryConfig parse_theory_config(const std::string& text) {
  std::istringstream is(text);
  std::string line;
  while (std::getline(is, line)) {
    auto h = line.find('#');
    if (h != std::string::npos) line.erase(h);
    std::istringstream ls(line);
    std::string family;
    if (!(ls >> family)) continue;

    TheoryConfig cfg;
    std::map<std::string, std::string> kv;
    std::vector<std::string> bare;
    std::string tok;
    while (ls >> tok) {
      auto eq = tok.find('=');
      if (eq == std::string::npos) bare.push_back(tok);
      else kv[tok.substr(0, eq)] = tok.substr(eq + 1);
    }
    if (kv.count("cap")) cfg.rank_cap = std::stoul(kv["cap"]);

    auto pick = [&](const std::string& key, std::size_t pos) {
      if (kv.count(key)) return Card::parse(kv[key]);
      if (pos < bare.size()) return Card::parse(bare[pos]);
      throw TheoryError("config missing parameter " + key);
    };

    if (family == "monadic")
      cfg.handle = make_monadic(pick("P", 0), pick("notP", 1));
    else if (family == "matching")
      cfg.handle = make_matching(pick("matched", 0), pick("unmatched", 1));
    else if (family == "linord")
      cfg.handle = make_linorder();
    else if (family == "dense")
      cfg.handle = make_dense();
    else
      throw TheoryError("unknown theory family: " + family);
    return cfg;
  }
  throw TheoryError("empty theory config");
}

// ---- canonical sentence stock ------------------------------------------

std::vector<Formula> canonical_sentences(const Vocabulary& v,
                                         std::size_t rank_cap) {
  std::vector<Formula> out;
  std::set<std::string> seen;

  for (std::size_t r = 1; r <= rank_cap; ++r) {
    std::vector<std::pair<std::string, Formula>> rank_batch;
    std::vector<int> vars;
    for (std::size_t i = 0; i < r; ++i) vars.push_back(static_cast<int>(i));

    std::vector<Formula> atoms;
    for (std::size_t sym = 0; sym < v.size(); ++sym) {
      const std::size_t k = v.arity(static_cast<int>(sym));
      std::vector<std::size_t> idx(k, 0);
      while (true) {
        std::vector<int> tuple;
        for (std::size_t t : idx) tuple.push_back(static_cast<int>(t));
        atoms.push_back(Formula::atom(v, static_cast<int>(sym), tuple));
        std::size_t pos = k;
        while (pos > 0) {
          if (++idx[pos - 1] < r) break;
          idx[pos - 1] = 0;
          --pos;
        }
        if (pos == 0) break;
      }
    }

    std::vector<Formula> matrices;  // literal conjunctions
    for (const auto& a : atoms) {
      matrices.push_back(a);
      matrices.push_back(Formula::neg(a));
    }
    for (std::size_t i = 0; i < atoms.size(); ++i)
      for (std::size_t j = i + 1; j < atoms.size(); ++j)
        for (int sign = 0; sign < 4; ++sign) {
          Formula lhs = (sign & 1) ? Formula::neg(atoms[i]) : atoms[i];
          Formula rhs = (sign & 2) ? Formula::neg(atoms[j]) : atoms[j];
          matrices.push_back(Formula::conj({lhs, rhs}));
        }

    std::optional<Formula> distinct;
    if (r >= 2) distinct = all_distinct(vars);

    std::vector<Formula> bodies;
    for (const auto& c : matrices) {
      bodies.push_back(c);
      bodies.push_back(Formula::neg(c));
      if (distinct) {
        bodies.push_back(Formula::conj({*distinct, c}));
        bodies.push_back(Formula::implies(*distinct, c));
        bodies.push_back(Formula::conj({*distinct, Formula::neg(c)}));
        bodies.push_back(Formula::implies(*distinct, Formula::neg(c)));
      }
    }

    for (std::size_t kinds = 0; kinds < (std::size_t{1} << r); ++kinds) {
      for (const auto& body : bodies) {
        Formula f = body;
        for (std::size_t i = r; i-- > 0;) {
          const bool ex = (kinds >> i) & 1;
          f = ex ? Formula::exists(vars[i], f) : Formula::forall(vars[i], f);
        }
        std::string text = f.print(v);
        if (seen.insert(text).second)
          rank_batch.emplace_back(std::move(text), std::move(f));
      }
    }

    std::sort(rank_batch.begin(), rank_batch.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    for (auto& [text, f] : rank_batch) out.push_back(std::move(f));
  }
  return out;
}

SentenceTable SentenceTable::build(const ModelFamily& family,
                                   std::size_t rank_cap, std::size_t budget) {
  SentenceTable t;
  t.sentences = canonical_sentences(family.vocab(), rank_cap);
  t.members = family.members(budget);
  t.truth.resize(t.sentences.size());
  for (std::size_t i = 0; i < t.sentences.size(); ++i) {
    t.truth[i].resize(t.members.size());
    for (std::size_t j = 0; j < t.members.size(); ++j)
      t.truth[i][j] = eval_finite(t.sentences[i], t.members[j]);
  }
  return t;
}

Fragment level_fragment(const TheoryHandle& t, Level lambda,
                        std::size_t rank_cap) {
  Fragment out;
  out.lambda = lambda;
  out.rank_cap = rank_cap;
  for (const auto& s : canonical_sentences(t.vocabulary, rank_cap)) {
    if (!shape_of(s).within(lambda)) continue;
    if (t.decide(s)) out.sentences.push_back(s);
  }
  return out;
}

ContainmentReport check_fragment_containment(const TheoryHandle& t_minus,
                                             const TheoryHandle& t_plus,
                                             Level lambda,
                                             std::size_t rank_cap) {
  if (t_minus.vocabulary.spec() != t_plus.vocabulary.spec())
    throw TheoryError("containment check needs a shared vocabulary");
  ContainmentReport rep;
  rep.lambda = lambda;
  rep.rank_cap = rank_cap;
  for (const auto& s : canonical_sentences(t_minus.vocabulary, rank_cap)) {
    if (!shape_of(s).within(lambda)) continue;
    ++rep.checked;
    if (t_minus.decide(s) && !t_plus.decide(s))
      rep.counterexamples.push_back(s);
  }
  return rep;
}

std::optional<bool> CompletionTower::value_of(const Formula& s) const {
  for (const auto& d : decisions)
    if (d.sentence.same_as(s)) return d.value;
  return std::nullopt;
}

namespace {

bool satisfies_all(const FiniteStructure& m, const std::vector<Formula>& fs) {
  for (const auto& f : fs)
    if (!eval_finite(f, m)) return false;
  return true;
}

CompletionTower decide_tower(
    const std::string& label, std::vector<Formula> base,
    const std::vector<Formula>& sentences,
    const std::vector<std::vector<bool>>& truth,
    std::vector<std::size_t> survivors,
    const std::function<std::optional<bool>(std::size_t)>& preferred) {
  CompletionTower tower;
  tower.label = label;
  tower.base = std::move(base);
  for (std::size_t i = 0; i < sentences.size(); ++i) {
    std::vector<std::size_t> yes, no;
    for (std::size_t j : survivors)
      (truth[i][j] ? yes : no).push_back(j);
    bool value;
    bool forced = false;
    if (yes.empty()) {
      value = false;
      forced = true;
    } else if (no.empty()) {
      value = true;
      forced = true;
    } else {
      auto pref = preferred(i);
      value = pref.value_or(truth[i][survivors.back()]);
    }
    tower.decisions.push_back({sentences[i], value, forced});
    survivors = value ? std::move(yes) : std::move(no);
  }
  return tower;
}

}  // namespace

LindenbaumResult lindenbaum_complete(const std::vector<Formula>& base,
                                     const Formula& witness, Level avoided,
                                     const TheoryHandle& handle,
                                     std::size_t rank_cap) {
  if (!handle.family)
    throw TheoryError("handle " + handle.id + " has no finite-model family");
  if (!witness.is_sentence())
    throw TheoryError("completion witness must be a sentence");
  if (shape_of(witness).within(avoided))
    throw TheoryError("witness sentence lies inside the avoided level " +
                      avoided.str());

  std::size_t budget = rank_cap;
  budget = std::max(budget,
                    static_cast<std::size_t>(witness.quantifier_count()));
  for (const auto& f : base)
    budget = std::max(budget, static_cast<std::size_t>(f.quantifier_count()));
  budget += 1;

  SentenceTable table = SentenceTable::build(*handle.family, rank_cap, budget);
  const auto& members = table.members;

  std::vector<std::size_t> sat_base;
  for (std::size_t j = 0; j < members.size(); ++j)
    if (satisfies_all(members[j], base)) sat_base.push_back(j);
  if (sat_base.empty())
    throw TheoryError("base sentences are inconsistent with the family");

  std::vector<bool> wit_val(members.size());
  for (std::size_t j = 0; j < members.size(); ++j)
    wit_val[j] = eval_finite(witness, members[j]);

  // the witness must not collapse to an avoided-level sentence over the base
  for (std::size_t i = 0; i < table.sentences.size(); ++i) {
    if (!shape_of(table.sentences[i]).within(avoided)) continue;
    bool separated = false;
    for (std::size_t j : sat_base)
      if (wit_val[j] != table.truth[i][j]) {
        separated = true;
        break;
      }
    if (!separated)
      throw TheoryError(
          "witness is equivalent over the base to the avoided-level "
          "sentence " +
          table.sentences[i].print(handle.vocabulary));
  }

  Level containment{dual(avoided.kind), avoided.n};

  // containment-level consequences of base + negated witness
  std::vector<std::size_t> sat_neg;
  for (std::size_t j : sat_base)
    if (!wit_val[j]) sat_neg.push_back(j);
  if (sat_neg.empty())
    throw TheoryError("base already entails the witness at this cap");
  std::vector<Formula> theta;
  std::vector<std::size_t> theta_idx;
  for (std::size_t i = 0; i < table.sentences.size(); ++i) {
    if (!shape_of(table.sentences[i]).within(containment)) continue;
    bool all = true;
    for (std::size_t j : sat_neg)
      if (!table.truth[i][j]) {
        all = false;
        break;
      }
    if (all) {
      theta.push_back(table.sentences[i]);
      theta_idx.push_back(i);
    }
  }

  std::vector<std::size_t> plus_surv;
  for (std::size_t j : sat_base) {
    if (!wit_val[j]) continue;
    bool ok = true;
    for (std::size_t i : theta_idx)
      if (!table.truth[i][j]) {
        ok = false;
        break;
      }
    if (ok) plus_surv.push_back(j);
  }
  if (plus_surv.empty())
    throw TheoryError(
        "inconsistency: witness side admits no model of the "
        "containment-level consequences");

  std::vector<Formula> plus_base = base;
  plus_base.push_back(witness);
  plus_base.insert(plus_base.end(), theta.begin(), theta.end());

  auto oracle_pref = [&](std::size_t i) -> std::optional<bool> {
    if (handle.complete()) return handle.oracle->decide(table.sentences[i]);
    return std::nullopt;
  };
  CompletionTower plus =
      decide_tower("T+", std::move(plus_base), table.sentences, table.truth,
                   plus_surv, oracle_pref);

  // minus side: base, negated witness, and the avoided-level truths of plus
  std::vector<Formula> minus_base = base;
  minus_base.push_back(Formula::neg(witness));
  std::vector<std::size_t> carry;
  for (std::size_t i = 0; i < table.sentences.size(); ++i) {
    if (!shape_of(table.sentences[i]).within(avoided)) continue;
    if (plus.decisions[i].value) {
      minus_base.push_back(table.sentences[i]);
      carry.push_back(i);
    }
  }
  std::vector<std::size_t> minus_surv;
  for (std::size_t j : sat_neg) {
    bool ok = true;
    for (std::size_t i : carry)
      if (!table.truth[i][j]) {
        ok = false;
        break;
      }
    if (ok) minus_surv.push_back(j);
  }
  if (minus_surv.empty())
    throw TheoryError(
        "inconsistency: negated-witness side rejects the avoided-level "
        "truths of the witness side");

  auto no_pref = [](std::size_t) -> std::optional<bool> { return std::nullopt; };
  CompletionTower minus =
      decide_tower("T-", std::move(minus_base), table.sentences, table.truth,
                   minus_surv, no_pref);

  LindenbaumResult result;
  result.avoided = avoided;
  result.containment = containment;
  result.rank_cap = rank_cap;
  for (std::size_t i = 0; i < table.sentences.size(); ++i) {
    if (!shape_of(table.sentences[i]).within(containment)) continue;
    ++result.containment_checked;
    if (minus.decisions[i].value && !plus.decisions[i].value)
      result.containment_violations.push_back(table.sentences[i]);
  }
  result.plus = std::move(plus);
  result.minus = std::move(minus);
  return result;
}

SplitResult split_theory(const TheoryHandle& t, Level lambda,
                         std::size_t rank_cap) {
  SplitResult res;
  Fragment frag = level_fragment(t, lambda, rank_cap);
  if (!t.family) throw TheoryError("handle " + t.id + " has no model family");

  std::size_t budget = rank_cap + 1;
  for (const auto& f : frag.sentences)
    budget = std::max(budget,
                      static_cast<std::size_t>(f.quantifier_count()) + 1);
  auto members = t.family->members(budget);
  std::vector<std::size_t> frag_models;
  for (std::size_t j = 0; j < members.size(); ++j)
    if (satisfies_all(members[j], frag.sentences)) frag_models.push_back(j);

  for (const auto& s : canonical_sentences(t.vocabulary, rank_cap)) {
    if (shape_of(s).within(lambda)) continue;
    if (!t.decide(s)) continue;
    bool entailed = true;
    for (std::size_t j : frag_models)
      if (!eval_finite(s, members[j])) {
        entailed = false;
        break;
      }
    if (entailed) continue;
    try {
      LindenbaumResult towers =
          lindenbaum_complete(frag.sentences, s, lambda, t, rank_cap);
      res.found = true;
      res.witness = s;
      res.towers = std::move(towers);
      return res;
    } catch (const TheoryError&) {
      continue;  // candidate failed a hypothesis; keep searching
    }
  }
  res.note = "level fragment " + lambda.str() + " pins down every affirmed " +
             "sentence at rank cap " + std::to_string(rank_cap) +
             "; inconclusive";
  return res;
}

// ---- axiom sets as diagram-space codes ---------------------------------

namespace {

BorelCode::Ref qf_code(const Formula::Node* node, const AtomEnumeration& en,
                       std::map<int, std::size_t>& env) {
  switch (node->kind) {
    case Conn::Atom: {
      std::vector<std::size_t> tuple;
      for (int v : node->vars) {
        auto it = env.find(v);
        if (it == env.end()) throw TheoryError("unbound variable in axiom");
        tuple.push_back(it->second);
      }
      return BorelCode::cylinder({{en.index_of(node->symbol, tuple), 1}});
    }
    case Conn::Eq: {
      auto a = env.find(node->vars[0]);
      auto b = env.find(node->vars[1]);
      if (a == env.end() || b == env.end())
        throw TheoryError("unbound variable in axiom");
      return a->second == b->second ? BorelCode::whole_space()
                                    : BorelCode::empty_set();
    }
    case Conn::Not:
      return BorelCode::complement(qf_code(node->kids[0].get(), en, env));
    case Conn::And: {
      std::vector<BorelCode::Ref> parts;
      for (const auto& k : node->kids)
        parts.push_back(qf_code(k.get(), en, env));
      return BorelCode::intersect_of(std::move(parts));
    }
    case Conn::Or: {
      std::vector<BorelCode::Ref> parts;
      for (const auto& k : node->kids)
        parts.push_back(qf_code(k.get(), en, env));
      return BorelCode::union_of(std::move(parts));
    }
    case Conn::Implies: {
      std::vector<BorelCode::Ref> parts;
      parts.push_back(
          BorelCode::complement(qf_code(node->kids[0].get(), en, env)));
      parts.push_back(qf_code(node->kids[1].get(), en, env));
      return BorelCode::union_of(std::move(parts));
    }
    default:
      throw TheoryError("quantifier inside a matrix");
  }
}

struct AxiomCoder {
  std::shared_ptr<AtomEnumeration> en;

  BorelCode::Ref code_of(const Formula& axiom) const {
    PrenexForm pf = prenex(axiom);
    std::map<int, std::size_t> env;
    auto enp = en;  // keep the enumeration alive inside generators
    return prefix_with_shared(pf, 0, enp, env);
  }

  static BorelCode::Ref prefix_with_shared(
      const PrenexForm& pf, std::size_t at,
      std::shared_ptr<AtomEnumeration> en, std::map<int, std::size_t> env) {
    if (at == pf.prefix.size()) {
      std::map<int, std::size_t> e = env;
      return qf_code(&pf.matrix.node(), *en, e);
    }
    auto [kind, var] = pf.prefix[at];
    auto family = [pf, at, en, env, var = var](std::size_t elem) {
      std::map<int, std::size_t> next = env;
      next[var] = elem;
      return prefix_with_shared(pf, at + 1, en, next);
    };
    return kind == Quant::E ? BorelCode::union_seq(family)
                            : BorelCode::intersect_seq(family);
  }
};

BorelCode finish_axiom_code(std::vector<BorelCode::Ref> parts,
                            std::optional<std::size_t> finite_count,
                            std::function<BorelCode::Ref(std::size_t)> gen,
                            Level claimed) {
  BorelCode::Ref root;
  if (finite_count) {
    root = BorelCode::intersect_of(std::move(parts));
  } else {
    root = BorelCode::intersect_seq(std::move(gen));
  }
  SetLevel lv;
  if (claimed.kind == Quant::A) {
    lv = SetLevel{true, claimed.n, false};
  } else {
    lv = finite_count ? SetLevel{false, claimed.n, false}
                      : SetLevel{true, claimed.n + 1, false};
  }
  return BorelCode(root, lv, "axioms-" + claimed.str());
}

}  // namespace

BorelCode axioms_to_borel(const std::vector<Formula>& axioms, Level claimed,
                          const Vocabulary& v) {
  AxiomCoder coder{std::make_shared<AtomEnumeration>(v)};
  std::vector<BorelCode::Ref> parts;
  for (const auto& ax : axioms) {
    if (!ax.is_sentence()) throw TheoryError("axioms must be sentences");
    if (!shape_of(ax).within(claimed))
      throw TheoryError("axiom exceeds claimed level " + claimed.str() +
                        ": " + ax.print(v));
    parts.push_back(coder.code_of(ax));
  }
  return finish_axiom_code(std::move(parts), axioms.size(), nullptr, claimed);
}

BorelCode axioms_to_borel(std::function<Formula(std::size_t)> generator,
                          Level claimed, const Vocabulary& v) {
  auto coder = std::make_shared<AxiomCoder>(
      AxiomCoder{std::make_shared<AtomEnumeration>(v)});
  for (std::size_t i = 0; i < 16; ++i) {
    Formula ax = generator(i);
    if (!ax.is_sentence() || !shape_of(ax).within(claimed))
      throw TheoryError("axiom exceeds claimed level " + claimed.str() +
                        ": " + ax.print(v));
  }
  auto gen = [coder, generator](std::size_t i) {
    return coder->code_of(generator(i));
  };
  return finish_axiom_code({}, std::nullopt, gen, claimed);
}

std::pair<Card, Card> classify_monadic_bits(
    const std::vector<std::uint8_t>& bits, std::size_t window) {
  if (bits.size() < 2 * window + 2)
    throw TheoryError("prefix too short for the classification window");
  std::size_t ones = 0, zeros = 0, ones_head = 0, zeros_head = 0;
  for (std::size_t i = 0; i < bits.size(); ++i) {
    (bits[i] ? ones : zeros) += 1;
    if (i + window < bits.size()) (bits[i] ? ones_head : zeros_head) += 1;
  }
  Card one_card = (ones > ones_head) ? Card::infinite() : Card::finite(ones);
  Card zero_card =
      (zeros > zeros_head) ? Card::infinite() : Card::finite(zeros);
  return {one_card, zero_card};
}

}  // namespace modelborel
