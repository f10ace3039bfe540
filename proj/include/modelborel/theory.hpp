#pragma once

#include <functional>
#include <map>
#include <memory>
#include <optional>

#include "modelborel/builder.hpp"
#include "modelborel/eval.hpp"
#include "modelborel/pointclass.hpp"
#include "modelborel/prenex.hpp"

namespace modelborel {

struct TheoryError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A count that may be infinite.  Infinite parts of a representative model
// are capped at one past the quantifier budget, which no sentence inside
// the budget can see through.
struct Card {
  bool inf = false;
  std::size_t k = 0;

  static Card infinite() { return {true, 0}; }
  static Card finite(std::size_t n) { return {false, n}; }
  static Card parse(const std::string& text);

  std::size_t capped(std::size_t budget) const {
    return inf ? budget : std::min(k, budget);
  }
  bool operator==(const Card& o) const {
    return inf == o.inf && (inf || k == o.k);
  }
  std::string str() const { return inf ? "inf" : std::to_string(k); }
};

class TheoryOracle {
 public:
  virtual ~TheoryOracle() = default;
  virtual std::string id() const = 0;
  virtual const Vocabulary& vocab() const = 0;
  virtual bool decide(const Formula& sentence) const = 0;
};

// Finite representatives standing in for the countable models of a family;
// every model with universe omega corresponds to one member up to the
// quantifier budget, so consistency and entailment at a rank cap reduce to
// sweeps over members.
class ModelFamily {
 public:
  virtual ~ModelFamily() = default;
  virtual std::string id() const = 0;
  virtual const Vocabulary& vocab() const = 0;
  virtual std::vector<FiniteStructure> members(std::size_t budget) const = 0;
};

struct TheoryHandle {
  std::string id;
  Vocabulary vocabulary;
  std::shared_ptr<const TheoryOracle> oracle;  // null for axiom-only handles
  std::vector<Formula> axioms;
  std::shared_ptr<const ModelFamily> family;
  std::function<std::shared_ptr<StagePlan>()> presentation;  // may be null

  bool complete() const { return oracle != nullptr; }
  bool decide(const Formula& sentence) const;
};

// monadic family: one unary predicate, models classified by the two region
// cardinalities (at least one infinite since the universe is omega)
TheoryHandle make_monadic(Card p, Card not_p);
// partial matchings: matched-pair count and unmatched count
TheoryHandle make_matching(Card matched, Card unmatched);
std::vector<Formula> matching_base_axioms(const Vocabulary& v);
Formula matching_axiom(const Vocabulary& v, std::size_t index);  // generator
// the two linear-order presentations: paired-left/middle/right with
// successor pairs, and the plain dense order with empty successor
TheoryHandle make_linorder();
TheoryHandle make_dense();
// incomplete handle: theory = what the axioms entail at the rank cap
TheoryHandle make_axiomatic(const std::string& id, const Vocabulary& v,
                            std::vector<Formula> axioms,
                            std::shared_ptr<const ModelFamily> family);

TheoryHandle theory_by_id(const std::string& id);
std::vector<std::string> theory_ids();

struct TheoryConfig {
  TheoryHandle handle;
  std::size_t rank_cap = 3;
};
TheoryConfig parse_theory_config(const std::string& text);

// deterministic rank-bounded sentence stock: for each quantifier kind
// string, all-distinct guards combined with small literal matrices, sorted
// by rank then printed form
std::vector<Formula> canonical_sentences(const Vocabulary& v,
                                         std::size_t rank_cap);

// truth of every canonical sentence on every family member, memoized
struct SentenceTable {
  std::vector<Formula> sentences;
  std::vector<FiniteStructure> members;
  std::vector<std::vector<bool>> truth;  // [sentence][member]

  static SentenceTable build(const ModelFamily& family, std::size_t rank_cap,
                             std::size_t budget);
};

struct Fragment {
  Level lambda;
  std::size_t rank_cap = 0;
  std::vector<Formula> sentences;
  bool at_cap = true;  // always: closure is only computed up to the cap
};

Fragment level_fragment(const TheoryHandle& t, Level lambda,
                        std::size_t rank_cap);

struct ContainmentReport {
  Level lambda;
  std::size_t rank_cap = 0;
  std::size_t checked = 0;
  std::vector<Formula> counterexamples;
  bool contained() const { return counterexamples.empty(); }
};

// every lambda-sentence the first handle affirms must be affirmed by the
// second
ContainmentReport check_fragment_containment(const TheoryHandle& t_minus,
                                             const TheoryHandle& t_plus,
                                             Level lambda,
                                             std::size_t rank_cap);

struct TowerDecision {
  Formula sentence;
  bool value;
  bool forced;  // the other value had no surviving member
};

struct CompletionTower {
  std::string label;
  std::vector<Formula> base;
  std::vector<TowerDecision> decisions;
  std::optional<bool> value_of(const Formula& s) const;
};

struct LindenbaumResult {
  CompletionTower plus, minus;
  Level avoided;      // level the witness must stay clear of
  Level containment;  // dual level certified below
  std::size_t rank_cap = 0;
  std::size_t containment_checked = 0;
  std::vector<Formula> containment_violations;
  bool containment_ok() const { return containment_violations.empty(); }
};

// Split a complete-ish theory around a witness sentence: the plus tower
// keeps the base plus the witness plus every containment-level consequence
// of base+negated-witness; the minus tower keeps base, the negated witness,
// and the avoided-level truths of the plus tower.  Both towers then decide
// every canonical sentence in enumeration order against the member family,
// preferring the handle's own verdict where consistent.
LindenbaumResult lindenbaum_complete(const std::vector<Formula>& base,
                                     const Formula& witness, Level avoided,
                                     const TheoryHandle& handle,
                                     std::size_t rank_cap);

struct SplitResult {
  bool found = false;
  std::optional<Formula> witness;
  std::optional<LindenbaumResult> towers;
  std::string note;  // populated when inconclusive
};

// Look for a sentence the theory affirms that its lambda-fragment does not
// pin down at this cap; on success run the completion engine around it.
SplitResult split_theory(const TheoryHandle& t, Level lambda,
                         std::size_t rank_cap);

// diagram-space code of an axiom set; universal axiom sets stay at the
// complement level, infinite existential sets go one level up
BorelCode axioms_to_borel(const std::vector<Formula>& axioms, Level claimed,
                          const Vocabulary& v);
BorelCode axioms_to_borel(std::function<Formula(std::size_t)> generator,
                          Level claimed, const Vocabulary& v);

// window classifier for a unary-predicate diagram stream: a symbol count is
// infinite when it still grows across the last window, exact otherwise
std::pair<Card, Card> classify_monadic_bits(
    const std::vector<std::uint8_t>& bits, std::size_t window);

// exact first-order truth in the two infinite order presentations
bool linorder_eval(const Formula& sentence, bool with_pairs);

}  // namespace modelborel
