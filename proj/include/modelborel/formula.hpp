#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "modelborel/vocabulary.hpp"

namespace modelborel {

struct FormulaError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class Conn {
  Atom,     // symbol applied to variables
  Eq,       // x_i = x_j
  Not,      // 1 child
  And,      // >= 2 children
  Or,       // >= 2 children
  Implies,  // 2 children
  Exists,   // bound var + 1 child
  Forall,   // bound var + 1 child
};

// Quantifier kind of a prenex block.  E = existential, A = universal.
enum class Quant { E, A };
inline Quant dual(Quant q) { return q == Quant::E ? Quant::A : Quant::E; }

// Position in the quantifier-prefix hierarchy, counted cumulatively: a
// formula at (E,n) also sits at (E,m) and (A,m) for every m > n.  n = 0
// means quantifier-free.
struct Level {
  Quant kind = Quant::E;
  int n = 0;
  std::string str() const {
    return (kind == Quant::E ? "E" : "A") + std::to_string(n);
  }
  bool operator==(const Level&) const = default;
  static Level parse(const std::string& s);
};

// Minimal block counts for a prefix starting existentially / universally.
// classify() reduces this to a Level; fragment filters keep the full shape
// because cumulative membership needs both counts.
struct LevelShape {
  int e = 0;  // min blocks of a prenex form whose first block is existential
  int a = 0;  // ... whose first block is universal
  int count(Quant k) const { return k == Quant::E ? e : a; }
  bool within(Level lv) const { return count(lv.kind) <= lv.n; }
  Level level() const {
    return e <= a ? Level{Quant::E, e} : Level{Quant::A, a};
  }
};

// Immutable first-order formula over a fixed relational vocabulary.
// Variables are indices (printed x0, x1, ...).  Shared subtrees are fine;
// nothing mutates a node after construction.
class Formula {
 public:
  struct Node;
  using Ref = std::shared_ptr<const Node>;
  struct Node {
    Conn kind;
    int symbol = -1;         // Atom only
    std::vector<int> vars;   // Atom args; Eq {i,j}; quantifiers {bound var}
    std::vector<Ref> kids;
  };

  Formula() = default;
  explicit Formula(Ref r) : root_(std::move(r)) {}

  bool empty() const { return root_ == nullptr; }
  const Node& node() const {
    if (!root_) throw FormulaError("empty formula");
    return *root_;
  }
  const Ref& ref() const { return root_; }

  static Formula atom(const Vocabulary& v, int sym, std::vector<int> vars);
  static Formula atom(const Vocabulary& v, const std::string& name,
                      std::vector<int> vars);
  static Formula eq(int a, int b);
  static Formula neg(Formula f);
  static Formula conj(std::vector<Formula> kids);
  static Formula disj(std::vector<Formula> kids);
  static Formula implies(Formula a, Formula b);
  static Formula exists(int var, Formula body);
  static Formula forall(int var, Formula body);

  // Structural identity (same tree, same indices).
  bool same_as(const Formula& o) const;

  std::vector<int> free_vars() const;   // sorted, deduplicated
  int max_var() const;                  // -1 if no variables occur
  bool is_sentence() const { return free_vars().empty(); }
  bool quantifier_free() const;
  int quantifier_count() const;

  std::string print(const Vocabulary& v) const;

 private:
  Ref root_;
};

// Canonical s-expression parser for the formula grammar:
//   (forall x0 (exists x1 (R x0 x1))), (and a b c), (= x0 x1), ...
Formula parse_formula(const std::string& text, const Vocabulary& v);

// Parse while inferring the vocabulary from symbol usage (CLI convenience);
// arities must be used consistently.  Declaration order = first use.
std::pair<Formula, Vocabulary> parse_formula_infer(const std::string& text);

struct ParseError : FormulaError {
  std::size_t position;
  ParseError(const std::string& what, std::size_t pos)
      : FormulaError(what + " (at offset " + std::to_string(pos) + ")"),
        position(pos) {}
};

}  // namespace modelborel
