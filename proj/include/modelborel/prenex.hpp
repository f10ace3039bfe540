#pragma once

#include "modelborel/formula.hpp"

namespace modelborel {

// Prenex normal form: alternation-minimal prefix plus quantifier-free matrix
// with negations pushed to the literals and implications rewritten as
// not/or.  Construction is deterministic, so printed forms are byte-stable.
struct PrenexForm {
  std::vector<std::pair<Quant, int>> prefix;  // outermost first
  Formula matrix;

  Formula to_formula() const;
  // Consecutive same-kind quantifiers grouped into blocks, outermost first.
  std::vector<std::pair<Quant, std::vector<int>>> blocks() const;
};

// Minimal block counts achievable by any prenex form of f (for either
// choice of leading quantifier kind).
LevelShape shape_of(const Formula& f);

// Minimal cumulative level of f; ties between E(n) and A(n) report E(n).
Level classify(const Formula& f);

// Deterministic alternation-minimal prenexing.  Rules: implications become
// not/or, vacuous quantifiers are dropped, quantifiers are pulled
// left-to-right into the outermost block their kind fits, adjacent
// same-kind blocks merge, and bound variables are renamed to fresh indices
// in prefix order (starting after the free variables).
PrenexForm prenex(const Formula& f);

}  // namespace modelborel
