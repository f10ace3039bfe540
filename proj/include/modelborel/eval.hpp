#pragma once

#include <optional>

#include "modelborel/formula.hpp"
#include "modelborel/structure.hpp"

namespace modelborel {

// Tarski evaluation.  `env` maps variable index -> element; every free
// variable of f must be bound in env.
bool eval_finite(const Formula& f, const FiniteStructure& s,
                 const std::vector<std::optional<std::size_t>>& env = {});

// Do f and g agree on every structure of size <= cap over v?  Exhaustive;
// both formulas must be sentences over v.
bool equivalent_on_small(const Formula& f, const Formula& g,
                         const Vocabulary& v, std::size_t cap);

// Witness-bounded model search for existential-universal sentences (prefix
// shape E then A after prenexing; at most two blocks).  Searches universes
// of size 1 .. max(#existential vars, 1) only: any model induces one of that
// size on the witnesses, so failure here settles every cap >= that bound.
std::optional<FiniteStructure> find_finite_model(const Formula& f,
                                                 const Vocabulary& v,
                                                 std::size_t cap);

}  // namespace modelborel
