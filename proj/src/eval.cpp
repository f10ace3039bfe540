#include "modelborel/eval.hpp"

#include <functional>

#include "modelborel/prenex.hpp"

namespace modelborel {

namespace {

bool eval_rec(const Formula::Node& n, const FiniteStructure& s,
              std::vector<std::optional<std::size_t>>& env) {
  switch (n.kind) {
    case Conn::Atom: {
      std::vector<std::size_t> tuple;
      tuple.reserve(n.vars.size());
      for (int x : n.vars) {
        if (x >= static_cast<int>(env.size()) || !env[x])
          throw FormulaError("unbound variable x" + std::to_string(x));
        tuple.push_back(*env[x]);
      }
      return s.holds(n.symbol, tuple);
    }
    case Conn::Eq: {
      for (int x : n.vars)
        if (x >= static_cast<int>(env.size()) || !env[x])
          throw FormulaError("unbound variable x" + std::to_string(x));
      return *env[n.vars[0]] == *env[n.vars[1]];
    }
    case Conn::Not:
      return !eval_rec(*n.kids[0], s, env);
    case Conn::And:
      for (const auto& k : n.kids)
        if (!eval_rec(*k, s, env)) return false;
      return true;
    case Conn::Or:
      for (const auto& k : n.kids)
        if (eval_rec(*k, s, env)) return true;
      return false;
    case Conn::Implies:
      return !eval_rec(*n.kids[0], s, env) || eval_rec(*n.kids[1], s, env);
    case Conn::Exists:
    case Conn::Forall: {
      int var = n.vars[0];
      if (var >= static_cast<int>(env.size())) env.resize(var + 1);
      auto saved = env[var];
      bool exists = n.kind == Conn::Exists;
      bool result = !exists;
      for (std::size_t e = 0; e < s.size(); ++e) {
        env[var] = e;
        bool v = eval_rec(*n.kids[0], s, env);
        if (v == exists) {
          result = exists;
          break;
        }
      }
      env[var] = saved;
      return result;
    }
  }
  throw FormulaError("unreachable");
}

}  // namespace

bool eval_finite(const Formula& f, const FiniteStructure& s,
                 const std::vector<std::optional<std::size_t>>& env) {
  auto scratch = env;
  int mv = f.max_var();
  if (mv >= static_cast<int>(scratch.size()))
    scratch.resize(mv + 1);
  return eval_rec(f.node(), s, scratch);
}

bool equivalent_on_small(const Formula& f, const Formula& g,
                         const Vocabulary& v, std::size_t cap) {
  if (!f.is_sentence() || !g.is_sentence())
    throw FormulaError("equivalent_on_small expects sentences");
  for (std::size_t size = 1; size <= cap; ++size) {
    StructureEnumerator en(v, size);
    FiniteStructure s;
    while (en.next(s))
      if (eval_finite(f, s) != eval_finite(g, s)) return false;
  }
  return true;
}

std::optional<FiniteStructure> find_finite_model(const Formula& f,
                                                 const Vocabulary& v,
                                                 std::size_t cap) {
  if (!f.is_sentence())
    throw FormulaError("find_finite_model expects a sentence");
  LevelShape shape = shape_of(f);
  if (shape.e > 2)
    throw FormulaError(
        "find_finite_model expects an existential-universal sentence "
        "(given shape needs " +
        std::to_string(shape.e) + " blocks)");
  PrenexForm pf = prenex(f);
  std::size_t witnesses = 0;
  for (const auto& [k, var] : pf.prefix)
    if (k == Quant::E) ++witnesses;
  std::size_t limit = std::max<std::size_t>(witnesses, 1);
  limit = std::min(limit, std::max<std::size_t>(cap, 1));
  for (std::size_t size = 1; size <= limit; ++size) {
    StructureEnumerator en(v, size);
    FiniteStructure s;
    while (en.next(s))
      if (eval_finite(f, s)) return s;
  }
  return std::nullopt;
}

}  // namespace modelborel
