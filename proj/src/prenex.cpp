#include "modelborel/prenex.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>

namespace modelborel {

Formula PrenexForm::to_formula() const {
  Formula f = matrix;
  for (auto it = prefix.rbegin(); it != prefix.rend(); ++it)
    f = it->first == Quant::E ? Formula::exists(it->second, f)
                              : Formula::forall(it->second, f);
  return f;
}

std::vector<std::pair<Quant, std::vector<int>>> PrenexForm::blocks() const {
  std::vector<std::pair<Quant, std::vector<int>>> out;
  for (const auto& [k, v] : prefix) {
    if (out.empty() || out.back().first != k) out.push_back({k, {}});
    out.back().second.push_back(v);
  }
  return out;
}

namespace {

using Ref = Formula::Ref;

constexpr int kTempBase = 1 << 20;

Ref remake(Conn kind, int symbol, std::vector<int> vars,
           std::vector<Ref> kids) {
  auto n = std::make_shared<Formula::Node>();
  n->kind = kind;
  n->symbol = symbol;
  n->vars = std::move(vars);
  n->kids = std::move(kids);
  return n;
}

// Alpha-rename every bound variable to a unique temp index so later passes
// can move quantifiers freely.
Ref alpha_rename(const Ref& n, std::map<int, int>& scope, int& next_temp) {
  std::vector<int> vars = n->vars;
  std::vector<Ref> kids;
  switch (n->kind) {
    case Conn::Atom:
    case Conn::Eq:
      for (int& x : vars) {
        auto it = scope.find(x);
        if (it != scope.end()) x = it->second;
      }
      return remake(n->kind, n->symbol, std::move(vars), {});
    case Conn::Exists:
    case Conn::Forall: {
      int fresh = next_temp++;
      auto prev = scope.find(vars[0]);
      std::optional<int> saved;
      if (prev != scope.end()) saved = prev->second;
      scope[vars[0]] = fresh;
      Ref body = alpha_rename(n->kids[0], scope, next_temp);
      if (saved)
        scope[vars[0]] = *saved;
      else
        scope.erase(vars[0]);
      return remake(n->kind, -1, {fresh}, {body});
    }
    default:
      for (const auto& k : n->kids)
        kids.push_back(alpha_rename(k, scope, next_temp));
      return remake(n->kind, n->symbol, std::move(vars), std::move(kids));
  }
}

bool uses_var(const Ref& n, int var) {
  for (int x : n->vars)
    if (x == var && n->kind != Conn::Exists && n->kind != Conn::Forall)
      return true;
  if ((n->kind == Conn::Exists || n->kind == Conn::Forall) &&
      n->vars[0] == var)
    return false;  // rebinding shadows (cannot happen after alpha-rename)
  for (const auto& k : n->kids)
    if (uses_var(k, var)) return true;
  return false;
}

Ref drop_vacuous(const Ref& n) {
  if (n->kind == Conn::Exists || n->kind == Conn::Forall) {
    Ref body = drop_vacuous(n->kids[0]);
    if (!uses_var(body, n->vars[0])) return body;
    return remake(n->kind, -1, n->vars, {body});
  }
  std::vector<Ref> kids;
  for (const auto& k : n->kids) kids.push_back(drop_vacuous(k));
  if (kids.empty()) return n;
  return remake(n->kind, n->symbol, n->vars, std::move(kids));
}

struct ShapeKey {
  const Formula::Node* node;
  bool positive;
  bool operator<(const ShapeKey& o) const {
    return node != o.node ? node < o.node : positive < o.positive;
  }
};

class ShapeSolver {
 public:
  LevelShape shape(const Ref& n, bool positive) {
    ShapeKey key{n.get(), positive};
    auto it = memo_.find(key);
    if (it != memo_.end()) return it->second;
    LevelShape s = compute(n, positive);
    memo_.emplace(key, s);
    return s;
  }

 private:
  // Blocks needed when a child shape is embedded in a prefix whose first
  // block has kind k: either start inside the k-block or skip it.
  static int embed(const LevelShape& s, Quant k) {
    return std::min(s.count(k), s.count(dual(k)) + 1);
  }

  LevelShape compute(const Ref& n, bool positive) {
    switch (n->kind) {
      case Conn::Atom:
      case Conn::Eq:
        return {0, 0};
      case Conn::Not:
        return shape(n->kids[0], !positive);
      case Conn::And:
      case Conn::Or: {
        LevelShape out{0, 0};
        for (const auto& k : n->kids) {
          LevelShape s = shape(k, positive);
          out.e = std::max(out.e, embed(s, Quant::E));
          out.a = std::max(out.a, embed(s, Quant::A));
        }
        return out;
      }
      case Conn::Implies: {
        LevelShape l = shape(n->kids[0], !positive);
        LevelShape r = shape(n->kids[1], positive);
        LevelShape out{0, 0};
        out.e = std::max(embed(l, Quant::E), embed(r, Quant::E));
        out.a = std::max(embed(l, Quant::A), embed(r, Quant::A));
        return out;
      }
      case Conn::Exists:
      case Conn::Forall: {
        bool exists_like = (n->kind == Conn::Exists) == positive;
        LevelShape s = shape(n->kids[0], positive);
        LevelShape out;
        if (exists_like) {
          out.e = std::min(std::max(1, s.e), 1 + s.a);
          out.a = out.e + 1;
        } else {
          out.a = std::min(std::max(1, s.a), 1 + s.e);
          out.e = out.a + 1;
        }
        return out;
      }
    }
    throw FormulaError("unreachable");
  }

  std::map<ShapeKey, LevelShape> memo_;
};

// View into the remaining target block sequence: alternating kinds starting
// with `start`, `remaining` blocks left.
struct BlockView {
  Quant start;
  int remaining;
  BlockView advance() const { return {dual(start), remaining - 1}; }
};

struct Built {
  std::vector<std::pair<Quant, int>> prefix;
  Ref matrix;
};

class Builder {
 public:
  Built build(const Ref& n, bool positive, BlockView view) {
    switch (n->kind) {
      case Conn::Atom:
        return {{}, positive ? n : remake(Conn::Not, -1, {}, {n})};
      case Conn::Eq:
        return {{}, positive ? n : remake(Conn::Not, -1, {}, {n})};
      case Conn::Not:
        return build(n->kids[0], !positive, view);
      case Conn::And:
      case Conn::Or: {
        bool and_like = (n->kind == Conn::And) == positive;
        std::vector<std::pair<Ref, bool>> parts;
        for (const auto& k : n->kids) parts.push_back({k, positive});
        return combine(parts, and_like, view);
      }
      case Conn::Implies:
        return combine({{n->kids[0], !positive}, {n->kids[1], positive}},
                       /*and_like=*/!positive, view);
      case Conn::Exists:
      case Conn::Forall: {
        bool exists_like = (n->kind == Conn::Exists) == positive;
        Quant k = exists_like ? Quant::E : Quant::A;
        while (view.start != k) {
          view = view.advance();
          if (view.remaining <= 0)
            throw FormulaError("prenex internal error: block underflow");
        }
        Built body = build(n->kids[0], positive, view);
        Built out;
        out.prefix.push_back({k, n->vars[0]});
        out.prefix.insert(out.prefix.end(), body.prefix.begin(),
                          body.prefix.end());
        out.matrix = body.matrix;
        return out;
      }
    }
    throw FormulaError("unreachable");
  }

 private:
  Built combine(const std::vector<std::pair<Ref, bool>>& parts, bool and_like,
                BlockView view) {
    std::vector<Built> kids;
    for (const auto& [ref, pol] : parts) kids.push_back(build(ref, pol, view));

    // Merge the kid prefixes block by block, left to right within a block.
    Built out;
    std::vector<std::size_t> at(kids.size(), 0);
    BlockView v = view;
    auto pending = [&] {
      for (std::size_t i = 0; i < kids.size(); ++i)
        if (at[i] < kids[i].prefix.size()) return true;
      return false;
    };
    while (pending()) {
      if (v.remaining <= 0)
        throw FormulaError("prenex internal error: merge overflow");
      for (std::size_t i = 0; i < kids.size(); ++i)
        while (at[i] < kids[i].prefix.size() &&
               kids[i].prefix[at[i]].first == v.start)
          out.prefix.push_back(kids[i].prefix[at[i]++]);
      v = v.advance();
    }

    std::vector<Ref> matrices;
    for (auto& k : kids) matrices.push_back(k.matrix);
    out.matrix = remake(and_like ? Conn::And : Conn::Or, -1, {},
                        std::move(matrices));
    return out;
  }
};

Ref rename_tree(const Ref& n, const std::map<int, int>& sub) {
  std::vector<int> vars = n->vars;
  for (int& x : vars) {
    auto it = sub.find(x);
    if (it != sub.end()) x = it->second;
  }
  std::vector<Ref> kids;
  for (const auto& k : n->kids) kids.push_back(rename_tree(k, sub));
  return remake(n->kind, n->symbol, std::move(vars), std::move(kids));
}

}  // namespace

LevelShape shape_of(const Formula& f) {
  std::map<int, int> scope;
  int next_temp = kTempBase;
  Ref t = alpha_rename(f.ref(), scope, next_temp);
  t = drop_vacuous(t);
  ShapeSolver solver;
  return solver.shape(t, true);
}

Level classify(const Formula& f) { return shape_of(f).level(); }

PrenexForm prenex(const Formula& f) {
  std::map<int, int> scope;
  int next_temp = kTempBase;
  Ref t = alpha_rename(f.ref(), scope, next_temp);
  t = drop_vacuous(t);

  ShapeSolver solver;
  LevelShape shape = solver.shape(t, true);
  Level lv = shape.level();

  Builder builder;
  Built built = builder.build(t, true, {lv.kind, std::max(lv.n, 1)});

  // Canonical renaming: fresh indices in prefix order, after free vars.
  int base = 0;
  for (int x : Formula(t).free_vars())
    if (x < kTempBase) base = std::max(base, x + 1);
  std::map<int, int> sub;
  for (const auto& [k, v] : built.prefix) sub[v] = base++;

  PrenexForm out;
  for (const auto& [k, v] : built.prefix) out.prefix.push_back({k, sub[v]});
  out.matrix = Formula(rename_tree(built.matrix, sub));
  return out;
}

}  // namespace modelborel
