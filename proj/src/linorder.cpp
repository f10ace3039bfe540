#include <algorithm>
#include <map>
#include <vector>

#include "modelborel/theory.hpp"

namespace modelborel {

// Exact truth in the two infinite order presentations.  Elements are
// represented symbolically: a region (left pair-block / middle / right),
// a dyadic coordinate within the region, and for left elements the layer
// inside the adjacent pair.  Quantifiers range over finitely many
// representatives: the named elements, their pair partners, the middle
// element, and one fresh coordinate per gap of each region.  Back-and-forth
// homogeneity of the dense blocks makes this exhaustive.

namespace {

struct Elem {
  int region;  // 0 = left, 1 = middle, 2 = right
  double q = 0.0;
  int layer = 0;  // left region only: 0 = lower of the pair, 1 = upper

  bool operator==(const Elem& o) const {
    return region == o.region && q == o.q && layer == o.layer;
  }
  bool operator<(const Elem& o) const {
    if (region != o.region) return region < o.region;
    if (q != o.q) return q < o.q;
    return layer < o.layer;
  }
};

struct Presentation {
  bool with_pairs;
  int lt_sym, s_sym;

  bool less(const Elem& a, const Elem& b) const { return a < b; }
  bool succ(const Elem& a, const Elem& b) const {
    return with_pairs && a.region == 0 && b.region == 0 && a.q == b.q &&
           a.layer == 0 && b.layer == 1;
  }
};

std::vector<double> gap_points(std::vector<double> coords) {
  std::sort(coords.begin(), coords.end());
  coords.erase(std::unique(coords.begin(), coords.end()), coords.end());
  std::vector<double> out;
  if (coords.empty()) {
    out.push_back(0.0);
    return out;
  }
  out.push_back(coords.front() - 1.0);
  for (std::size_t i = 0; i + 1 < coords.size(); ++i)
    out.push_back((coords[i] + coords[i + 1]) / 2.0);
  out.push_back(coords.back() + 1.0);
  return out;
}

std::vector<Elem> candidates(const Presentation& pr,
                             const std::map<int, Elem>& env) {
  std::vector<Elem> out;
  std::vector<double> left_coords, right_coords;
  for (const auto& [var, e] : env) {
    out.push_back(e);
    if (e.region == 0) {
      left_coords.push_back(e.q);
      out.push_back({0, e.q, 1 - e.layer});  // pair partner
    } else if (e.region == 2) {
      right_coords.push_back(e.q);
    }
  }
  if (pr.with_pairs) {
    out.push_back({1, 0.0, 0});
    for (double q : gap_points(left_coords)) {
      out.push_back({0, q, 0});
      out.push_back({0, q, 1});
    }
  }
  for (double q : gap_points(right_coords)) out.push_back({2, q, 0});
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

bool eval_node(const Formula::Node& n, const Presentation& pr,
               std::map<int, Elem>& env) {
  switch (n.kind) {
    case Conn::Atom: {
      const Elem& a = env.at(n.vars[0]);
      const Elem& b = env.at(n.vars[1]);
      return n.symbol == pr.lt_sym ? pr.less(a, b) : pr.succ(a, b);
    }
    case Conn::Eq:
      return env.at(n.vars[0]) == env.at(n.vars[1]);
    case Conn::Not:
      return !eval_node(*n.kids[0], pr, env);
    case Conn::And:
      for (const auto& k : n.kids)
        if (!eval_node(*k, pr, env)) return false;
      return true;
    case Conn::Or:
      for (const auto& k : n.kids)
        if (eval_node(*k, pr, env)) return true;
      return false;
    case Conn::Implies:
      return !eval_node(*n.kids[0], pr, env) || eval_node(*n.kids[1], pr, env);
    case Conn::Exists:
    case Conn::Forall: {
      const bool want = (n.kind == Conn::Exists);
      int var = n.vars[0];
      auto saved = env.find(var) == env.end()
                       ? std::optional<Elem>{}
                       : std::optional<Elem>{env[var]};
      for (const Elem& c : candidates(pr, env)) {
        env[var] = c;
        bool v = eval_node(*n.kids[0], pr, env);
        if (v == want) {
          if (saved) env[var] = *saved; else env.erase(var);
          return want;
        }
      }
      if (saved) env[var] = *saved; else env.erase(var);
      return !want;
    }
  }
  throw TheoryError("unreachable formula kind");
}

}  // namespace

bool linorder_eval(const Formula& sentence, bool with_pairs) {
  if (!sentence.is_sentence())
    throw TheoryError("order evaluation needs a sentence");
  Vocabulary v = Vocabulary::parse_spec("lt/2,S/2");
  Presentation pr{with_pairs, v.require("lt"), v.require("S")};
  std::map<int, Elem> env;
  return eval_node(sentence.node(), pr, env);
}

}  // namespace modelborel
