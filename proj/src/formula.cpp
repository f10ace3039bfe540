#include "modelborel/formula.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <set>
#include <sstream>

namespace modelborel {

Level Level::parse(const std::string& s) {
  if (s.size() < 2 || (s[0] != 'E' && s[0] != 'A'))
    throw FormulaError("bad level: " + s);
  Level lv;
  lv.kind = s[0] == 'E' ? Quant::E : Quant::A;
  try {
    lv.n = std::stoi(s.substr(1));
  } catch (const std::exception&) {
    throw FormulaError("bad level: " + s);
  }
  if (lv.n < 0) throw FormulaError("bad level: " + s);
  return lv;
}

namespace {

Formula::Ref make(Conn kind, int symbol, std::vector<int> vars,
                  std::vector<Formula::Ref> kids) {
  auto n = std::make_shared<Formula::Node>();
  n->kind = kind;
  n->symbol = symbol;
  n->vars = std::move(vars);
  n->kids = std::move(kids);
  return n;
}

}  // namespace

Formula Formula::atom(const Vocabulary& v, int sym, std::vector<int> vars) {
  if (sym < 0 || sym >= static_cast<int>(v.size()))
    throw FormulaError("symbol index out of range");
  if (static_cast<int>(vars.size()) != v.arity(sym))
    throw FormulaError("arity mismatch for " + v.name(sym) + ": expected " +
                       std::to_string(v.arity(sym)) + ", got " +
                       std::to_string(vars.size()));
  for (int x : vars)
    if (x < 0) throw FormulaError("negative variable index");
  return Formula(make(Conn::Atom, sym, std::move(vars), {}));
}

Formula Formula::atom(const Vocabulary& v, const std::string& name,
                      std::vector<int> vars) {
  return atom(v, v.require(name), std::move(vars));
}

Formula Formula::eq(int a, int b) {
  if (a < 0 || b < 0) throw FormulaError("negative variable index");
  return Formula(make(Conn::Eq, -1, {a, b}, {}));
}

Formula Formula::neg(Formula f) {
  return Formula(make(Conn::Not, -1, {}, {f.ref()}));
}

Formula Formula::conj(std::vector<Formula> kids) {
  if (kids.size() < 2) throw FormulaError("and needs >= 2 operands");
  std::vector<Ref> refs;
  for (auto& k : kids) refs.push_back(k.ref());
  return Formula(make(Conn::And, -1, {}, std::move(refs)));
}

Formula Formula::disj(std::vector<Formula> kids) {
  if (kids.size() < 2) throw FormulaError("or needs >= 2 operands");
  std::vector<Ref> refs;
  for (auto& k : kids) refs.push_back(k.ref());
  return Formula(make(Conn::Or, -1, {}, std::move(refs)));
}

Formula Formula::implies(Formula a, Formula b) {
  return Formula(make(Conn::Implies, -1, {}, {a.ref(), b.ref()}));
}

Formula Formula::exists(int var, Formula body) {
  if (var < 0) throw FormulaError("negative variable index");
  return Formula(make(Conn::Exists, -1, {var}, {body.ref()}));
}

Formula Formula::forall(int var, Formula body) {
  if (var < 0) throw FormulaError("negative variable index");
  return Formula(make(Conn::Forall, -1, {var}, {body.ref()}));
}

bool Formula::same_as(const Formula& o) const {
  std::function<bool(const Ref&, const Ref&)> eq_rec =
      [&](const Ref& a, const Ref& b) -> bool {
    if (a == b) return true;
    if (!a || !b) return false;
    if (a->kind != b->kind || a->symbol != b->symbol || a->vars != b->vars ||
        a->kids.size() != b->kids.size())
      return false;
    for (std::size_t i = 0; i < a->kids.size(); ++i)
      if (!eq_rec(a->kids[i], b->kids[i])) return false;
    return true;
  };
  return eq_rec(root_, o.root_);
}

std::vector<int> Formula::free_vars() const {
  std::set<int> out;
  std::function<void(const Ref&, std::set<int>&)> walk =
      [&](const Ref& n, std::set<int>& bound) {
        if (!n) return;
        switch (n->kind) {
          case Conn::Atom:
          case Conn::Eq:
            for (int x : n->vars)
              if (!bound.count(x)) out.insert(x);
            break;
          case Conn::Exists:
          case Conn::Forall: {
            bool fresh = bound.insert(n->vars[0]).second;
            walk(n->kids[0], bound);
            if (fresh) bound.erase(n->vars[0]);
            break;
          }
          default:
            for (const auto& k : n->kids) walk(k, bound);
        }
      };
  std::set<int> bound;
  walk(root_, bound);
  return {out.begin(), out.end()};
}

int Formula::max_var() const {
  int m = -1;
  std::function<void(const Ref&)> walk = [&](const Ref& n) {
    if (!n) return;
    for (int x : n->vars) m = std::max(m, x);
    for (const auto& k : n->kids) walk(k);
  };
  walk(root_);
  return m;
}

bool Formula::quantifier_free() const {
  std::function<bool(const Ref&)> walk = [&](const Ref& n) -> bool {
    if (!n) return true;
    if (n->kind == Conn::Exists || n->kind == Conn::Forall) return false;
    for (const auto& k : n->kids)
      if (!walk(k)) return false;
    return true;
  };
  return walk(root_);
}

int Formula::quantifier_count() const {
  std::function<int(const Ref&)> walk = [&](const Ref& n) -> int {
    if (!n) return 0;
    int c = (n->kind == Conn::Exists || n->kind == Conn::Forall) ? 1 : 0;
    for (const auto& k : n->kids) c += walk(k);
    return c;
  };
  return walk(root_);
}

std::string Formula::print(const Vocabulary& v) const {
  std::ostringstream out;
  std::function<void(const Ref&)> walk = [&](const Ref& n) {
    switch (n->kind) {
      case Conn::Atom:
        out << '(' << v.name(n->symbol);
        for (int x : n->vars) out << " x" << x;
        out << ')';
        break;
      case Conn::Eq:
        out << "(= x" << n->vars[0] << " x" << n->vars[1] << ')';
        break;
      case Conn::Not:
        out << "(not ";
        walk(n->kids[0]);
        out << ')';
        break;
      case Conn::And:
      case Conn::Or:
        out << (n->kind == Conn::And ? "(and" : "(or");
        for (const auto& k : n->kids) {
          out << ' ';
          walk(k);
        }
        out << ')';
        break;
      case Conn::Implies:
        out << "(implies ";
        walk(n->kids[0]);
        out << ' ';
        walk(n->kids[1]);
        out << ')';
        break;
      case Conn::Exists:
      case Conn::Forall:
        out << (n->kind == Conn::Exists ? "(exists x" : "(forall x")
            << n->vars[0] << ' ';
        walk(n->kids[0]);
        out << ')';
        break;
    }
  };
  if (!root_) throw FormulaError("empty formula");
  walk(root_);
  return out.str();
}

// ---------------------------------------------------------------------------
// Parsing

namespace {

struct Token {
  enum Kind { LParen, RParen, Word, End } kind;
  std::string text;
  std::size_t pos;
};

class Lexer {
 public:
  explicit Lexer(const std::string& s) : s_(s) {}
  Token next() {
    while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_])))
      ++i_;
    if (i_ >= s_.size()) return {Token::End, "", i_};
    std::size_t start = i_;
    char c = s_[i_];
    if (c == '(') {
      ++i_;
      return {Token::LParen, "(", start};
    }
    if (c == ')') {
      ++i_;
      return {Token::RParen, ")", start};
    }
    if (c == '=') {
      ++i_;
      return {Token::Word, "=", start};
    }
    if (std::isalnum(static_cast<unsigned char>(c)) || c == '_') {
      while (i_ < s_.size() &&
             (std::isalnum(static_cast<unsigned char>(s_[i_])) ||
              s_[i_] == '_'))
        ++i_;
      return {Token::Word, s_.substr(start, i_ - start), start};
    }
    throw ParseError(std::string("unexpected character '") + c + "'", start);
  }

 private:
  const std::string& s_;
  std::size_t i_ = 0;
};

std::optional<int> as_variable(const std::string& w) {
  if (w.size() < 2 || w[0] != 'x') return std::nullopt;
  for (std::size_t i = 1; i < w.size(); ++i)
    if (!std::isdigit(static_cast<unsigned char>(w[i]))) return std::nullopt;
  if (w.size() > 7) return std::nullopt;  // keep indices sane
  return std::stoi(w.substr(1));
}

class Parser {
 public:
  Parser(const std::string& text, const Vocabulary* v, Vocabulary* inferred)
      : lex_(text), vocab_(v), inferred_(inferred) {}

  Formula run() {
    advance();
    Formula f = formula();
    if (cur_.kind != Token::End)
      throw ParseError("trailing input", cur_.pos);
    return f;
  }

 private:
  void advance() { cur_ = lex_.next(); }

  int expect_var() {
    if (cur_.kind != Token::Word)
      throw ParseError("expected variable", cur_.pos);
    auto v = as_variable(cur_.text);
    if (!v) throw ParseError("expected variable, got " + cur_.text, cur_.pos);
    advance();
    return *v;
  }

  Formula formula() {
    if (cur_.kind != Token::LParen)
      throw ParseError("expected '('", cur_.pos);
    std::size_t open = cur_.pos;
    advance();
    if (cur_.kind != Token::Word)
      throw ParseError("expected operator or symbol", cur_.pos);
    std::string head = cur_.text;
    std::size_t head_pos = cur_.pos;
    advance();

    Formula result;
    if (head == "forall" || head == "exists") {
      int var = expect_var();
      Formula body = formula();
      result = head == "forall" ? Formula::forall(var, body)
                                : Formula::exists(var, body);
    } else if (head == "not") {
      result = Formula::neg(formula());
    } else if (head == "and" || head == "or") {
      std::vector<Formula> kids;
      while (cur_.kind == Token::LParen) kids.push_back(formula());
      if (kids.size() < 2)
        throw ParseError(head + " needs >= 2 operands", head_pos);
      result = head == "and" ? Formula::conj(std::move(kids))
                             : Formula::disj(std::move(kids));
    } else if (head == "implies") {
      Formula a = formula();
      Formula b = formula();
      result = Formula::implies(a, b);
    } else if (head == "=") {
      int a = expect_var();
      int b = expect_var();
      result = Formula::eq(a, b);
    } else {
      if (as_variable(head))
        throw ParseError("variable used as relation symbol", head_pos);
      std::vector<int> args;
      while (cur_.kind == Token::Word) args.push_back(expect_var());
      if (args.empty())
        throw ParseError("relation " + head + " needs arguments", head_pos);
      int sym;
      if (vocab_) {
        sym = vocab_->index_of(head);
        if (sym < 0) throw ParseError("unknown symbol " + head, head_pos);
        result = Formula::atom(*vocab_, sym, std::move(args));
      } else {
        sym = inferred_->index_of(head);
        if (sym < 0)
          sym = inferred_->add(head, static_cast<int>(args.size()));
        try {
          result = Formula::atom(*inferred_, sym, std::move(args));
        } catch (const FormulaError& e) {
          throw ParseError(e.what(), head_pos);
        }
      }
    }
    if (cur_.kind != Token::RParen)
      throw ParseError("expected ')' closing form opened here", open);
    advance();
    return result;
  }

  Lexer lex_;
  Token cur_{Token::End, "", 0};
  const Vocabulary* vocab_;
  Vocabulary* inferred_;
};

}  // namespace

Formula parse_formula(const std::string& text, const Vocabulary& v) {
  return Parser(text, &v, nullptr).run();
}

std::pair<Formula, Vocabulary> parse_formula_infer(const std::string& text) {
  Vocabulary inferred;
  Formula f = Parser(text, nullptr, &inferred).run();
  return {f, inferred};
}

}  // namespace modelborel
