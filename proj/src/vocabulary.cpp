#include "modelborel/vocabulary.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace modelborel {

namespace {

bool looks_like_variable(const std::string& s) {
  if (s.size() < 2 || s[0] != 'x') return false;
  return std::all_of(s.begin() + 1, s.end(),
                     [](unsigned char c) { return std::isdigit(c); });
}

bool reserved_word(const std::string& s) {
  return s == "forall" || s == "exists" || s == "and" || s == "or" ||
         s == "not" || s == "implies" || s == "=";
}

}  // namespace

int Vocabulary::add(const std::string& name, int arity) {
  if (name.empty()) throw VocabError("empty symbol name");
  if (arity < 1) throw VocabError("symbol arity must be >= 1: " + name);
  if (looks_like_variable(name))
    throw VocabError("symbol name collides with variable syntax: " + name);
  if (reserved_word(name))
    throw VocabError("symbol name is a reserved word: " + name);
  if (index_of(name) >= 0) throw VocabError("duplicate symbol: " + name);
  names_.push_back(name);
  arities_.push_back(arity);
  return static_cast<int>(names_.size()) - 1;
}

int Vocabulary::index_of(const std::string& name) const {
  for (std::size_t i = 0; i < names_.size(); ++i)
    if (names_[i] == name) return static_cast<int>(i);
  return -1;
}

int Vocabulary::require(const std::string& name) const {
  int i = index_of(name);
  if (i < 0) throw VocabError("unknown symbol: " + name);
  return i;
}

int Vocabulary::max_arity() const {
  int m = 0;
  for (int a : arities_) m = std::max(m, a);
  return m;
}

std::string Vocabulary::spec() const {
  std::ostringstream out;
  for (std::size_t i = 0; i < names_.size(); ++i) {
    if (i) out << ',';
    out << names_[i] << '/' << arities_[i];
  }
  return out.str();
}

Vocabulary Vocabulary::parse_spec(const std::string& text) {
  Vocabulary v;
  std::string item;
  std::istringstream in(text);
  while (std::getline(in, item, ',')) {
    // trim
    auto b = item.find_first_not_of(" \t");
    auto e = item.find_last_not_of(" \t");
    if (b == std::string::npos) continue;
    item = item.substr(b, e - b + 1);
    auto slash = item.find('/');
    if (slash == std::string::npos)
      throw VocabError("expected name/arity, got: " + item);
    int arity;
    try {
      arity = std::stoi(item.substr(slash + 1));
    } catch (const std::exception&) {
      throw VocabError("bad arity in: " + item);
    }
    v.add(item.substr(0, slash), arity);
  }
  if (v.size() == 0) throw VocabError("empty vocabulary spec");
  return v;
}

}  // namespace modelborel
