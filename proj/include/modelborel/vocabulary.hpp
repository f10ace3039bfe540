#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace modelborel {

struct VocabError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A finite relational signature.  Symbol order is declaration order and is
// load-bearing: the atomic-formula enumeration and every printed form depend
// on it.
class Vocabulary {
 public:
  Vocabulary() = default;
  Vocabulary(std::initializer_list<std::pair<std::string, int>> syms) {
    for (const auto& [n, a] : syms) add(n, a);
  }

  int add(const std::string& name, int arity);

  int index_of(const std::string& name) const;       // -1 if absent
  int require(const std::string& name) const;        // throws if absent

  std::size_t size() const { return names_.size(); }
  const std::string& name(int sym) const { return names_.at(sym); }
  int arity(int sym) const { return arities_.at(sym); }
  int max_arity() const;

  bool operator==(const Vocabulary& o) const {
    return names_ == o.names_ && arities_ == o.arities_;
  }

  // "R/2,P/1" list form used by the CLI and config files.
  std::string spec() const;
  static Vocabulary parse_spec(const std::string& text);

 private:
  std::vector<std::string> names_;
  std::vector<int> arities_;
};

}  // namespace modelborel
