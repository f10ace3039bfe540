#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "modelborel/vocabulary.hpp"

namespace modelborel {

struct StructureError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Finite relational structure on universe {0, ..., size-1}.  Relations are
// stored as flat bit tables indexed row-major by argument tuple, so tuple
// order matches the lexicographic order used throughout.
class FiniteStructure {
 public:
  FiniteStructure() = default;
  FiniteStructure(Vocabulary v, std::size_t size);

  const Vocabulary& vocab() const { return vocab_; }
  std::size_t size() const { return size_; }

  bool holds(int sym, std::span<const std::size_t> tuple) const;
  void set(int sym, std::span<const std::size_t> tuple, bool value);

  bool holds(int sym, std::initializer_list<std::size_t> t) const {
    return holds(sym, std::span<const std::size_t>(t.begin(), t.size()));
  }
  void set(int sym, std::initializer_list<std::size_t> t, bool value = true) {
    set(sym, std::span<const std::size_t>(t.begin(), t.size()), value);
  }

  // All tuples for which sym holds, in lexicographic order.
  std::vector<std::vector<std::size_t>> tuples_of(int sym) const;
  std::size_t count_of(int sym) const;  // number of held tuples

  // "R(0,1) R(1,0)" style listing, tuples lexicographic, symbols in
  // declaration order; "{}" when empty.
  std::string describe() const;

  bool operator==(const FiniteStructure& o) const {
    return vocab_ == o.vocab_ && size_ == o.size_ && tables_ == o.tables_;
  }

  // Restriction to the first n elements (an induced substructure).
  FiniteStructure restrict_prefix(std::size_t n) const;

 private:
  std::size_t flat_index(int sym, std::span<const std::size_t> tuple) const;

  Vocabulary vocab_;
  std::size_t size_ = 0;
  std::vector<std::vector<bool>> tables_;
};

// Enumerates every structure over v with the given universe size, in the
// order induced by counting the concatenated relation tables in binary
// (symbol-major, tuple-lexicographic, first tuple = lowest bit).
class StructureEnumerator {
 public:
  StructureEnumerator(Vocabulary v, std::size_t size);
  bool next(FiniteStructure& out);  // false once exhausted
  std::uint64_t total() const { return total_; }

 private:
  Vocabulary vocab_;
  std::size_t size_;
  std::uint64_t counter_ = 0;
  std::uint64_t total_;
  std::size_t bits_;
};

}  // namespace modelborel
