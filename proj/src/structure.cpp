#include "modelborel/structure.hpp"

#include <cmath>
#include <sstream>

namespace modelborel {

FiniteStructure::FiniteStructure(Vocabulary v, std::size_t size)
    : vocab_(std::move(v)), size_(size) {
  if (size == 0) throw StructureError("empty structures are not allowed");
  tables_.resize(vocab_.size());
  for (std::size_t s = 0; s < vocab_.size(); ++s) {
    std::size_t cells = 1;
    for (int i = 0; i < vocab_.arity(static_cast<int>(s)); ++i)
      cells *= size_;
    tables_[s].assign(cells, false);
  }
}

std::size_t FiniteStructure::flat_index(
    int sym, std::span<const std::size_t> tuple) const {
  if (sym < 0 || sym >= static_cast<int>(vocab_.size()))
    throw StructureError("symbol index out of range");
  if (static_cast<int>(tuple.size()) != vocab_.arity(sym))
    throw StructureError("tuple arity mismatch for " + vocab_.name(sym));
  std::size_t idx = 0;
  for (std::size_t x : tuple) {
    if (x >= size_) throw StructureError("element out of range");
    idx = idx * size_ + x;
  }
  return idx;
}

bool FiniteStructure::holds(int sym, std::span<const std::size_t> tuple) const {
  return tables_[sym][flat_index(sym, tuple)];
}

void FiniteStructure::set(int sym, std::span<const std::size_t> tuple,
                          bool value) {
  tables_[sym][flat_index(sym, tuple)] = value;
}

std::vector<std::vector<std::size_t>> FiniteStructure::tuples_of(
    int sym) const {
  std::vector<std::vector<std::size_t>> out;
  int k = vocab_.arity(sym);
  std::vector<std::size_t> t(k, 0);
  for (std::size_t flat = 0; flat < tables_[sym].size(); ++flat) {
    if (tables_[sym][flat]) out.push_back(t);
    for (int i = k - 1; i >= 0; --i) {
      if (++t[i] < size_) break;
      t[i] = 0;
    }
  }
  return out;
}

std::size_t FiniteStructure::count_of(int sym) const {
  std::size_t c = 0;
  for (bool b : tables_[sym]) c += b;
  return c;
}

std::string FiniteStructure::describe() const {
  std::ostringstream out;
  bool any = false;
  for (std::size_t s = 0; s < vocab_.size(); ++s) {
    for (const auto& t : tuples_of(static_cast<int>(s))) {
      if (any) out << ' ';
      any = true;
      out << vocab_.name(static_cast<int>(s)) << '(';
      for (std::size_t i = 0; i < t.size(); ++i) {
        if (i) out << ',';
        out << t[i];
      }
      out << ')';
    }
  }
  return any ? out.str() : "{}";
}

FiniteStructure FiniteStructure::restrict_prefix(std::size_t n) const {
  if (n == 0 || n > size_)
    throw StructureError("bad restriction size");
  FiniteStructure out(vocab_, n);
  for (std::size_t s = 0; s < vocab_.size(); ++s) {
    int k = vocab_.arity(static_cast<int>(s));
    std::vector<std::size_t> t(k, 0);
    bool done = false;
    while (!done) {
      out.set(static_cast<int>(s), t, holds(static_cast<int>(s), t));
      done = true;
      for (int i = k - 1; i >= 0; --i) {
        if (++t[i] < n) {
          done = false;
          break;
        }
        t[i] = 0;
      }
    }
  }
  return out;
}

StructureEnumerator::StructureEnumerator(Vocabulary v, std::size_t size)
    : vocab_(std::move(v)), size_(size) {
  bits_ = 0;
  for (std::size_t s = 0; s < vocab_.size(); ++s) {
    std::size_t cells = 1;
    for (int i = 0; i < vocab_.arity(static_cast<int>(s)); ++i) cells *= size_;
    bits_ += cells;
  }
  if (bits_ >= 63)
    throw StructureError("structure space too large to enumerate");
  total_ = std::uint64_t{1} << bits_;
}

bool StructureEnumerator::next(FiniteStructure& out) {
  if (counter_ >= total_) return false;
  out = FiniteStructure(vocab_, size_);
  std::uint64_t c = counter_;
  for (std::size_t s = 0; s < vocab_.size(); ++s) {
    int k = vocab_.arity(static_cast<int>(s));
    std::vector<std::size_t> t(k, 0);
    bool done = false;
    while (!done) {
      if (c & 1) out.set(static_cast<int>(s), t, true);
      c >>= 1;
      done = true;
      for (int i = k - 1; i >= 0; --i) {
        if (++t[i] < size_) {
          done = false;
          break;
        }
        t[i] = 0;
      }
    }
  }
  ++counter_;
  return true;
}

}  // namespace modelborel
