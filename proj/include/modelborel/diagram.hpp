#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>

#include "modelborel/formula.hpp"
#include "modelborel/structure.hpp"

namespace modelborel {

struct DiagramError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Canonical enumeration of atomic formulas over a vocabulary.  Atom i uses
// only variables x0..xi.  Ordering: by rank (the maximum variable index),
// then by symbol declaration order, then lexicographically by argument
// tuple.  Bit i of a diagram says whether atom i holds under x_j -> j.
class AtomEnumeration {
 public:
  explicit AtomEnumeration(Vocabulary v);

  const Vocabulary& vocab() const { return vocab_; }

  struct Atom {
    int symbol;
    std::vector<std::size_t> tuple;
  };

  Atom atom(std::size_t index) const;
  std::size_t index_of(int symbol, std::span<const std::size_t> tuple) const;
  std::string atom_text(std::size_t index) const;  // e.g. "R(x0,x1)"

  // Number of atoms whose variables all lie below n (equivalently, of rank
  // < n): sum over symbols of n^arity.
  std::size_t count_below(std::size_t n) const;
  std::size_t rank_of(std::size_t index) const;

 private:
  struct RankBlock {
    std::size_t first_index;
    // per symbol: tuples of this exact rank, lexicographic
    std::vector<std::vector<std::vector<std::size_t>>> tuples;
  };
  const RankBlock& block(std::size_t rank) const;

  Vocabulary vocab_;
  mutable std::vector<RankBlock> blocks_;
};

// A finite prefix of an atomic diagram.
struct DiagramPrefix {
  Vocabulary vocab;
  std::vector<std::uint8_t> bits;

  std::string to_text() const;  // '0'/'1' in newline-terminated 64-blocks
  static std::vector<std::uint8_t> parse_bits(const std::string& text);
};

// Diagram bits of all atoms over the first `structure.size()` elements.
DiagramPrefix encode(const FiniteStructure& s);

// Rebuild the structure on {0..n-1}; the prefix must cover all atoms of
// rank < n.
FiniteStructure decode(const DiagramPrefix& p, std::size_t n);

// An infinite atomic diagram produced stagewise.  Bits are cached and
// immutable once produced; implementations append whole rank segments.
class StructureStream {
 public:
  explicit StructureStream(Vocabulary v)
      : enumeration_(std::move(v)) {}
  virtual ~StructureStream() = default;

  const Vocabulary& vocab() const { return enumeration_.vocab(); }
  const AtomEnumeration& enumeration() const { return enumeration_; }

  std::uint8_t bit(std::size_t i);
  std::vector<std::uint8_t> prefix(std::size_t n);
  DiagramPrefix prefix_diagram(std::size_t n);

  // The structure on the first n elements (pulls bits as needed).
  FiniteStructure stage_by_elements(std::size_t n);

 protected:
  // Append at least one further bit of the diagram to out.
  virtual void produce(std::vector<std::uint8_t>& out) = 0;

 private:
  AtomEnumeration enumeration_;
  std::vector<std::uint8_t> cache_;
};

enum class Verdict : std::uint8_t { False = 0, True = 1, Unknown = 2 };
inline char verdict_char(Verdict v) {
  return v == Verdict::True ? '1' : (v == Verdict::False ? '0' : '?');
}

// Stage-indexed truth values for a sentence on a growing diagram, with an
// optional limit classification supplied by a theory oracle.
struct StagedVerdict {
  std::vector<Verdict> stages;  // stages[n] = verdict on first n elements
  std::optional<bool> limit;
  std::string limit_source;
};

// Evaluate f on stages 0..stages-1 of st (stage n = first n elements;
// stage 0 is reported Unknown since empty structures are disallowed).
StagedVerdict eval_staged(
    const Formula& f, StructureStream& st, std::size_t stages,
    const std::function<std::optional<bool>(const Formula&)>& limit_oracle =
        nullptr,
    const std::string& oracle_name = "");

}  // namespace modelborel
