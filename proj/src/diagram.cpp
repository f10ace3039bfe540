#include "modelborel/diagram.hpp"

#include <algorithm>
#include <sstream>

#include "modelborel/eval.hpp"

namespace modelborel {

AtomEnumeration::AtomEnumeration(Vocabulary v) : vocab_(std::move(v)) {
  if (vocab_.size() == 0) throw DiagramError("empty vocabulary");
}

const AtomEnumeration::RankBlock& AtomEnumeration::block(
    std::size_t rank) const {
  while (blocks_.size() <= rank) {
    std::size_t r = blocks_.size();
    RankBlock b;
    b.first_index = r == 0 ? 0
                           : blocks_[r - 1].first_index +
                                 [&] {
                                   std::size_t c = 0;
                                   for (const auto& per_sym :
                                        blocks_[r - 1].tuples)
                                     c += per_sym.size();
                                   return c;
                                 }();
    for (std::size_t s = 0; s < vocab_.size(); ++s) {
      int k = vocab_.arity(static_cast<int>(s));
      std::vector<std::vector<std::size_t>> tuples;
      // tuples over {0..r}^k containing r at least once, lexicographic
      std::vector<std::size_t> t(k, 0);
      bool done = false;
      while (!done) {
        if (std::find(t.begin(), t.end(), r) != t.end()) tuples.push_back(t);
        done = true;
        for (int i = k - 1; i >= 0; --i) {
          if (++t[i] <= r) {
            done = false;
            break;
          }
          t[i] = 0;
        }
      }
      b.tuples.push_back(std::move(tuples));
    }
    blocks_.push_back(std::move(b));
  }
  return blocks_[rank];
}

AtomEnumeration::Atom AtomEnumeration::atom(std::size_t index) const {
  std::size_t rank = 0;
  for (;; ++rank) {
    const RankBlock& b = block(rank);
    if (index < b.first_index) throw DiagramError("enumeration bug");
    std::size_t offset = index - b.first_index;
    std::size_t total = 0;
    for (const auto& per_sym : b.tuples) total += per_sym.size();
    if (offset < total) {
      for (std::size_t s = 0; s < b.tuples.size(); ++s) {
        if (offset < b.tuples[s].size())
          return {static_cast<int>(s), b.tuples[s][offset]};
        offset -= b.tuples[s].size();
      }
    }
  }
}

std::size_t AtomEnumeration::index_of(
    int symbol, std::span<const std::size_t> tuple) const {
  if (symbol < 0 || symbol >= static_cast<int>(vocab_.size()))
    throw DiagramError("symbol out of range");
  if (static_cast<int>(tuple.size()) != vocab_.arity(symbol))
    throw DiagramError("tuple arity mismatch");
  std::size_t rank = 0;
  for (std::size_t x : tuple) rank = std::max(rank, x);
  const RankBlock& b = block(rank);
  std::size_t idx = b.first_index;
  for (int s = 0; s < symbol; ++s) idx += b.tuples[s].size();
  const auto& tuples = b.tuples[symbol];
  std::vector<std::size_t> key(tuple.begin(), tuple.end());
  auto it = std::lower_bound(tuples.begin(), tuples.end(), key);
  if (it == tuples.end() || *it != key)
    throw DiagramError("enumeration bug: tuple not found");
  return idx + static_cast<std::size_t>(it - tuples.begin());
}

std::string AtomEnumeration::atom_text(std::size_t index) const {
  Atom a = atom(index);
  std::ostringstream out;
  out << vocab_.name(a.symbol) << '(';
  for (std::size_t i = 0; i < a.tuple.size(); ++i) {
    if (i) out << ',';
    out << 'x' << a.tuple[i];
  }
  out << ')';
  return out.str();
}

std::size_t AtomEnumeration::count_below(std::size_t n) const {
  std::size_t total = 0;
  for (std::size_t s = 0; s < vocab_.size(); ++s) {
    std::size_t c = 1;
    for (int i = 0; i < vocab_.arity(static_cast<int>(s)); ++i) c *= n;
    total += c;
  }
  return total;
}

std::size_t AtomEnumeration::rank_of(std::size_t index) const {
  std::size_t rank = 0;
  while (count_below(rank + 1) <= index) ++rank;
  return rank;
}

std::string DiagramPrefix::to_text() const {
  std::string out;
  for (std::size_t i = 0; i < bits.size(); ++i) {
    out.push_back(bits[i] ? '1' : '0');
    if ((i + 1) % 64 == 0) out.push_back('\n');
  }
  if (bits.empty() || bits.size() % 64 != 0) out.push_back('\n');
  return out;
}

std::vector<std::uint8_t> DiagramPrefix::parse_bits(const std::string& text) {
  std::vector<std::uint8_t> bits;
  for (char c : text) {
    if (c == '0')
      bits.push_back(0);
    else if (c == '1')
      bits.push_back(1);
    else if (c == '\n' || c == '\r' || c == ' ' || c == '\t')
      continue;
    else
      throw DiagramError(std::string("bad bit character '") + c + "'");
  }
  return bits;
}

DiagramPrefix encode(const FiniteStructure& s) {
  AtomEnumeration en(s.vocab());
  std::size_t n = en.count_below(s.size());
  DiagramPrefix p{s.vocab(), {}};
  p.bits.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    auto a = en.atom(i);
    p.bits.push_back(s.holds(a.symbol, a.tuple) ? 1 : 0);
  }
  return p;
}

FiniteStructure decode(const DiagramPrefix& p, std::size_t n) {
  if (n == 0) throw DiagramError("empty structures are not allowed");
  AtomEnumeration en(p.vocab);
  std::size_t need = en.count_below(n);
  if (p.bits.size() < need)
    throw DiagramError("insufficient prefix length: need " +
                       std::to_string(need) + " bits for " +
                       std::to_string(n) + " elements, have " +
                       std::to_string(p.bits.size()));
  FiniteStructure s(p.vocab, n);
  for (std::size_t i = 0; i < need; ++i) {
    auto a = en.atom(i);
    s.set(a.symbol, a.tuple, p.bits[i] != 0);
  }
  return s;
}

std::uint8_t StructureStream::bit(std::size_t i) {
  while (cache_.size() <= i) {
    std::size_t before = cache_.size();
    produce(cache_);
    if (cache_.size() <= before)
      throw DiagramError("stream failed to produce bits");
  }
  return cache_[i];
}

std::vector<std::uint8_t> StructureStream::prefix(std::size_t n) {
  if (n > 0) bit(n - 1);
  return {cache_.begin(), cache_.begin() + n};
}

DiagramPrefix StructureStream::prefix_diagram(std::size_t n) {
  return DiagramPrefix{vocab(), prefix(n)};
}

FiniteStructure StructureStream::stage_by_elements(std::size_t n) {
  std::size_t need = enumeration_.count_below(n);
  return decode(prefix_diagram(need), n);
}

StagedVerdict eval_staged(
    const Formula& f, StructureStream& st, std::size_t stages,
    const std::function<std::optional<bool>(const Formula&)>& limit_oracle,
    const std::string& oracle_name) {
  if (!f.is_sentence()) throw FormulaError("eval_staged expects a sentence");
  StagedVerdict out;
  for (std::size_t n = 0; n < stages; ++n) {
    if (n == 0) {
      out.stages.push_back(Verdict::Unknown);
      continue;
    }
    out.stages.push_back(eval_finite(f, st.stage_by_elements(n))
                             ? Verdict::True
                             : Verdict::False);
  }
  if (limit_oracle) {
    out.limit = limit_oracle(f);
    out.limit_source = oracle_name;
  }
  return out;
}

}  // namespace modelborel
