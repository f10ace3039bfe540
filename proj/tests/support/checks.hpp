// Shared test helpers: independent membership oracles on ultimately
// periodic points, a bit-fed diagram stream, and small random generators.
// Everything here is deliberately written from the definitions, not by
// calling the code under test.
#pragma once

#include <random>
#include <vector>

#include "modelborel/diagram.hpp"
#include "modelborel/pointclass.hpp"
#include "modelborel/structure.hpp"
#include "modelborel/transducer.hpp"

namespace testsupport {

using modelborel::UPPoint;

// some bit is one
inline bool oracle_sigma1(const UPPoint& p) {
  for (std::size_t i = 0; i < p.prefix_len() + p.period_len(); ++i)
    if (p.bit(i)) return true;
  return false;
}

// finitely many ones
inline bool oracle_evzero(const UPPoint& p) {
  for (std::size_t i = 0; i < p.period_len(); ++i)
    if (p.bit(p.prefix_len() + i)) return false;
  return true;
}

inline bool oracle_infones(const UPPoint& p) { return !oracle_evzero(p); }

// column m of the pairing-function matrix has no one.  Positions
// pair_index(m, k) are eventually inside the periodic part, and their
// residues repeat with period dividing 2*period_len, so scanning 2l steps
// past the prefix decides exactly.
inline bool oracle_column_empty(const UPPoint& p, std::size_t m) {
  const std::size_t u = p.prefix_len();
  const std::size_t l = std::max<std::size_t>(p.period_len(), 1);
  std::size_t k0 = 0;
  while (modelborel::pair_index(m, k0) < u) ++k0;
  for (std::size_t k = 0; k < k0 + 2 * l; ++k)
    if (p.bit(modelborel::pair_index(m, k))) return false;
  return true;
}

// infinitely many empty columns: emptiness of column m is eventually
// 2l-periodic in m by the same residue argument, so one window suffices.
inline bool oracle_pi3(const UPPoint& p) {
  const std::size_t u = p.prefix_len();
  const std::size_t l = std::max<std::size_t>(p.period_len(), 1);
  std::size_t m0 = 0;
  while (modelborel::pair_index(m0, 0) < u) ++m0;
  for (std::size_t m = m0; m < m0 + 2 * l; ++m)
    if (oracle_column_empty(p, m)) return true;
  return false;
}

// diagram stream fed straight from a bit source
class FedStream final : public modelborel::StructureStream {
 public:
  FedStream(modelborel::Vocabulary v, modelborel::BitSource src)
      : modelborel::StructureStream(std::move(v)), src_(std::move(src)) {}

 protected:
  void produce(std::vector<std::uint8_t>& out) override {
    out.push_back(src_(out.size()));
  }

 private:
  modelborel::BitSource src_;
};

inline std::vector<UPPoint> sample_points(std::uint64_t seed,
                                          std::size_t count,
                                          std::size_t max_prefix,
                                          std::size_t max_period) {
  static const char* const anchors[] = {";0",  ";1",   "0;0",  "1;0",
                                        ";01", ";10",  "11;0", "0;10",
                                        "101;0", "0101;1"};
  std::vector<UPPoint> out;
  for (const char* a : anchors) {
    if (out.size() >= count) break;
    out.push_back(UPPoint::parse(a));
  }
  std::mt19937_64 rng(seed);
  while (out.size() < count) {
    std::string text;
    const std::size_t pl = rng() % (max_prefix + 1);
    const std::size_t ql = 1 + rng() % std::max<std::size_t>(max_period, 1);
    for (std::size_t i = 0; i < pl; ++i)
      text.push_back((rng() & 1) ? '1' : '0');
    text.push_back(';');
    for (std::size_t i = 0; i < ql; ++i)
      text.push_back((rng() & 1) ? '1' : '0');
    out.push_back(UPPoint::parse(text));
  }
  return out;
}

inline modelborel::FiniteStructure random_structure(
    std::mt19937_64& rng, const modelborel::Vocabulary& v, std::size_t n) {
  modelborel::FiniteStructure s(v, n);
  for (std::size_t sym = 0; sym < v.size(); ++sym) {
    const std::size_t k =
        static_cast<std::size_t>(v.arity(static_cast<int>(sym)));
    std::vector<std::size_t> tup(k, 0);
    while (true) {
      s.set(static_cast<int>(sym),
            std::span<const std::size_t>(tup.data(), tup.size()),
            (rng() & 1) != 0);
      std::size_t pos = k;
      while (pos > 0) {
        if (++tup[pos - 1] < n) break;
        tup[pos - 1] = 0;
        --pos;
      }
      if (pos == 0) break;
    }
  }
  return s;
}

}  // namespace testsupport
