#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace modelborel {

struct PointError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// An ultimately periodic 0/1 sequence, written "prefix;period".
class UPPoint {
 public:
  UPPoint(std::vector<std::uint8_t> prefix, std::vector<std::uint8_t> period);
  static UPPoint parse(const std::string& text);

  std::string str() const;
  std::uint8_t bit(std::size_t i) const;
  std::vector<std::uint8_t> bits(std::size_t n) const;
  std::function<std::uint8_t(std::size_t)> source() const;

  std::size_t prefix_len() const { return prefix_.size(); }
  std::size_t period_len() const { return period_.size(); }
  const std::vector<std::uint8_t>& prefix_bits() const { return prefix_; }
  const std::vector<std::uint8_t>& period_bits() const { return period_; }

  bool has_a_one() const;
  bool eventually_zero() const;          // only finitely many ones
  bool infinitely_many_ones() const;
  std::optional<std::size_t> first_one() const;
  // position after which the sequence never changes... last one, if any
  std::optional<std::size_t> last_one() const;  // nullopt if none or infinite

  // subsequence i -> bit(2*i + parity), again ultimately periodic
  UPPoint track(int parity) const;

  bool operator==(const UPPoint& o) const {
    return prefix_ == o.prefix_ && period_ == o.period_;
  }

 private:
  std::vector<std::uint8_t> prefix_, period_;
};

// Cantor pairing, used to read a matrix through a single sequence.
std::size_t pair_index(std::size_t m, std::size_t n);
std::pair<std::size_t, std::size_t> pair_unindex(std::size_t s);

// A 0/1 matrix presented as an ultimately periodic flat sequence.
class MatrixPoint {
 public:
  explicit MatrixPoint(UPPoint flat) : flat_(std::move(flat)) {}
  static MatrixPoint parse(const std::string& text) {
    return MatrixPoint(UPPoint::parse(text));
  }

  const UPPoint& flat() const { return flat_; }
  std::uint8_t at(std::size_t m, std::size_t n) const {
    return flat_.bit(pair_index(m, n));
  }
  std::string str() const { return flat_.str(); }

  bool column_eventually_relevant_empty(std::size_t m) const;
  bool infinitely_many_empty_columns() const;

 private:
  UPPoint flat_;
};

struct SetLevel {
  bool pi = false;   // complement side
  int n = 1;
  bool omega = false;
  std::string str() const;
};

// A countable boolean code over the space of 0/1 sequences.  Generators of
// union/intersection nodes are explicit functions; finite nodes carry a
// count.  Canonical sets also carry an exact decision rule for ultimately
// periodic inputs.
class BorelCode {
 public:
  enum class Op { Cylinder, Complement, UnionSeq, IntersectSeq };

  struct Node;
  using Ref = std::shared_ptr<const Node>;
  struct Node {
    Op op;
    // Cylinder: position/value constraints (conjunction; empty = whole space)
    std::vector<std::pair<std::size_t, std::uint8_t>> constraints;
    Ref child;                                   // Complement
    std::function<Ref(std::size_t)> family;      // UnionSeq / IntersectSeq
    std::optional<std::size_t> finite_count;     // finite boolean combo
  };

  static Ref cylinder(std::vector<std::pair<std::size_t, std::uint8_t>> cs);
  static Ref whole_space();
  static Ref empty_set();
  static Ref complement(Ref c);
  static Ref union_of(std::vector<Ref> parts);
  static Ref intersect_of(std::vector<Ref> parts);
  static Ref union_seq(std::function<Ref(std::size_t)> family);
  static Ref intersect_seq(std::function<Ref(std::size_t)> family);

  BorelCode(Ref root, SetLevel level, std::string name);

  const Ref& root() const { return root_; }
  const SetLevel& level() const { return level_; }
  const std::string& name() const { return name_; }

  bool has_up_rule() const { return static_cast<bool>(up_rule_); }
  void set_up_rule(std::function<bool(const UPPoint&)> rule) {
    up_rule_ = std::move(rule);
  }
  bool decide_up(const UPPoint& p) const;

  BorelCode complemented() const;

 private:
  Ref root_;
  SetLevel level_;
  std::string name_;
  std::function<bool(const UPPoint&)> up_rule_;
};

enum class SetVerdict { False, True, Unknown };
char verdict_char(SetVerdict v);

// Three valued check of a finite prefix against a code.  Generators are
// explored up to len(prefix)+1 members per node, so the answer is sound but
// may stay Unknown.
SetVerdict verdict_prefix(const BorelCode& code,
                          const std::vector<std::uint8_t>& bits);
SetVerdict verdict_prefix(const BorelCode::Ref& node,
                          const std::vector<std::uint8_t>& bits,
                          std::size_t explore);

// membership of an ultimately periodic point; exact for canonical sets and
// anything built from them by complement
bool member_up(const BorelCode& code, const UPPoint& p);
bool member_up(const BorelCode& code, const MatrixPoint& p);

// a decreasing sequence of sets whose membership stabilizes level-wise
struct DecreasingFamily {
  std::string name;
  std::function<BorelCode(std::size_t)> level_set;         // n >= 1
  std::function<bool(std::size_t, const UPPoint&)> member;  // level n
  std::size_t stabilization_bound;  // membership constant for n >= bound
};

BorelCode canonical_sigma1();        // some bit is 1
BorelCode canonical_sigma2_evzero(); // finitely many ones
BorelCode canonical_pi2_infones();   // infinitely many ones
BorelCode canonical_pi3_matrix();    // infinitely many empty columns
BorelCode canonical_pi_omega(const DecreasingFamily& fam);

BorelCode canonical_set(const std::string& name);
std::vector<std::string> canonical_set_names();

// the two-level family used by the tower demonstration: even track all zero,
// then also infinitely many ones on the odd track
DecreasingFamily tower_family();

}  // namespace modelborel
