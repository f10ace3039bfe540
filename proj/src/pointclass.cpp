#include "modelborel/pointclass.hpp"

#include <algorithm>
#include <cmath>

namespace modelborel {

UPPoint::UPPoint(std::vector<std::uint8_t> prefix,
                 std::vector<std::uint8_t> period)
    : prefix_(std::move(prefix)), period_(std::move(period)) {
  if (period_.empty()) throw PointError("period must be nonempty");
  auto check = [](const std::vector<std::uint8_t>& v) {
    for (auto b : v)
      if (b > 1) throw PointError("bits must be 0 or 1");
  };
  check(prefix_);
  check(period_);
}

UPPoint UPPoint::parse(const std::string& text) {
  auto sep = text.find(';');
  if (sep == std::string::npos)
    throw PointError("expected \"prefix;period\": " + text);
  if (text.find(';', sep + 1) != std::string::npos)
    throw PointError("more than one ';' in point: " + text);
  auto bits_of = [&](const std::string& s) {
    std::vector<std::uint8_t> out;
    for (char c : s) {
      if (c != '0' && c != '1')
        throw PointError(std::string("bad character '") + c + "' in point");
      out.push_back(c == '1' ? 1 : 0);
    }
    return out;
  };
  std::string per = text.substr(sep + 1);
  if (per.empty()) throw PointError("period block must be nonempty");
  return UPPoint(bits_of(text.substr(0, sep)), bits_of(per));
}

std::string UPPoint::str() const {
  std::string out;
  for (auto b : prefix_) out += char('0' + b);
  out += ';';
  for (auto b : period_) out += char('0' + b);
  return out;
}

std::uint8_t UPPoint::bit(std::size_t i) const {
  if (i < prefix_.size()) return prefix_[i];
  return period_[(i - prefix_.size()) % period_.size()];
}

std::vector<std::uint8_t> UPPoint::bits(std::size_t n) const {
  std::vector<std::uint8_t> out(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = bit(i);
  return out;
}

std::function<std::uint8_t(std::size_t)> UPPoint::source() const {
  UPPoint copy = *this;
  return [copy](std::size_t i) { return copy.bit(i); };
}

bool UPPoint::has_a_one() const {
  return std::find(prefix_.begin(), prefix_.end(), 1) != prefix_.end() ||
         infinitely_many_ones();
}

bool UPPoint::infinitely_many_ones() const {
  return std::find(period_.begin(), period_.end(), 1) != period_.end();
}

bool UPPoint::eventually_zero() const { return !infinitely_many_ones(); }

std::optional<std::size_t> UPPoint::first_one() const {
  for (std::size_t i = 0; i < prefix_.size(); ++i)
    if (prefix_[i]) return i;
  for (std::size_t j = 0; j < period_.size(); ++j)
    if (period_[j]) return prefix_.size() + j;
  return std::nullopt;
}

std::optional<std::size_t> UPPoint::last_one() const {
  if (infinitely_many_ones()) return std::nullopt;
  for (std::size_t i = prefix_.size(); i-- > 0;)
    if (prefix_[i]) return i;
  return std::nullopt;
}

UPPoint UPPoint::track(int parity) const {
  if (parity != 0 && parity != 1) throw PointError("track parity must be 0/1");
  const std::size_t u = prefix_.size();
  const std::size_t p = static_cast<std::size_t>(parity);
  std::size_t a = (u > p) ? (u - p + 1) / 2 : 0;
  std::vector<std::uint8_t> pre(a), per(period_.size());
  for (std::size_t i = 0; i < a; ++i) pre[i] = bit(2 * i + p);
  for (std::size_t j = 0; j < period_.size(); ++j)
    per[j] = bit(2 * (a + j) + p);
  return UPPoint(std::move(pre), std::move(per));
}

std::size_t pair_index(std::size_t m, std::size_t n) {
  return (m + n) * (m + n + 1) / 2 + n;
}

std::pair<std::size_t, std::size_t> pair_unindex(std::size_t s) {
  auto d = static_cast<std::size_t>(
      (std::sqrt(8.0 * static_cast<double>(s) + 1.0) - 1.0) / 2.0);
  while (d * (d + 1) / 2 > s) --d;
  while ((d + 1) * (d + 2) / 2 <= s) ++d;
  std::size_t n = s - d * (d + 1) / 2;
  return {d - n, n};
}

namespace {

// columns of an ultimately periodic matrix: positions pair(m, n) advance by
// m+n+2 as n grows, so residues mod the period repeat with period 2L in n,
// and the emptiness pattern repeats with period 2L in m beyond the prefix
bool column_window_empty(const UPPoint& flat, std::size_t m, std::size_t n0,
                         std::size_t window) {
  for (std::size_t n = n0; n < n0 + window; ++n)
    if (flat.bit(pair_index(m, n))) return false;
  return true;
}

}  // namespace

bool MatrixPoint::column_eventually_relevant_empty(std::size_t m) const {
  const std::size_t u = flat_.prefix_len();
  const std::size_t L = flat_.period_len();
  std::size_t n0 = 0;
  while (pair_index(m, n0) < u) ++n0;
  for (std::size_t n = 0; n < n0; ++n)
    if (flat_.bit(pair_index(m, n))) return false;
  return column_window_empty(flat_, m, n0, 2 * L);
}

bool MatrixPoint::infinitely_many_empty_columns() const {
  const std::size_t u = flat_.prefix_len();
  const std::size_t L = flat_.period_len();
  std::size_t m0 = 0;
  while (pair_index(m0, 0) < u) ++m0;
  for (std::size_t m = m0; m < m0 + 2 * L; ++m)
    if (column_window_empty(flat_, m, 0, 2 * L)) return true;
  return false;
}

std::string SetLevel::str() const {
  if (omega) return pi ? "PiOmega" : "SigmaOmega";
  return (pi ? "Pi" : "Sigma") + std::to_string(n);
}

BorelCode::Ref BorelCode::cylinder(
    std::vector<std::pair<std::size_t, std::uint8_t>> cs) {
  auto n = std::make_shared<Node>();
  n->op = Op::Cylinder;
  n->constraints = std::move(cs);
  return n;
}

BorelCode::Ref BorelCode::whole_space() { return cylinder({}); }

BorelCode::Ref BorelCode::empty_set() { return complement(whole_space()); }

BorelCode::Ref BorelCode::complement(Ref c) {
  auto n = std::make_shared<Node>();
  n->op = Op::Complement;
  n->child = std::move(c);
  return n;
}

BorelCode::Ref BorelCode::union_of(std::vector<Ref> parts) {
  if (parts.empty()) return empty_set();
  auto n = std::make_shared<Node>();
  n->op = Op::UnionSeq;
  n->finite_count = parts.size();
  n->family = [parts = std::move(parts)](std::size_t k) {
    return parts.at(k);
  };
  return n;
}

BorelCode::Ref BorelCode::intersect_of(std::vector<Ref> parts) {
  if (parts.empty()) return whole_space();
  auto n = std::make_shared<Node>();
  n->op = Op::IntersectSeq;
  n->finite_count = parts.size();
  n->family = [parts = std::move(parts)](std::size_t k) {
    return parts.at(k);
  };
  return n;
}

BorelCode::Ref BorelCode::union_seq(std::function<Ref(std::size_t)> family) {
  auto n = std::make_shared<Node>();
  n->op = Op::UnionSeq;
  n->family = std::move(family);
  return n;
}

BorelCode::Ref BorelCode::intersect_seq(
    std::function<Ref(std::size_t)> family) {
  auto n = std::make_shared<Node>();
  n->op = Op::IntersectSeq;
  n->family = std::move(family);
  return n;
}

BorelCode::BorelCode(Ref root, SetLevel level, std::string name)
    : root_(std::move(root)), level_(level), name_(std::move(name)) {}

bool BorelCode::decide_up(const UPPoint& p) const {
  if (up_rule_) return up_rule_(p);
  throw PointError("no exact decision rule attached to code " + name_);
}

BorelCode BorelCode::complemented() const {
  SetLevel lv = level_;
  lv.pi = !lv.pi;
  std::string nm = name_.rfind("not-", 0) == 0 ? name_.substr(4)
                                               : "not-" + name_;
  BorelCode out(complement(root_), lv, nm);
  if (up_rule_) {
    auto rule = up_rule_;
    out.set_up_rule([rule](const UPPoint& p) { return !rule(p); });
  }
  return out;
}

char verdict_char(SetVerdict v) {
  switch (v) {
    case SetVerdict::False: return '0';
    case SetVerdict::True: return '1';
    default: return '?';
  }
}

SetVerdict verdict_prefix(const BorelCode::Ref& node,
                          const std::vector<std::uint8_t>& bits,
                          std::size_t explore) {
  switch (node->op) {
    case BorelCode::Op::Cylinder: {
      bool all_visible = true;
      for (auto [pos, val] : node->constraints) {
        if (pos >= bits.size()) {
          all_visible = false;
          continue;
        }
        if (bits[pos] != val) return SetVerdict::False;
      }
      return all_visible ? SetVerdict::True : SetVerdict::Unknown;
    }
    case BorelCode::Op::Complement: {
      SetVerdict v = verdict_prefix(node->child, bits, explore);
      if (v == SetVerdict::True) return SetVerdict::False;
      if (v == SetVerdict::False) return SetVerdict::True;
      return SetVerdict::Unknown;
    }
    case BorelCode::Op::UnionSeq: {
      const bool finite = node->finite_count.has_value();
      const std::size_t count = finite ? *node->finite_count : explore;
      bool all_false = true;
      for (std::size_t k = 0; k < count; ++k) {
        SetVerdict v = verdict_prefix(node->family(k), bits, explore);
        if (v == SetVerdict::True) return SetVerdict::True;
        if (v != SetVerdict::False) all_false = false;
      }
      if (finite && all_false) return SetVerdict::False;
      return SetVerdict::Unknown;
    }
    case BorelCode::Op::IntersectSeq: {
      const bool finite = node->finite_count.has_value();
      const std::size_t count = finite ? *node->finite_count : explore;
      bool all_true = true;
      for (std::size_t k = 0; k < count; ++k) {
        SetVerdict v = verdict_prefix(node->family(k), bits, explore);
        if (v == SetVerdict::False) return SetVerdict::False;
        if (v != SetVerdict::True) all_true = false;
      }
      if (finite && all_true) return SetVerdict::True;
      return SetVerdict::Unknown;
    }
  }
  throw PointError("corrupt code node");
}

SetVerdict verdict_prefix(const BorelCode& code,
                          const std::vector<std::uint8_t>& bits) {
  return verdict_prefix(code.root(), bits, bits.size() + 1);
}

namespace {

bool member_up_node(const BorelCode::Ref& node, const UPPoint& p) {
  switch (node->op) {
    case BorelCode::Op::Cylinder:
      for (auto [pos, val] : node->constraints)
        if (p.bit(pos) != val) return false;
      return true;
    case BorelCode::Op::Complement:
      return !member_up_node(node->child, p);
    case BorelCode::Op::UnionSeq:
      if (!node->finite_count)
        throw PointError(
            "membership over an infinite union needs a canonical rule");
      for (std::size_t k = 0; k < *node->finite_count; ++k)
        if (member_up_node(node->family(k), p)) return true;
      return false;
    case BorelCode::Op::IntersectSeq:
      if (!node->finite_count)
        throw PointError(
            "membership over an infinite intersection needs a canonical rule");
      for (std::size_t k = 0; k < *node->finite_count; ++k)
        if (!member_up_node(node->family(k), p)) return false;
      return true;
  }
  throw PointError("corrupt code node");
}

}  // namespace

bool member_up(const BorelCode& code, const UPPoint& p) {
  if (code.has_up_rule()) return code.decide_up(p);
  return member_up_node(code.root(), p);
}

bool member_up(const BorelCode& code, const MatrixPoint& p) {
  return member_up(code, p.flat());
}

BorelCode canonical_sigma1() {
  auto root = BorelCode::union_seq([](std::size_t n) {
    return BorelCode::cylinder({{n, 1}});
  });
  BorelCode code(root, SetLevel{false, 1, false}, "Sigma1");
  code.set_up_rule([](const UPPoint& p) { return p.has_a_one(); });
  return code;
}

BorelCode canonical_sigma2_evzero() {
  auto root = BorelCode::union_seq([](std::size_t m) {
    return BorelCode::intersect_seq([m](std::size_t j) {
      return BorelCode::cylinder({{m + j, 0}});
    });
  });
  BorelCode code(root, SetLevel{false, 2, false}, "Sigma2_evzero");
  code.set_up_rule([](const UPPoint& p) { return p.eventually_zero(); });
  return code;
}

BorelCode canonical_pi2_infones() {
  auto root = BorelCode::intersect_seq([](std::size_t m) {
    return BorelCode::union_seq([m](std::size_t j) {
      return BorelCode::cylinder({{m + j, 1}});
    });
  });
  BorelCode code(root, SetLevel{true, 2, false}, "Pi2_infones");
  code.set_up_rule([](const UPPoint& p) { return p.infinitely_many_ones(); });
  return code;
}

BorelCode canonical_pi3_matrix() {
  auto root = BorelCode::intersect_seq([](std::size_t M) {
    return BorelCode::union_seq([M](std::size_t d) {
      return BorelCode::intersect_seq([M, d](std::size_t n) {
        return BorelCode::cylinder({{pair_index(M + d, n), 0}});
      });
    });
  });
  BorelCode code(root, SetLevel{true, 3, false}, "Pi3_infemptycols");
  code.set_up_rule([](const UPPoint& p) {
    return MatrixPoint(p).infinitely_many_empty_columns();
  });
  return code;
}

BorelCode canonical_pi_omega(const DecreasingFamily& fam) {
  auto levels = fam.level_set;
  auto root = BorelCode::intersect_seq([levels](std::size_t n) {
    return levels(n + 1).root();
  });
  BorelCode code(root, SetLevel{true, 0, true}, "PiOmega_" + fam.name);
  auto member = fam.member;
  auto bound = std::max<std::size_t>(fam.stabilization_bound, 1);
  code.set_up_rule([member, bound](const UPPoint& p) {
    for (std::size_t k = 1; k <= bound; ++k)
      if (!member(k, p)) return false;
    return true;
  });
  return code;
}

DecreasingFamily tower_family() {
  DecreasingFamily fam;
  fam.name = "tower";
  fam.stabilization_bound = 2;
  fam.level_set = [](std::size_t n) {
    auto even_zero = BorelCode::intersect_seq([](std::size_t i) {
      return BorelCode::cylinder({{2 * i, 0}});
    });
    if (n <= 1) {
      BorelCode code(even_zero, SetLevel{true, 1, false}, "tower-level1");
      code.set_up_rule(
          [](const UPPoint& p) { return !p.track(0).has_a_one(); });
      return code;
    }
    auto odd_inf = BorelCode::intersect_seq([](std::size_t m) {
      return BorelCode::union_seq([m](std::size_t j) {
        return BorelCode::cylinder({{2 * (m + j) + 1, 1}});
      });
    });
    BorelCode code(BorelCode::intersect_of({even_zero, odd_inf}),
                   SetLevel{true, 2, false}, "tower-level2");
    code.set_up_rule([](const UPPoint& p) {
      return !p.track(0).has_a_one() && p.track(1).infinitely_many_ones();
    });
    return code;
  };
  fam.member = [](std::size_t n, const UPPoint& p) {
    if (!p.track(0).has_a_one()) {
      if (n <= 1) return true;
      return p.track(1).infinitely_many_ones();
    }
    return false;
  };
  return fam;
}

BorelCode canonical_set(const std::string& name) {
  if (name == "Sigma1") return canonical_sigma1();
  if (name == "Sigma2_evzero") return canonical_sigma2_evzero();
  if (name == "Pi2_infones") return canonical_pi2_infones();
  if (name == "Pi3_infemptycols") return canonical_pi3_matrix();
  if (name == "PiOmega_tower") return canonical_pi_omega(tower_family());
  throw PointError("unknown canonical set: " + name);
}

std::vector<std::string> canonical_set_names() {
  return {"Sigma1", "Sigma2_evzero", "Pi2_infones", "Pi3_infemptycols",
          "PiOmega_tower"};
}

}  // namespace modelborel
