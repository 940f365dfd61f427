#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <cstring>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "rational.hpp"

namespace kptau {

// Exponent storage. Each alphabet owns kIndexSlots variable slots; the
// formal parameters follow all alphabets.
inline constexpr int kIndexSlots = 16;
inline constexpr int kMaxAlphabets = 2;
inline constexpr int kMaxParams = 16;
inline constexpr int kParamBase = kIndexSlots * kMaxAlphabets;
inline constexpr int kSlots = kParamBase + kMaxParams;
inline constexpr int kMaxTruncation = 200;

/// ALL: x1, x2, x3, ... (KP).  ODD: x1, x3, x5, ... (BKP).
enum class VarKind { All, Odd };

inline std::string_view to_string(VarKind kind) { return kind == VarKind::All ? "kp" : "bkp"; }

/// Variable index n stored at local position p of an alphabet.
inline int index_of_position(VarKind kind, int position) {
  return kind == VarKind::All ? position + 1 : 2 * position + 1;
}

inline std::optional<int> position_of_index(VarKind kind, int index) {
  if (index < 1) return std::nullopt;
  if (kind == VarKind::Odd && index % 2 == 0) return std::nullopt;
  int pos = kind == VarKind::All ? index - 1 : (index - 1) / 2;
  if (pos >= kIndexSlots) return std::nullopt;
  return pos;
}

/// Variable alphabets and formal parameters a series lives over. Every
/// parameter has weight 1; variable x_n has weight n.
struct Layout {
  VarKind kind = VarKind::All;
  std::vector<std::string> alphabets{"x"};
  std::vector<std::string> params;

  static Layout kp(std::vector<std::string> params = {}) { return {VarKind::All, {"x"}, std::move(params)}; }
  static Layout bkp(std::vector<std::string> params = {}) { return {VarKind::Odd, {"x"}, std::move(params)}; }

  void validate() const {
    if (alphabets.empty() || alphabets.size() > kMaxAlphabets)
      throw std::invalid_argument("Layout: between 1 and 2 alphabets required");
    if (params.size() > kMaxParams) throw std::invalid_argument("Layout: too many parameters");
    for (std::size_t i = 0; i < params.size(); ++i)
      for (std::size_t j = i + 1; j < params.size(); ++j)
        if (params[i] == params[j]) throw std::invalid_argument("Layout: duplicate parameter " + params[i]);
  }

  int var_slot(int alphabet, int index) const {
    if (alphabet < 0 || alphabet >= static_cast<int>(alphabets.size()))
      throw std::invalid_argument("Layout: no such alphabet");
    auto pos = position_of_index(kind, index);
    if (!pos) throw std::invalid_argument("Layout: variable index " + std::to_string(index) + " not available");
    return alphabet * kIndexSlots + *pos;
  }

  int param_slot(std::string_view name) const {
    for (std::size_t i = 0; i < params.size(); ++i)
      if (params[i] == name) return kParamBase + static_cast<int>(i);
    return -1;
  }

  int slot_weight(int slot) const {
    return slot < kParamBase ? index_of_position(kind, slot % kIndexSlots) : 1;
  }

  std::string slot_name(int slot) const {
    if (slot >= kParamBase) return params.at(slot - kParamBase);
    return alphabets.at(slot / kIndexSlots) + std::to_string(index_of_position(kind, slot % kIndexSlots));
  }

  Layout with_params(const std::vector<std::string>& extra) const {
    Layout out = *this;
    for (const auto& p : extra)
      if (out.param_slot(p) < 0) out.params.push_back(p);
    out.validate();
    return out;
  }

  bool operator==(const Layout&) const = default;
};

struct Monomial {
  std::array<std::uint8_t, kSlots> e{};

  bool is_one() const {
    return std::all_of(e.begin(), e.end(), [](std::uint8_t v) { return v == 0; });
  }
  friend bool operator==(const Monomial& a, const Monomial& b) { return a.e == b.e; }
  friend Monomial operator+(const Monomial& a, const Monomial& b) {
    Monomial m;
    for (int i = 0; i < kSlots; ++i) m.e[i] = static_cast<std::uint8_t>(a.e[i] + b.e[i]);
    return m;
  }
};

struct MonomialHash {
  std::size_t operator()(const Monomial& m) const noexcept {
    std::uint64_t h = 1469598103934665603ULL;
    for (auto v : m.e) {
      h ^= v;
      h *= 1099511628211ULL;
    }
    return static_cast<std::size_t>(h);
  }
};

inline int monomial_weight(const Layout& layout, const Monomial& m) {
  int w = 0;
  for (int s = 0; s < kSlots; ++s)
    if (m.e[s]) w += m.e[s] * layout.slot_weight(s);
  return w;
}

inline std::string monomial_to_string(const Layout& layout, const Monomial& m) {
  std::string out;
  for (int s = 0; s < kSlots; ++s) {
    if (!m.e[s]) continue;
    if (!out.empty()) out += '*';
    out += layout.slot_name(s);
    if (m.e[s] > 1) out += '^' + std::to_string(m.e[s]);
  }
  return out.empty() ? "1" : out;
}

struct Term {
  Monomial mono;
  int weight = 0;
  Rational coeff;
};

/// Canonical term order: ascending weight, then descending exponent vector
/// (variables before parameters).
inline bool canonical_less(const Term& a, const Term& b) {
  if (a.weight != b.weight) return a.weight < b.weight;
  return std::lexicographical_compare(a.mono.e.begin(), a.mono.e.end(), b.mono.e.begin(), b.mono.e.end(),
                                      std::greater<>());
}

namespace detail {

class TermAccumulator {
 public:
  void add(const Monomial& m, int weight, const mpq_class& c) {
    auto [it, inserted] = map_.try_emplace(m, weight, mpq_class(0));
    it->second.second += c;
  }
  void add_product(const Monomial& m, int weight, const mpq_class& a, const mpq_class& b) {
    mpq_mul(tmp_.get_mpq_t(), a.get_mpq_t(), b.get_mpq_t());
    add(m, weight, tmp_);
  }
  std::vector<Term> finish() {
    std::vector<Term> terms;
    terms.reserve(map_.size());
    for (auto& [m, wc] : map_)
      if (sgn(wc.second) != 0) terms.push_back(Term{m, wc.first, Rational(std::move(wc.second))});
    std::sort(terms.begin(), terms.end(), canonical_less);
    map_.clear();
    return terms;
  }

 private:
  std::unordered_map<Monomial, std::pair<int, mpq_class>, MonomialHash> map_;
  mpq_class tmp_;
};

}  // namespace detail

/// Truncated multivariate power series with exact rational coefficients.
/// Every stored monomial has weight <= truncation(); coefficients are
/// exact through that weight. Values are immutable once built.
class GradedSeries {
 public:
  GradedSeries() : GradedSeries(Layout{}, 0) {}
  GradedSeries(Layout layout, int truncation) : layout_(std::move(layout)), truncation_(truncation) {
    layout_.validate();
    if (truncation_ < 0 || truncation_ > kMaxTruncation)
      throw std::invalid_argument("GradedSeries: truncation weight out of range");
  }

  static GradedSeries zero(const Layout& layout, int n) { return GradedSeries(layout, n); }
  static GradedSeries constant(const Layout& layout, int n, const Rational& c) {
    return monomial(layout, n, Monomial{}, c);
  }
  static GradedSeries one(const Layout& layout, int n) { return constant(layout, n, Rational(1)); }
  static GradedSeries monomial(const Layout& layout, int n, const Monomial& m, const Rational& c) {
    GradedSeries s(layout, n);
    int w = monomial_weight(s.layout_, m);
    if (!c.is_zero() && w <= n) s.terms_.push_back(Term{m, w, c});
    return s;
  }
  static GradedSeries variable(const Layout& layout, int n, int index, int alphabet = 0) {
    Monomial m;
    m.e[layout.var_slot(alphabet, index)] = 1;
    return monomial(layout, n, m, Rational(1));
  }
  static GradedSeries parameter(const Layout& layout, int n, std::string_view name) {
    int slot = layout.param_slot(name);
    if (slot < 0) throw std::invalid_argument("GradedSeries: undeclared parameter " + std::string(name));
    Monomial m;
    m.e[slot] = 1;
    return monomial(layout, n, m, Rational(1));
  }
  /// Builds from unordered, possibly repeated terms; drops weights above n.
  static GradedSeries from_terms(const Layout& layout, int n, const std::vector<std::pair<Monomial, Rational>>& terms) {
    GradedSeries s(layout, n);
    detail::TermAccumulator acc;
    for (const auto& [m, c] : terms) {
      int w = monomial_weight(s.layout_, m);
      if (w <= n) acc.add(m, w, c.value());
    }
    s.terms_ = acc.finish();
    return s;
  }

  const Layout& layout() const { return layout_; }
  VarKind kind() const { return layout_.kind; }
  int truncation() const { return truncation_; }
  const std::vector<Term>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  Rational coefficient(const Monomial& m) const {
    for (const auto& t : terms_)
      if (t.mono == m) return t.coeff;
    return Rational(0);
  }
  Rational constant_term() const {
    return !terms_.empty() && terms_.front().weight == 0 ? terms_.front().coeff : Rational(0);
  }
  /// Largest weight carried by a stored term (-1 for the zero series).
  int max_weight() const { return terms_.empty() ? -1 : terms_.back().weight; }
  int min_weight() const { return terms_.empty() ? -1 : terms_.front().weight; }

  friend bool operator==(const GradedSeries& a, const GradedSeries& b) {
    if (a.layout_ != b.layout_ || a.truncation_ != b.truncation_ || a.terms_.size() != b.terms_.size()) return false;
    for (std::size_t i = 0; i < a.terms_.size(); ++i)
      if (!(a.terms_[i].mono == b.terms_[i].mono) || a.terms_[i].coeff != b.terms_[i].coeff) return false;
    return true;
  }

  std::string to_string() const {
    if (terms_.empty()) return "0";
    std::string out;
    for (const auto& t : terms_) {
      if (!out.empty()) out += " + ";
      out += "(" + t.coeff.str() + ")*" + monomial_to_string(layout_, t.mono);
    }
    return out;
  }

  // Internal construction used by the free functions below.
  static GradedSeries from_sorted(Layout layout, int n, std::vector<Term> terms) {
    GradedSeries s(std::move(layout), n);
    s.terms_ = std::move(terms);
    return s;
  }

 private:
  Layout layout_;
  int truncation_ = 0;
  std::vector<Term> terms_;
};

namespace detail {

inline void require_compatible(const GradedSeries& a, const GradedSeries& b, const char* op) {
  if (a.layout().kind != b.layout().kind) throw std::invalid_argument(std::string(op) + ": variable kind mismatch");
  if (a.layout() != b.layout()) throw std::invalid_argument(std::string(op) + ": layout mismatch");
  if (a.truncation() != b.truncation()) throw std::invalid_argument(std::string(op) + ": truncation weight mismatch");
}

inline GradedSeries linear_combination(const GradedSeries& a, const GradedSeries& b, int sign_b) {
  detail::TermAccumulator acc;
  for (const auto& t : a.terms()) acc.add(t.mono, t.weight, t.coeff.value());
  for (const auto& t : b.terms())
    acc.add(t.mono, t.weight, sign_b > 0 ? t.coeff.value() : mpq_class(-t.coeff.value()));
  return GradedSeries::from_sorted(a.layout(), a.truncation(), acc.finish());
}

/// Product truncated at `n`, without requiring equal input truncations.
/// Callers are responsible for the exactness of the result through n.
inline GradedSeries mul_raw(const GradedSeries& a, const GradedSeries& b, int n) {
  detail::TermAccumulator acc;
  for (const auto& ta : a.terms()) {
    int room = n - ta.weight;
    if (room < 0) break;
    for (const auto& tb : b.terms()) {
      if (tb.weight > room) break;
      acc.add_product(ta.mono + tb.mono, ta.weight + tb.weight, ta.coeff.value(), tb.coeff.value());
    }
  }
  return GradedSeries::from_sorted(a.layout(), n, acc.finish());
}

}  // namespace detail

inline GradedSeries operator+(const GradedSeries& a, const GradedSeries& b) {
  detail::require_compatible(a, b, "add");
  return detail::linear_combination(a, b, +1);
}

inline GradedSeries operator-(const GradedSeries& a, const GradedSeries& b) {
  detail::require_compatible(a, b, "sub");
  return detail::linear_combination(a, b, -1);
}

inline GradedSeries operator-(const GradedSeries& a) {
  std::vector<Term> terms = a.terms();
  for (auto& t : terms) t.coeff = -t.coeff;
  return GradedSeries::from_sorted(a.layout(), a.truncation(), std::move(terms));
}

inline GradedSeries operator*(const GradedSeries& a, const GradedSeries& b) {
  detail::require_compatible(a, b, "mul");
  return detail::mul_raw(a, b, a.truncation());
}

inline GradedSeries operator*(const Rational& c, const GradedSeries& a) {
  if (c.is_zero()) return GradedSeries::zero(a.layout(), a.truncation());
  std::vector<Term> terms = a.terms();
  for (auto& t : terms) t.coeff *= c;
  return GradedSeries::from_sorted(a.layout(), a.truncation(), std::move(terms));
}
inline GradedSeries operator*(const GradedSeries& a, const Rational& c) { return c * a; }

inline GradedSeries& operator+=(GradedSeries& a, const GradedSeries& b) { return a = a + b; }
inline GradedSeries& operator-=(GradedSeries& a, const GradedSeries& b) { return a = a - b; }
inline GradedSeries& operator*=(GradedSeries& a, const GradedSeries& b) { return a = a * b; }

inline GradedSeries pow(const GradedSeries& a, unsigned k) {
  GradedSeries result = GradedSeries::one(a.layout(), a.truncation());
  GradedSeries base = a;
  while (k) {
    if (k & 1U) result = result * base;
    k >>= 1U;
    if (k) base = base * base;
  }
  return result;
}

/// exp(a) = sum a^k / k!, truncated. Requires a zero constant term.
inline GradedSeries exp(const GradedSeries& a) {
  if (!a.constant_term().is_zero()) throw std::invalid_argument("exp: nonzero constant term");
  GradedSeries result = GradedSeries::one(a.layout(), a.truncation());
  GradedSeries power = result;
  for (int k = 1; k <= a.truncation(); ++k) {
    power = Rational(1, k) * (power * a);
    if (power.is_zero()) break;
    result += power;
  }
  return result;
}

/// Multiplicative inverse of a series with constant term 1.
inline GradedSeries inv(const GradedSeries& a) {
  if (a.constant_term() != Rational(1)) throw std::invalid_argument("inv: constant term must be 1");
  GradedSeries one = GradedSeries::one(a.layout(), a.truncation());
  GradedSeries neg_tail = one - a;
  GradedSeries result = one;
  GradedSeries power = one;
  for (int k = 1; k <= a.truncation(); ++k) {
    power = power * neg_tail;
    if (power.is_zero()) break;
    result += power;
  }
  return result;
}

/// Drops terms above weight n (n must not exceed the current truncation).
inline GradedSeries truncate(const GradedSeries& a, int n) {
  if (n > a.truncation()) throw std::invalid_argument("truncate: cannot raise truncation weight");
  std::vector<Term> terms;
  for (const auto& t : a.terms())
    if (t.weight <= n) terms.push_back(t);
  return GradedSeries::from_sorted(a.layout(), n, std::move(terms));
}

/// Re-declares the truncation weight as n >= current. Only meaningful when
/// the series is a genuine polynomial (no terms were lost to truncation).
inline GradedSeries lift(const GradedSeries& a, int n) {
  if (n < a.truncation()) return truncate(a, n);
  return GradedSeries::from_sorted(a.layout(), n, a.terms());
}

inline GradedSeries homogeneous_part(const GradedSeries& a, int w) {
  std::vector<Term> terms;
  for (const auto& t : a.terms())
    if (t.weight == w) terms.push_back(t);
  return GradedSeries::from_sorted(a.layout(), a.truncation(), std::move(terms));
}

/// Moves a series into another layout of the same kind. Parameters are
/// matched by name; alphabet i of the source goes to alphabet_map[i].
inline GradedSeries embed(const GradedSeries& a, const Layout& target, std::vector<int> alphabet_map = {}) {
  const Layout& src = a.layout();
  if (src.kind != target.kind) throw std::invalid_argument("embed: variable kind mismatch");
  target.validate();
  if (alphabet_map.empty())
    for (std::size_t i = 0; i < src.alphabets.size(); ++i) alphabet_map.push_back(static_cast<int>(i));
  if (alphabet_map.size() != src.alphabets.size()) throw std::invalid_argument("embed: alphabet map size");
  std::array<int, kSlots> slot_map{};
  slot_map.fill(-1);
  for (std::size_t i = 0; i < src.alphabets.size(); ++i) {
    int dst = alphabet_map[i];
    if (dst < 0 || dst >= static_cast<int>(target.alphabets.size()))
      throw std::invalid_argument("embed: alphabet out of range");
    for (int p = 0; p < kIndexSlots; ++p) slot_map[i * kIndexSlots + p] = dst * kIndexSlots + p;
  }
  for (std::size_t i = 0; i < src.params.size(); ++i) {
    int dst = target.param_slot(src.params[i]);
    slot_map[kParamBase + i] = dst;
  }
  std::vector<Term> terms;
  terms.reserve(a.terms().size());
  for (const auto& t : a.terms()) {
    Monomial m;
    for (int s = 0; s < kSlots; ++s) {
      if (!t.mono.e[s]) continue;
      if (slot_map[s] < 0) throw std::invalid_argument("embed: target layout lacks parameter " + src.slot_name(s));
      m.e[slot_map[s]] = t.mono.e[s];
    }
    terms.push_back(Term{m, t.weight, t.coeff});
  }
  std::sort(terms.begin(), terms.end(), canonical_less);
  return GradedSeries::from_sorted(target, a.truncation(), std::move(terms));
}

/// x_n -> factor * x_n for every variable of one alphabet.
inline GradedSeries scale_variables(const GradedSeries& a, const Rational& factor, int alphabet = 0) {
  std::vector<Term> terms;
  for (const auto& t : a.terms()) {
    unsigned degree = 0;
    for (int p = 0; p < kIndexSlots; ++p) degree += t.mono.e[alphabet * kIndexSlots + p];
    Rational c = t.coeff * pow(factor, degree);
    if (!c.is_zero()) terms.push_back(Term{t.mono, t.weight, c});
  }
  return GradedSeries::from_sorted(a.layout(), a.truncation(), std::move(terms));
}

/// Sets every variable of one alphabet to zero.
inline GradedSeries set_alphabet_zero(const GradedSeries& a, int alphabet = 0) {
  std::vector<Term> terms;
  for (const auto& t : a.terms()) {
    bool keep = true;
    for (int p = 0; p < kIndexSlots && keep; ++p) keep = t.mono.e[alphabet * kIndexSlots + p] == 0;
    if (keep) terms.push_back(t);
  }
  return GradedSeries::from_sorted(a.layout(), a.truncation(), std::move(terms));
}

/// Sets the named parameter to zero.
inline GradedSeries set_param_zero(const GradedSeries& a, std::string_view name) {
  int slot = a.layout().param_slot(name);
  if (slot < 0) return a;
  std::vector<Term> terms;
  for (const auto& t : a.terms())
    if (!t.mono.e[slot]) terms.push_back(t);
  return GradedSeries::from_sorted(a.layout(), a.truncation(), std::move(terms));
}

/// Splits a series by the exponent of one parameter: result[j] is the
/// coefficient of p^j, with p removed from the monomials.
inline std::map<int, GradedSeries> split_by_param(const GradedSeries& a, std::string_view name) {
  int slot = a.layout().param_slot(name);
  if (slot < 0) throw std::invalid_argument("split_by_param: undeclared parameter");
  std::map<int, std::vector<Term>> buckets;
  for (const auto& t : a.terms()) {
    Term u = t;
    int j = u.mono.e[slot];
    u.mono.e[slot] = 0;
    u.weight -= j;
    buckets[j].push_back(std::move(u));
  }
  std::map<int, GradedSeries> out;
  for (auto& [j, terms] : buckets) {
    std::sort(terms.begin(), terms.end(), canonical_less);
    out.emplace(j, GradedSeries::from_sorted(a.layout(), a.truncation() - j, std::move(terms)));
  }
  return out;
}

/// f(x + s): substitutes x_n -> x_n + shifts[n] for the variables of one
/// alphabet. Each shift must share f's layout. Variables without an entry
/// in `shifts` are left alone.
inline GradedSeries substitute_shift(const GradedSeries& f, const std::map<int, GradedSeries>& shifts, int alphabet = 0) {
  const Layout& layout = f.layout();
  const int n_trunc = f.truncation();
  for (const auto& [n, s] : shifts) {
    if (s.layout() != layout) throw std::invalid_argument("substitute_shift: shift layout mismatch");
    if (!position_of_index(layout.kind, n)) throw std::invalid_argument("substitute_shift: bad variable index");
  }
  // powers[n][e] = (x_n + s_n)^e
  std::map<int, std::vector<GradedSeries>> powers;
  auto power_of = [&](int n, int e) -> const GradedSeries& {
    auto& list = powers[n];
    if (list.empty()) list.push_back(GradedSeries::one(layout, n_trunc));
    while (static_cast<int>(list.size()) <= e) {
      GradedSeries base = lift(GradedSeries::variable(layout, n_trunc, n, alphabet), n_trunc);
      const GradedSeries& s = shifts.at(n);
      GradedSeries sum = detail::linear_combination(base, lift(s, n_trunc), +1);
      list.push_back(detail::mul_raw(list.back(), sum, n_trunc));
    }
    return list[e];
  };
  detail::TermAccumulator acc;
  for (const auto& t : f.terms()) {
    Monomial rest = t.mono;
    std::vector<std::pair<int, int>> factors;
    for (int p = 0; p < kIndexSlots; ++p) {
      int slot = alphabet * kIndexSlots + p;
      int e = rest.e[slot];
      if (!e) continue;
      int n = index_of_position(layout.kind, p);
      if (shifts.count(n)) {
        factors.emplace_back(n, e);
        rest.e[slot] = 0;
      }
    }
    GradedSeries prod = GradedSeries::monomial(layout, n_trunc, rest, t.coeff);
    if (!factors.empty() && monomial_weight(layout, rest) > n_trunc) continue;
    for (const auto& [n, e] : factors) {
      prod = detail::mul_raw(prod, power_of(n, e), n_trunc);
      if (prod.is_zero()) break;
    }
    for (const auto& u : prod.terms()) acc.add(u.mono, u.weight, u.coeff.value());
  }
  return GradedSeries::from_sorted(layout, n_trunc, acc.finish());
}

/// Miwa shift by a series value v: x_n -> x_n + sign*c*v^n/n for every
/// variable index n of f's kind. With v a weight-1 parameter the shift
/// preserves weight; with v a constant it is an exact polynomial shift.
inline GradedSeries miwa_shift(const GradedSeries& f, const GradedSeries& v, const Rational& c, int sign, int alphabet = 0) {
  if (v.layout() != f.layout()) throw std::invalid_argument("miwa_shift: value layout mismatch");
  if (sign != 1 && sign != -1) throw std::invalid_argument("miwa_shift: sign must be +1 or -1");
  int max_index = 0;
  for (const auto& t : f.terms())
    for (int p = 0; p < kIndexSlots; ++p)
      if (t.mono.e[alphabet * kIndexSlots + p]) max_index = std::max(max_index, index_of_position(f.kind(), p));
  std::map<int, GradedSeries> shifts;
  GradedSeries vt = lift(v, f.truncation());
  GradedSeries vpow = GradedSeries::one(f.layout(), f.truncation());
  for (int n = 1; n <= max_index; ++n) {
    vpow = detail::mul_raw(vpow, vt, f.truncation());
    if (!position_of_index(f.kind(), n)) continue;
    shifts.emplace(n, Rational(sign) * c * Rational(1, n) * vpow);
  }
  return substitute_shift(f, shifts, alphabet);
}

/// Miwa shift by a named weight-1 parameter, declared on the fly if needed.
inline GradedSeries miwa_shift(const GradedSeries& f, std::string_view param, const Rational& c, int sign) {
  GradedSeries g = f;
  if (f.layout().param_slot(param) < 0) g = embed(f, f.layout().with_params({std::string(param)}));
  return miwa_shift(g, GradedSeries::parameter(g.layout(), g.truncation(), param), c, sign);
}

/// P(d~) f with d~_n = (1/n) d/dx_n acting on alphabet 0. P must be a
/// parameter-free polynomial in a single alphabet. The result is exact
/// through weight N - (max weight of P).
inline GradedSeries apply_diff_operator(const GradedSeries& p, const GradedSeries& f) {
  if (!p.layout().params.empty()) throw std::invalid_argument("apply_diff_operator: operator carries parameters");
  if (p.layout().alphabets.size() != 1) throw std::invalid_argument("apply_diff_operator: operator must use one alphabet");
  if (p.kind() != f.kind()) throw std::invalid_argument("apply_diff_operator: variable kind mismatch");
  if (p.is_zero()) return GradedSeries::zero(f.layout(), f.truncation());
  int out_trunc = f.truncation() - p.max_weight();
  if (out_trunc < 0) throw std::invalid_argument("apply_diff_operator: operator weight exceeds truncation");
  detail::TermAccumulator acc;
  mpq_class factor;
  for (const auto& tp : p.terms()) {
    for (const auto& tf : f.terms()) {
      int w = tf.weight - tp.weight;
      if (w < 0 || w > out_trunc) continue;
      Monomial m = tf.mono;
      bool ok = true;
      factor = tp.coeff.value();
      for (int pos = 0; pos < kIndexSlots && ok; ++pos) {
        int ep = tp.mono.e[pos];
        if (!ep) continue;
        int ef = m.e[pos];
        if (ef < ep) {
          ok = false;
          break;
        }
        int n = index_of_position(f.kind(), pos);
        for (int i = 0; i < ep; ++i) factor *= ef - i;
        mpz_class denom;
        mpz_ui_pow_ui(denom.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(ep));
        factor /= denom;
        m.e[pos] = static_cast<std::uint8_t>(ef - ep);
      }
      if (!ok) continue;
      acc.add_product(m, w, factor, tf.coeff.value());
    }
  }
  return GradedSeries::from_sorted(f.layout(), out_trunc, acc.finish());
}

}  // namespace kptau
