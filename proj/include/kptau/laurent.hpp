#pragma once

#include <map>
#include <stdexcept>
#include <string_view>
#include <vector>

#include "series.hpp"

namespace kptau {

/// Finite Laurent polynomial in an auxiliary variable k whose coefficients
/// are graded series. k carries weight -1, so the coefficient of k^e is
/// exact through (x,y)-weight N + e, and exponents stay inside [-N, N].
class LaurentSeries {
 public:
  LaurentSeries(Layout layout, int truncation) : layout_(std::move(layout)), truncation_(truncation) {}

  const Layout& layout() const { return layout_; }
  int truncation() const { return truncation_; }
  const std::map<int, GradedSeries>& coefficients() const { return coeffs_; }

  int k_min() const { return coeffs_.empty() ? 0 : coeffs_.begin()->first; }
  int k_max() const { return coeffs_.empty() ? 0 : coeffs_.rbegin()->first; }

  /// Sets the coefficient of k^e; it is cut to weight N + e.
  void set(int e, const GradedSeries& c) {
    if (c.layout() != layout_) throw std::invalid_argument("LaurentSeries: coefficient layout mismatch");
    if (e < -truncation_ || e > truncation_) return;
    int cap = truncation_ + e;
    GradedSeries cut = c.truncation() >= cap ? truncate(c, cap) : lift(c, cap);
    if (cut.is_zero()) {
      coeffs_.erase(e);
      return;
    }
    coeffs_.insert_or_assign(e, std::move(cut));
  }

  /// Reads p^j coefficients of a series as k^{-j} coefficients (p = 1/k).
  static LaurentSeries from_inverse_parameter(const GradedSeries& a, std::string_view param) {
    Layout base = a.layout();
    LaurentSeries out(base, a.truncation());
    for (const auto& [j, c] : split_by_param(a, param)) out.set(-j, c);
    return out;
  }

  friend LaurentSeries operator*(const LaurentSeries& a, const LaurentSeries& b) {
    if (a.layout_ != b.layout_ || a.truncation_ != b.truncation_)
      throw std::invalid_argument("LaurentSeries: incompatible operands");
    LaurentSeries out(a.layout_, a.truncation_);
    std::map<int, GradedSeries> acc;
    for (const auto& [ea, ca] : a.coeffs_)
      for (const auto& [eb, cb] : b.coeffs_) {
        int e = ea + eb;
        if (e < -a.truncation_ || e > a.truncation_) continue;
        GradedSeries prod = detail::mul_raw(ca, cb, a.truncation_ + e);
        auto it = acc.find(e);
        if (it == acc.end())
          acc.emplace(e, std::move(prod));
        else
          it->second = it->second + prod;
      }
    for (auto& [e, c] : acc) out.set(e, c);
    return out;
  }

 private:
  Layout layout_;
  int truncation_;
  std::map<int, GradedSeries> coeffs_;
};

namespace detail {

/// Adds c * g * prod_i param_i^{exps[i]} to acc when every exponent is
/// non-negative and the weight stays <= n. g must not involve parameters.
inline void accumulate_param_monomial(TermAccumulator& acc, const GradedSeries& g, const std::vector<int>& exps,
                                      const Rational& c, int n) {
  Monomial pm;
  int pw = 0;
  for (std::size_t i = 0; i < exps.size(); ++i) {
    if (exps[i] < 0) return;
    pm.e[kParamBase + i] = static_cast<std::uint8_t>(exps[i]);
    pw += exps[i];
  }
  mpq_class cc = c.value();
  for (const auto& t : g.terms()) {
    if (t.weight + pw > n) break;
    acc.add_product(t.mono + pm, t.weight + pw, t.coeff.value(), cc);
  }
}

}  // namespace detail

/// Coefficient of k^e; the zero series (at weight N + e) when absent.
inline GradedSeries laurent_residue(const LaurentSeries& l, int e) {
  auto it = l.coefficients().find(e);
  if (it != l.coefficients().end()) return it->second;
  return GradedSeries::zero(l.layout(), std::max(0, l.truncation() + e));
}

}  // namespace kptau
