#pragma once

#include <algorithm>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "laurent.hpp"
#include "linalg.hpp"
#include "partitions.hpp"
#include "report.hpp"
#include "series.hpp"

namespace kptau {

/// Homogeneous parts of exp(scale * sum_n x_n) over the indices of the
/// layout's kind: parts[w] is the weight-w component (alphabet `alphabet`).
/// With scale 1 on ALL these are the p_k; with scale 2 on ODD the q_r.
inline std::vector<GradedSeries> exponential_parts(const Layout& layout, int truncation, const Rational& scale,
                                                   int alphabet = 0) {
  GradedSeries sum = GradedSeries::zero(layout, truncation);
  for (int n = 1; n <= truncation; ++n)
    if (position_of_index(layout.kind, n)) sum += scale * GradedSeries::variable(layout, truncation, n, alphabet);
  GradedSeries e = exp(sum);
  std::vector<GradedSeries> parts;
  for (int w = 0; w <= truncation; ++w) parts.push_back(homogeneous_part(e, w));
  return parts;
}

/// p_k(x): sum_k p_k z^k = exp(sum_m x_m z^m). p_k = 0 for k < 0.
inline GradedSeries p_poly(int k) {
  if (k < 0) return GradedSeries::zero(Layout::kp(), 0);
  return exponential_parts(Layout::kp(), k, Rational(1)).back();
}

/// Schur function chi_lambda(x) = det(p_{lambda_i - i + j}), returned at
/// truncation max(|lambda|, truncation).
inline GradedSeries schur_poly(const Partition& lambda, int truncation = 0) {
  const int w = lambda.weight();
  const int n = lambda.length();
  const Layout layout = Layout::kp();
  auto p = exponential_parts(layout, w, Rational(1));
  GradedSeries zero = GradedSeries::zero(layout, w);
  Matrix<GradedSeries> m(static_cast<std::size_t>(n), static_cast<std::size_t>(n), zero);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      int idx = lambda[i] - i + j;
      if (idx >= 0 && idx <= w) m(i, j) = p[idx];
    }
  GradedSeries chi = det_division_free(m, GradedSeries::one(layout, w));
  return lift(chi, std::max(w, truncation));
}

/// Hook Schur function chi_(k|l) = chi of the partition (k+1, 1^l).
inline GradedSeries hook_schur(int arm, int leg, int truncation = 0) {
  std::vector<int> parts{arm + 1};
  parts.insert(parts.end(), static_cast<std::size_t>(leg), 1);
  return schur_poly(Partition(parts), truncation);
}

/// Extended Schur function: skew-symmetric in arms and in legs, zero on
/// negative or repeated entries.
inline GradedSeries schur_extended(const std::vector<int>& arms, const std::vector<int>& legs, int truncation = 0) {
  auto idx = normalize_extended_frobenius(arms, legs);
  if (idx.sign == 0) return GradedSeries::zero(Layout::kp(), truncation);
  GradedSeries chi = schur_poly(partition_of_frobenius(*idx.index), truncation);
  return idx.sign > 0 ? chi : -chi;
}

/// Expansion coefficients xi_lambda in the Schur basis.
struct SchurTable {
  std::map<Partition, Rational> entries;
  int max_weight = 0;

  Rational value(const Partition& lambda) const {
    auto it = entries.find(lambda);
    return it == entries.end() ? Rational(0) : it->second;
  }
  friend bool operator==(const SchurTable&, const SchurTable&) = default;
};

/// xi_lambda = chi_lambda(d~) tau |_{x=0} for all |lambda| <= N.
inline SchurTable expand_schur(const GradedSeries& tau) {
  if (tau.kind() != VarKind::All) throw std::invalid_argument("expand_schur: tau must be a KP (all-variable) series");
  if (!tau.layout().params.empty() || tau.layout().alphabets.size() != 1)
    throw std::invalid_argument("expand_schur: tau must not carry parameters");
  SchurTable table;
  table.max_weight = tau.truncation();
  table.entries[Partition()] = tau.constant_term();
  for (const auto& lambda : enumerate_partitions(tau.truncation())) {
    if (lambda.empty()) continue;
    Rational xi = apply_diff_operator(schur_poly(lambda), tau).constant_term();
    if (!xi.is_zero()) table.entries[lambda] = xi;
  }
  return table;
}

/// sum xi_lambda chi_lambda(x), truncated at weight n.
inline GradedSeries resum_schur(const SchurTable& table, int n) {
  GradedSeries tau = GradedSeries::zero(Layout::kp(), n);
  for (const auto& [lambda, xi] : table.entries)
    if (lambda.weight() <= n && !xi.is_zero()) tau += xi * schur_poly(lambda, n);
  return tau;
}

/// sum_{|lambda|<=N} chi_lambda(x) chi_lambda(y) against exp(sum n x_n y_n).
inline CheckReport schur_cauchy_check(int n) {
  Stopwatch clock;
  CheckReport report;
  report.identity = "schur-cauchy";
  report.mode = CheckMode::Graded;
  report.guaranteed_weight = n;
  const Layout xy{VarKind::All, {"x", "y"}, {}};
  GradedSeries lhs = GradedSeries::zero(xy, n);
  for (const auto& lambda : enumerate_partitions(n)) {
    GradedSeries chi = lift(schur_poly(lambda), n);
    lhs += embed(chi, xy, {0}) * embed(chi, xy, {1});
  }
  GradedSeries arg = GradedSeries::zero(xy, n);
  for (int k = 1; 2 * k <= n; ++k)
    arg += Rational(k) * (GradedSeries::variable(xy, n, k, 0) * GradedSeries::variable(xy, n, k, 1));
  add_residual_witnesses(report, lhs - exp(arg), n);
  report.elapsed_ms = clock.elapsed_ms();
  return report;
}

/// One-point shift identity with weight-1 parameters a, b:
///   tau(x + [b] - [a]) - tau(x) = (b - a) sum_{k,l>=0} (-1)^l chi_(k|l)(d~)tau a^l b^k.
inline CheckReport hook_shift_check(const GradedSeries& tau) {
  if (tau.kind() != VarKind::All || !tau.layout().params.empty())
    throw std::invalid_argument("hook_shift_check: tau must be a parameter-free KP series");
  Stopwatch clock;
  CheckReport report;
  report.identity = "hook-shift";
  report.mode = CheckMode::Graded;
  const int N = tau.truncation();
  report.guaranteed_weight = N;
  report.parameter_names = {"a", "b"};
  const Layout layout = Layout::kp({"a", "b"});
  GradedSeries t = embed(tau, layout);
  GradedSeries a = GradedSeries::parameter(layout, N, "a");
  GradedSeries b = GradedSeries::parameter(layout, N, "b");
  GradedSeries lhs = miwa_shift(miwa_shift(t, b, Rational(1), +1), a, Rational(1), -1) - t;
  detail::TermAccumulator acc;
  for (int k = 0; k < N; ++k)
    for (int l = 0; k + l + 1 <= N; ++l) {
      GradedSeries d = apply_diff_operator(hook_schur(k, l), tau);
      if (l % 2) d = -d;
      detail::accumulate_param_monomial(acc, d, {l, k}, Rational(1), N);
    }
  GradedSeries sum = GradedSeries::from_sorted(layout, N, acc.finish());
  add_residual_witnesses(report, lhs - (b - a) * sum, N);
  report.elapsed_ms = clock.elapsed_ms();
  return report;
}

struct Lemma1Options {
  bool drop_leg_sign = false;  // mutation control: omit (-1)^{l_1+...+l_n}
};

/// Hook-kernel generating identity with alpha_i, beta_j as weight-1
/// parameters (a_i, b_j). Both sides are multiplied by D = prod (b_i - a_j):
///
///   prod_{i<j} (a_i - a_j)(b_j - b_i) exp(sum xi(x,b_i) - xi(x,a_i))
///     = D * sum_{k,l} c_{k,l}(x) a^l b^k,
///
/// where the sum is the expansion for |b| < |a|. For all legs l_j >= 0 the
/// coefficient is (-1)^{sum l} chi_(k|l)(x); the remaining terms have some
/// negative leg and come from the 1/(b - a) part of the kernel, whose
/// coefficients are det(h(k_i, l_j)) with h(k, -k-1) = -1.
inline CheckReport lemma1_check(int n, int truncation, Lemma1Options opts = {}) {
  if (n < 1 || n > 2) throw std::invalid_argument("lemma1_check: n must be 1 or 2");
  Stopwatch clock;
  CheckReport report;
  report.identity = opts.drop_leg_sign ? "lemma1-mutated" : "lemma1";
  report.mode = CheckMode::Graded;
  report.guaranteed_weight = truncation;
  const int N = truncation;
  std::vector<std::string> names;
  for (int i = 1; i <= n; ++i) names.push_back("a" + std::to_string(i));
  for (int i = 1; i <= n; ++i) names.push_back("b" + std::to_string(i));
  report.parameter_names = names;
  const Layout layout = Layout::kp(names);
  auto a = [&](int i) { return GradedSeries::parameter(layout, N, "a" + std::to_string(i + 1)); };
  auto b = [&](int i) { return GradedSeries::parameter(layout, N, "b" + std::to_string(i + 1)); };

  // Left side, built directly from exponentials.
  GradedSeries prefactor = GradedSeries::one(layout, N);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) prefactor *= (a(i) - a(j)) * (b(j) - b(i));
  GradedSeries arg = GradedSeries::zero(layout, N);
  for (int i = 0; i < n; ++i) {
    GradedSeries bp = GradedSeries::one(layout, N), ap = bp;
    for (int m = 1; 2 * m <= N; ++m) {
      bp *= b(i);
      ap *= a(i);
      arg += GradedSeries::variable(layout, N, m) * (bp - ap);
    }
  }
  GradedSeries lhs = prefactor * exp(arg);

  GradedSeries d = GradedSeries::one(layout, N);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) d *= b(i) - a(j);

  auto leg_sign = [&](int l) { return (!opts.drop_leg_sign && (l % 2 != 0)) ? Rational(-1) : Rational(1); };
  // Kernel coefficient h(k, l) as a weight-(k+l+1) series.
  auto kernel = [&](int k, int l, int w) -> GradedSeries {
    if (l >= 0) return leg_sign(l) * hook_schur(k, l, w);
    if (l == -k - 1) return leg_sign(l) * GradedSeries::constant(Layout::kp(), w, Rational(k % 2 ? -1 : 1));
    return GradedSeries::zero(Layout::kp(), w);
  };

  detail::TermAccumulator acc;
  const int dweight = n * n;
  const int smax = (N - n - dweight) / 2;
  if (N - n - dweight >= 0) {
    const int kmax = smax + n * n;
    const int lmax = smax + n * n;
    std::vector<int> ks(static_cast<std::size_t>(n)), ls(static_cast<std::size_t>(n));
    std::function<void(int)> visit = [&](int pos) {
      if (pos < 2 * n) {
        bool is_k = pos < n;
        int lo = is_k ? 0 : -n;
        int hi = is_k ? kmax : lmax;
        for (int v = lo; v <= hi; ++v) {
          (is_k ? ks[pos] : ls[pos - n]) = v;
          visit(pos + 1);
        }
        return;
      }
      int s = 0;
      for (int i = 0; i < n; ++i) s += ks[i] + ls[i];
      if (s < -n || s > smax) return;
      const int w = s + n;  // x-weight of the coefficient
      GradedSeries coeff = GradedSeries::zero(Layout::kp(), w);
      bool main_part = std::all_of(ls.begin(), ls.end(), [](int v) { return v >= 0; });
      if (main_part) {
        int lsum = 0;
        for (int v : ls) lsum += v;
        coeff = leg_sign(lsum) * schur_extended(ks, ls, w);
      } else {
        Matrix<GradedSeries> h(static_cast<std::size_t>(n), static_cast<std::size_t>(n), coeff);
        for (int i = 0; i < n; ++i)
          for (int j = 0; j < n; ++j) {
            GradedSeries e = kernel(ks[i], ls[j], std::max(w, ks[i] + ls[j] + 1));
            h(i, j) = e.truncation() > w ? truncate(e, w) : e;
          }
        coeff = det_division_free(h, GradedSeries::one(Layout::kp(), w));
      }
      if (coeff.is_zero()) return;
      for (const auto& td : d.terms()) {
        std::vector<int> exps(static_cast<std::size_t>(2 * n));
        for (int i = 0; i < n; ++i) {
          exps[i] = ls[i] + td.mono.e[kParamBase + i];
          exps[n + i] = ks[i] + td.mono.e[kParamBase + n + i];
        }
        detail::accumulate_param_monomial(acc, coeff, exps, td.coeff, N);
      }
    };
    visit(0);
  }
  GradedSeries rhs = GradedSeries::from_sorted(layout, N, acc.finish());
  add_residual_witnesses(report, lhs - rhs, N);
  report.elapsed_ms = clock.elapsed_ms();
  return report;
}

}  // namespace kptau
