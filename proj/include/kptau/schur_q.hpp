#pragma once

#include <functional>
#include <map>
#include <string>
#include <vector>

#include "laurent.hpp"
#include "linalg.hpp"
#include "partitions.hpp"
#include "report.hpp"
#include "schur.hpp"
#include "series.hpp"

namespace kptau {

/// q_r(x): sum_r q_r t^r = exp(2 sum_{k odd} x_k t^k). q_r = 0 for r < 0.
inline GradedSeries q_poly(int r, int truncation = 0) {
  if (r < 0) return GradedSeries::zero(Layout::bkp(), truncation);
  GradedSeries q = exponential_parts(Layout::bkp(), r, Rational(2)).back();
  return lift(q, std::max(r, truncation));
}

namespace detail {

inline std::vector<GradedSeries> q_list(int max_r, int truncation) {
  std::vector<GradedSeries> parts = exponential_parts(Layout::bkp(), std::max(max_r, 0), Rational(2));
  for (auto& p : parts) p = lift(p, truncation);
  return parts;
}

/// q_r q_s + 2 sum_{i=1}^{s} (-1)^i q_{r+i} q_{s-i} for arbitrary integers.
inline GradedSeries q_pair_formula(int r, int s, int truncation) {
  GradedSeries zero = GradedSeries::zero(Layout::bkp(), truncation);
  if (r + s < 0 || s < 0) return zero;
  auto q = q_list(r + s, truncation);
  auto at = [&](int i) -> const GradedSeries* { return (i < 0 || i > r + s) ? nullptr : &q[i]; };
  GradedSeries out = zero;
  if (at(r) && at(s)) out += *at(r) * *at(s);
  for (int i = 1; i <= s; ++i) {
    const GradedSeries* u = at(r + i);
    const GradedSeries* v = at(s - i);
    if (!u || !v) continue;
    out += Rational(i % 2 ? -2 : 2) * (*u * *v);
  }
  return out;
}

}  // namespace detail

/// Q_(r,s): the two-row function for r > s >= 0, extended antisymmetrically;
/// zero on the diagonal and for negative entries.
inline GradedSeries q_two_row(int r, int s, int truncation = 0) {
  const int t = std::max(truncation, std::max(r + s, 0));
  if (r < 0 || s < 0 || r == s) return GradedSeries::zero(Layout::bkp(), t);
  if (r < s) return -detail::q_pair_formula(s, r, t);
  return detail::q_pair_formula(r, s, t);
}

/// Schur Q-function Q_lambda = Pf(Q_(l'_i, l'_j)) over the padded rows.
inline GradedSeries q_schur_poly(const StrictPartition& lambda, int truncation = 0) {
  const int w = lambda.weight();
  const int t = std::max(w, truncation);
  PaddedStrict padded(lambda);
  const auto& rows = padded.rows();
  const std::size_t n = rows.size();
  GradedSeries zero = GradedSeries::zero(Layout::bkp(), w);
  Matrix<GradedSeries> m(n, n, zero);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      m(i, j) = truncate(q_two_row(rows[i], rows[j], w), w);
      m(j, i) = -m(i, j);
    }
  return lift(pfaffian(m, GradedSeries::one(Layout::bkp(), w)), t);
}

/// Extended Q-function: alternating in the rows, zero on negative or
/// repeated rows.
inline GradedSeries q_extended(const std::vector<int>& rows, int truncation = 0) {
  auto idx = normalize_extended_strict(rows);
  if (idx.sign == 0) return GradedSeries::zero(Layout::bkp(), truncation);
  GradedSeries q = q_schur_poly(*idx.index, truncation);
  return idx.sign > 0 ? q : -q;
}

/// Expansion coefficients xi_lambda in the Q basis: tau = sum xi Q_lambda(x/2).
struct QTable {
  std::map<StrictPartition, Rational> entries;
  int max_weight = 0;

  Rational value(const StrictPartition& lambda) const {
    auto it = entries.find(lambda);
    return it == entries.end() ? Rational(0) : it->second;
  }
  friend bool operator==(const QTable&, const QTable&) = default;
};

/// xi_lambda = 2^{-l(lambda)} Q_lambda(d~) tau |_{x=0}.
inline QTable expand_q(const GradedSeries& tau) {
  if (tau.kind() != VarKind::Odd) throw std::invalid_argument("expand_q: tau must be a BKP (odd-variable) series");
  if (!tau.layout().params.empty() || tau.layout().alphabets.size() != 1)
    throw std::invalid_argument("expand_q: tau must not carry parameters");
  QTable table;
  table.max_weight = tau.truncation();
  table.entries[StrictPartition()] = tau.constant_term();
  for (const auto& lambda : enumerate_strict_partitions(tau.truncation())) {
    if (lambda.empty()) continue;
    Rational xi = apply_diff_operator(q_schur_poly(lambda), tau).constant_term();
    xi /= pow(Rational(2), static_cast<unsigned>(lambda.length()));
    if (!xi.is_zero()) table.entries[lambda] = xi;
  }
  return table;
}

/// sum xi_lambda Q_lambda(x/2), truncated at weight n.
inline GradedSeries resum_q(const QTable& table, int n) {
  GradedSeries tau = GradedSeries::zero(Layout::bkp(), n);
  for (const auto& [lambda, xi] : table.entries)
    if (lambda.weight() <= n && !xi.is_zero()) tau += xi * scale_variables(q_schur_poly(lambda, n), Rational(1, 2));
  return tau;
}

/// sum 2^{-l} Q_lambda(x) Q_lambda(y) against exp(2 sum_{k odd} k x_k y_k).
inline CheckReport q_cauchy_check(int n, bool omit_length_factor = false) {
  Stopwatch clock;
  CheckReport report;
  report.identity = omit_length_factor ? "q-cauchy-mutated" : "q-cauchy";
  report.mode = CheckMode::Graded;
  report.guaranteed_weight = n;
  const Layout xy{VarKind::Odd, {"x", "y"}, {}};
  GradedSeries lhs = GradedSeries::zero(xy, n);
  for (const auto& lambda : enumerate_strict_partitions(n)) {
    GradedSeries q = q_schur_poly(lambda, n);
    Rational c = omit_length_factor ? Rational(1) : Rational(1) / pow(Rational(2), static_cast<unsigned>(lambda.length()));
    lhs += c * (embed(q, xy, {0}) * embed(q, xy, {1}));
  }
  GradedSeries arg = GradedSeries::zero(xy, n);
  for (int k = 1; 2 * k <= n; k += 2)
    arg += Rational(2 * k) * (GradedSeries::variable(xy, n, k, 0) * GradedSeries::variable(xy, n, k, 1));
  add_residual_witnesses(report, lhs - exp(arg), n);
  report.elapsed_ms = clock.elapsed_ms();
  return report;
}

struct Lemma2Options {
  bool unscaled_argument = false;  // mutation control: Q(x) in place of Q(x/2)
};

/// Product of 2n neutral vertex factors with a_1..a_2n as weight-1
/// parameters, multiplied through by prod_{i<j} (a_i + a_j):
///
///   prod_{i<j} (a_i - a_j) exp(sum_i sum_{m odd} x_m a_i^m)
///     = prod_{i<j} (a_i + a_j) * sum_rows c_rows(x/2) a^rows,
///
/// expanded for |a_1| > ... > |a_2n|. For all rows positive the
/// coefficient is the extended Q-function; the remaining terms come from
/// the pole part of (a_i - a_j)/(a_i + a_j), with coefficients
/// Pf(Q^raw(r_i, r_j)) where Q^raw uses the two-row formula for every
/// integer pair.
inline CheckReport lemma2_check(int n, int truncation, Lemma2Options opts = {}) {
  if (n < 1 || n > 2) throw std::invalid_argument("lemma2_check: n must be 1 or 2");
  Stopwatch clock;
  CheckReport report;
  report.identity = opts.unscaled_argument ? "lemma2-mutated" : "lemma2";
  report.mode = CheckMode::Graded;
  report.guaranteed_weight = truncation;
  const int N = truncation;
  const int m = 2 * n;
  std::vector<std::string> names;
  for (int i = 1; i <= m; ++i) names.push_back("a" + std::to_string(i));
  report.parameter_names = names;
  const Layout layout = Layout::bkp(names);
  auto a = [&](int i) { return GradedSeries::parameter(layout, N, "a" + std::to_string(i + 1)); };

  GradedSeries vandermonde = GradedSeries::one(layout, N);
  GradedSeries plus = GradedSeries::one(layout, N);
  for (int i = 0; i < m; ++i)
    for (int j = i + 1; j < m; ++j) {
      vandermonde *= a(i) - a(j);
      plus *= a(i) + a(j);
    }
  GradedSeries arg = GradedSeries::zero(layout, N);
  for (int i = 0; i < m; ++i) {
    GradedSeries ap = a(i);
    GradedSeries a2 = a(i) * a(i);
    for (int k = 1; 2 * k <= N; k += 2) {
      arg += GradedSeries::variable(layout, N, k) * ap;
      ap *= a2;
    }
  }
  GradedSeries lhs = vandermonde * exp(arg);

  const Rational scale = opts.unscaled_argument ? Rational(1) : Rational(1, 2);
  const int degree = n * (2 * n - 1);
  std::map<std::pair<int, int>, GradedSeries> raw_cache;
  auto raw = [&](int r, int s) -> const GradedSeries& {
    auto key = std::make_pair(r, s);
    auto it = raw_cache.find(key);
    if (it == raw_cache.end())
      it = raw_cache.emplace(key, scale_variables(detail::q_pair_formula(r, s, std::max(r + s, 0)), scale)).first;
    return it->second;
  };

  detail::TermAccumulator acc;
  if (N - degree >= 0) {
    const int smax = (N - degree) / 2;
    const int lo = -(m - 1);
    std::vector<int> rows(static_cast<std::size_t>(m));
    std::function<void(int, int)> visit = [&](int pos, int partial) {
      if (pos < m) {
        // Remaining rows are each >= lo.
        int room = smax - partial - lo * (m - pos - 1);
        for (int v = lo; v <= room; ++v) {
          rows[pos] = v;
          visit(pos + 1, partial + v);
        }
        return;
      }
      const int s = partial;
      if (s < 0) return;
      GradedSeries coeff = GradedSeries::zero(Layout::bkp(), s);
      if (std::all_of(rows.begin(), rows.end(), [](int v) { return v > 0; })) {
        coeff = scale_variables(q_extended(rows, s), scale);
      } else {
        Matrix<GradedSeries> pm(static_cast<std::size_t>(m), static_cast<std::size_t>(m), coeff);
        bool any = false;
        for (int i = 0; i < m; ++i)
          for (int j = i + 1; j < m; ++j) {
            const GradedSeries& e = raw(rows[i], rows[j]);
            if (e.is_zero()) continue;
            any = true;
            pm(i, j) = e.truncation() > s ? truncate(e, s) : lift(e, s);
            pm(j, i) = -pm(i, j);
          }
        if (!any) return;
        coeff = pfaffian(pm, GradedSeries::one(Layout::bkp(), s));
      }
      if (coeff.is_zero()) return;
      for (const auto& tp : plus.terms()) {
        std::vector<int> exps(static_cast<std::size_t>(m));
        for (int i = 0; i < m; ++i) exps[i] = rows[i] + tp.mono.e[kParamBase + i];
        detail::accumulate_param_monomial(acc, coeff, exps, tp.coeff, N);
      }
    };
    visit(0, 0);
  }
  GradedSeries rhs = GradedSeries::from_sorted(layout, N, acc.finish());
  add_residual_witnesses(report, lhs - rhs, N);
  report.elapsed_ms = clock.elapsed_ms();
  return report;
}

}  // namespace kptau
