#pragma once

#include <map>
#include <stdexcept>
#include <utility>
#include <vector>

#include "hierarchy.hpp"
#include "linalg.hpp"
#include "partitions.hpp"
#include "report.hpp"
#include "schur.hpp"
#include "schur_q.hpp"

namespace kptau {

inline constexpr const char* kBkpConvention = "eq73-normalized";

/// Hook coefficients xi_(k|l); xi_empty = 1 is implicit.
struct KpHookSeed {
  std::map<std::pair<int, int>, Rational> hooks;  // (arm, leg) -> value

  Rational value(int arm, int leg) const {
    auto it = hooks.find({arm, leg});
    return it == hooks.end() ? Rational(0) : it->second;
  }
  friend bool operator==(const KpHookSeed&, const KpHookSeed&) = default;
};

/// One- and two-row coefficients xi_(a), xi_(a,b); xi_empty = 1 is implicit.
struct BkpPairSeed {
  std::map<int, Rational> singles;
  std::map<std::pair<int, int>, Rational> pairs;  // a > b >= 1

  /// Pfaffian entry P(a, b): xi_(a,b) for a > b >= 1, xi_(a) for b = 0,
  /// antisymmetric, zero on the diagonal.
  Rational entry(int a, int b) const {
    if (a == b) return Rational(0);
    if (a < b) return -entry(b, a);
    if (b == 0) {
      auto it = singles.find(a);
      return it == singles.end() ? Rational(0) : it->second;
    }
    auto it = pairs.find({a, b});
    return it == pairs.end() ? Rational(0) : it->second;
  }
  friend bool operator==(const BkpPairSeed&, const BkpPairSeed&) = default;
};

namespace detail {

template <class Hook>
Rational hook_determinant(const FrobeniusCoord& f, Hook hook) {
  const std::size_t r = static_cast<std::size_t>(f.rank());
  Matrix<Rational> m(r, r, Rational(0));
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < r; ++j) m(i, j) = hook(f.arms[i], f.legs[j]);
  return det_division_free(m, Rational(1));
}

template <class Entry>
Rational row_pfaffian(const StrictPartition& lambda, Entry entry) {
  PaddedStrict padded(lambda);
  const auto& rows = padded.rows();
  Matrix<Rational> m(rows.size(), rows.size(), Rational(0));
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < rows.size(); ++j) m(i, j) = entry(rows[i], rows[j]);
  return pfaffian(m, Rational(1));
}

inline void require_normalized(const Rational& xi_empty, const char* who) {
  if (xi_empty != Rational(1))
    throw std::domain_error(std::string(who) + ": table is not normalized (xi of the empty partition must be 1)");
}

}  // namespace detail

/// xi_lambda = det(xi_(k_i|l_j)) for all |lambda| <= N, and the resummed tau.
inline std::pair<SchurTable, GradedSeries> giambelli_synthesize_kp(const KpHookSeed& seed, int n) {
  for (const auto& [key, v] : seed.hooks)
    if (key.first < 0 || key.second < 0) throw std::invalid_argument("KpHookSeed: negative arm or leg");
  SchurTable table;
  table.max_weight = n;
  table.entries[Partition()] = Rational(1);
  for (const auto& lambda : enumerate_partitions(n)) {
    if (lambda.empty()) continue;
    Rational xi = detail::hook_determinant(frobenius_of_partition(lambda),
                                           [&](int k, int l) { return seed.value(k, l); });
    if (!xi.is_zero()) table.entries[lambda] = xi;
  }
  GradedSeries tau = resum_schur(table, n);
  return {std::move(table), std::move(tau)};
}

/// Compares every xi_lambda of Frobenius rank >= 2 with the determinant of
/// the table's own hook entries. Absent entries are zero.
inline CheckReport giambelli_verify_kp(const SchurTable& table) {
  detail::require_normalized(table.value(Partition()), "giambelli_verify_kp");
  Stopwatch clock;
  CheckReport report;
  report.identity = "giambelli";
  report.mode = CheckMode::Exact;
  report.guaranteed_weight = table.max_weight;
  auto hook = [&](int k, int l) {
    std::vector<int> parts{k + 1};
    parts.insert(parts.end(), static_cast<std::size_t>(l), 1);
    return table.value(Partition(parts));
  };
  for (const auto& lambda : enumerate_partitions(table.max_weight)) {
    FrobeniusCoord f = frobenius_of_partition(lambda);
    if (f.rank() < 2) continue;
    Rational diff = table.value(lambda) - detail::hook_determinant(f, hook);
    if (!diff.is_zero()) add_witness(report, f.to_string(), diff);
  }
  report.elapsed_ms = clock.elapsed_ms();
  return report;
}

/// xi_lambda = Pf(P(l'_i, l'_j)) for strict |lambda| <= N of length >= 3;
/// lengths 1 and 2 are copied from the seed.
inline std::pair<QTable, GradedSeries> giambelli_synthesize_bkp(const BkpPairSeed& seed, int n) {
  for (const auto& [a, v] : seed.singles)
    if (a < 1) throw std::invalid_argument("BkpPairSeed: single rows must be positive");
  for (const auto& [key, v] : seed.pairs)
    if (!(key.first > key.second && key.second >= 1))
      throw std::invalid_argument("BkpPairSeed: pair rows must satisfy a > b >= 1");
  QTable table;
  table.max_weight = n;
  table.entries[StrictPartition()] = Rational(1);
  for (const auto& lambda : enumerate_strict_partitions(n)) {
    if (lambda.empty()) continue;
    Rational xi = detail::row_pfaffian(lambda, [&](int a, int b) { return seed.entry(a, b); });
    if (!xi.is_zero()) table.entries[lambda] = xi;
  }
  GradedSeries tau = resum_q(table, n);
  return {std::move(table), std::move(tau)};
}

/// Compares every xi_lambda with l(lambda) >= 3 against the Pfaffian built
/// from the table's own one- and two-row entries.
inline CheckReport giambelli_verify_bkp(const QTable& table) {
  detail::require_normalized(table.value(StrictPartition()), "giambelli_verify_bkp");
  Stopwatch clock;
  CheckReport report;
  report.identity = "giambelli";
  report.mode = CheckMode::Exact;
  report.guaranteed_weight = table.max_weight;
  report.convention = kBkpConvention;
  BkpPairSeed seed;
  for (const auto& [lambda, v] : table.entries) {
    if (lambda.length() == 1) seed.singles[lambda.parts()[0]] = v;
    if (lambda.length() == 2) seed.pairs[{lambda.parts()[0], lambda.parts()[1]}] = v;
  }
  for (const auto& lambda : enumerate_strict_partitions(table.max_weight)) {
    if (lambda.length() < 3) continue;
    Rational diff = table.value(lambda) - detail::row_pfaffian(lambda, [&](int a, int b) { return seed.entry(a, b); });
    if (!diff.is_zero()) add_witness(report, lambda.to_string(), diff);
  }
  report.elapsed_ms = clock.elapsed_ms();
  return report;
}

/// tau^{r-1} chi_lambda(d~)tau = det(chi_(k_i|l_j)(d~)tau), through weight N - |lambda|.
inline CheckReport giambelli_general_x_check(const GradedSeries& tau, const Partition& lambda) {
  detail::require_plain(tau, VarKind::All, "giambelli_general_x_check");
  if (lambda.weight() > tau.truncation()) throw std::invalid_argument("giambelli_general_x_check: |lambda| exceeds N");
  Stopwatch clock;
  CheckReport report;
  report.identity = "giambelli-general-x";
  report.mode = CheckMode::Graded;
  const int w = tau.truncation() - lambda.weight();
  report.guaranteed_weight = w;
  FrobeniusCoord f = frobenius_of_partition(lambda);
  const std::size_t r = static_cast<std::size_t>(f.rank());
  auto act = [&](const GradedSeries& p) { return truncate(apply_diff_operator(p, tau), w); };
  GradedSeries t = truncate(tau, w);
  GradedSeries lhs = (r ? pow(t, static_cast<unsigned>(r - 1)) : GradedSeries::one(t.layout(), w)) * act(schur_poly(lambda));
  Matrix<GradedSeries> m(r, r, GradedSeries::zero(t.layout(), w));
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < r; ++j) m(i, j) = act(hook_schur(f.arms[i], f.legs[j]));
  GradedSeries rhs = r ? det_division_free(m, GradedSeries::one(t.layout(), w)) : t;
  add_residual_witnesses(report, lhs - rhs, w);
  report.elapsed_ms = clock.elapsed_ms();
  return report;
}

/// tau^{n-1} Q_lambda(d~)tau = Pf(Q_(l'_i,l'_j)(d~)tau) over the 2n padded
/// rows, through weight N - |lambda|.
inline CheckReport giambelli_general_x_check(const GradedSeries& tau, const StrictPartition& lambda) {
  detail::require_plain(tau, VarKind::Odd, "giambelli_general_x_check");
  if (lambda.weight() > tau.truncation()) throw std::invalid_argument("giambelli_general_x_check: |lambda| exceeds N");
  Stopwatch clock;
  CheckReport report;
  report.identity = "giambelli-general-x";
  report.mode = CheckMode::Graded;
  report.convention = kBkpConvention;
  const int w = tau.truncation() - lambda.weight();
  report.guaranteed_weight = w;
  PaddedStrict padded(lambda);
  const auto& rows = padded.rows();
  const std::size_t m = rows.size();
  auto act = [&](const GradedSeries& p) { return truncate(apply_diff_operator(p, tau), w); };
  GradedSeries t = truncate(tau, w);
  GradedSeries one = GradedSeries::one(t.layout(), w);
  GradedSeries lhs = (m ? pow(t, static_cast<unsigned>(m / 2 - 1)) : one) * act(q_schur_poly(lambda));
  Matrix<GradedSeries> pm(m, m, GradedSeries::zero(t.layout(), w));
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = i + 1; j < m; ++j) {
      pm(i, j) = act(q_two_row(rows[i], rows[j]));
      pm(j, i) = -pm(i, j);
    }
  GradedSeries rhs = m ? pfaffian(pm, one) : t;
  add_residual_witnesses(report, lhs - rhs, w);
  report.elapsed_ms = clock.elapsed_ms();
  return report;
}

}  // namespace kptau
