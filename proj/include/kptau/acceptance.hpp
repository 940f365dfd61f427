#pragma once

#include <cstdint>
#include <exception>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "giambelli.hpp"
#include "hierarchy.hpp"
#include "linalg.hpp"
#include "report.hpp"
#include "schur.hpp"
#include "schur_q.hpp"

namespace kptau {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool pass = true;
  std::vector<std::string> problems;
  double elapsed_ms = 0.0;
};

struct AcceptanceConfig {
  int max_weight = 8;
  std::uint64_t seed = 20240607;
};

inline Rational random_small_rational(std::mt19937_64& rng, int bound) {
  std::uniform_int_distribution<int> num(-bound, bound);
  std::uniform_int_distribution<int> den(1, bound);
  return Rational(num(rng), den(rng));
}

/// Hook seed with support arm, leg <= max_index; each entry present with
/// probability 1/2.
inline KpHookSeed random_kp_seed(std::mt19937_64& rng, int max_index = 3, int bound = 7) {
  KpHookSeed s;
  std::bernoulli_distribution keep(0.5);
  for (int k = 0; k <= max_index; ++k)
    for (int l = 0; l <= max_index; ++l)
      if (keep(rng)) {
        Rational v = random_small_rational(rng, bound);
        if (!v.is_zero()) s.hooks[{k, l}] = v;
      }
  return s;
}

/// Pair seed with rows <= max_row.
inline BkpPairSeed random_bkp_seed(std::mt19937_64& rng, int max_row = 4, int bound = 7) {
  BkpPairSeed s;
  std::bernoulli_distribution keep(0.5);
  for (int a = 1; a <= max_row; ++a) {
    if (keep(rng)) {
      Rational v = random_small_rational(rng, bound);
      if (!v.is_zero()) s.singles[a] = v;
    }
    for (int b = 1; b < a; ++b)
      if (keep(rng)) {
        Rational v = random_small_rational(rng, bound);
        if (!v.is_zero()) s.pairs[{a, b}] = v;
      }
  }
  return s;
}

inline Matrix<Rational> random_skew(std::mt19937_64& rng, std::size_t n, int bound = 9) {
  Matrix<Rational> m(n, n, Rational(0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      m(i, j) = random_small_rational(rng, bound);
      m(j, i) = -m(i, j);
    }
  return m;
}

inline Matrix<Rational> random_matrix(std::mt19937_64& rng, std::size_t rows, std::size_t cols, int bound = 9) {
  Matrix<Rational> m(rows, cols, Rational(0));
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = random_small_rational(rng, bound);
  return m;
}

namespace detail {

class CriterionScope {
 public:
  explicit CriterionScope(CriterionResult& r) : r_(r) {}

  void expect(bool ok, const std::string& what) {
    if (ok) return;
    r_.pass = false;
    if (r_.problems.size() < 20) r_.problems.push_back(what);
  }
  void expect_pass(const CheckReport& rep, const std::string& subject) {
    std::string what = subject + ": " + rep.identity + " failed";
    if (const Witness* w = rep.first_failure()) what += " at " + w->monomial + " (" + w->residual.str() + ")";
    expect(rep.pass, what);
  }
  void expect_fail(const CheckReport& rep, const std::string& subject) {
    expect(!rep.pass, subject + ": " + rep.identity + " unexpectedly passed");
    expect(rep.pass || !rep.failures.empty(), subject + ": " + rep.identity + " failed without a witness");
  }

 private:
  CriterionResult& r_;
};

inline GradedSeries half_q(const StrictPartition& lambda, int n) {
  return scale_variables(q_schur_poly(lambda, n), Rational(1, 2));
}

}  // namespace detail

inline CriterionResult criterion_cauchy(const AcceptanceConfig& cfg) {
  CriterionResult r{1, "Schur and Q-function Cauchy identities"};
  detail::CriterionScope s(r);
  s.expect_pass(schur_cauchy_check(cfg.max_weight), "schur");
  s.expect_pass(q_cauchy_check(cfg.max_weight), "schur-q");
  return r;
}

inline CriterionResult criterion_kp_suite(const AcceptanceConfig& cfg) {
  CriterionResult r{2, "KP tau suite on Schur functions"};
  detail::CriterionScope s(r);
  CheckOptions exact{CheckMode::Exact, 5, cfg.seed};
  auto parts = enumerate_partitions(6);
  s.expect(parts.size() == 30, "expected 30 partitions of weight <= 6");
  for (const auto& lambda : parts) {
    const std::string who = "chi" + lambda.to_string();
    GradedSeries chi = schur_poly(lambda);
    s.expect_pass(kp_three_term_check(chi, exact), who);
    s.expect_pass(kp_hirota_check(lift(chi, cfg.max_weight)), who);
    s.expect_pass(kp_determinant_formula_check(chi, 2, exact), who);
    s.expect_pass(kp_addition_formula_check(chi, 2, exact), who);
    s.expect_pass(kp_addition_formula_check(chi, 3, exact), who);
  }
  return r;
}

inline CriterionResult criterion_bkp_suite(const AcceptanceConfig& cfg) {
  CriterionResult r{3, "BKP tau suite on Q-functions"};
  detail::CriterionScope s(r);
  const int n = cfg.max_weight;
  CheckOptions exact{CheckMode::Exact, 5, cfg.seed};
  auto parts = enumerate_strict_partitions(7);
  s.expect(parts.size() == 19, "expected 19 strict partitions of weight <= 7");
  for (const auto& lambda : parts) {
    const std::string who = "Q" + lambda.to_string() + "(x/2)";
    GradedSeries tau = detail::half_q(lambda, std::max(n, lambda.weight()));
    s.expect_pass(bkp_four_term_check(detail::half_q(lambda, lambda.weight()), exact), who);
    s.expect_pass(bkp_hirota_check(tau), who);
    s.expect_pass(bkp_pfaffian_addition_check(tau, 3), who);
    s.expect_pass(bkp_pfaffian_addition_check(tau, 4), who);
  }
  GradedSeries e = lift(exp(GradedSeries::variable(Layout::bkp(), n, 1)), n);
  s.expect_pass(bkp_four_term_check(e), "exp(x1)");
  s.expect_pass(bkp_hirota_check(e), "exp(x1)");
  return r;
}

inline CriterionResult criterion_kp_round_trip(const AcceptanceConfig& cfg) {
  CriterionResult r{4, "KP Giambelli round trip"};
  detail::CriterionScope s(r);
  const int n = cfg.max_weight + 2;
  std::mt19937_64 rng(cfg.seed);
  for (int i = 0; i < 5; ++i) {
    const std::string who = "kp seed " + std::to_string(i);
    KpHookSeed seed = random_kp_seed(rng);
    auto [table, tau] = giambelli_synthesize_kp(seed, n);
    s.expect_pass(kp_three_term_check(tau), who);
    s.expect_pass(kp_hirota_check(tau), who);
    s.expect(expand_schur(tau) == table, who + ": re-expansion differs from the synthesized table");
  }
  KpHookSeed ex;
  for (int k = 0; k <= 3; ++k)
    for (int l = 0; l <= 3; ++l) ex.hooks[{k, l}] = binomial(k + l, l) / factorial(k + l + 1);
  auto [table, tau] = giambelli_synthesize_kp(ex, 4);
  s.expect(table.value(Partition({2, 2})) == Rational(1, 12), "exp(x1) hook seed: xi(2,2) != 1/12");
  s.expect(table == expand_schur(lift(exp(GradedSeries::variable(Layout::kp(), 4, 1)), 4)),
           "exp(x1) hook seed: table differs from the expansion of exp(x1)");
  return r;
}

inline CriterionResult criterion_bkp_round_trip(const AcceptanceConfig& cfg) {
  CriterionResult r{5, "BKP Giambelli round trip"};
  detail::CriterionScope s(r);
  const int n = cfg.max_weight + 2;
  std::mt19937_64 rng(cfg.seed + 1);
  for (int i = 0; i < 5; ++i) {
    const std::string who = "bkp seed " + std::to_string(i);
    BkpPairSeed seed = random_bkp_seed(rng);
    auto [table, tau] = giambelli_synthesize_bkp(seed, n);
    s.expect_pass(bkp_four_term_check(tau), who);
    s.expect_pass(bkp_hirota_check(tau), who);
    s.expect(expand_q(tau) == table, who + ": re-expansion differs from the synthesized table");
    for (const auto& lambda : enumerate_strict_partitions(n)) {
      if (lambda.length() != 3) continue;
      int a = lambda.parts()[0], b = lambda.parts()[1], c = lambda.parts()[2];
      auto v = [&](std::vector<int> rows) { return table.value(StrictPartition(std::move(rows))); };
      Rational expected = v({a, b}) * v({c}) - v({a, c}) * v({b}) + v({a}) * v({b, c});
      s.expect(v({a, b, c}) == expected, who + ": length-3 Pfaffian identity fails at " + lambda.to_string());
    }
  }
  return r;
}

inline CriterionResult criterion_negative_controls(const AcceptanceConfig&) {
  CriterionResult r{6, "Negative controls"};
  detail::CriterionScope s(r);
  {
    const int n = 6;
    GradedSeries bad = GradedSeries::one(Layout::kp(), n) + schur_poly(Partition({2, 2}), n);
    CheckReport g = giambelli_verify_kp(expand_schur(bad));
    s.expect_fail(g, "1+chi(2,2)");
    s.expect(!g.failures.empty() && g.failures.front().monomial == "(1,0|1,0)", "1+chi(2,2): witness is not (1,0|1,0)");
    s.expect_fail(kp_three_term_check(bad), "1+chi(2,2)");
    s.expect_fail(kp_hirota_check(bad), "1+chi(2,2)");
  }
  {
    // The four-term residual of this perturbation starts at weight 3 + 6.
    const int n = 10;
    GradedSeries bad = GradedSeries::one(Layout::bkp(), n) + detail::half_q(StrictPartition({3, 2, 1}), n);
    CheckReport g = giambelli_verify_bkp(expand_q(truncate(bad, 8)));
    s.expect_fail(g, "1+Q(3,2,1)(x/2)");
    s.expect(!g.failures.empty() && g.failures.front().monomial == "(3,2,1)", "1+Q(3,2,1)(x/2): witness is not (3,2,1)");
    s.expect_fail(bkp_four_term_check(bad), "1+Q(3,2,1)(x/2)");
    s.expect_fail(bkp_hirota_check(truncate(bad, 8)), "1+Q(3,2,1)(x/2)");
  }
  return r;
}

inline CriterionResult criterion_lemmas(const AcceptanceConfig&) {
  CriterionResult r{7, "Vertex-product lemmas"};
  detail::CriterionScope s(r);
  for (int n : {1, 2}) {
    s.expect_pass(lemma1_check(n, 6), "n=" + std::to_string(n));
    s.expect_pass(lemma2_check(n, 6), "n=" + std::to_string(n));
  }
  s.expect_fail(lemma1_check(1, 4, {true}), "leg sign dropped");
  s.expect_fail(lemma2_check(1, 6, {true}), "argument x instead of x/2");
  return r;
}

inline CriterionResult criterion_linear_algebra(const AcceptanceConfig& cfg) {
  CriterionResult r{8, "Pfaffians, determinants and Plucker relations"};
  detail::CriterionScope s(r);
  std::mt19937_64 rng(cfg.seed + 2);
  const Rational one(1);
  for (std::size_t n = 2; n <= 8; ++n)
    for (int i = 0; i < 20; ++i) {
      Matrix<Rational> m = random_skew(rng, n);
      Rational d = det_division_free(m, one);
      if (n % 2) {
        s.expect(d.is_zero(), "odd skew determinant nonzero at size " + std::to_string(n));
      } else {
        Rational pf = pfaffian(m, one);
        s.expect(pf * pf == d, "Pf^2 != det at size " + std::to_string(n));
      }
    }
  for (std::size_t n : {2, 3}) {
    for (int i = 0; i < 10; ++i) {
      Matrix<Rational> a = random_matrix(rng, 2 * n, n);
      std::vector<std::size_t> k_rows, l_rows;
      for (std::size_t j = 0; j + 1 < n; ++j) k_rows.push_back(j);
      for (std::size_t j = n - 1; j < 2 * n; ++j) l_rows.push_back(j);
      s.expect(plucker_minor_residual(a, k_rows, l_rows, one).is_zero(), "minor Plucker relation fails");
    }
  }
  for (int i = 0; i < 10; ++i) {
    Matrix<Rational> m = random_skew(rng, 8);
    s.expect(pfaffian_plucker_residual(m, {0, 1, 2}, {3, 4, 5}, one).is_zero(), "Pfaffian Plucker relation fails");
    s.expect(pfaffian_plucker_residual(m, {0, 1, 2}, {1, 6, 7}, one).is_zero(), "Pfaffian Plucker relation fails");
  }
  return r;
}

inline std::vector<std::function<CriterionResult(const AcceptanceConfig&)>> acceptance_criteria() {
  return {criterion_cauchy,         criterion_kp_suite,          criterion_bkp_suite, criterion_kp_round_trip,
          criterion_bkp_round_trip, criterion_negative_controls, criterion_lemmas,    criterion_linear_algebra};
}

using Criterion = std::function<CriterionResult(const AcceptanceConfig&)>;

/// Runs one criterion, timing it and turning exceptions into failures.
inline CriterionResult run_criterion(const Criterion& criterion, int id, const AcceptanceConfig& cfg) {
  Stopwatch clock;
  CriterionResult r;
  try {
    r = criterion(cfg);
  } catch (const std::exception& e) {
    r.id = id;
    r.name = "criterion " + std::to_string(id);
    r.pass = false;
    r.problems.push_back(std::string("exception: ") + e.what());
  }
  r.elapsed_ms = clock.elapsed_ms();
  return r;
}

}  // namespace kptau
