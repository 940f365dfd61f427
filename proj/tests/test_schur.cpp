#include <gtest/gtest.h>

#include "test_util.hpp"

using namespace kptau;
using namespace kptau::testing;

namespace {

Partition P(std::vector<int> v) { return Partition(std::move(v)); }

Monomial monomial_of(const Layout& layout, const std::vector<int>& indices, int n) {
  GradedSeries m = GradedSeries::one(layout, n);
  for (int i : indices) m *= GradedSeries::variable(layout, n, i);
  return m.terms().front().mono;
}

/// Solves A x = b over the rationals; A square and invertible.
std::vector<Rational> solve(std::vector<std::vector<Rational>> a, std::vector<Rational> b) {
  const std::size_t n = b.size();
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (a[p][c].is_zero()) ++p;
    std::swap(a[p], a[c]);
    std::swap(b[p], b[c]);
    for (std::size_t r = 0; r < n; ++r) {
      if (r == c || a[r][c].is_zero()) continue;
      Rational f = a[r][c] / a[c][c];
      for (std::size_t k = c; k < n; ++k) a[r][k] -= f * a[c][k];
      b[r] -= f * b[c];
    }
  }
  for (std::size_t i = 0; i < n; ++i) b[i] /= a[i][i];
  return b;
}

/// Schur coefficients of tau by solving in the monomial basis, weight by weight.
std::map<Partition, Rational> linear_solve_expansion(const GradedSeries& tau) {
  std::map<Partition, Rational> out;
  const int n = tau.truncation();
  for (int w = 0; w <= n; ++w) {
    auto basis = partitions_of_weight(w);
    std::vector<Monomial> monos;
    for (const auto& mu : basis) monos.push_back(monomial_of(Layout::kp(), mu.parts(), n));
    std::vector<std::vector<Rational>> a(basis.size(), std::vector<Rational>(basis.size()));
    std::vector<Rational> rhs(basis.size());
    for (std::size_t c = 0; c < basis.size(); ++c) {
      GradedSeries chi = lift(schur_poly(basis[c]), n);
      for (std::size_t r = 0; r < monos.size(); ++r) a[r][c] = chi.coefficient(monos[r]);
    }
    for (std::size_t r = 0; r < monos.size(); ++r) rhs[r] = tau.coefficient(monos[r]);
    auto xi = solve(a, rhs);
    for (std::size_t c = 0; c < basis.size(); ++c)
      if (!xi[c].is_zero()) out[basis[c]] = xi[c];
  }
  return out;
}

std::map<Partition, Rational> nonzero(const SchurTable& t) {
  std::map<Partition, Rational> out;
  for (const auto& [k, v] : t.entries)
    if (!v.is_zero()) out[k] = v;
  return out;
}

/// x_n -> (-1)^{n-1} x_n.
GradedSeries omega(const GradedSeries& f) {
  std::vector<std::pair<Monomial, Rational>> terms;
  for (const auto& t : f.terms()) {
    int even = 0;
    for (int p = 0; p < kIndexSlots; ++p)
      if (index_of_position(VarKind::All, p) % 2 == 0) even += t.mono.e[p];
    terms.emplace_back(t.mono, even % 2 ? -t.coeff : t.coeff);
  }
  return GradedSeries::from_terms(f.layout(), f.truncation(), terms);
}

}  // namespace

TEST(PPoly, Examples) {
  EXPECT_EQ(p_poly(0), kone(0));
  EXPECT_EQ(p_poly(1), kx(1, 1));
  GradedSeries x1 = kx(1, 3), x2 = kx(2, 3), x3 = kx(3, 3);
  EXPECT_EQ(p_poly(3), x3 + x1 * x2 + q(1, 6) * x1 * x1 * x1);
}

TEST(SchurPoly, Examples) {
  EXPECT_EQ(schur_poly(P({1})), kx(1, 1));
  GradedSeries x1 = kx(1, 2), x2 = kx(2, 2);
  EXPECT_EQ(schur_poly(P({1, 1})), q(1, 2) * x1 * x1 - x2);
  GradedSeries y1 = kx(1, 3), y3 = kx(3, 3);
  EXPECT_EQ(schur_poly(P({2, 1})), q(1, 3) * y1 * y1 * y1 - y3);
  EXPECT_EQ(schur_poly(Partition()), kone(0));
}

TEST(SchurPoly, TruncationArgument) {
  GradedSeries s = schur_poly(P({2, 1}), 6);
  EXPECT_EQ(s.truncation(), 6);
  EXPECT_EQ(truncate(s, 3), schur_poly(P({2, 1})));
}

TEST(SchurPoly, OneRowIsPPoly) {
  for (int k = 1; k <= 6; ++k) EXPECT_EQ(schur_poly(P({k})), p_poly(k));
}

TEST(SchurPoly, ConjugationInvolution) {
  for (const auto& lambda : enumerate_partitions(7)) {
    GradedSeries s = schur_poly(lambda);
    GradedSeries expect = schur_poly(lambda.conjugate());
    EXPECT_EQ(omega(s), expect) << lambda.to_string();
  }
}

TEST(SchurPoly, Orthonormal) {
  auto all = enumerate_partitions(6);
  for (const auto& lambda : all)
    for (const auto& mu : all) {
      if (lambda.weight() != mu.weight()) continue;
      Rational v = apply_diff_operator(schur_poly(lambda), schur_poly(mu)).constant_term();
      EXPECT_EQ(v, Rational(lambda == mu ? 1 : 0)) << lambda.to_string() << " " << mu.to_string();
    }
}

TEST(SchurPoly, SelfPairingAtZero) {
  GradedSeries chi = schur_poly(P({2, 1}));
  EXPECT_EQ(apply_diff_operator(chi, chi).constant_term(), Rational(1));
}

TEST(SchurExtended, Examples) {
  EXPECT_EQ(schur_extended({0}, {0}), kx(1, 1));
  EXPECT_EQ(schur_extended({0, 1}, {1, 0}), -schur_poly(P({2, 2})));
  EXPECT_TRUE(schur_extended({2}, {-1}).is_zero());
  EXPECT_TRUE(schur_extended({1, 1}, {0, 2}).is_zero());
}

TEST(SchurExtended, HooksMatchPartitions) {
  for (int k = 0; k <= 4; ++k)
    for (int l = 0; k + l <= 5; ++l) {
      std::vector<int> parts{k + 1};
      parts.insert(parts.end(), static_cast<std::size_t>(l), 1);
      EXPECT_EQ(hook_schur(k, l), schur_poly(P(parts)));
    }
}

TEST(ExpandSchur, SingleSchur) {
  SchurTable t = expand_schur(schur_poly(P({2, 1})));
  std::map<Partition, Rational> expect{{P({2, 1}), q(1)}};
  EXPECT_EQ(nonzero(t), expect);
  EXPECT_EQ(nonzero(t), linear_solve_expansion(schur_poly(P({2, 1}))));
  EXPECT_EQ(t.max_weight, 3);
}

TEST(ExpandSchur, One) {
  SchurTable t = expand_schur(kone(4));
  std::map<Partition, Rational> expect{{Partition(), q(1)}};
  EXPECT_EQ(t.entries, expect);
}

TEST(ExpandSchur, ExponentialAtTwo) {
  SchurTable t = expand_schur(exp_x1(VarKind::All, 2));
  std::map<Partition, Rational> expect{{Partition(), q(1)}, {P({1}), q(1)}, {P({2}), q(1, 2)}, {P({1, 1}), q(1, 2)}};
  EXPECT_EQ(t.entries, expect);
}

TEST(ExpandSchur, ExponentialMatchesHookLengths) {
  // e^{x1} = sum f^lambda / |lambda|! chi_lambda
  SchurTable t = expand_schur(exp_x1(VarKind::All, 6));
  EXPECT_EQ(t.value(P({2, 2})), q(1, 12));
  EXPECT_EQ(t.value(P({3, 2, 1})), q(16, 720));
  EXPECT_EQ(t.value(P({2, 1})), q(2, 6));
}

TEST(ExpandSchur, AgreesWithLinearSolve) {
  std::mt19937_64 rng(21);
  for (int rep = 0; rep < 3; ++rep) {
    GradedSeries tau = random_series(Layout::kp(), 6, rng);
    EXPECT_EQ(nonzero(expand_schur(tau)), linear_solve_expansion(tau));
  }
}

TEST(ExpandSchur, RoundTrips) {
  std::mt19937_64 rng(22);
  GradedSeries tau = random_series(Layout::kp(), 7, rng);
  EXPECT_EQ(resum_schur(expand_schur(tau), 7), tau);

  SchurTable table;
  table.max_weight = 6;
  std::uniform_int_distribution<int> num(-6, 6);
  for (const auto& lambda : enumerate_partitions(6)) {
    int v = num(rng);
    if (v) table.entries[lambda] = q(v, 5);
  }
  SchurTable back = expand_schur(resum_schur(table, 6));
  EXPECT_EQ(nonzero(back), nonzero(table));
}

TEST(ExpandSchur, RejectsBkpSeries) {
  EXPECT_THROW(expand_schur(bone(3)), std::invalid_argument);
}

TEST(SchurCauchy, Passes) {
  for (int n : {4, 6, 8}) EXPECT_TRUE(schur_cauchy_check(n).pass) << n;
}

TEST(HookShift, HoldsForAnySeries) {
  std::mt19937_64 rng(23);
  EXPECT_TRUE(hook_shift_check(random_series(Layout::kp(), 5, rng)).pass);
  EXPECT_TRUE(hook_shift_check(exp_x1(VarKind::All, 6)).pass);
}

TEST(HookKernel, Passes) {
  CheckReport r1 = lemma1_check(1, 4);
  EXPECT_TRUE(r1.pass);
  EXPECT_EQ(r1.identity, "lemma1");
  EXPECT_TRUE(lemma1_check(1, 7).pass);
  EXPECT_TRUE(lemma1_check(2, 6).pass);
}

TEST(HookKernel, DroppedLegSignFails) {
  CheckReport r = lemma1_check(1, 4, Lemma1Options{true});
  EXPECT_FALSE(r.pass);
  ASSERT_NE(r.first_failure(), nullptr);
  EXPECT_EQ(r.identity, "lemma1-mutated");
}

TEST(HookKernel, RejectsLargeN) {
  EXPECT_THROW(lemma1_check(3, 9), std::invalid_argument);
}
