#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>

#include "test_util.hpp"

using namespace kptau;
using namespace kptau::testing;

namespace {

Matrix<Rational> random_rational(std::size_t r, std::size_t c, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> num(-9, 9), den(1, 5);
  Matrix<Rational> m(r, c, Rational(0));
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) m(i, j) = Rational(num(rng), den(rng));
  return m;
}

Matrix<Rational> random_skew_rational(std::size_t n, std::mt19937_64& rng) {
  Matrix<Rational> m = random_rational(n, n, rng);
  for (std::size_t i = 0; i < n; ++i) {
    m(i, i) = Rational(0);
    for (std::size_t j = 0; j < i; ++j) m(i, j) = -m(j, i);
  }
  return m;
}

Rational leibniz(const Matrix<Rational>& m) {
  std::vector<std::size_t> p(m.rows());
  std::iota(p.begin(), p.end(), 0);
  Rational acc(0);
  do {
    int inversions = 0;
    for (std::size_t i = 0; i < p.size(); ++i)
      for (std::size_t j = i + 1; j < p.size(); ++j) inversions += p[i] > p[j];
    Rational prod(inversions % 2 ? -1 : 1);
    for (std::size_t i = 0; i < p.size(); ++i) prod *= m(i, p[i]);
    acc += prod;
  } while (std::next_permutation(p.begin(), p.end()));
  return acc;
}

struct Symbols {
  Layout layout;
  int n;
  GradedSeries operator()(const std::string& name) const { return GradedSeries::parameter(layout, n, name); }
};

}  // namespace

TEST(Determinant, SmallSymbolic) {
  Symbols s{Layout::kp({"a", "b", "c", "d"}), 2};
  GradedSeries one = GradedSeries::one(s.layout, 2);
  EXPECT_EQ(det_division_free(Matrix<GradedSeries>{{s("a")}}, one), s("a"));
  Matrix<GradedSeries> m{{s("a"), s("b")}, {s("c"), s("d")}};
  EXPECT_EQ(det_division_free(m, one), s("a") * s("d") - s("b") * s("c"));
}

TEST(Determinant, NilpotentEntries) {
  GradedSeries x1 = kx(1, 4), one = kone(4);
  Matrix<GradedSeries> m{{x1, one}, {x1 * x1, x1}};
  EXPECT_TRUE(det_division_free(m, one).is_zero());
}

TEST(Determinant, EmptyIsOne) {
  EXPECT_EQ(det_division_free(Matrix<Rational>(0, 0, Rational(0)), Rational(1)), Rational(1));
  EXPECT_THROW(det_division_free(Matrix<Rational>(2, 3, Rational(0)), Rational(1)), std::invalid_argument);
}

TEST(Determinant, MatchesLeibniz) {
  std::mt19937_64 rng(42);
  for (std::size_t n = 1; n <= 8; ++n) {
    Matrix<Rational> m = random_rational(n, n, rng);
    EXPECT_EQ(det_division_free(m, Rational(1)), leibniz(m)) << "n=" << n;
  }
}

TEST(Determinant, RepeatedRowsVanish) {
  std::mt19937_64 rng(43);
  for (std::size_t n : {3u, 6u, 8u}) {
    Matrix<Rational> m = random_rational(n, n, rng);
    for (std::size_t j = 0; j < n; ++j) m(n - 1, j) = m(0, j);
    EXPECT_TRUE(det_division_free(m, Rational(1)).is_zero());
  }
}

TEST(Determinant, SeriesEntriesAgreeAcrossAlgorithms) {
  std::mt19937_64 rng(44);
  const std::size_t n = 7;
  Matrix<GradedSeries> m(n, n, kone(4));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m(i, j) = random_series(Layout::kp(), 4, rng, 0.3);
  GradedSeries one = kone(4);
  GradedSeries expansion = GradedSeries::zero(Layout::kp(), 4);
  Matrix<GradedSeries> minor(n - 1, n - 1, one);
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t r = 1; r < n; ++r)
      for (std::size_t c = 0, cc = 0; c < n; ++c)
        if (c != j) minor(r - 1, cc++) = m(r, c);
    GradedSeries term = m(0, j) * det_division_free(minor, one);
    expansion = j % 2 ? expansion - term : expansion + term;
  }
  EXPECT_EQ(det_division_free(m, one), expansion);
}

TEST(Pfaffian, SmallSymbolic) {
  std::vector<std::string> names{"a12", "a13", "a14", "a23", "a24", "a34"};
  Symbols s{Layout::kp(names), 2};
  GradedSeries zero = GradedSeries::zero(s.layout, 2), one = GradedSeries::one(s.layout, 2);
  Matrix<GradedSeries> m2{{zero, s("a12")}, {-s("a12"), zero}};
  EXPECT_EQ(pfaffian(m2, one), s("a12"));

  Matrix<GradedSeries> m4(4, 4, zero);
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = i + 1; j < 4; ++j) {
      m4(i, j) = s("a" + std::to_string(i + 1) + std::to_string(j + 1));
      m4(j, i) = -m4(i, j);
    }
  EXPECT_EQ(pfaffian(m4, one), s("a12") * s("a34") - s("a13") * s("a24") + s("a14") * s("a23"));
}

TEST(Pfaffian, RejectsBadShapes) {
  EXPECT_THROW(pfaffian(Matrix<Rational>(3, 3, Rational(0)), Rational(1)), std::invalid_argument);
  Matrix<Rational> m{{Rational(0), Rational(1)}, {Rational(1), Rational(0)}};
  EXPECT_THROW(pfaffian(m, Rational(1)), std::invalid_argument);
  EXPECT_EQ(pfaffian(Matrix<Rational>(0, 0, Rational(0)), Rational(1)), Rational(1));
}

TEST(Pfaffian, SquareIsDeterminant) {
  std::mt19937_64 rng(45);
  for (std::size_t n = 2; n <= 8; n += 2)
    for (int rep = 0; rep < 3; ++rep) {
      Matrix<Rational> m = random_skew_rational(n, rng);
      Rational pf = pfaffian(m, Rational(1));
      EXPECT_EQ(pf * pf, det_division_free(m, Rational(1))) << "n=" << n;
    }
}

TEST(Pfaffian, SquareIsDeterminantOverSeries) {
  std::mt19937_64 rng(46);
  const std::size_t n = 6;
  GradedSeries zero = GradedSeries::zero(Layout::bkp(), 5), one = bone(5);
  Matrix<GradedSeries> m(n, n, zero);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      m(i, j) = random_series(Layout::bkp(), 5, rng, 0.4);
      m(j, i) = -m(i, j);
    }
  GradedSeries pf = pfaffian(m, one);
  EXPECT_EQ(pf * pf, det_division_free(m, one));
}

TEST(Pfaffian, AlternatingUnderSimultaneousSwap) {
  std::mt19937_64 rng(47);
  Matrix<Rational> m = random_skew_rational(6, rng);
  std::vector<std::size_t> idx{0, 1, 2, 3, 4, 5};
  std::swap(idx[1], idx[4]);
  EXPECT_EQ(pfaffian(m.select(idx, idx), Rational(1)), -pfaffian(m, Rational(1)));
}

TEST(Pfaffian, MatchingCount) {
  for (std::size_t n : {2u, 4u, 6u, 8u}) {
    long count = 0, expect = 1;
    for (long k = static_cast<long>(n) - 1; k >= 1; k -= 2) expect *= k;
    for_each_perfect_matching(n, [&](int, const auto& pairs) {
      EXPECT_EQ(pairs.size(), n / 2);
      ++count;
    });
    EXPECT_EQ(count, expect);
  }
}

TEST(Pfaffian, MatchingSumReproducesPfaffian) {
  std::mt19937_64 rng(48);
  Matrix<Rational> m = random_skew_rational(8, rng);
  Rational acc(0);
  for_each_perfect_matching(8, [&](int sign, const auto& pairs) {
    Rational prod(sign);
    for (auto [i, j] : pairs) prod *= m(i, j);
    acc += prod;
  });
  EXPECT_EQ(acc, pfaffian(m, Rational(1)));
}

TEST(Plucker, MaximalMinors) {
  std::mt19937_64 rng(49);
  for (std::size_t n : {2u, 3u}) {
    const std::size_t rows = 2 * n;
    Matrix<Rational> m = random_rational(rows, n, rng);
    std::vector<std::size_t> k(n - 1), l(n + 1);
    std::iota(k.begin(), k.end(), 0);
    std::iota(l.begin(), l.end(), n - 1);
    EXPECT_TRUE(plucker_minor_residual(m, k, l, Rational(1)).is_zero()) << "n=" << n;
  }
}

TEST(Plucker, MaximalMinorsFixedMatrix) {
  Matrix<Rational> m{{Rational(1), Rational(2)}, {Rational(3), Rational(5)}, {Rational(7), Rational(1)}, {Rational(2), Rational(9)}};
  EXPECT_TRUE(plucker_minor_residual(m, {0}, {1, 2, 3}, Rational(1)).is_zero());
}

TEST(Plucker, PfaffianRelations) {
  std::mt19937_64 rng(50);
  for (int rep = 0; rep < 5; ++rep) {
    Matrix<Rational> m = random_skew_rational(6, rng);
    EXPECT_TRUE(pfaffian_plucker_residual(m, {0, 1, 2}, {3, 4, 5}, Rational(1)).is_zero());
    EXPECT_TRUE(pfaffian_plucker_residual(m, {5, 0, 3}, {1, 2, 4}, Rational(1)).is_zero());
  }
  EXPECT_THROW(pfaffian_plucker_residual(Matrix<Rational>(4, 4, Rational(0)), {0, 1}, {2, 3}, Rational(1)),
               std::invalid_argument);
}
