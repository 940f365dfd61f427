#include <gtest/gtest.h>

#include <kptau/partitions.hpp>

using namespace kptau;

namespace {

Partition P(std::vector<int> v) { return Partition(std::move(v)); }
StrictPartition S(std::vector<int> v) { return StrictPartition(std::move(v)); }

}  // namespace

TEST(Partition, Validation) {
  EXPECT_THROW(P({1, 2}), std::invalid_argument);
  EXPECT_THROW(P({2, 0}), std::invalid_argument);
  EXPECT_THROW(S({2, 2}), std::invalid_argument);
  EXPECT_EQ(P({3, 1, 1}).weight(), 5);
  EXPECT_EQ(P({3, 1, 1}).length(), 3);
  EXPECT_EQ(P({3, 1, 1}).conjugate(), P({3, 1, 1}));
  EXPECT_EQ(P({4, 2}).conjugate(), P({2, 2, 1, 1}));
}

TEST(Frobenius, Examples) {
  EXPECT_EQ(frobenius_of_partition(P({3, 1})), FrobeniusCoord({2}, {1}));
  EXPECT_EQ(frobenius_of_partition(P({2, 2})), FrobeniusCoord({1, 0}, {1, 0}));
  EXPECT_EQ(frobenius_of_partition(P({1})), FrobeniusCoord({0}, {0}));
  EXPECT_EQ(frobenius_of_partition(Partition()).rank(), 0);
  EXPECT_EQ(FrobeniusCoord({1, 0}, {1, 0}).to_string(), "(1,0|1,0)");
}

TEST(Frobenius, RoundTrip) {
  for (const auto& lambda : enumerate_partitions(12)) {
    FrobeniusCoord f = frobenius_of_partition(lambda);
    EXPECT_EQ(f.weight(), lambda.weight());
    EXPECT_EQ(partition_of_frobenius(f), lambda) << lambda.to_string();
  }
}

TEST(Frobenius, RejectsMalformed) {
  EXPECT_THROW(FrobeniusCoord({0, 1}, {1, 0}), std::invalid_argument);
  EXPECT_THROW(FrobeniusCoord({1}, {1, 0}), std::invalid_argument);
}

TEST(NormalizeFrobenius, Examples) {
  auto a = normalize_extended_frobenius({0, 1}, {1, 0});
  EXPECT_EQ(a.sign, -1);
  ASSERT_TRUE(a.index);
  EXPECT_EQ(*a.index, FrobeniusCoord({1, 0}, {1, 0}));

  auto b = normalize_extended_frobenius({1, 1}, {2, 0});
  EXPECT_EQ(b.sign, 0);
  EXPECT_FALSE(b.index);

  EXPECT_EQ(normalize_extended_frobenius({2}, {-1}).sign, 0);
}

TEST(NormalizeFrobenius, CanonicalIsFixed) {
  for (const auto& lambda : enumerate_partitions(8)) {
    FrobeniusCoord f = frobenius_of_partition(lambda);
    auto s = normalize_extended_frobenius(f.arms, f.legs);
    EXPECT_EQ(s.sign, 1);
    EXPECT_EQ(*s.index, f);
  }
}

TEST(NormalizeFrobenius, SignIsProductOfPermutationSigns) {
  auto s = normalize_extended_frobenius({0, 2, 1}, {2, 0, 1});
  EXPECT_EQ(s.sign, 1 * -1);
  EXPECT_EQ(*s.index, FrobeniusCoord({2, 1, 0}, {2, 1, 0}));
}

TEST(NormalizeStrict, Examples) {
  auto a = normalize_extended_strict({1, 2});
  EXPECT_EQ(a.sign, -1);
  EXPECT_EQ(*a.index, S({2, 1}));
  EXPECT_EQ(normalize_extended_strict({2, 2}).sign, 0);
  EXPECT_EQ(normalize_extended_strict({2, -1}).sign, 0);
}

TEST(NormalizeStrict, PaddingZeroIsDropped) {
  auto a = normalize_extended_strict({0, 3, 1});
  EXPECT_EQ(a.sign, 1);
  EXPECT_EQ(*a.index, S({3, 1}));
  EXPECT_EQ(normalize_extended_strict({0, 0}).sign, 0);
}

TEST(NormalizeStrict, CanonicalIsFixed) {
  for (const auto& lambda : enumerate_strict_partitions(10)) {
    auto s = normalize_extended_strict(lambda.parts());
    EXPECT_EQ(s.sign, 1);
    EXPECT_EQ(*s.index, lambda);
  }
}

TEST(Padded, EvenLength) {
  EXPECT_EQ(PaddedStrict(S({3, 2, 1})).rows(), (std::vector<int>{3, 2, 1, 0}));
  EXPECT_EQ(PaddedStrict(S({2, 1})).rows(), (std::vector<int>{2, 1}));
  EXPECT_EQ(PaddedStrict(S({})).size(), 0u);
}

TEST(Enumerate, AllThree) {
  std::vector<Partition> expect{Partition(), P({1}), P({2}), P({1, 1}), P({3}), P({2, 1}), P({1, 1, 1})};
  EXPECT_EQ(enumerate_partitions(3), expect);
}

TEST(Enumerate, StrictFour) {
  std::vector<StrictPartition> expect{StrictPartition(), S({1}), S({2}), S({3}), S({2, 1}), S({4}), S({3, 1})};
  EXPECT_EQ(enumerate_strict_partitions(4), expect);
}

TEST(Enumerate, WeightZero) {
  EXPECT_EQ(enumerate_partitions(0), std::vector<Partition>{Partition()});
  EXPECT_EQ(enumerate_strict_partitions(0), std::vector<StrictPartition>{StrictPartition()});
}

TEST(Enumerate, Counts) {
  const std::vector<std::size_t> all{1, 1, 2, 3, 5, 7, 11, 15, 22, 30, 42};
  const std::vector<std::size_t> strict{1, 1, 1, 2, 2, 3, 4, 5, 6, 8, 10};
  for (int n = 0; n <= 10; ++n) {
    EXPECT_EQ(partitions_of_weight(n).size(), all[n]) << n;
    EXPECT_EQ(strict_partitions_of_weight(n).size(), strict[n]) << n;
  }
}

TEST(Enumerate, SortedAndDeterministic) {
  auto ps = enumerate_partitions(9);
  EXPECT_TRUE(std::is_sorted(ps.begin(), ps.end()));
  EXPECT_EQ(ps, enumerate_partitions(9));
  auto ss = enumerate_strict_partitions(9);
  EXPECT_TRUE(std::is_sorted(ss.begin(), ss.end()));
}
