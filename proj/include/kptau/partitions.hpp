#pragma once

#include <algorithm>
#include <compare>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace kptau {

/// Non-increasing list of positive parts. The empty list is the empty
/// partition.
class Partition {
 public:
  Partition() = default;
  explicit Partition(std::vector<int> parts) : parts_(std::move(parts)) {
    for (std::size_t i = 0; i < parts_.size(); ++i) {
      if (parts_[i] <= 0) throw std::invalid_argument("Partition: parts must be positive");
      if (i && parts_[i] > parts_[i - 1]) throw std::invalid_argument("Partition: parts must be non-increasing");
    }
  }

  const std::vector<int>& parts() const { return parts_; }
  int weight() const {
    int w = 0;
    for (int p : parts_) w += p;
    return w;
  }
  int length() const { return static_cast<int>(parts_.size()); }
  bool empty() const { return parts_.empty(); }
  int operator[](std::size_t i) const { return i < parts_.size() ? parts_[i] : 0; }

  /// Conjugate (transposed Young diagram).
  Partition conjugate() const {
    std::vector<int> out;
    for (int j = 1; !parts_.empty() && j <= parts_.front(); ++j) {
      int count = 0;
      for (int p : parts_)
        if (p >= j) ++count;
      out.push_back(count);
    }
    return Partition(std::move(out));
  }

  std::string to_string() const {
    std::string s = "(";
    for (std::size_t i = 0; i < parts_.size(); ++i) s += (i ? "," : "") + std::to_string(parts_[i]);
    return s + ")";
  }

  friend bool operator==(const Partition&, const Partition&) = default;
  friend auto operator<=>(const Partition& a, const Partition& b) {
    if (auto c = a.weight() <=> b.weight(); c != 0) return c;
    return b.parts_ <=> a.parts_;
  }

 private:
  std::vector<int> parts_;
};

/// Strictly decreasing list of positive parts.
class StrictPartition {
 public:
  StrictPartition() = default;
  explicit StrictPartition(std::vector<int> parts) : parts_(std::move(parts)) {
    for (std::size_t i = 0; i < parts_.size(); ++i) {
      if (parts_[i] <= 0) throw std::invalid_argument("StrictPartition: parts must be positive");
      if (i && parts_[i] >= parts_[i - 1]) throw std::invalid_argument("StrictPartition: parts must strictly decrease");
    }
  }

  const std::vector<int>& parts() const { return parts_; }
  int weight() const {
    int w = 0;
    for (int p : parts_) w += p;
    return w;
  }
  int length() const { return static_cast<int>(parts_.size()); }
  bool empty() const { return parts_.empty(); }
  Partition as_partition() const { return Partition(parts_); }

  std::string to_string() const { return Partition(parts_).to_string(); }

  friend bool operator==(const StrictPartition&, const StrictPartition&) = default;
  friend auto operator<=>(const StrictPartition& a, const StrictPartition& b) {
    if (auto c = a.weight() <=> b.weight(); c != 0) return c;
    return b.parts_ <=> a.parts_;
  }

 private:
  std::vector<int> parts_;
};

/// A strict partition padded with one trailing 0 when its length is odd,
/// so that it always has even length.
class PaddedStrict {
 public:
  explicit PaddedStrict(const StrictPartition& lambda) : rows_(lambda.parts()) {
    if (rows_.size() % 2) rows_.push_back(0);
  }
  const std::vector<int>& rows() const { return rows_; }
  std::size_t size() const { return rows_.size(); }

 private:
  std::vector<int> rows_;
};

/// Frobenius coordinates (k_1..k_r | l_1..l_r): arms and legs of the
/// diagonal hooks, both strictly decreasing and non-negative.
struct FrobeniusCoord {
  std::vector<int> arms;
  std::vector<int> legs;

  FrobeniusCoord() = default;
  FrobeniusCoord(std::vector<int> a, std::vector<int> l) : arms(std::move(a)), legs(std::move(l)) {
    if (arms.size() != legs.size()) throw std::invalid_argument("FrobeniusCoord: arms/legs length mismatch");
    for (const auto* list : {&arms, &legs})
      for (std::size_t i = 0; i < list->size(); ++i) {
        if ((*list)[i] < 0) throw std::invalid_argument("FrobeniusCoord: negative entry");
        if (i && (*list)[i] >= (*list)[i - 1]) throw std::invalid_argument("FrobeniusCoord: entries must strictly decrease");
      }
  }

  int rank() const { return static_cast<int>(arms.size()); }
  int weight() const {
    int w = 0;
    for (std::size_t i = 0; i < arms.size(); ++i) w += arms[i] + legs[i] + 1;
    return w;
  }

  std::string to_string() const {
    std::string s = "(";
    for (std::size_t i = 0; i < arms.size(); ++i) s += (i ? "," : "") + std::to_string(arms[i]);
    s += "|";
    for (std::size_t i = 0; i < legs.size(); ++i) s += (i ? "," : "") + std::to_string(legs[i]);
    return s + ")";
  }

  friend bool operator==(const FrobeniusCoord&, const FrobeniusCoord&) = default;
};

/// A signed canonical index; sign 0 marks a degenerate (vanishing) input.
template <class Index>
struct SignedIndex {
  int sign = 0;
  std::optional<Index> index;
};

inline FrobeniusCoord frobenius_of_partition(const Partition& lambda) {
  Partition conj = lambda.conjugate();
  std::vector<int> arms, legs;
  for (int i = 0; i < lambda.length() && lambda[i] > i; ++i) {
    arms.push_back(lambda[i] - i - 1);
    legs.push_back(conj[i] - i - 1);
  }
  return FrobeniusCoord(std::move(arms), std::move(legs));
}

inline Partition partition_of_frobenius(const FrobeniusCoord& f) {
  const int r = f.rank();
  if (r == 0) return Partition();
  // Rows 1..r from the arms; rows below the diagonal from the legs.
  int length = f.legs.front() + 1;
  std::vector<int> parts(static_cast<std::size_t>(length), 0);
  for (int i = 0; i < r; ++i) parts[i] = f.arms[i] + i + 1;
  for (int i = r; i < length; ++i) {
    int count = 0;
    for (int j = 0; j < r; ++j)
      if (f.legs[j] + j >= i) ++count;
    parts[i] = count;
  }
  Partition p(parts);
  if (frobenius_of_partition(p) != f) throw std::invalid_argument("partition_of_frobenius: inconsistent coordinates");
  return p;
}

namespace detail {

/// Sorts into strictly decreasing order and returns the permutation sign,
/// or 0 if an entry repeats.
inline int sort_decreasing_with_sign(std::vector<int>& v) {
  int sign = 1;
  for (std::size_t i = 1; i < v.size(); ++i)
    for (std::size_t j = i; j > 0 && v[j] > v[j - 1]; --j) {
      std::swap(v[j], v[j - 1]);
      sign = -sign;
    }
  for (std::size_t i = 1; i < v.size(); ++i)
    if (v[i] == v[i - 1]) return 0;
  return sign;
}

}  // namespace detail

inline SignedIndex<FrobeniusCoord> normalize_extended_frobenius(std::vector<int> arms, std::vector<int> legs) {
  if (arms.size() != legs.size()) throw std::invalid_argument("normalize_extended_frobenius: length mismatch");
  auto negative = [](int v) { return v < 0; };
  if (std::any_of(arms.begin(), arms.end(), negative) || std::any_of(legs.begin(), legs.end(), negative)) return {};
  int sign = detail::sort_decreasing_with_sign(arms) * detail::sort_decreasing_with_sign(legs);
  if (sign == 0) return {};
  return {sign, FrobeniusCoord(std::move(arms), std::move(legs))};
}

/// Rows may contain at most one 0 (the padding row); it is dropped from
/// the canonical strict partition.
inline SignedIndex<StrictPartition> normalize_extended_strict(std::vector<int> rows) {
  if (std::any_of(rows.begin(), rows.end(), [](int v) { return v < 0; })) return {};
  int sign = detail::sort_decreasing_with_sign(rows);
  if (sign == 0) return {};
  if (!rows.empty() && rows.back() == 0) rows.pop_back();
  return {sign, StrictPartition(std::move(rows))};
}

namespace detail {

inline void partitions_of(int n, int max_part, std::vector<int>& prefix, std::vector<std::vector<int>>& out,
                          bool strict) {
  if (n == 0) {
    out.push_back(prefix);
    return;
  }
  for (int p = std::min(n, max_part); p >= 1; --p) {
    prefix.push_back(p);
    partitions_of(n - p, strict ? p - 1 : p, prefix, out, strict);
    prefix.pop_back();
  }
}

}  // namespace detail

/// All partitions of exactly n, in reverse-lexicographic order.
inline std::vector<Partition> partitions_of_weight(int n) {
  std::vector<std::vector<int>> raw;
  std::vector<int> prefix;
  if (n >= 0) detail::partitions_of(n, n, prefix, raw, false);
  std::vector<Partition> out;
  for (auto& r : raw) out.emplace_back(std::move(r));
  return out;
}

inline std::vector<StrictPartition> strict_partitions_of_weight(int n) {
  std::vector<std::vector<int>> raw;
  std::vector<int> prefix;
  if (n >= 0) detail::partitions_of(n, n, prefix, raw, true);
  std::vector<StrictPartition> out;
  for (auto& r : raw) out.emplace_back(std::move(r));
  return out;
}

/// All partitions of weight <= max_weight: by weight, then reverse-lex.
inline std::vector<Partition> enumerate_partitions(int max_weight) {
  std::vector<Partition> out;
  for (int n = 0; n <= max_weight; ++n)
    for (auto& p : partitions_of_weight(n)) out.push_back(std::move(p));
  return out;
}

inline std::vector<StrictPartition> enumerate_strict_partitions(int max_weight) {
  std::vector<StrictPartition> out;
  for (int n = 0; n <= max_weight; ++n)
    for (auto& p : strict_partitions_of_weight(n)) out.push_back(std::move(p));
  return out;
}

}  // namespace kptau
