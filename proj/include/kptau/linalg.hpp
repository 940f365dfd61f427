#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <stdexcept>
#include <unordered_map>
#include <utility>
#include <vector>

namespace kptau {

/// Dense row-major matrix over a commutative ring element type T.
template <class T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, const T& fill) : rows_(rows), cols_(cols), data_(rows * cols, fill) {}
  Matrix(std::initializer_list<std::initializer_list<T>> init) {
    rows_ = init.size();
    cols_ = rows_ ? init.begin()->size() : 0;
    for (const auto& row : init) {
      if (row.size() != cols_) throw std::invalid_argument("Matrix: ragged initializer");
      data_.insert(data_.end(), row.begin(), row.end());
    }
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool square() const { return rows_ == cols_; }

  T& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const T& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  /// Submatrix picking the given rows and columns, in the given order.
  Matrix select(const std::vector<std::size_t>& row_idx, const std::vector<std::size_t>& col_idx) const {
    Matrix out;
    out.rows_ = row_idx.size();
    out.cols_ = col_idx.size();
    out.data_.reserve(out.rows_ * out.cols_);
    for (auto i : row_idx)
      for (auto j : col_idx) out.data_.push_back((*this)(i, j));
    return out;
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> data_;
};

namespace detail {

template <class T>
T det_laplace(const Matrix<T>& m, const T& one) {
  const std::size_t n = m.rows();
  const T zero = one - one;
  // partial[mask]: signed sum over injective assignments of the first
  // popcount(mask) rows onto the columns in mask.
  std::vector<T> partial(std::size_t{1} << n, zero);
  std::vector<bool> live(partial.size(), false);
  partial[0] = one;
  live[0] = true;
  for (std::size_t mask = 0; mask < partial.size(); ++mask) {
    if (!live[mask]) continue;
    std::size_t row = static_cast<std::size_t>(__builtin_popcountll(mask));
    if (row == n) continue;
    for (std::size_t c = 0; c < n; ++c) {
      if (mask & (std::size_t{1} << c)) continue;
      int larger = __builtin_popcountll(mask >> (c + 1));
      std::size_t next = mask | (std::size_t{1} << c);
      T term = partial[mask] * m(row, c);
      partial[next] = (larger % 2) ? partial[next] - term : partial[next] + term;
      live[next] = true;
    }
  }
  return partial.back();
}

// Berkowitz: characteristic polynomial of the leading principal
// submatrices by Toeplitz products; no division anywhere.
template <class T>
T det_berkowitz(const Matrix<T>& a, const T& one) {
  const std::size_t n = a.rows();
  const T zero = one - one;
  std::vector<T> vect{one, zero - a(0, 0)};
  for (std::size_t r = 1; r < n; ++r) {
    std::vector<T> col{one, zero - a(r, r)};
    std::vector<T> cpow(r, zero);
    for (std::size_t i = 0; i < r; ++i) cpow[i] = a(i, r);
    for (std::size_t k = 0; k < r; ++k) {
      T dot = zero;
      for (std::size_t j = 0; j < r; ++j) dot = dot + a(r, j) * cpow[j];
      col.push_back(zero - dot);
      if (k + 1 < r) {
        std::vector<T> next(r, zero);
        for (std::size_t i = 0; i < r; ++i)
          for (std::size_t j = 0; j < r; ++j) next[i] = next[i] + a(i, j) * cpow[j];
        cpow = std::move(next);
      }
    }
    std::vector<T> fresh(r + 2, zero);
    for (std::size_t i = 0; i < r + 2; ++i)
      for (std::size_t j = 0; j <= std::min(i, r); ++j) fresh[i] = fresh[i] + col[i - j] * vect[j];
    vect = std::move(fresh);
  }
  return (n % 2) ? zero - vect[n] : vect[n];
}

}  // namespace detail

/// Determinant without ring division (the series ring has nilpotents).
/// Subset-memoized Laplace expansion up to 6x6, Berkowitz above.
template <class T>
T det_division_free(const Matrix<T>& m, const T& one) {
  if (!m.square()) throw std::invalid_argument("det: non-square matrix");
  if (m.rows() == 0) return one;
  if (m.rows() <= 6) return detail::det_laplace(m, one);
  return detail::det_berkowitz(m, one);
}

template <class T>
void require_skew(const Matrix<T>& m) {
  if (!m.square()) throw std::invalid_argument("pfaffian: non-square matrix");
  if (m.rows() % 2) throw std::invalid_argument("pfaffian: odd dimension");
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = i; j < m.cols(); ++j) {
      const T& a = m(i, j);
      const T& b = m(j, i);
      if (!((a + b) == (a - a))) throw std::invalid_argument("pfaffian: matrix is not skew-symmetric");
    }
}

/// Pfaffian by first-row expansion, memoized over the remaining index set.
template <class T>
T pfaffian(const Matrix<T>& m, const T& one) {
  require_skew(m);
  const std::size_t n = m.rows();
  if (n == 0) return one;
  if (n > 62) throw std::invalid_argument("pfaffian: dimension too large");
  std::unordered_map<std::uint64_t, T> memo;
  std::function<T(std::uint64_t)> rec = [&](std::uint64_t set) -> T {
    if (set == 0) return one;
    auto it = memo.find(set);
    if (it != memo.end()) return it->second;
    std::size_t i = static_cast<std::size_t>(__builtin_ctzll(set));
    std::uint64_t rest = set & ~(std::uint64_t{1} << i);
    T acc = one - one;
    int position = 0;
    for (std::size_t j = i + 1; j < n; ++j) {
      if (!(rest & (std::uint64_t{1} << j))) continue;
      T term = m(i, j) * rec(rest & ~(std::uint64_t{1} << j));
      acc = (position % 2) ? acc - term : acc + term;
      ++position;
    }
    memo.emplace(set, acc);
    return acc;
  };
  return rec((n == 64) ? ~std::uint64_t{0} : ((std::uint64_t{1} << n) - 1));
}

/// Visits every perfect matching of {0..n-1} with its Pfaffian sign;
/// pairs are (i, j) with i < j.
inline void for_each_perfect_matching(std::size_t n,
                                      const std::function<void(int, const std::vector<std::pair<std::size_t, std::size_t>>&)>& visit) {
  if (n % 2) throw std::invalid_argument("perfect matching: odd number of points");
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  std::vector<bool> used(n, false);
  std::function<void(int)> rec = [&](int sign) {
    std::size_t i = 0;
    while (i < n && used[i]) ++i;
    if (i == n) {
      visit(sign, pairs);
      return;
    }
    used[i] = true;
    int position = 0;
    for (std::size_t j = i + 1; j < n; ++j) {
      if (used[j]) continue;
      used[j] = true;
      pairs.emplace_back(i, j);
      rec(position % 2 ? -sign : sign);
      pairs.pop_back();
      used[j] = false;
      ++position;
    }
    used[i] = false;
  };
  rec(1);
}

/// Grassmann-Plücker residual for maximal minors of an (rows x n) matrix:
///   sum_i (-1)^i det(rows K + l_i) det(rows L - l_i),
/// with |K| = n-1 and |L| = n+1. Vanishes identically.
template <class T>
T plucker_minor_residual(const Matrix<T>& m, const std::vector<std::size_t>& k_rows,
                         const std::vector<std::size_t>& l_rows, const T& one) {
  const std::size_t n = m.cols();
  if (k_rows.size() + 1 != n || l_rows.size() != n + 1)
    throw std::invalid_argument("plucker: need |K| = n-1 and |L| = n+1");
  std::vector<std::size_t> cols(n);
  for (std::size_t j = 0; j < n; ++j) cols[j] = j;
  T acc = one - one;
  for (std::size_t i = 0; i < l_rows.size(); ++i) {
    std::vector<std::size_t> left = k_rows;
    left.push_back(l_rows[i]);
    std::vector<std::size_t> right;
    for (std::size_t r = 0; r < l_rows.size(); ++r)
      if (r != i) right.push_back(l_rows[r]);
    T term = det_division_free(m.select(left, cols), one) * det_division_free(m.select(right, cols), one);
    acc = (i % 2) ? acc - term : acc + term;
  }
  return acc;
}

/// Pfaffian Plücker residual for index sequences I, J of odd lengths:
///   sum_l (-1)^l Pf(I, j_l) Pf(J - j_l) + sum_k (-1)^k Pf(I - i_k) Pf(J, i_k)
/// (1-based l, k). Vanishes identically for every skew matrix.
template <class T>
T pfaffian_plucker_residual(const Matrix<T>& m, const std::vector<std::size_t>& i_seq,
                            const std::vector<std::size_t>& j_seq, const T& one) {
  if (i_seq.size() % 2 == 0 || j_seq.size() % 2 == 0)
    throw std::invalid_argument("pfaffian plucker: index sequences must have odd length");
  auto pf = [&](const std::vector<std::size_t>& idx) { return pfaffian(m.select(idx, idx), one); };
  T acc = one - one;
  for (std::size_t l = 0; l < j_seq.size(); ++l) {
    std::vector<std::size_t> left = i_seq;
    left.push_back(j_seq[l]);
    std::vector<std::size_t> right;
    for (std::size_t r = 0; r < j_seq.size(); ++r)
      if (r != l) right.push_back(j_seq[r]);
    T term = pf(left) * pf(right);
    acc = (l % 2 == 0) ? acc - term : acc + term;
  }
  for (std::size_t k = 0; k < i_seq.size(); ++k) {
    std::vector<std::size_t> left;
    for (std::size_t r = 0; r < i_seq.size(); ++r)
      if (r != k) left.push_back(i_seq[r]);
    std::vector<std::size_t> right = j_seq;
    right.push_back(i_seq[k]);
    T term = pf(left) * pf(right);
    acc = (k % 2 == 0) ? acc - term : acc + term;
  }
  return acc;
}

}  // namespace kptau
