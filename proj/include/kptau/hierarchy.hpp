#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "laurent.hpp"
#include "linalg.hpp"
#include "report.hpp"
#include "series.hpp"

namespace kptau {

struct CheckOptions {
  CheckMode mode = CheckMode::Graded;
  int samples = 5;
  std::uint64_t seed = 20240607;
};

inline constexpr int kSampleBound = 13;
inline constexpr int kResampleBudget = 1000;

namespace detail {

/// tau evaluated at Miwa-shifted arguments x + sum_i s_i c [v_i], cached by
/// the shift pattern s (entries -1, 0, +1).
class ShiftCache {
 public:
  ShiftCache(GradedSeries tau, std::vector<GradedSeries> values, Rational c)
      : tau_(std::move(tau)), values_(std::move(values)), c_(std::move(c)) {}

  const GradedSeries& tau() const { return tau_; }
  const GradedSeries& value(std::size_t i) const { return values_.at(i); }

  const GradedSeries& at(const std::vector<int>& signs) {
    std::vector<int> key = signs;
    key.resize(values_.size(), 0);
    auto it = cache_.find(key);
    if (it != cache_.end()) return it->second;
    std::size_t last = key.size();
    while (last > 0 && key[last - 1] == 0) --last;
    if (last == 0) return cache_.emplace(key, tau_).first->second;
    std::vector<int> prefix = key;
    prefix[last - 1] = 0;
    GradedSeries shifted = miwa_shift(at(prefix), values_[last - 1], c_, key[last - 1]);
    return cache_.emplace(key, std::move(shifted)).first->second;
  }

  /// tau(x + c [v_i] + c [v_j] + ...) for the listed value indices.
  const GradedSeries& plus(std::initializer_list<std::size_t> idx) {
    std::vector<int> signs(values_.size(), 0);
    for (auto i : idx) signs.at(i) = 1;
    return at(signs);
  }

 private:
  GradedSeries tau_;
  std::vector<GradedSeries> values_;
  Rational c_;
  std::map<std::vector<int>, GradedSeries> cache_;
};

using Residual = std::function<GradedSeries(ShiftCache&)>;
using SampleOk = std::function<bool(const std::vector<Rational>&)>;

inline Rational sample_rational(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> num(-kSampleBound, kSampleBound - 1);
  std::uniform_int_distribution<int> den(1, kSampleBound);
  int p = num(rng);
  if (p >= 0) ++p;  // skip zero
  return Rational(p, den(rng));
}

inline bool all_distinct(const std::vector<Rational>& v) {
  for (std::size_t i = 0; i < v.size(); ++i)
    for (std::size_t j = i + 1; j < v.size(); ++j)
      if (v[i] == v[j]) return false;
  return true;
}

inline bool distinct_no_opposite(const std::vector<Rational>& v) {
  if (!all_distinct(v)) return false;
  for (std::size_t i = 0; i < v.size(); ++i)
    for (std::size_t j = i + 1; j < v.size(); ++j)
      if ((v[i] + v[j]).is_zero()) return false;
  return true;
}

inline void require_plain(const GradedSeries& tau, VarKind kind, const char* who) {
  if (tau.kind() != kind)
    throw std::invalid_argument(std::string(who) + ": tau must be a " + std::string(to_string(kind)) + " series");
  if (!tau.layout().params.empty() || tau.layout().alphabets.size() != 1)
    throw std::invalid_argument(std::string(who) + ": tau must not carry parameters");
}

/// Runs a shifted-product identity in either mode. GRADED: parameters are
/// formal weight-1 variables and the residual must vanish through weight N.
/// EXACT: tau is taken as a polynomial, parameters are random rationals and
/// every residual must be the zero polynomial.
inline CheckReport run_shift_identity(const std::string& name, const GradedSeries& tau,
                                      const std::vector<std::string>& params, const Rational& c, int factors,
                                      const CheckOptions& opts, const SampleOk& ok, const Residual& residual) {
  Stopwatch clock;
  CheckReport report;
  report.identity = name;
  report.mode = opts.mode;
  report.parameter_names = params;
  if (opts.mode == CheckMode::Graded) {
    const int n = tau.truncation();
    report.guaranteed_weight = n;
    Layout layout = tau.layout().with_params(params);
    std::vector<GradedSeries> values;
    for (const auto& p : params) values.push_back(GradedSeries::parameter(layout, n, p));
    ShiftCache cache(embed(tau, layout), std::move(values), c);
    add_residual_witnesses(report, residual(cache), n);
  } else {
    if (opts.samples < 1) throw std::invalid_argument(name + ": at least one sample required");
    const int degree = std::max(tau.max_weight(), 0);
    const int n = std::max(factors * degree, tau.truncation());
    if (n > kMaxTruncation) throw std::invalid_argument(name + ": polynomial degree too large for exact mode");
    report.guaranteed_weight = n;
    report.rng_seed = opts.seed;
    GradedSeries poly = lift(tau, n);
    std::mt19937_64 rng(opts.seed);
    for (int s = 0; s < opts.samples; ++s) {
      std::vector<Rational> sample;
      for (int attempt = 0;; ++attempt) {
        if (attempt >= kResampleBudget) throw std::runtime_error(name + ": parameter resampling budget exhausted");
        sample.clear();
        for (std::size_t i = 0; i < params.size(); ++i) sample.push_back(sample_rational(rng));
        if (ok(sample)) break;
      }
      std::vector<GradedSeries> values;
      for (const auto& v : sample) values.push_back(GradedSeries::constant(poly.layout(), n, v));
      ShiftCache cache(poly, std::move(values), c);
      add_residual_witnesses(report, residual(cache), n, s);
      report.samples.push_back(std::move(sample));
    }
  }
  report.elapsed_ms = clock.elapsed_ms();
  return report;
}

inline std::vector<std::string> numbered(const std::string& stem, int count, int first = 1) {
  std::vector<std::string> out;
  for (int i = 0; i < count; ++i) out.push_back(stem + std::to_string(first + i));
  return out;
}

/// Bilinear residue: coefficient of k^e in
///   exp(-2 sum_n y_n k^n) tau(x - y - c[1/k]) tau(x + y + c[1/k])
/// with n over the indices of tau's kind.
inline GradedSeries bilinear_residue(const GradedSeries& tau, const Rational& c, int e) {
  const int n = tau.truncation();
  const Layout layout{tau.kind(), {"x", "y"}, {"u"}};
  GradedSeries t = embed(tau, layout);
  GradedSeries u = GradedSeries::parameter(layout, n, "u");
  std::map<int, GradedSeries> minus, plus;
  GradedSeries upow = GradedSeries::one(layout, n);
  GradedSeries ysum = GradedSeries::zero(layout, n);
  for (int m = 1; m <= n; ++m) {
    upow *= u;
    if (!position_of_index(tau.kind(), m)) continue;
    GradedSeries y = GradedSeries::variable(layout, n, m, 1);
    ysum += y;
    GradedSeries s = y + (c * Rational(1, m)) * upow;
    plus.emplace(m, s);
    minus.emplace(m, -s);
  }
  GradedSeries product = substitute_shift(t, minus) * substitute_shift(t, plus);
  LaurentSeries integrand = LaurentSeries::from_inverse_parameter(product, "u");
  GradedSeries weights = exp(Rational(-2) * ysum);
  LaurentSeries kernel(layout, n);
  for (int j = 0; j <= n; ++j) kernel.set(j, homogeneous_part(weights, j));
  return laurent_residue(kernel * integrand, e);
}

}  // namespace detail

/// a12 a34 t(1,2) t(3,4) - a13 a24 t(1,3) t(2,4) + a14 a23 t(1,4) t(2,3) = 0.
inline CheckReport kp_three_term_check(const GradedSeries& tau, const CheckOptions& opts = {}) {
  detail::require_plain(tau, VarKind::All, "kp_three_term_check");
  return detail::run_shift_identity(
      "three-term", tau, detail::numbered("a", 4), Rational(1), 2, opts, detail::all_distinct,
      [](detail::ShiftCache& s) {
        auto a = [&](std::size_t i, std::size_t j) { return s.value(i) - s.value(j); };
        return a(0, 1) * a(2, 3) * s.plus({0, 1}) * s.plus({2, 3}) - a(0, 2) * a(1, 3) * s.plus({0, 2}) * s.plus({1, 3}) +
               a(0, 3) * a(1, 2) * s.plus({0, 3}) * s.plus({1, 2});
      });
}

/// Coefficient of k^{-1} of the KP bilinear integrand; exact through N - 1.
inline CheckReport kp_hirota_check(const GradedSeries& tau) {
  detail::require_plain(tau, VarKind::All, "kp_hirota_check");
  Stopwatch clock;
  CheckReport report;
  report.identity = "hirota";
  report.mode = CheckMode::Graded;
  report.guaranteed_weight = tau.truncation() - 1;
  if (tau.truncation() >= 1)
    add_residual_witnesses(report, detail::bilinear_residue(tau, Rational(1), -1), tau.truncation() - 1);
  report.elapsed_ms = clock.elapsed_ms();
  return report;
}

/// Determinant formula for n pairs (a_i, b_i), multiplied by
/// tau^{n-1} prod_{i,j} (b_i - a_j):
///   tau^{n-1} prod_{i<j} a_ij b_ji tau(x + sum[b] - sum[a])
///     = det( tau(x + [b_i] - [a_j]) prod_{k != j} (b_i - a_k) ).
inline CheckReport kp_determinant_formula_check(const GradedSeries& tau, int n, const CheckOptions& opts = {}) {
  detail::require_plain(tau, VarKind::All, "kp_determinant_formula_check");
  if (n < 2 || n > 4) throw std::invalid_argument("kp_determinant_formula_check: n must be in 2..4");
  std::vector<std::string> params = detail::numbered("a", n);
  for (auto& b : detail::numbered("b", n)) params.push_back(b);
  const std::size_t un = static_cast<std::size_t>(n);
  return detail::run_shift_identity(
      "determinant", tau, params, Rational(1), n + 1, opts, detail::all_distinct, [un](detail::ShiftCache& s) {
        auto a = [&](std::size_t i) -> const GradedSeries& { return s.value(i); };
        auto b = [&](std::size_t i) -> const GradedSeries& { return s.value(un + i); };
        const GradedSeries& t = s.tau();
        GradedSeries lhs = pow(t, static_cast<unsigned>(un - 1));
        for (std::size_t i = 0; i < un; ++i)
          for (std::size_t j = i + 1; j < un; ++j) lhs *= (a(i) - a(j)) * (b(j) - b(i));
        std::vector<int> all(2 * un, 0);
        for (std::size_t i = 0; i < un; ++i) {
          all[i] = -1;
          all[un + i] = 1;
        }
        lhs *= s.at(all);
        Matrix<GradedSeries> m(un, un, GradedSeries::zero(t.layout(), t.truncation()));
        for (std::size_t i = 0; i < un; ++i)
          for (std::size_t j = 0; j < un; ++j) {
            std::vector<int> signs(2 * un, 0);
            signs[j] = -1;
            signs[un + i] = 1;
            GradedSeries e = s.at(signs);
            for (std::size_t k = 0; k < un; ++k)
              if (k != j) e *= b(i) - a(k);
            m(i, j) = std::move(e);
          }
        return lhs - det_division_free(m, GradedSeries::one(t.layout(), t.truncation()));
      });
}

/// sum_{i=1}^{n+1} (-1)^{i-1} zeta(b_1..b_{n-1}, a_i) zeta(a_1..^a_i..a_{n+1}) = 0,
/// zeta(g_1..g_m) = prod_{i<j} (g_i - g_j) tau(x + [g_1] + ... + [g_m]).
inline CheckReport kp_addition_formula_check(const GradedSeries& tau, int n, const CheckOptions& opts = {}) {
  detail::require_plain(tau, VarKind::All, "kp_addition_formula_check");
  if (n < 2 || n > 4) throw std::invalid_argument("kp_addition_formula_check: n must be in 2..4");
  std::vector<std::string> params = detail::numbered("b", n - 1);
  for (auto& a : detail::numbered("a", n + 1)) params.push_back(a);
  const std::size_t nb = static_cast<std::size_t>(n - 1);
  const std::size_t na = static_cast<std::size_t>(n + 1);
  return detail::run_shift_identity(
      "addition", tau, params, Rational(1), 2, opts, detail::all_distinct, [nb, na](detail::ShiftCache& s) {
        auto zeta = [&](const std::vector<std::size_t>& idx) {
          std::vector<int> signs(nb + na, 0);
          for (auto i : idx) signs[i] = 1;
          GradedSeries z = s.at(signs);
          for (std::size_t i = 0; i < idx.size(); ++i)
            for (std::size_t j = i + 1; j < idx.size(); ++j) z *= s.value(idx[i]) - s.value(idx[j]);
          return z;
        };
        GradedSeries sum = GradedSeries::zero(s.tau().layout(), s.tau().truncation());
        for (std::size_t i = 0; i < na; ++i) {
          std::vector<std::size_t> left, right;
          for (std::size_t k = 0; k < nb; ++k) left.push_back(k);
          left.push_back(nb + i);
          for (std::size_t k = 0; k < na; ++k)
            if (k != i) right.push_back(nb + k);
          GradedSeries term = zeta(left) * zeta(right);
          sum = (i % 2) ? sum - term : sum + term;
        }
        return sum;
      });
}

/// a12 a13 a23 t t(1,2,3)
///   = a23 ~a12 ~a13 t(1) t(2,3) - a13 ~a12 ~a23 t(2) t(1,3) + a12 ~a13 ~a23 t(3) t(1,2),
/// with shifts 2[a_i]_o and ~a_ij = a_i + a_j.
inline CheckReport bkp_four_term_check(const GradedSeries& tau, const CheckOptions& opts = {}) {
  detail::require_plain(tau, VarKind::Odd, "bkp_four_term_check");
  CheckReport report = detail::run_shift_identity(
      "four-term", tau, detail::numbered("a", 3), Rational(2), 2, opts, detail::distinct_no_opposite,
      [](detail::ShiftCache& s) {
        auto d = [&](std::size_t i, std::size_t j) { return s.value(i) - s.value(j); };
        auto p = [&](std::size_t i, std::size_t j) { return s.value(i) + s.value(j); };
        GradedSeries lhs = d(0, 1) * d(0, 2) * d(1, 2) * s.tau() * s.plus({0, 1, 2});
        GradedSeries rhs = d(1, 2) * p(0, 1) * p(0, 2) * s.plus({0}) * s.plus({1, 2}) -
                           d(0, 2) * p(0, 1) * p(1, 2) * s.plus({1}) * s.plus({0, 2}) +
                           d(0, 1) * p(0, 2) * p(1, 2) * s.plus({2}) * s.plus({0, 1});
        return lhs - rhs;
      });
  report.convention = "eq73-normalized";
  return report;
}

/// k^0 coefficient of the BKP bilinear integrand minus tau(x-y) tau(x+y);
/// reported through N - 1.
inline CheckReport bkp_hirota_check(const GradedSeries& tau) {
  detail::require_plain(tau, VarKind::Odd, "bkp_hirota_check");
  Stopwatch clock;
  CheckReport report;
  report.identity = "hirota";
  report.mode = CheckMode::Graded;
  report.convention = "eq73-normalized";
  const int n = tau.truncation();
  report.guaranteed_weight = n - 1;
  if (n >= 1) {
    const Layout xy{VarKind::Odd, {"x", "y"}, {"u"}};
    GradedSeries t = embed(tau, xy);
    std::map<int, GradedSeries> minus, plus;
    for (int m = 1; m <= n; m += 2) {
      GradedSeries y = GradedSeries::variable(xy, n, m, 1);
      plus.emplace(m, y);
      minus.emplace(m, -y);
    }
    GradedSeries rhs = substitute_shift(t, minus) * substitute_shift(t, plus);
    GradedSeries res = detail::bilinear_residue(tau, Rational(2), 0);
    add_residual_witnesses(report, res - lift(rhs, res.truncation()), n - 1);
  }
  report.elapsed_ms = clock.elapsed_ms();
  return report;
}

/// Pfaffian addition formula for n parameters, multiplied through by
/// prod_{i<j} a_ij ~a_ij and the power of tau. Odd n borders the matrix
/// with a row 0 of single shifts tau(x + 2[a_j]_o).
inline CheckReport bkp_pfaffian_addition_check(const GradedSeries& tau, int n, const CheckOptions& opts = {}) {
  detail::require_plain(tau, VarKind::Odd, "bkp_pfaffian_addition_check");
  if (n < 2 || n > 6) throw std::invalid_argument("bkp_pfaffian_addition_check: n must be in 2..6");
  const std::size_t un = static_cast<std::size_t>(n);
  const int tau_power = (n % 2) ? (n - 1) / 2 : (n - 2) / 2;
  CheckReport report = detail::run_shift_identity(
      "pfaffian-addition", tau, detail::numbered("a", n), Rational(2), tau_power + 1, opts,
      detail::distinct_no_opposite, [un, tau_power](detail::ShiftCache& s) {
        const GradedSeries& t = s.tau();
        auto d = [&](std::size_t i, std::size_t j) { return s.value(i) - s.value(j); };
        auto p = [&](std::size_t i, std::size_t j) { return s.value(i) + s.value(j); };
        GradedSeries lhs = pow(t, static_cast<unsigned>(tau_power));
        for (std::size_t i = 0; i < un; ++i)
          for (std::size_t j = i + 1; j < un; ++j) lhs *= d(i, j);
        lhs *= s.at(std::vector<int>(un, 1));
        // Points 0..un-1 are the parameters; point un is the border row.
        const bool border = un % 2;
        const std::size_t points = border ? un + 1 : un;
        GradedSeries rhs = GradedSeries::zero(t.layout(), t.truncation());
        for_each_perfect_matching(points, [&](int sign, const std::vector<std::pair<std::size_t, std::size_t>>& pairs) {
          // The border point sits first in the matrix; relabel to keep signs.
          GradedSeries term = GradedSeries::one(t.layout(), t.truncation());
          std::vector<std::vector<bool>> matched(un, std::vector<bool>(un, false));
          for (auto [u, v] : pairs) {
            if (border) {
              if (u == 0) {
                term *= s.plus({v - 1});
                continue;
              }
              --u;
              --v;
            }
            matched[u][v] = true;
            term *= d(u, v) * s.plus({u, v});
          }
          for (std::size_t i = 0; i < un; ++i)
            for (std::size_t j = i + 1; j < un; ++j)
              if (!matched[i][j]) term *= p(i, j);
          rhs = sign > 0 ? rhs + term : rhs - term;
        });
        return lhs - rhs;
      });
  report.convention = "eq73-normalized";
  return report;
}

}  // namespace kptau
