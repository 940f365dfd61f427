#pragma once

#include <chrono>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "rational.hpp"
#include "series.hpp"

namespace kptau {

/// EXACT: numeric rational parameters, valid only for polynomial tau.
/// GRADED: weight-1 formal parameters; identity checked mod a weight.
enum class CheckMode { Exact, Graded };

inline std::string_view to_string(CheckMode mode) { return mode == CheckMode::Exact ? "exact" : "graded"; }

struct Witness {
  std::string monomial;
  Rational residual;
  int sample = -1;  // EXACT-mode sample index, -1 otherwise

  friend bool operator==(const Witness&, const Witness&) = default;
};

struct CheckReport {
  std::string identity;
  CheckMode mode = CheckMode::Graded;
  int guaranteed_weight = 0;
  bool pass = true;
  std::vector<Witness> failures;
  std::vector<std::string> parameter_names;
  std::vector<std::vector<Rational>> samples;
  std::optional<std::uint64_t> rng_seed;
  std::optional<std::string> convention;
  double elapsed_ms = 0.0;

  /// Witness of the first (lowest-order) failure, if any.
  const Witness* first_failure() const { return failures.empty() ? nullptr : &failures.front(); }
};

inline constexpr std::size_t kMaxWitnesses = 8;

/// Records every nonzero term of `residual` with weight <= max_weight as a
/// failure witness (first kMaxWitnesses in canonical order).
inline void add_residual_witnesses(CheckReport& report, const GradedSeries& residual, int max_weight, int sample = -1) {
  for (const auto& t : residual.terms()) {
    if (t.weight > max_weight) break;
    report.pass = false;
    if (report.failures.size() >= kMaxWitnesses) return;
    report.failures.push_back(Witness{monomial_to_string(residual.layout(), t.mono), t.coeff, sample});
  }
}

inline void add_witness(CheckReport& report, std::string label, Rational residual) {
  report.pass = false;
  if (report.failures.size() < kMaxWitnesses) report.failures.push_back(Witness{std::move(label), std::move(residual)});
}

/// Wall-clock stopwatch for CheckReport::elapsed_ms.
class Stopwatch {
 public:
  Stopwatch() : start_(std::chrono::steady_clock::now()) {}
  double elapsed_ms() const {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_;
};

}  // namespace kptau
