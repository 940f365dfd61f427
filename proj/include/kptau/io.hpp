#pragma once

#include <json.hpp>

#include <stdexcept>
#include <string>

#include "giambelli.hpp"
#include "partitions.hpp"
#include "report.hpp"
#include "schur.hpp"
#include "schur_q.hpp"
#include "series.hpp"

namespace kptau {

using json = nlohmann::json;

/// Malformed or schema-violating input document.
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

namespace detail {

inline const json& field(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw ParseError(std::string("missing field \"") + key + "\"");
  return j.at(key);
}

inline int int_field(const json& j, const char* key, int lo, int hi) {
  const json& v = field(j, key);
  if (!v.is_number_integer()) throw ParseError(std::string("field \"") + key + "\" must be an integer");
  auto x = v.get<long long>();
  if (x < lo || x > hi) throw ParseError(std::string("field \"") + key + "\" out of range");
  return static_cast<int>(x);
}

inline Rational rational_of(const json& v) {
  if (v.is_string()) {
    try {
      return Rational::parse(v.get<std::string>());
    } catch (const std::exception& e) {
      throw ParseError(std::string("bad rational: ") + e.what());
    }
  }
  if (v.is_number_integer()) return Rational(v.get<long>());
  throw ParseError("rationals must be strings \"p/q\" or integers");
}

inline std::vector<int> int_list(const json& v, const char* what) {
  if (!v.is_array()) throw ParseError(std::string(what) + " must be an array");
  std::vector<int> out;
  for (const auto& e : v) {
    if (!e.is_number_integer()) throw ParseError(std::string(what) + " entries must be integers");
    out.push_back(e.get<int>());
  }
  return out;
}

inline VarKind kind_of(const json& v) {
  if (v == "kp") return VarKind::All;
  if (v == "bkp") return VarKind::Odd;
  throw ParseError("kind must be \"kp\" or \"bkp\"");
}

}  // namespace detail

// Series: {"kind","truncation_weight","terms":[{"exps":{"1":2},"coeff":"4/3"}]}

inline json to_json(const GradedSeries& s) {
  if (!s.layout().params.empty() || s.layout().alphabets.size() != 1)
    throw std::invalid_argument("to_json: only parameter-free single-alphabet series serialize");
  json terms = json::array();
  for (const auto& t : s.terms()) {
    json exps = json::object();
    for (int p = 0; p < kIndexSlots; ++p)
      if (t.mono.e[p]) exps[std::to_string(index_of_position(s.kind(), p))] = t.mono.e[p];
    terms.push_back({{"exps", exps}, {"coeff", t.coeff.str()}});
  }
  return {{"kind", std::string(to_string(s.kind()))}, {"truncation_weight", s.truncation()}, {"terms", terms}};
}

inline GradedSeries series_from_json(const json& j) {
  const VarKind kind = detail::kind_of(detail::field(j, "kind"));
  const int n = detail::int_field(j, "truncation_weight", 0, kMaxTruncation);
  const Layout layout{kind, {"x"}, {}};
  const json& terms = detail::field(j, "terms");
  if (!terms.is_array()) throw ParseError("\"terms\" must be an array");
  std::vector<std::pair<Monomial, Rational>> out;
  std::vector<Monomial> seen;
  for (const auto& t : terms) {
    const json& exps = detail::field(t, "exps");
    if (!exps.is_object()) throw ParseError("\"exps\" must be an object");
    Monomial m;
    for (const auto& [key, val] : exps.items()) {
      if (key.empty() || key.find_first_not_of("0123456789") != std::string::npos)
        throw ParseError("exponent key \"" + key + "\" is not a variable index");
      int index = std::stoi(key);
      if (index < 1) throw ParseError("variable index must be positive");
      if (kind == VarKind::Odd && index % 2 == 0)
        throw ParseError("bkp series may not use even-index variable x" + key);
      auto pos = position_of_index(kind, index);
      if (!pos) throw ParseError("variable index " + key + " out of range");
      if (!val.is_number_integer() || val.get<long long>() < 0 || val.get<long long>() > 255)
        throw ParseError("exponents must be integers in 0..255");
      m.e[*pos] = static_cast<std::uint8_t>(val.get<int>());
    }
    if (monomial_weight(layout, m) > n) throw ParseError("term weight exceeds truncation_weight");
    if (std::find(seen.begin(), seen.end(), m) != seen.end()) throw ParseError("duplicate monomial in terms");
    seen.push_back(m);
    out.emplace_back(m, detail::rational_of(detail::field(t, "coeff")));
  }
  return GradedSeries::from_terms(layout, n, out);
}

// Tables: {"basis":"schur"|"schur-q","max_weight":N,"entries":[{"partition":[2,1],"value":"1"}]}

inline json to_json(const SchurTable& t) {
  json entries = json::array();
  for (const auto& [lambda, v] : t.entries) entries.push_back({{"partition", lambda.parts()}, {"value", v.str()}});
  return {{"basis", "schur"}, {"max_weight", t.max_weight}, {"entries", entries}};
}

inline json to_json(const QTable& t) {
  json entries = json::array();
  for (const auto& [lambda, v] : t.entries) entries.push_back({{"partition", lambda.parts()}, {"value", v.str()}});
  return {{"basis", "schur-q"}, {"max_weight", t.max_weight}, {"entries", entries}};
}

namespace detail {

template <class Table, class Index>
Table table_from_json(const json& j, const char* basis) {
  if (detail::field(j, "basis") != basis) throw ParseError(std::string("expected basis \"") + basis + "\"");
  Table table;
  table.max_weight = int_field(j, "max_weight", 0, kMaxTruncation);
  const json& entries = field(j, "entries");
  if (!entries.is_array()) throw ParseError("\"entries\" must be an array");
  for (const auto& e : entries) {
    Index lambda;
    try {
      lambda = Index(int_list(field(e, "partition"), "partition"));
    } catch (const std::invalid_argument& err) {
      throw ParseError(err.what());
    }
    if (lambda.weight() > table.max_weight) throw ParseError("entry weight exceeds max_weight");
    if (table.entries.count(lambda)) throw ParseError("duplicate partition " + lambda.to_string());
    Rational v = rational_of(field(e, "value"));
    table.entries.emplace(std::move(lambda), std::move(v));
  }
  return table;
}

}  // namespace detail

inline SchurTable schur_table_from_json(const json& j) {
  return detail::table_from_json<SchurTable, Partition>(j, "schur");
}

inline QTable q_table_from_json(const json& j) { return detail::table_from_json<QTable, StrictPartition>(j, "schur-q"); }

// Seeds: KP {"hooks":[{"arm":0,"leg":0,"value":"1"}]};
// BKP {"singles":[{"row":1,"value":"1"}],"pairs":[{"rows":[2,1],"value":"1/3"}]}

inline json to_json(const KpHookSeed& s) {
  json hooks = json::array();
  for (const auto& [key, v] : s.hooks) hooks.push_back({{"arm", key.first}, {"leg", key.second}, {"value", v.str()}});
  return {{"hooks", hooks}};
}

inline KpHookSeed kp_seed_from_json(const json& j) {
  KpHookSeed s;
  const json& hooks = detail::field(j, "hooks");
  if (!hooks.is_array()) throw ParseError("\"hooks\" must be an array");
  for (const auto& h : hooks) {
    int k = detail::int_field(h, "arm", 0, kMaxTruncation);
    int l = detail::int_field(h, "leg", 0, kMaxTruncation);
    if (!s.hooks.emplace(std::make_pair(k, l), detail::rational_of(detail::field(h, "value"))).second)
      throw ParseError("duplicate hook entry");
  }
  return s;
}

inline json to_json(const BkpPairSeed& s) {
  json singles = json::array();
  for (const auto& [a, v] : s.singles) singles.push_back({{"row", a}, {"value", v.str()}});
  json pairs = json::array();
  for (const auto& [key, v] : s.pairs)
    pairs.push_back({{"rows", {key.first, key.second}}, {"value", v.str()}});
  return {{"pairs", pairs}, {"singles", singles}};
}

inline BkpPairSeed bkp_seed_from_json(const json& j) {
  BkpPairSeed s;
  if (!j.is_object()) throw ParseError("seed must be an object");
  if (j.contains("singles")) {
    if (!j["singles"].is_array()) throw ParseError("\"singles\" must be an array");
    for (const auto& e : j["singles"]) {
      int a = detail::int_field(e, "row", 1, kMaxTruncation);
      if (!s.singles.emplace(a, detail::rational_of(detail::field(e, "value"))).second)
        throw ParseError("duplicate single row");
    }
  }
  if (j.contains("pairs")) {
    if (!j["pairs"].is_array()) throw ParseError("\"pairs\" must be an array");
    for (const auto& e : j["pairs"]) {
      auto rows = detail::int_list(detail::field(e, "rows"), "rows");
      if (rows.size() != 2 || !(rows[0] > rows[1] && rows[1] >= 1))
        throw ParseError("pair rows must be [a,b] with a > b >= 1");
      if (!s.pairs.emplace(std::make_pair(rows[0], rows[1]), detail::rational_of(detail::field(e, "value"))).second)
        throw ParseError("duplicate pair rows");
    }
  }
  if (!j.contains("singles") && !j.contains("pairs")) throw ParseError("seed needs \"singles\" or \"pairs\"");
  return s;
}

// Frobenius: {"arms":[...],"legs":[...]}

inline json to_json(const FrobeniusCoord& f) { return {{"arms", f.arms}, {"legs", f.legs}}; }

inline FrobeniusCoord frobenius_from_json(const json& j) {
  try {
    return FrobeniusCoord(detail::int_list(detail::field(j, "arms"), "arms"),
                          detail::int_list(detail::field(j, "legs"), "legs"));
  } catch (const std::invalid_argument& e) {
    throw ParseError(e.what());
  }
}

// Reports

inline json to_json(const CheckReport& r, bool with_timing = false) {
  json failures = json::array();
  for (const auto& w : r.failures) {
    json f = {{"monomial", w.monomial}, {"residual", w.residual.str()}};
    if (w.sample >= 0) f["sample"] = w.sample;
    failures.push_back(std::move(f));
  }
  json params = {{"names", r.parameter_names}};
  if (!r.samples.empty()) {
    json samples = json::array();
    for (const auto& s : r.samples) {
      json row = json::array();
      for (const auto& v : s) row.push_back(v.str());
      samples.push_back(std::move(row));
    }
    params["samples"] = std::move(samples);
  }
  if (r.rng_seed) params["rng_seed"] = *r.rng_seed;
  json out = {{"identity", r.identity},
              {"mode", std::string(to_string(r.mode))},
              {"guaranteed_weight", r.guaranteed_weight},
              {"pass", r.pass},
              {"failures", failures},
              {"parameters", params}};
  if (r.convention) out["convention"] = *r.convention;
  if (with_timing) out["elapsed_ms"] = r.elapsed_ms;
  return out;
}

inline CheckReport report_from_json(const json& j) {
  CheckReport r;
  r.identity = detail::field(j, "identity").get<std::string>();
  const json& mode = detail::field(j, "mode");
  if (mode == "exact")
    r.mode = CheckMode::Exact;
  else if (mode == "graded")
    r.mode = CheckMode::Graded;
  else
    throw ParseError("mode must be \"exact\" or \"graded\"");
  r.guaranteed_weight = detail::int_field(j, "guaranteed_weight", -1, kMaxTruncation * 4);
  r.pass = detail::field(j, "pass").get<bool>();
  for (const auto& f : detail::field(j, "failures")) {
    Witness w{detail::field(f, "monomial").get<std::string>(), detail::rational_of(detail::field(f, "residual"))};
    if (f.contains("sample")) w.sample = f["sample"].get<int>();
    r.failures.push_back(std::move(w));
  }
  const json& params = detail::field(j, "parameters");
  r.parameter_names = detail::field(params, "names").get<std::vector<std::string>>();
  if (params.contains("samples"))
    for (const auto& row : params["samples"]) {
      std::vector<Rational> s;
      for (const auto& v : row) s.push_back(detail::rational_of(v));
      r.samples.push_back(std::move(s));
    }
  if (params.contains("rng_seed")) r.rng_seed = params["rng_seed"].get<std::uint64_t>();
  if (j.contains("convention")) r.convention = j["convention"].get<std::string>();
  if (j.contains("elapsed_ms")) r.elapsed_ms = j["elapsed_ms"].get<double>();
  if (r.pass != r.failures.empty()) throw ParseError("report pass flag disagrees with its failure list");
  return r;
}

inline json parse_json_text(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what());
  }
}

}  // namespace kptau
