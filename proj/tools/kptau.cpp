// kptau: construct, expand and verify KP/BKP tau functions.

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "kptau/kptau.hpp"

namespace {

using kptau::json;

constexpr int kExitOk = 0;
constexpr int kExitFailed = 1;
constexpr int kExitUsage = 2;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

json read_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot read " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return kptau::parse_json_text(buf.str());
}

void emit(const json& doc, const std::string& out_path) {
  std::string text = doc.dump(2) + "\n";
  if (out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(out_path);
  if (!out) throw UsageError("cannot write " + out_path);
  out << text;
}

std::vector<int> parse_parts(const std::string& text) {
  std::vector<int> parts;
  if (text.empty()) return parts;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      int v = std::stoi(item, &used);
      if (used != item.size()) throw std::invalid_argument(item);
      parts.push_back(v);
    } catch (const std::exception&) {
      throw UsageError("bad partition entry \"" + item + "\"");
    }
  }
  return parts;
}

kptau::VarKind hierarchy_kind(const std::string& h) { return h == "kp" ? kptau::VarKind::All : kptau::VarKind::Odd; }

kptau::GradedSeries load_tau(const std::string& path, const std::string& hierarchy, std::optional<int> max_weight) {
  kptau::GradedSeries tau = kptau::series_from_json(read_json(path));
  if (tau.kind() != hierarchy_kind(hierarchy))
    throw kptau::ParseError("tau kind \"" + std::string(kptau::to_string(tau.kind())) + "\" does not match hierarchy " +
                            hierarchy);
  if (max_weight) {
    if (*max_weight > tau.truncation())
      throw UsageError("--max-weight exceeds the truncation weight of the tau document");
    tau = kptau::truncate(tau, *max_weight);
  }
  return tau;
}

struct Options {
  std::string partition;
  bool half = false;
  int truncation = -1;
  std::string hierarchy = "kp";
  std::string identity;
  std::string mode = "graded";
  std::optional<int> max_weight;
  std::uint64_t rng_seed = kptau::CheckOptions{}.seed;
  int samples = 5;
  std::optional<int> order;
  std::string tau_path;
  std::string seed_path;
  std::string out_path;
  bool timing = false;
};

int run_schur(const Options& o) {
  auto parts = parse_parts(o.partition);
  kptau::Partition lambda;
  try {
    lambda = kptau::Partition(parts);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  emit(kptau::to_json(kptau::schur_poly(lambda, std::max(o.truncation, 0))), o.out_path);
  return kExitOk;
}

int run_schurq(const Options& o) {
  auto parts = parse_parts(o.partition);
  kptau::StrictPartition lambda;
  try {
    lambda = kptau::StrictPartition(parts);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  kptau::GradedSeries q = kptau::q_schur_poly(lambda, std::max(o.truncation, 0));
  if (o.half) q = kptau::scale_variables(q, kptau::Rational(1, 2));
  emit(kptau::to_json(q), o.out_path);
  return kExitOk;
}

int run_expand(const Options& o) {
  kptau::GradedSeries tau = load_tau(o.tau_path, o.hierarchy, o.max_weight);
  if (o.hierarchy == "kp")
    emit(kptau::to_json(kptau::expand_schur(tau)), o.out_path);
  else
    emit(kptau::to_json(kptau::expand_q(tau)), o.out_path);
  return kExitOk;
}

int run_synth(const Options& o) {
  if (!o.max_weight) throw UsageError("synth requires --max-weight");
  json seed = read_json(o.seed_path);
  json out;
  if (o.hierarchy == "kp") {
    auto [table, tau] = kptau::giambelli_synthesize_kp(kptau::kp_seed_from_json(seed), *o.max_weight);
    out = {{"table", kptau::to_json(table)}, {"tau", kptau::to_json(tau)}};
  } else {
    auto [table, tau] = kptau::giambelli_synthesize_bkp(kptau::bkp_seed_from_json(seed), *o.max_weight);
    out = {{"table", kptau::to_json(table)}, {"tau", kptau::to_json(tau)}};
  }
  emit(out, o.out_path);
  return kExitOk;
}

kptau::CheckReport check_giambelli(const Options& o) {
  const bool kp = o.hierarchy == "kp";
  if (!o.seed_path.empty()) {
    json doc = read_json(o.seed_path);
    return kp ? kptau::giambelli_verify_kp(kptau::schur_table_from_json(doc))
              : kptau::giambelli_verify_bkp(kptau::q_table_from_json(doc));
  }
  kptau::GradedSeries tau = load_tau(o.tau_path, o.hierarchy, o.max_weight);
  return kp ? kptau::giambelli_verify_kp(kptau::expand_schur(tau)) : kptau::giambelli_verify_bkp(kptau::expand_q(tau));
}

int run_check(const Options& o) {
  const bool kp = o.hierarchy == "kp";
  const std::string& id = o.identity;
  static const std::vector<std::string> kp_ids{"three-term", "hirota", "determinant", "addition", "giambelli"};
  static const std::vector<std::string> bkp_ids{"four-term", "hirota", "pfaffian-addition", "giambelli"};
  const auto& allowed = kp ? kp_ids : bkp_ids;
  if (std::find(allowed.begin(), allowed.end(), id) == allowed.end())
    throw UsageError("identity \"" + id + "\" is not available for hierarchy " + o.hierarchy);
  if (o.samples < 1) throw UsageError("--samples must be positive");
  if (o.tau_path.empty() && !(id == "giambelli" && !o.seed_path.empty())) throw UsageError("check requires --tau");

  kptau::CheckOptions opts;
  opts.mode = o.mode == "exact" ? kptau::CheckMode::Exact : kptau::CheckMode::Graded;
  opts.samples = o.samples;
  opts.seed = o.rng_seed;

  kptau::CheckReport report;
  if (id == "giambelli") {
    report = check_giambelli(o);
  } else {
    kptau::GradedSeries tau = load_tau(o.tau_path, o.hierarchy, o.max_weight);
    if (id == "three-term") report = kptau::kp_three_term_check(tau, opts);
    if (id == "determinant") report = kptau::kp_determinant_formula_check(tau, o.order.value_or(2), opts);
    if (id == "addition") report = kptau::kp_addition_formula_check(tau, o.order.value_or(2), opts);
    if (id == "hirota") report = kp ? kptau::kp_hirota_check(tau) : kptau::bkp_hirota_check(tau);
    if (id == "four-term") report = kptau::bkp_four_term_check(tau, opts);
    if (id == "pfaffian-addition") report = kptau::bkp_pfaffian_addition_check(tau, o.order.value_or(4), opts);
  }
  emit(kptau::to_json(report, o.timing), o.out_path);
  return report.pass ? kExitOk : kExitFailed;
}

int run_selftest(const Options& o) {
  kptau::AcceptanceConfig cfg;
  if (o.max_weight) cfg.max_weight = *o.max_weight;
  if (cfg.max_weight < 6) throw UsageError("selftest needs --max-weight >= 6");
  cfg.seed = o.rng_seed;
  json criteria = json::array();
  bool all = true;
  auto list = kptau::acceptance_criteria();
  for (std::size_t i = 0; i < list.size(); ++i) {
    kptau::CriterionResult r = kptau::run_criterion(list[i], static_cast<int>(i + 1), cfg);
    json entry = {{"id", r.id}, {"name", r.name}, {"pass", r.pass}, {"problems", r.problems}};
    if (o.timing) entry["elapsed_ms"] = r.elapsed_ms;
    criteria.push_back(std::move(entry));
    all = all && r.pass;
  }
  emit({{"criteria", criteria}, {"max_weight", cfg.max_weight}, {"pass", all}}, o.out_path);
  return all ? kExitOk : kExitFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact KP/BKP tau function toolkit"};
  app.require_subcommand(1);
  Options o;

  auto add_out = [&](CLI::App* sub) { sub->add_option("--out", o.out_path, "Write JSON here instead of stdout"); };
  auto add_hierarchy = [&](CLI::App* sub) {
    sub->add_option("--hierarchy", o.hierarchy, "kp or bkp")->check(CLI::IsMember({"kp", "bkp"}));
  };
  auto add_max_weight = [&](CLI::App* sub, const char* what) {
    sub->add_option("--max-weight", o.max_weight, what)->check(CLI::NonNegativeNumber);
  };

  auto* schur = app.add_subcommand("schur", "Schur function chi_lambda as a series");
  schur->add_option("--partition", o.partition, "Comma-separated parts, e.g. 2,1")->required();
  schur->add_option("--truncation", o.truncation, "Truncation weight (default |lambda|)");
  add_out(schur);

  auto* schurq = app.add_subcommand("schurq", "Schur Q-function Q_lambda as a series");
  schurq->add_option("--partition", o.partition, "Comma-separated strict parts, e.g. 3,1")->required();
  schurq->add_option("--truncation", o.truncation, "Truncation weight (default |lambda|)");
  schurq->add_flag("--half", o.half, "Evaluate at x/2");
  add_out(schurq);

  auto* expand = app.add_subcommand("expand", "Expand tau in the Schur or Q basis");
  add_hierarchy(expand);
  expand->add_option("--tau", o.tau_path, "Series JSON file")->required();
  add_max_weight(expand, "Truncate tau to this weight first");
  add_out(expand);

  auto* synth = app.add_subcommand("synth", "Synthesize a tau function from Giambelli seed data");
  add_hierarchy(synth);
  synth->add_option("--seed-table", o.seed_path, "Seed JSON file")->required();
  add_max_weight(synth, "Weight of the synthesized table and series");
  add_out(synth);

  auto* check = app.add_subcommand("check", "Verify a hierarchy identity");
  add_hierarchy(check);
  check->add_option("--identity", o.identity, "Identity name")
      ->required()
      ->check(CLI::IsMember(
          {"three-term", "four-term", "hirota", "determinant", "addition", "pfaffian-addition", "giambelli"}));
  check->add_option("--mode", o.mode, "exact or graded")->check(CLI::IsMember({"exact", "graded"}));
  add_max_weight(check, "Truncate tau to this weight first");
  check->add_option("--rng-seed", o.rng_seed, "Seed for exact-mode parameter sampling");
  check->add_option("--samples", o.samples, "Exact-mode parameter tuples");
  check->add_option("--order", o.order, "Number of parameters for determinant/addition/pfaffian-addition");
  check->add_option("--tau", o.tau_path, "Series JSON file");
  check->add_option("--seed-table", o.seed_path, "Coefficient table JSON (giambelli only)");
  check->add_flag("--timing", o.timing, "Include elapsed_ms in the report");
  add_out(check);

  auto* selftest = app.add_subcommand("selftest", "Run the acceptance suite");
  add_max_weight(selftest, "Base truncation weight");
  selftest->add_option("--rng-seed", o.rng_seed, "Seed for random data");
  selftest->add_flag("--timing", o.timing, "Include elapsed_ms per criterion");
  add_out(selftest);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*schur) return run_schur(o);
    if (*schurq) return run_schurq(o);
    if (*expand) return run_expand(o);
    if (*synth) return run_synth(o);
    if (*check) return run_check(o);
    if (*selftest) return run_selftest(o);
  } catch (const json::exception& e) {
    std::cerr << "error: malformed document: " << e.what() << "\n";
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
  }
  return kExitUsage;
}
