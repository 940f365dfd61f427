#include <gtest/gtest.h>

#include "test_util.hpp"

using namespace kptau;
using namespace kptau::testing;

namespace {

GradedSeries parse_series(const std::string& text) { return series_from_json(parse_json_text(text)); }

void expect_same_report(const CheckReport& a, const CheckReport& b) {
  EXPECT_EQ(a.identity, b.identity);
  EXPECT_EQ(a.mode, b.mode);
  EXPECT_EQ(a.guaranteed_weight, b.guaranteed_weight);
  EXPECT_EQ(a.pass, b.pass);
  EXPECT_EQ(a.failures, b.failures);
  EXPECT_EQ(a.parameter_names, b.parameter_names);
  EXPECT_EQ(a.samples, b.samples);
  EXPECT_EQ(a.rng_seed, b.rng_seed);
  EXPECT_EQ(a.convention, b.convention);
}

}  // namespace

TEST(SeriesJson, Format) {
  json j = to_json(schur_poly(Partition({2, 1})));
  EXPECT_EQ(j.dump(), R"({"kind":"kp","terms":[{"coeff":"1/3","exps":{"1":3}},{"coeff":"-1","exps":{"3":1}}],"truncation_weight":3})");
}

TEST(SeriesJson, RoundTrip) {
  std::mt19937_64 rng(71);
  for (VarKind kind : {VarKind::All, VarKind::Odd}) {
    GradedSeries s = random_series(Layout{kind, {"x"}, {}}, 7, rng);
    EXPECT_EQ(series_from_json(to_json(s)), s);
    EXPECT_EQ(to_json(series_from_json(to_json(s))).dump(), to_json(s).dump());
  }
  EXPECT_EQ(series_from_json(to_json(kone(0))), kone(0));
}

TEST(SeriesJson, TermOrderIsCanonical) {
  GradedSeries a = parse_series(R"({"kind":"kp","truncation_weight":3,"terms":[{"exps":{"3":1},"coeff":"1"},{"exps":{},"coeff":"2"}]})");
  GradedSeries b = parse_series(R"({"kind":"kp","truncation_weight":3,"terms":[{"exps":{},"coeff":"2"},{"exps":{"3":1},"coeff":"1"}]})");
  EXPECT_EQ(a, b);
  EXPECT_EQ(to_json(a).dump(), to_json(b).dump());
}

TEST(SeriesJson, Rejections) {
  EXPECT_THROW(parse_series(R"({"kind":"bkp","truncation_weight":4,"terms":[{"exps":{"2":1},"coeff":"1"}]})"), ParseError);
  EXPECT_THROW(parse_series(R"({"kind":"kp","truncation_weight":2,"terms":[{"exps":{"3":1},"coeff":"1"}]})"), ParseError);
  EXPECT_THROW(parse_series(R"({"kind":"kp","truncation_weight":4,"terms":[{"exps":{"1":1},"coeff":"1"},{"exps":{"1":1},"coeff":"2"}]})"), ParseError);
  EXPECT_THROW(parse_series(R"({"kind":"mkp","truncation_weight":4,"terms":[]})"), ParseError);
  EXPECT_THROW(parse_series(R"({"kind":"kp","truncation_weight":-1,"terms":[]})"), ParseError);
  EXPECT_THROW(parse_series(R"({"kind":"kp","truncation_weight":4,"terms":[{"exps":{"x1":1},"coeff":"1"}]})"), ParseError);
  EXPECT_THROW(parse_series(R"({"kind":"kp","truncation_weight":4,"terms":[{"exps":{"1":1},"coeff":0.5}]})"), ParseError);
  EXPECT_THROW(parse_series(R"({"kind":"kp","truncation_weight":4})"), ParseError);
  EXPECT_THROW(parse_json_text("{"), ParseError);
}

TEST(TableJson, RoundTrip) {
  SchurTable s = expand_schur(exp_x1(VarKind::All, 5));
  EXPECT_EQ(schur_table_from_json(to_json(s)), s);
  QTable t = expand_q(exp_x1(VarKind::Odd, 7));
  EXPECT_EQ(q_table_from_json(to_json(t)), t);
}

TEST(TableJson, Rejections) {
  json wrong_basis = to_json(expand_q(bone(3)));
  EXPECT_THROW(schur_table_from_json(wrong_basis), ParseError);
  EXPECT_THROW(q_table_from_json(parse_json_text(R"({"basis":"schur-q","max_weight":4,"entries":[{"partition":[2,2],"value":"1"}]})")),
               ParseError);
  EXPECT_THROW(schur_table_from_json(parse_json_text(R"({"basis":"schur","max_weight":2,"entries":[{"partition":[2,1],"value":"1"}]})")),
               ParseError);
}

TEST(SeedJson, RoundTrip) {
  std::mt19937_64 rng(72);
  KpHookSeed k = random_kp_seed(rng);
  EXPECT_EQ(kp_seed_from_json(to_json(k)), k);
  BkpPairSeed b = random_bkp_seed(rng);
  EXPECT_EQ(bkp_seed_from_json(to_json(b)), b);
}

TEST(SeedJson, Examples) {
  KpHookSeed k = kp_seed_from_json(parse_json_text(R"({"hooks":[{"arm":0,"leg":0,"value":"1"}]})"));
  EXPECT_EQ(k.value(0, 0), q(1));
  BkpPairSeed b = bkp_seed_from_json(parse_json_text(R"({"singles":[{"row":1,"value":"1"}],"pairs":[{"rows":[2,1],"value":"1/3"}]})"));
  EXPECT_EQ(b.entry(1, 0), q(1));
  EXPECT_EQ(b.entry(2, 1), q(1, 3));
  EXPECT_EQ(b.entry(1, 2), q(-1, 3));
}

TEST(SeedJson, Rejections) {
  EXPECT_THROW(kp_seed_from_json(parse_json_text(R"({"hooks":[{"arm":0,"leg":0,"value":"1"},{"arm":0,"leg":0,"value":"2"}]})")), ParseError);
  EXPECT_THROW(kp_seed_from_json(parse_json_text(R"({"hooks":[{"arm":-1,"leg":0,"value":"1"}]})")), ParseError);
  EXPECT_THROW(bkp_seed_from_json(parse_json_text(R"({"singles":[],"pairs":[{"rows":[1,2],"value":"1"}]})")), ParseError);
  EXPECT_THROW(bkp_seed_from_json(parse_json_text(R"({"singles":[{"row":0,"value":"1"}],"pairs":[]})")), ParseError);
}

TEST(FrobeniusJson, RoundTrip) {
  FrobeniusCoord f({3, 1}, {2, 0});
  EXPECT_EQ(to_json(f).dump(), R"({"arms":[3,1],"legs":[2,0]})");
  EXPECT_EQ(frobenius_from_json(to_json(f)), f);
  EXPECT_THROW(frobenius_from_json(parse_json_text(R"({"arms":[0,1],"legs":[1,0]})")), ParseError);
}

TEST(ReportJson, RoundTripGraded) {
  CheckReport r = kp_three_term_check(kone(8) + lift(schur_poly(Partition({2, 2})), 8));
  ASSERT_FALSE(r.pass);
  json j = to_json(r);
  EXPECT_FALSE(j.contains("elapsed_ms"));
  EXPECT_FALSE(j.contains("convention"));
  expect_same_report(report_from_json(j), r);
}

TEST(ReportJson, RoundTripExact) {
  CheckReport r = bkp_four_term_check(bone(6) + scale_variables(q_schur_poly(StrictPartition({3, 2, 1}), 6), q(1, 2)),
                                      CheckOptions{CheckMode::Exact});
  ASSERT_FALSE(r.pass);
  json j = to_json(r, true);
  EXPECT_TRUE(j.contains("elapsed_ms"));
  EXPECT_EQ(j["convention"], "eq73-normalized");
  EXPECT_EQ(j["mode"], "exact");
  EXPECT_TRUE(j["failures"][0].contains("sample"));
  expect_same_report(report_from_json(j), r);
}

TEST(ReportJson, Rejections) {
  json j = to_json(kp_three_term_check(kone(4)));
  j["pass"] = false;
  EXPECT_THROW(report_from_json(j), ParseError);
  j = to_json(kp_three_term_check(kone(4)));
  j["mode"] = "fuzzy";
  EXPECT_THROW(report_from_json(j), ParseError);
}

TEST(Json, DeterministicBytes) {
  GradedSeries bad = kone(6) + lift(schur_poly(Partition({2, 2})), 6);
  std::string a = to_json(kp_three_term_check(bad, CheckOptions{CheckMode::Exact})).dump(2);
  std::string b = to_json(kp_three_term_check(bad, CheckOptions{CheckMode::Exact})).dump(2);
  EXPECT_EQ(a, b);
}
