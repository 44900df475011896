#include <gtest/gtest.h>

#include "oracles.hpp"

using namespace propmet;

namespace {

ScenarioConfig config_for(const std::string& id) {
  ScenarioConfig c;
  c.scenario = id;
  return c;
}

const Json* find_step(const Json& report, const std::string& name) {
  for (const auto& s : report["steps"]) {
    if (s["step"] == name) return &s;
  }
  return nullptr;
}

std::string check_status(const Json& step, const std::string& property) {
  for (const auto& c : step["checks"]) {
    if (c["property"] == property) return c["status"].get<std::string>();
  }
  return "missing";
}

}  // namespace

TEST(Pipeline, WitnessOnEveryProperScenario) {
  for (const auto& id : scenario_ids()) {
    if (id == "trivial-action") continue;
    const auto r = run_pipeline(config_for(id));
    EXPECT_TRUE(r.witness) << id << "\n" << report_text(r.report);
    EXPECT_EQ(r.report["verdict"], kWitnessVerdict) << id;
    EXPECT_EQ(r.report["steps"].size(), 8u) << id;
    for (const auto& flag : {"invariant", "finite", "compatible", "proper"}) {
      EXPECT_EQ(r.report["flags"][flag], "pass") << id << " " << flag;
    }
  }
}

TEST(Pipeline, TrivialActionStopsAtProperness) {
  const auto r = run_pipeline(config_for("trivial-action"));
  EXPECT_FALSE(r.witness);
  EXPECT_EQ(r.report["verdict"], "rejected");
  ASSERT_EQ(r.report["steps"].size(), 1u);
  const auto& step = r.report["steps"][0];
  EXPECT_EQ(step["step"], "proper-action");
  EXPECT_EQ(check_status(step, "transporters-finite"), "fail");
  EXPECT_NE(step["checks"][0]["detail"]["witness"].get<std::string>().find("infinite"), std::string::npos);
}

TEST(Pipeline, TamperedBridgesAreRejected) {
  auto c = config_for("2z-on-z");
  c.bridge_weight_scale = Rational(1, 4);
  const auto r = run_pipeline(c);
  EXPECT_FALSE(r.witness);
  const Json* step = find_step(r.report, "bridge-construction");
  ASSERT_NE(step, nullptr);
  EXPECT_EQ(check_status(*step, "ball-coincidence-below-one"), "fail");
}

TEST(Pipeline, ForwardsInvariantBaseAndAveragesOtherwise) {
  const auto plain = run_pipeline(config_for("c3-finite"));
  const Json* k = find_step(plain.report, "koszul-average");
  ASSERT_NE(k, nullptr);
  EXPECT_FALSE((*k)["forwarded_base"].get<bool>());
  const auto z = run_pipeline(config_for("z-line"));
  EXPECT_TRUE((*find_step(z.report, "koszul-average"))["forwarded_base"].get<bool>());
  auto never = config_for("c3-finite");
  never.koszul = "never";
  EXPECT_FALSE(run_pipeline(never).witness);
}

TEST(Pipeline, VerifySuiteListsEveryCheck) {
  const auto r = verify_suite(config_for("c3-finite"));
  EXPECT_TRUE(r.all_checks_pass);
  std::size_t checks = 0;
  for (const auto& s : r.report["steps"]) checks += s["checks"].size();
  EXPECT_EQ(r.report["properties"].size(), checks);
  EXPECT_EQ(r.report["mode"], "verify");
}

TEST(Pipeline, LinearBaseIsInvariantAndCanBeAveraged) {
  auto c = config_for("z-line");
  c.base_metric = "d_f";
  c.d_f_coefficients = {Rational(1, 2)};
  c.window = 4;
  const auto forwarded = run_pipeline(c);
  EXPECT_TRUE(forwarded.witness) << report_text(forwarded.report);
  EXPECT_TRUE((*find_step(forwarded.report, "koszul-average"))["forwarded_base"].get<bool>());
  c.koszul = "always";
  const auto averaged = run_pipeline(c);
  EXPECT_TRUE(averaged.witness) << report_text(averaged.report);
  EXPECT_FALSE((*find_step(averaged.report, "koszul-average"))["forwarded_base"].get<bool>());
}

TEST(Pipeline, ReportsAreDeterministic) {
  for (const auto& id : {"2z-on-z", "c3-finite", "two-lines"}) {
    auto c = config_for(id);
    c.seed = 42;
    EXPECT_EQ(report_text(run_pipeline(c).report), report_text(run_pipeline(c).report)) << id;
  }
}

TEST(Pipeline, ProbesAndMetricTable) {
  auto c = config_for("2z-on-z");
  c.probes = {{"1", "5"}};
  c.metric_table = true;
  const auto r = run_pipeline(c);
  const Json* fin = find_step(r.report, "final-metric");
  ASSERT_NE(fin, nullptr);
  const auto& probes = (*fin)["probes"];
  ASSERT_EQ(probes.size(), 4u);
  EXPECT_EQ(probes[0]["final"], "1");
  EXPECT_EQ(probes[1]["final"], "2");
  EXPECT_EQ(probes[3]["pair"], Json::array({"1", "5"}));
  EXPECT_EQ(probes[3]["final"], "2");
  EXPECT_EQ((*fin)["metric_table"].size(), 45u);
}

TEST(Config, RoundTripsThroughJson) {
  ScenarioConfig c;
  c.scenario = "two-lines";
  c.fundamental_set = std::vector<std::string>{"0_a", "0_b"};
  c.radii = {Rational(1, 2), Rational(3)};
  c.seed = 9;
  c.bridge_weight_scale = Rational(3, 2);
  c.probes = {{"0_a", "2_b"}};
  const auto back = parse_config(to_json(c));
  EXPECT_EQ(to_json(back), to_json(c));
}

TEST(Config, RejectsMalformedDocuments) {
  Json j = to_json(ScenarioConfig{});
  j["typo"] = 1;
  EXPECT_THROW(parse_config(j), UsageError);
  Json wrong = to_json(ScenarioConfig{});
  wrong["schema"] = "other/1";
  EXPECT_THROW(parse_config(wrong), UsageError);
  Json radii = to_json(ScenarioConfig{});
  radii["radii"] = Json::array({"0"});
  EXPECT_THROW(parse_config(radii), UsageError);
  Json koszul = to_json(ScenarioConfig{});
  koszul["koszul"] = "sometimes";
  EXPECT_THROW(parse_config(koszul), UsageError);
  Json type = to_json(ScenarioConfig{});
  type["seed"] = "x";
  EXPECT_THROW(parse_config(type), UsageError);
  EXPECT_THROW(parse_config(Json::array()), UsageError);
  EXPECT_THROW(run_pipeline(config_for("no-such-scenario")), UsageError);
}

TEST(Dot, ExportsSticksAndIslands) {
  const auto r = run_pipeline(config_for("2z-on-z"));
  ASSERT_TRUE(r.sticks && r.atlas && r.island_partition);
  const auto sticks = stick_graph_dot(*r.sticks, r.window, *r.island_partition);
  EXPECT_NE(sticks.find("graph sticks {"), std::string::npos);
  EXPECT_NE(sticks.find("\"0\" -- \"1\" [weight=\"2\"]"), std::string::npos);
  const auto quotient = bridge_quotient_dot(*r.atlas, r.window, *r.island_partition);
  EXPECT_NE(quotient.find("i0 -- i1 [weight=\"1\"]"), std::string::npos);
  EXPECT_EQ(quotient.find("i0 -- i0"), std::string::npos);
}
