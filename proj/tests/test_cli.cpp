#include <cmath>

#include <gtest/gtest.h>

#include "cli.hpp"

namespace kappa::cli {
namespace {

Options measure(const std::string& command, const std::string& input) {
  Options o;
  o.command = command;
  o.input = input;
  return o;
}

const Json* result(const Json& report, const std::string& q) {
  for (const Json& r : report["results"])
    if (r["quantity"] == q) return &r;
  return nullptr;
}

TEST(Cli, IsotropicWithClosedFormAgreement) {
  RunResult r = run(measure("state-measure", R"({"kind":"isotropic","params":{"t":0.9,"d":3}})"));
  EXPECT_EQ(r.exit_code, kOk);
  EXPECT_EQ(r.report["schema"], "kappa-cost/1");
  EXPECT_NEAR((*result(r.report, "e_kappa"))["value_bits"].get<double>(), std::log2(2.7), 1e-6);
  ASSERT_EQ(r.report["cross_checks"].size(), 1u);
  EXPECT_TRUE(r.report["cross_checks"][0]["agree"].get<bool>());
}

TEST(Cli, DephasingAtZero) {
  RunResult r = run(measure("channel-measure", R"({"kind":"dephasing","params":{"q":0}})"));
  EXPECT_NEAR((*result(r.report, "e_kappa"))["value_bits"].get<double>(), 1.0, 1e-6);
  EXPECT_TRUE(r.report["cross_checks"][0]["agree"].get<bool>());
}

TEST(Cli, GaussianInput) {
  Options o = measure("channel-measure", R"({"kind":"thermal","params":{"eta":0.5,"n_b":0.25}})");
  RunResult r = run(o);
  const Json& g = *result(r.report, "gaussian");
  EXPECT_EQ(g["tag"], "value");
  EXPECT_EQ(g["value_bits"].get<double>(), 1.0);
  o.quantities = {"e_kappa"};
  EXPECT_THROW(run(o), ParseError);
}

TEST(Cli, ParseErrorsCarryPosition) {
  try {
    parse_json_text("{\n  \"kind\": \"isotropic\",\n  \"params\": {\"t\": }\n}");
    FAIL() << "expected a parse error";
  } catch (const ParseError& e) {
    EXPECT_NE(std::string(e.what()).find("line 3"), std::string::npos) << e.what();
  }
  EXPECT_THROW(run(measure("state-measure", R"({"kind":"isotropic","params":{"t":0.9}})")), ParseError);
  EXPECT_THROW(run(measure("state-measure", R"({"kind":"isotropic","params":{"t":0.9,"d":3,"x":1}})")), ParseError);
  EXPECT_THROW(run(measure("state-measure", R"({"kind":"mystery"})")), ParseError);
}

TEST(Cli, DimensionMismatch) {
  EXPECT_THROW(run(measure("state-measure", R"({"kind":"explicit","dims":[2,2],"matrix":[[1,0],[0,0]]})")),
               DimensionError);
}

TEST(Cli, StateRoundTripThroughJson) {
  DensityMatrix rho = random_density({2, 3}, 4);
  Json j = parse_json_text(encode_state(rho).dump());
  Input in = decode_input(j, 0);
  ASSERT_TRUE(in.state.has_value());
  EXPECT_EQ(max_abs_diff(in.state->matrix(), rho.matrix()), 0.0);
  QuantumChannel n = random_channel(2, 3, 2, 5);
  Input c = decode_input(parse_json_text(encode_channel(n).dump()), 0);
  EXPECT_EQ(max_abs_diff(c.channel->choi().matrix(), n.choi().matrix()), 0.0);
}

TEST(Cli, ReportRoundTripsAndIsDeterministic) {
  Options o = measure("one-shot", R"({"kind":"random","params":{"dims":[2,2]}})");
  o.seed = 7;
  o.witnesses = true;
  RunResult a = run(o), b = run(o);
  Json ja = a.report, jb = b.report;
  EXPECT_EQ(parse_json_text(ja.dump()), ja);
  ja.erase("wall_clock_seconds");
  jb.erase("wall_clock_seconds");
  EXPECT_EQ(ja.dump(), jb.dump());
  const Json& s = *result(a.report, "one_shot");
  EXPECT_TRUE(s["dilution_check"]["cppt"].get<bool>());
  EXPECT_TRUE(s.contains("witness"));
}

TEST(Cli, AmplitudeDampingSweepCsv) {
  Options o;
  o.command = "sweep";
  o.steps = 5;
  o.jobs = 3;
  RunResult r = run(o);
  EXPECT_EQ(r.exit_code, kOk);
  EXPECT_EQ(r.csv.substr(0, r.csv.find('\n')), "r,e_kappa_bits,q_theta_bits,error");
  const Json& rows = r.report["rows"];
  ASSERT_EQ(rows.size(), 5u);
  EXPECT_EQ(rows[0]["r"].get<double>(), 0.0);
  EXPECT_NEAR(rows[0]["e_kappa_bits"].get<double>(), 1.0, 1e-6);
  EXPECT_NEAR(rows[4]["e_kappa_bits"].get<double>(), 0.0, 1e-6);
  for (const Json& row : rows)
    EXPECT_NEAR(row["e_kappa_bits"].get<double>(), row["q_theta_bits"].get<double>(), 1e-4);
}

TEST(Cli, FamilySweepNeedsNumericParameter) {
  Options o;
  o.command = "sweep";
  o.input = R"({"kind":"werner","params":{"p":0,"d":2}})";
  o.param = "p";
  o.steps = 3;
  RunResult r = run(o);
  EXPECT_NEAR(r.report["rows"][2]["e_kappa_bits"].get<double>(), 1.0, 1e-6);
  o.param = "q";
  EXPECT_THROW(run(o), ParseError);
  o.param = "p";
  o.steps = 1;
  EXPECT_THROW(run(o), ParseError);
}

TEST(Cli, NumbersUseShortestRoundTrip) {
  EXPECT_EQ(format_number(0.1), "0.1");
  EXPECT_EQ(format_number(1.0), "1");
  EXPECT_EQ(std::stod(format_number(std::log2(3.0))), std::log2(3.0));
}

}  // namespace
}  // namespace kappa::cli
