#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <numbers>

#include "gcurv/report.hpp"

using namespace gcurv;

namespace {

RunReport sample_report() {
  RunReport r;
  r.command = "gcurv tube --surface \"odd, name\" --eps 0.1";
  r.surface = "torus_rev_r3";
  r.m = 2;
  r.k = 3;
  r.chi = 0;
  r.parameters = {{"R", 2.0}, {"r", 0.5}};
  r.inputs = {{"eps", 0.1}, {"seed", 42}};
  r.resolution = {96, 128};
  r.results = {{"integral", std::numbers::pi / 3}, {"residual", 1.2345678901234567e-13}, {"tiny", 5e-324},
               {"negative", -0.0}, {"big", 1.7976931348623157e308}};
  r.status = "check-failed";
  r.wall_time_s = 0.123456789;
  return r;
}

}  // namespace

TEST(RunReport, JsonRoundTrip) {
  const RunReport r = sample_report();
  const std::string text = dump_json(to_json(r));
  const RunReport back = report_from_json(nlohmann::ordered_json::parse(text));
  EXPECT_EQ(back, r);
}

TEST(RunReport, JsonUnknownChiIsNull) {
  RunReport r = sample_report();
  r.chi.reset();
  const auto j = nlohmann::ordered_json::parse(dump_json(to_json(r)));
  EXPECT_TRUE(j.at("chi").is_null());
  EXPECT_EQ(report_from_json(j), r);
}

TEST(RunReport, JsonPrintsSeventeenDigits) {
  RunReport r;
  r.results = {{"third", 1.0 / 3.0}, {"one", 1.0}};
  const std::string text = dump_json(to_json(r));
  EXPECT_NE(text.find("0.33333333333333331"), std::string::npos) << text;
  EXPECT_NE(text.find("\"one\": 1.0"), std::string::npos) << text;
}

TEST(RunReport, JsonKeyOrderIsStable) {
  const auto j = to_json(sample_report());
  std::vector<std::string> keys;
  for (const auto& [k, v] : j.items()) keys.push_back(k);
  const std::vector<std::string> want{"command", "surface",    "m",       "k",      "chi",        "parameters",
                                      "inputs",  "resolution", "results", "status", "wall_time_s"};
  EXPECT_EQ(keys, want);
}

TEST(RunReport, CsvRoundTrip) {
  const RunReport r = sample_report();
  EXPECT_EQ(report_from_csv(to_csv(r)), r);
  RunReport empty;
  EXPECT_EQ(report_from_csv(to_csv(empty)), empty);
}

TEST(RunReport, CsvRejectsUnknownKeys) {
  EXPECT_THROW(report_from_csv("key,value\nbogus,1\n"), ParseError);
  EXPECT_THROW(report_from_csv("name,value\n"), ParseError);
  EXPECT_THROW(report_from_csv("key,value\nm,two\n"), ParseError);
}

TEST(RunReport, JsonMissingFieldNamesIt) {
  auto j = to_json(sample_report());
  j.erase("results");
  try {
    report_from_json(j);
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.field(), "results");
  }
}

TEST(RunReport, TableMentionsEveryResult) {
  const std::string t = to_table(sample_report());
  for (const auto& [k, v] : sample_report().results) EXPECT_NE(t.find(k), std::string::npos) << k;
  EXPECT_NE(t.find("check-failed"), std::string::npos);
}
