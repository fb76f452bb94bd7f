#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "blab/experiments/scenarios.hpp"

using namespace blab;
using namespace blab::experiments;

namespace {

std::string read(const std::filesystem::path& p) {
  std::ifstream is(p);
  std::ostringstream os;
  os << is.rdbuf();
  return os.str();
}

std::filesystem::path scratch(const std::string& name) {
  const auto p = std::filesystem::temp_directory_path() / ("blab_exp_" + name);
  std::filesystem::remove_all(p);
  return p;
}

}  // namespace

TEST(Config, DefaultsAndRoundTrip) {
  for (Scenario s : all_scenarios()) {
    const ScenarioConfig c = default_config(s);
    EXPECT_NO_THROW(validate(c)) << to_string(s);
    const ScenarioConfig back = parse_config(to_json(c));
    EXPECT_EQ(to_json(back), to_json(c));
  }
  EXPECT_EQ(parse_scenario("conj-smoothing"), Scenario::ConjSmoothing);
  EXPECT_THROW(parse_scenario("smoothing"), ConfigError);
}

TEST(Config, Overrides) {
  const auto c = parse_config(R"({"scenario": "ftc", "seed": 7, "grid": {"nr": 8},
                                  "domain": {"kind": "annulus", "rho": 0.25},
                                  "tolerances": {"ftc_sup": 1e-5}})");
  EXPECT_EQ(c.seed, 7u);
  EXPECT_EQ(c.grid.nr, 8);
  EXPECT_EQ(c.grid.ntheta, default_config(Scenario::Ftc).grid.ntheta);
  ASSERT_EQ(c.domains.size(), 1u);
  EXPECT_EQ(c.domains[0].rho, 0.25);
  EXPECT_EQ(c.tol("ftc_sup"), 1e-5);
  EXPECT_EQ(parse_config(R"({"k": 1})", Scenario::Duality).k, 1);
}

TEST(Config, Rejections) {
  const char* bad[] = {
      "{",                                                   // parse error
      R"([1, 2])",                                           // not an object
      R"({"k": 1})",                                         // no scenario
      R"({"scenario": "ftc", "bogus": 1})",                  // unknown key
      R"({"scenario": "ftc", "grid": {"nr": 2}})",           // out of range
      R"({"scenario": "ftc", "grid": {"nr": 8.5}})",         // wrong type
      R"({"scenario": "ftc", "seed": -3})",                  // negative seed
      R"({"scenario": "ftc", "tolerances": {"ftc_sup": 0}})",
      R"({"scenario": "ftc", "tolerances": {"envelope": 1}})",  // not read by ftc
      R"({"scenario": "hardy", "domain": "annulus"})",
      R"({"scenario": "ftc", "domain": "torus"})",
      R"({"scenario": "decomposition", "k": 3})",
      R"({"scenario": "duality", "k": 1, "k1": 2})",
  };
  for (const char* b : bad) EXPECT_THROW(parse_config(b), ConfigError) << b;
  EXPECT_THROW(parse_config(R"({"scenario": "ftc"})", Scenario::Hardy), ConfigError);
  EXPECT_THROW(parse_suite(R"({"scenarios": 3})"), ConfigError);
}

TEST(Report, CsvFormatting) {
  Table t{"t", {"a", "b_re", "b_im"}, {}};
  auto row = std::vector<std::string>{cell(std::string("x,y"))};
  for (auto& s : cells(Complex(1.5, -0.25))) row.push_back(s);
  t.add(row);
  EXPECT_EQ(t.csv(), "a,b_re,b_im\n\"x,y\",1.5,-0.25\n");
  EXPECT_THROW(t.add({"1"}), ContractError);
  EXPECT_EQ(cell(1.0 / 3.0), "0.333333333333");
}

TEST(Report, EmptySuiteHasZeroCriteria) {
  EXPECT_TRUE(parse_suite(R"({"scenarios": []})").empty());
  ReportBundle b;
  b.scenario = "suite";
  EXPECT_TRUE(b.passed());
  EXPECT_NE(b.summary().find("criteria: 0"), std::string::npos);
  const auto dir = scratch("empty");
  emit_report(b, dir.string());
  EXPECT_TRUE(std::filesystem::exists(dir / "summary.txt"));
}

TEST(Report, UnwritableDirectory) {
  ReportBundle b;
  EXPECT_THROW(emit_report(b, "/proc/blab_no_such_dir/x"), Error);
}

TEST(Scenarios, FtcSmallIsDeterministic) {
  ScenarioConfig c = default_config(Scenario::Ftc);
  c.family_size = 2;
  c.grid = {6, 8, 1e-3};
  const auto a = run_scenario(c), b = run_scenario(c);
  ASSERT_EQ(a.criteria.size(), 1u);
  EXPECT_EQ(a.criteria[0].id, 1);
  EXPECT_TRUE(a.criteria[0].passed) << a.criteria[0].detail;
  ASSERT_EQ(a.tables.size(), b.tables.size());
  for (std::size_t i = 0; i < a.tables.size(); ++i) EXPECT_EQ(a.tables[i].csv(), b.tables[i].csv());
  c.seed = 99;
  EXPECT_NE(run_scenario(c).tables[0].csv(), a.tables[0].csv());
}

TEST(Scenarios, ConjSmoothingExamples) {
  ScenarioConfig c = default_config(Scenario::ConjSmoothing);
  c.family_size = 2;
  const auto b = run_scenario(c);
  std::vector<int> ids;
  for (const auto& r : b.criteria) ids.push_back(r.id);
  EXPECT_EQ(ids, (std::vector<int>{5, 9, 6, 9}));
  // f = 1 + 2z: B(conj f) = 1
  const auto& disk = b.tables.front();
  ASSERT_EQ(disk.name, "conj_disk");
  EXPECT_EQ(disk.rows[0][0], "1+2z");
  EXPECT_LT(std::stod(disk.rows[0][3]), 1e-10);
  for (const auto& t : b.tables)
    if (t.name == "conj_annulus_coefficient") EXPECT_NEAR(std::stod(t.rows[0][1]), 0.375 / std::log(2.0), 1e-9);
}

TEST(Scenarios, DualityTableSchema) {
  ScenarioConfig c = default_config(Scenario::Duality);
  c.family_size = 3;
  c.k = c.k1 = c.k2 = 1;
  const auto b = run_scenario(c);
  const auto& t = b.tables.front();
  EXPECT_EQ(t.header, (std::vector<std::string>{"k1", "f", "dualitySup", "norm_k2", "ratio"}));
  EXPECT_EQ(t.rows.size(), 3u);
}

TEST(Scenarios, EmittedFilesMatchTables) {
  ScenarioConfig c = default_config(Scenario::Hardy);
  c.family_size = 1;
  c.collar = {32, 32, 0.0};
  const auto b = run_scenario(c);
  const auto dir = scratch("hardy");
  emit_report(b, dir.string());
  for (const auto& t : b.tables) EXPECT_EQ(read(dir / (t.name + ".csv")), t.csv());
  const std::string summary = read(dir / "summary.txt");
  EXPECT_NE(summary.find("criterion 2"), std::string::npos);
  EXPECT_NE(summary.find("[provenance]"), std::string::npos);
  EXPECT_EQ(parse_config(read(dir / "config.json")).family_size, 1);
}
