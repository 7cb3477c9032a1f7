#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <nlohmann/json.hpp>
#include <string>

#include "abgauge/pipeline/classify.hpp"
#include "abgauge/pipeline/reconstruct.hpp"
#include "abgauge/pipeline/report.hpp"
#include "abgauge/pipeline/scenario.hpp"
#include "test_util.hpp"

using namespace abgauge;
using abgauge::testing::code_of;
using nlohmann::json;

namespace {

json planar(double alpha, double c2_im) {
  return {{"dimension", 2}, {"R", 1.0}, {"flux_profile", {{0, alpha, 0.0}, {2, 0.0, c2_im}}}};
}

json classify_json(const json& c1, const json& c2) {
  return {{"schema", kScenarioSchema}, {"name", "unit"}, {"kind", "classify"}, {"config1", c1}, {"config2", c2}};
}

AngularFunction phi_of(const json& gauge) {
  std::vector<FourierTriple> t;
  for (const auto& row : gauge.at("phi")) t.push_back({row.at(0).get<int>(), row.at(1).get<double>(), row.at(2).get<double>()});
  return AngularFunction::from_triples(t, 32);
}

std::filesystem::path fresh_dir(const std::string& name) {
  const auto d = std::filesystem::temp_directory_path() / ("abgauge_test_" + name);
  std::filesystem::remove_all(d);
  return d;
}

std::size_t data_rows(const std::filesystem::path& csv) {
  std::ifstream in(csv);
  std::string line;
  std::size_t rows = 0;
  bool header = true;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    if (header) {
      header = false;
      continue;
    }
    ++rows;
  }
  return rows;
}

}  // namespace

TEST(Classify, IdenticalConfigsGiveIdentity) {
  const Report r = run_classify(scenario_from_json(classify_json(planar(0.35, 0.03), planar(0.35, 0.03))));
  ASSERT_EQ(r.verdict, Verdict::Equivalent);
  ASSERT_TRUE(r.gauge.has_value());
  EXPECT_EQ(r.gauge->at("m"), 0);
  EXPECT_LT(phi_of(*r.gauge).max_coefficient_magnitude(), 1e-12);
  EXPECT_EQ(exit_code(r), 0);
}

TEST(Classify, SwappingConfigsInvertsGauge) {
  // config2 = config1 + d(theta + 0.1 cos 2 theta)
  const json a = planar(0.35, 0.03), b = planar(1.35, 0.13);
  const Report fwd = run_classify(scenario_from_json(classify_json(a, b)));
  const Report bwd = run_classify(scenario_from_json(classify_json(b, a)));
  ASSERT_EQ(fwd.verdict, Verdict::Equivalent);
  ASSERT_EQ(bwd.verdict, Verdict::Equivalent);
  EXPECT_EQ(fwd.gauge->at("m"), 1);
  EXPECT_EQ(bwd.gauge->at("m"), -1);
  const AngularFunction expected = AngularFunction::trig(0.0, std::vector<double>{0.0, 0.1}, {}, 8);
  EXPECT_LT(phi_of(*fwd.gauge).coefficient_distance(expected), 1e-10);
  EXPECT_LT(phi_of(*bwd.gauge).coefficient_distance(-1.0 * expected), 1e-10);
}

TEST(Classify, DifferentFluxIsNotEquivalent) {
  const Report r = run_classify(scenario_from_json(classify_json(planar(0.35, 0.0), planar(0.45, 0.0))));
  EXPECT_EQ(r.verdict, Verdict::NotEquivalent);
  EXPECT_TRUE(r.witness.has_value());
  EXPECT_EQ(exit_code(r), 0);
}

TEST(Classify, IntegerFluxIsAmbiguous) {
  const Report r = run_classify(scenario_from_json(classify_json(planar(1.0, 0.0), planar(1.0, 0.0))));
  EXPECT_EQ(r.verdict, Verdict::Ambiguous);
  EXPECT_EQ(exit_code(r), 2);
}

TEST(Classify, MismatchedDimensionsRejected) {
  json c2 = {{"dimension", 3}, {"R", 1.0}};
  EXPECT_EQ(code_of([&] { scenario_from_json(classify_json(planar(0.3, 0.0), c2)); }),
            ErrorCode::DimensionMismatch);
}

TEST(Reconstruct, PureAharonovBohm) {
  const json j = {{"schema", kScenarioSchema},
                  {"name", "ab"},
                  {"kind", "reconstruct"},
                  {"config1", {{"dimension", 2}, {"R", 1.0}, {"flux_profile", {{0, 0.4, 0.0}}}}},
                  {"geometry", {{"angles", 60}, {"offsets", 64}, {"rmin", 1.0}, {"rmax", 3.0}}}};
  const Report r = run_reconstruct(scenario_from_json(j));
  ASSERT_NE(r.find("flux.alpha"), nullptr);
  EXPECT_NEAR(r.find("flux.alpha")->value, 0.4, 1e-6);
  EXPECT_LT(r.find("B.max_abs")->value, 1e-9);
  EXPECT_EQ(r.find("V.max_abs")->value, 0.0);
  EXPECT_TRUE(r.all_passed());
  EXPECT_FALSE(r.verdict.has_value());
  EXPECT_EQ(exit_code(r), 0);

  const auto dir = fresh_dir("reconstruct");
  emit_report(r, dir.string(), ReportFormat::All);
  EXPECT_EQ(data_rows(dir / "sinogram_scalar.csv"), 60u * 64u);
  EXPECT_EQ(data_rows(dir / "entries.csv"), r.entries.size());
  std::filesystem::remove_all(dir);
}

TEST(Reconstruct, ZeroPotentialsGiveZeroReport) {
  const json j = {{"schema", kScenarioSchema},
                  {"name", "zero"},
                  {"kind", "reconstruct"},
                  {"config1", {{"dimension", 2}, {"R", 1.0}}},
                  {"geometry", {{"angles", 30}, {"offsets", 32}, {"rmin", 1.0}, {"rmax", 3.0}}}};
  const Report r = run_reconstruct(scenario_from_json(j));
  for (const auto& e : r.entries) {
    if (e.name.find("error") != std::string::npos || e.name.find("max_abs") != std::string::npos ||
        e.name == "flux.alpha")
      EXPECT_EQ(e.value, 0.0) << e.name;
  }
  for (const auto& [name, field] : r.fields) EXPECT_EQ(field.max_abs(), 0.0) << name;
}

TEST(Report, EmptySkeleton) {
  Report r;
  r.scenario = "empty";
  r.kind = "classify";
  const json j = r.to_json();
  EXPECT_EQ(j.at("schema"), kReportSchema);
  EXPECT_TRUE(j.at("verdict").is_null());
  EXPECT_TRUE(j.at("entries").empty());
  const auto dir = fresh_dir("empty_report");
  const auto files = emit_report(r, dir.string(), ReportFormat::Json);
  ASSERT_EQ(files.size(), 1u);
  EXPECT_TRUE(std::filesystem::exists(dir / "report.json"));
  std::filesystem::remove_all(dir);
}

TEST(Report, ClassifySchema) {
  const Report r = run_classify(scenario_from_json(classify_json(planar(0.35, 0.03), planar(1.35, 0.13))));
  const json j = r.to_json();
  EXPECT_EQ(j.at("verdict"), "Equivalent");
  EXPECT_EQ(j.at("gauge").at("m"), 1);
  EXPECT_TRUE(j.at("gauge").at("phi").is_array());
  bool has_tolerance = false;
  for (const auto& e : j.at("entries")) {
    EXPECT_TRUE(e.contains("tolerance"));
    EXPECT_TRUE(e.contains("operation"));
    if (e.at("tolerance").is_number()) has_tolerance = true;
  }
  EXPECT_TRUE(has_tolerance);
  EXPECT_TRUE(r.all_passed());
}

TEST(Report, EntriesPassAgainstTolerance) {
  Report r;
  EXPECT_TRUE(r.add("a", 1e-9, 1e-8, "op").passed);
  EXPECT_FALSE(r.add("b", 1e-7, 1e-8, "op").passed);
  EXPECT_TRUE(r.info("c", 42.0, "op").passed);
  EXPECT_FALSE(r.all_passed());
  EXPECT_EQ(r.find("c")->value, 42.0);
  EXPECT_EQ(r.find("missing"), nullptr);
}

TEST(Report, FormatParsing) {
  EXPECT_EQ(report_format_from_string("json"), ReportFormat::Json);
  EXPECT_EQ(report_format_from_string("csv"), ReportFormat::Csv);
  EXPECT_EQ(report_format_from_string("all"), ReportFormat::All);
  EXPECT_EQ(code_of([] { report_format_from_string("xml"); }), ErrorCode::InvalidArgument);
}
