#pragma once

#include <limits>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "abgauge/fields/grid.hpp"
#include "abgauge/scattering/solver.hpp"
#include "abgauge/tomography/radon.hpp"

namespace abgauge {

inline constexpr const char* kReportSchema = "abgauge.report/1";

// One checked number: value, the tolerance it is held to and the operation
// that produced it. Informational entries have an infinite tolerance.
struct ReportEntry {
  std::string name;
  double value = 0.0;
  double tolerance = std::numeric_limits<double>::infinity();
  std::string operation;
  bool passed = true;
};

struct ReportTable {
  std::string name;
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
};

struct Report {
  std::string scenario;
  std::string kind;
  std::vector<ReportEntry> entries;
  std::optional<Verdict> verdict;
  std::string reason;
  std::optional<nlohmann::json> gauge;
  std::optional<nlohmann::json> witness;
  std::vector<std::string> provenance;
  std::vector<std::string> stages;  // "stage: outcome" in execution order
  std::map<std::string, std::string> metadata;
  std::vector<ReportTable> tables;
  std::vector<std::pair<std::string, Sinogram>> sinograms;
  std::vector<std::pair<std::string, GridScalarField>> fields;

  // `passed` is value <= tolerance.
  ReportEntry& add(const std::string& name, double value, double tolerance, const std::string& operation);
  ReportEntry& info(const std::string& name, double value, const std::string& operation);
  const ReportEntry* find(const std::string& name) const;
  bool all_passed() const;

  nlohmann::json to_json() const;
};

enum class ReportFormat { Json, Csv, All };

ReportFormat report_format_from_string(const std::string& s);

// Writes report.json and/or entries.csv plus one CSV per table, sinogram
// (long format) and field into `dir`. Returns the files written.
std::vector<std::string> emit_report(const Report& report, const std::string& dir,
                                     ReportFormat format = ReportFormat::All);

// 0 for a reached verdict (or a completed non-classify run), 2 for Ambiguous.
int exit_code(const Report& report);

}  // namespace abgauge
