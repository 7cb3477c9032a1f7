#include "abgauge/pipeline/report.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>

#include "abgauge/error.hpp"

namespace abgauge {

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

json number(double v) {
  if (std::isfinite(v)) return v;
  if (std::isnan(v)) return "nan";
  return v > 0 ? "inf" : "-inf";
}

std::ofstream open_out(const fs::path& p) {
  std::ofstream out(p);
  if (!out) fail(ErrorCode::IoError, "cannot open " + p.string());
  out << std::setprecision(17);
  return out;
}

void check_written(std::ofstream& out, const fs::path& p) {
  out.flush();
  if (!out) fail(ErrorCode::IoError, "failed writing " + p.string());
}

}  // namespace

ReportEntry& Report::add(const std::string& name, double value, double tolerance, const std::string& operation) {
  entries.push_back({name, value, tolerance, operation, value <= tolerance});
  return entries.back();
}

ReportEntry& Report::info(const std::string& name, double value, const std::string& operation) {
  entries.push_back({name, value, std::numeric_limits<double>::infinity(), operation, true});
  return entries.back();
}

const ReportEntry* Report::find(const std::string& name) const {
  for (const auto& e : entries)
    if (e.name == name) return &e;
  return nullptr;
}

bool Report::all_passed() const {
  for (const auto& e : entries)
    if (!e.passed) return false;
  return true;
}

json Report::to_json() const {
  json j{{"schema", kReportSchema}, {"scenario", scenario}, {"kind", kind}};
  j["verdict"] = verdict ? json(abgauge::to_string(*verdict)) : json(nullptr);
  j["reason"] = reason;
  j["gauge"] = gauge ? *gauge : json(nullptr);
  j["witness"] = witness ? *witness : json(nullptr);
  j["provenance"] = provenance;
  j["stages"] = stages;
  j["metadata"] = metadata;
  json e = json::array();
  for (const auto& x : entries) {
    e.push_back({{"name", x.name},
                 {"value", number(x.value)},
                 {"tolerance", number(x.tolerance)},
                 {"operation", x.operation},
                 {"passed", x.passed}});
  }
  j["entries"] = e;
  json files = json::array();
  for (const auto& t : tables) files.push_back(t.name + ".csv");
  for (const auto& s : sinograms) files.push_back(s.first + ".csv");
  for (const auto& f : fields) files.push_back(f.first + ".csv");
  j["data_files"] = files;
  return j;
}

ReportFormat report_format_from_string(const std::string& s) {
  if (s == "json") return ReportFormat::Json;
  if (s == "csv") return ReportFormat::Csv;
  if (s == "all") return ReportFormat::All;
  fail(ErrorCode::InvalidArgument, "report format must be json, csv or all");
}

std::vector<std::string> emit_report(const Report& report, const std::string& dir, ReportFormat format) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) fail(ErrorCode::IoError, "cannot create " + dir + ": " + ec.message());
  std::vector<std::string> written;
  const fs::path base(dir);
  if (format != ReportFormat::Csv) {
    const fs::path p = base / "report.json";
    auto out = open_out(p);
    out << std::setw(2) << report.to_json() << '\n';
    check_written(out, p);
    written.push_back(p.string());
  }
  if (format == ReportFormat::Json) return written;

  {
    const fs::path p = base / "entries.csv";
    auto out = open_out(p);
    out << "name,value,tolerance,operation,passed\n";
    for (const auto& e : report.entries) {
      out << e.name << ',' << e.value << ',' << e.tolerance << ",\"" << e.operation << "\"," << (e.passed ? 1 : 0)
          << '\n';
    }
    check_written(out, p);
    written.push_back(p.string());
  }
  for (const auto& t : report.tables) {
    const fs::path p = base / (t.name + ".csv");
    auto out = open_out(p);
    for (std::size_t c = 0; c < t.columns.size(); ++c) out << (c ? "," : "") << t.columns[c];
    out << '\n';
    for (const auto& row : t.rows) {
      for (std::size_t c = 0; c < row.size(); ++c) out << (c ? "," : "") << row[c];
      out << '\n';
    }
    check_written(out, p);
    written.push_back(p.string());
  }
  for (const auto& [name, s] : report.sinograms) {
    const fs::path p = base / (name + ".csv");
    s.write_long_csv(p.string());
    written.push_back(p.string());
  }
  for (const auto& [name, f] : report.fields) {
    const fs::path p = base / (name + ".csv");
    f.write_csv(p.string());
    written.push_back(p.string());
  }
  return written;
}

int exit_code(const Report& report) {
  return report.verdict && *report.verdict == Verdict::Ambiguous ? 2 : 0;
}

}  // namespace abgauge
