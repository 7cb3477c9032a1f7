#include "abgauge/scattering/kernel_io.hpp"

#include <filesystem>
#include <fstream>
#include <iomanip>
#include <sstream>

#include "abgauge/error.hpp"
#include "abgauge/fields/catalog.hpp"

namespace abgauge {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

void write_remainder(const std::vector<Complex>& values, int n, const std::string& path) {
  std::ofstream out(path);
  if (!out) fail(ErrorCode::IoError, "cannot open " + path);
  out << std::setprecision(17) << "i,j,re,im\n";
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const Complex c = values[static_cast<std::size_t>(i) * n + j];
      if (c != Complex{}) out << i << ',' << j << ',' << c.real() << ',' << c.imag() << '\n';
    }
  if (!out) fail(ErrorCode::IoError, "failed writing " + path);
}

std::vector<Complex> read_remainder(const std::string& path, int n) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::IoError, "cannot open " + path);
  std::vector<Complex> v(static_cast<std::size_t>(n) * n);
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line[0] == '#' || line.rfind("i,", 0) == 0) continue;
    std::stringstream ss(line);
    std::string a, b, re, im;
    if (!std::getline(ss, a, ',') || !std::getline(ss, b, ',') || !std::getline(ss, re, ',') ||
        !std::getline(ss, im, ',')) {
      fail(ErrorCode::ParseError, path + ":" + std::to_string(line_no) + ": expected i,j,re,im");
    }
    try {
      const int i = std::stoi(a), j = std::stoi(b);
      if (i < 0 || j < 0 || i >= n || j >= n) {
        fail(ErrorCode::GridMismatch, path + ":" + std::to_string(line_no) + ": index outside the grid");
      }
      v[static_cast<std::size_t>(i) * n + j] = Complex(std::stod(re), std::stod(im));
    } catch (const std::invalid_argument&) {
      fail(ErrorCode::ParseError, path + ":" + std::to_string(line_no) + ": not a number");
    }
  }
  return v;
}

bool all_zero(const std::vector<Complex>& v) {
  for (const auto& c : v)
    if (c != Complex{}) return false;
  return true;
}

}  // namespace

json kernel_header(const ScatteringKernel& S, const std::string& remainder_csv) {
  json j{{"schema", kKernelSchema},
         {"n", S.dimension()},
         {"lambda", S.energy()},
         {"delta", S.bound().delta},
         {"C", S.bound().C}};
  if (remainder_csv.empty()) {
    j["remainder_csv"] = nullptr;
  } else {
    j["remainder_csv"] = remainder_csv;
  }
  if (S.dimension() == 2) {
    j["alpha"] = S.alpha();
    j["integer_part"] = integer_part(S.alpha());
    j["winding"] = S.winding();
    j["grid"] = S.grid_size();
    j["phase_in"] = triples_to_json(S.psi_in());
    j["phase_out"] = triples_to_json(S.psi_out());
  } else {
    j["level"] = S.sphere_grid()->level();
    j["sigma"] = S.sigma();
    auto vals = [](const SphereFunction& f) { return std::vector<double>(f.values().begin(), f.values().end()); };
    j["psi_in"] = vals(S.sphere_psi_in());
    j["psi_out"] = vals(S.sphere_psi_out());
  }
  return j;
}

void save_kernel(const ScatteringKernel& S, const std::string& path) {
  const fs::path p(path);
  const std::vector<Complex>& rem = S.dimension() == 2 ? S.remainder().values() : S.sphere_remainder();
  std::string csv_name;
  if (!all_zero(rem)) {
    csv_name = p.stem().string() + ".remainder.csv";
    write_remainder(rem, S.grid_size(), (p.parent_path() / csv_name).string());
  }
  std::ofstream out(path);
  if (!out) fail(ErrorCode::IoError, "cannot open " + path);
  out << std::setw(2) << kernel_header(S, csv_name) << '\n';
  if (!out) fail(ErrorCode::IoError, "failed writing " + path);
}

ScatteringKernel kernel_from_json(const json& j, const std::string& base_dir) {
  try {
    if (j.value("schema", std::string{}) != kKernelSchema) {
      fail(ErrorCode::ParseError, std::string("kernel header must declare schema ") + kKernelSchema);
    }
    const int n = j.at("n").get<int>();
    const RemainderBound bound{j.value("C", 1.0), j.value("delta", 0.5)};
    const double lambda = j.value("lambda", 1.0);
    std::string csv;
    if (j.contains("remainder_csv") && !j.at("remainder_csv").is_null()) {
      csv = j.at("remainder_csv").get<std::string>();
      if (fs::path(csv).is_relative()) csv = (fs::path(base_dir) / csv).string();
    }
    if (n == 2) {
      const int M = j.at("grid").get<int>();
      RemainderGrid rem = csv.empty() ? RemainderGrid::zero(M) : RemainderGrid(M, read_remainder(csv, M));
      const double alpha = j.at("alpha").get<double>();
      if (j.contains("integer_part") && j.at("integer_part").get<int>() != integer_part(alpha)) {
        fail(ErrorCode::ParseError, "integer_part does not match alpha");
      }
      ScatteringKernel S = ScatteringKernel::planar(alpha, angular_from_json(j.value("phase_in", json::array())),
                                                    angular_from_json(j.value("phase_out", json::array())),
                                                    std::move(rem), bound, lambda, j.value("winding", 0));
      if (S.remainder_bound_ratio() > 1.0 + 1e-12) {
        fail(ErrorCode::RemainderBoundViolated, "stored remainder exceeds its declared bound");
      }
      return S;
    }
    if (n == 3) {
      auto grid = SphereGrid::icosahedral(j.value("level", 2));
      const int N = static_cast<int>(grid->size());
      auto phase = [&](const char* key) {
        if (!j.contains(key)) return SphereFunction::zero(grid);
        auto v = j.at(key).get<std::vector<double>>();
        if (v.size() != grid->size()) fail(ErrorCode::GridMismatch, std::string(key) + " does not match the grid");
        return SphereFunction(grid, std::move(v));
      };
      std::vector<Complex> rem = csv.empty() ? std::vector<Complex>{} : read_remainder(csv, N);
      ScatteringKernel S = ScatteringKernel::spatial(grid, j.at("sigma").get<double>(), phase("psi_in"),
                                                     phase("psi_out"), std::move(rem), bound, lambda);
      if (S.remainder_bound_ratio() > 1.0 + 1e-12) {
        fail(ErrorCode::RemainderBoundViolated, "stored remainder exceeds its declared bound");
      }
      return S;
    }
    fail(ErrorCode::DimensionMismatch, "kernels exist for n = 2 and n = 3");
  } catch (const json::exception& e) {
    fail(ErrorCode::ParseError, std::string("kernel header: ") + e.what());
  }
}

ScatteringKernel load_kernel(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::IoError, "cannot open " + path);
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    fail(ErrorCode::ParseError, path + ": " + e.what());
  }
  return kernel_from_json(j, fs::path(path).parent_path().string());
}

void write_kernel_slice(const ScatteringKernel& S, int column, const std::string& path) {
  const int n = S.grid_size();
  if (column < 0 || column >= n) fail(ErrorCode::InvalidArgument, "slice column outside the grid");
  std::ofstream out(path);
  if (!out) fail(ErrorCode::IoError, "cannot open " + path);
  out << std::setprecision(17) << "i,theta,theta_prime,re,im,abs\n";
  const double tp = S.dimension() == 2 ? kTwoPi * column / n : 0.0;
  for (int i = 0; i < n; ++i) {
    if (i == column) continue;
    const Complex v = S.at(i, column);
    const double t = S.dimension() == 2 ? kTwoPi * i / n : 0.0;
    out << i << ',' << t << ',' << tp << ',' << v.real() << ',' << v.imag() << ',' << std::abs(v) << '\n';
  }
  if (!out) fail(ErrorCode::IoError, "failed writing " + path);
}

}  // namespace abgauge
