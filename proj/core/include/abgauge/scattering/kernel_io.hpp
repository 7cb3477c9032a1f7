#pragma once

#include <string>

#include <nlohmann/json.hpp>

#include "abgauge/scattering/kernel.hpp"

namespace abgauge {

inline constexpr const char* kKernelSchema = "abgauge.kernel/1";

// Header fields: schema, n, lambda, alpha, integer_part, winding, delta, C and
// either {phase_in, phase_out (Fourier triples), grid} for n = 2 or
// {level, sigma, psi_in, psi_out (node values)} for n = 3. The remainder lives
// in a CSV "i,j,re,im" listing the nonzero entries; `remainder_csv` names it
// relative to the header, or is null for a zero remainder.
nlohmann::json kernel_header(const ScatteringKernel& S, const std::string& remainder_csv);

// Writes <path> and, for a nonzero remainder, <stem>.remainder.csv next to it.
void save_kernel(const ScatteringKernel& S, const std::string& path);
ScatteringKernel load_kernel(const std::string& path);
// `base_dir` resolves a relative remainder_csv.
ScatteringKernel kernel_from_json(const nlohmann::json& header, const std::string& base_dir);

// theta, re, im, abs of S(theta_i, theta'_j) along column j (diagonal cell omitted).
void write_kernel_slice(const ScatteringKernel& S, int column, const std::string& path);

}  // namespace abgauge
