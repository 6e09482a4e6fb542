#pragma once

#include "sqwg/config.hpp"
#include "sqwg/liouvillian.hpp"

#include <string>
#include <vector>

namespace sqwg {

struct RunOutput {
    std::vector<std::string> files;
    std::string summary;
};

// Execute one scenario and write its CSV (and JSON metadata) files plus the
// effective config under out_dir. Throws Error subclasses; the CLI maps the
// category to the exit code.
RunOutput run_scenario(const ScenarioConfig& cfg, const std::string& out_dir);

// Coefficient matrices + generator for a configured system, internal units
// k0z = 2 pi (lengths in lambda_0z) and gamma_1d = 1.
CoefficientSet make_coefficients(const ScenarioConfig& cfg, const std::vector<double>& positions);
Liouvillian make_generator(const ScenarioConfig& cfg, const std::vector<double>& positions);

inline constexpr double kK0z = 6.283185307179586476925286766559; // 2 pi, lambda_0z = 1

} // namespace sqwg
