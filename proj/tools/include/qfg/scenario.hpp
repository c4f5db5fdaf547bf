#pragma once

// Scenario files: a curve, the working point theta0 and optional measurement
// and wavefunction data.

#include <filesystem>
#include <optional>
#include <string_view>

#include <nlohmann/json.hpp>

#include "qfisher/fisher.hpp"
#include "qfisher/sld.hpp"

namespace qfg {

struct ScenarioOptions {
  qfisher::DiffMode derivative = qfisher::DiffMode::Analytic;
  double fd_step = qfisher::kDefaultFdStep;
  int grid_n = 1024;
  int refine_iters = 40;
};

struct Scenario {
  std::optional<qfisher::Curve> curve;
  double theta0 = 0.0;
  std::optional<qfisher::Povm> povm;
  std::optional<qfisher::WavefunctionGrid> grid;
  ScenarioOptions options;
};

/// Throws ParseError for malformed JSON or unknown fields and
/// InvariantViolation (with the field path) for values the library rejects.
Scenario parse_scenario(const nlohmann::json& doc);
Scenario parse_scenario_text(std::string_view text);
Scenario load_scenario(const std::filesystem::path& path);

/// [re, im]
qfisher::Complex parse_complex(const nlohmann::json& j, const std::string& where);
/// [[[re, im], ...], ...]
qfisher::ComplexMatrix parse_matrix(const nlohmann::json& j, const std::string& where);

}  // namespace qfg
