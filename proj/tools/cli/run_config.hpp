#pragma once

#include <json.hpp>
#include <optional>
#include <string>
#include <vector>

#include "uvarov/simplex_basis.hpp"
#include "uvarov/uvarov_engine.hpp"

namespace uvarov::cli {

enum class OutputFormat { csv, json };

OutputFormat parse_format(const std::string& text);

/// Everything a subcommand needs. JSON config first, command-line flags override.
struct RunConfig {
  int d = 2;
  std::optional<double> sigma;
  std::optional<std::vector<double>> kappa;
  /// Explicit mass conditions.
  std::optional<MassSpec> mass;
  /// Shorthand: mass M at every vertex, Lambda = M I.
  std::optional<double> vertex_mass;
  std::vector<int> degrees;
  std::vector<Point> points;
  double tolerance = 1e-9;
  std::string out;
  OutputFormat format = OutputFormat::csv;

  /// sigma = 0 when neither sigma nor kappa is set.
  SimplexJacobiParams params() const;
  /// Explicit masses win over vertex_mass.
  std::optional<MassSpec> mass_spec() const;
  int max_degree() const;
  void validate() const;
};

/// Accepts decimals and fractions "p/q".
double parse_number(const std::string& text);

/// d Cartesian coordinates, or d + 1 barycentric ones summing to 1 within
/// 1e-12; separated by commas. Returns Cartesian coordinates.
Point parse_point(const std::string& text, int d);
Point point_from_values(const std::vector<double>& values, int d);

RunConfig config_from_json(const nlohmann::json& j);
RunConfig load_config(const std::string& path);

}  // namespace uvarov::cli
