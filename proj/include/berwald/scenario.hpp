#pragma once

#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "berwald/expression.hpp"
#include "berwald/finsler.hpp"
#include "berwald/surfaces.hpp"

namespace berwald {

/// Flat `key = value` file. Blank lines and text after '#' are ignored.
/// Duplicate or unknown keys throw ConfigError.
class Config {
 public:
  static Config parse(std::istream& in, const std::string& origin = "<config>");
  static Config load(const std::filesystem::path& path);

  const std::string& origin() const { return origin_; }
  bool has(const std::string& key) const { return entries_.count(key) != 0; }
  /// Raw value; throws ConfigError when missing.
  const std::string& text(const std::string& key) const;
  std::string text(const std::string& key, const std::string& fallback) const;
  /// Constant expression ("2*pi", "-1.5").
  double number(const std::string& key) const;
  double number(const std::string& key, double fallback) const;
  int integer(const std::string& key, int fallback) const;
  /// Two constants separated by a comma, optionally in parentheses.
  Vec2 pair(const std::string& key) const;
  Vec2 pair(const std::string& key, Vec2 fallback) const;
  /// Comma-separated constants.
  std::vector<double> list(const std::string& key) const;
  /// Semicolon-separated pairs.
  std::vector<Vec2> pairs(const std::string& key) const;
  Expression expression(const std::string& key) const;

  void set(const std::string& key, const std::string& value) { entries_[key] = value; }
  const std::map<std::string, std::string>& entries() const { return entries_; }

 private:
  std::string origin_;
  std::map<std::string, std::string> entries_;
};

/// Keys a scenario file may contain.
const std::set<std::string>& scenario_keys();

struct IndicatrixSpec {
  TrifocalEllipse ellipse;
  Point2 base;
};

struct VerifySpec {
  double u1_lo = -2.0, u1_hi = 2.0, u2_lo = -2.0, u2_hi = 2.0;
  int grid = 20;
  double divergence_tolerance = 1e-5;
  double curvature_tolerance = 1e-5;
  double metric_tolerance = 1e-6;
  double holonomy_tolerance = 1e-7;
};

struct TorusSpec {
  int grid = 16;
  int gauss_bonnet_grid = 64;
  X2Data x2;
  double periodicity_tolerance = 1e-8;
  double divergence_tolerance = 1e-5;
  double gauss_bonnet_tolerance = 1e-4;
  double metric_tolerance = 1e-10;
};

struct FigureSpec {
  int frames = 3;
  /// Explicit frame parameters; overrides `frames` unless --frames is given.
  std::vector<double> times;
  /// Scale applied to indicatrices when drawn at c(t).
  double scale = 1.0;
  /// Boundary points per indicatrix outline.
  int outline_points = 240;
};

/// Everything a command needs, resolved from a Config.
struct Scenario {
  std::string name;
  PeriodicSurface surface = euclidean_plane();
  OneForm rho;
  std::string rho_description;
  std::optional<Curve> curve;
  Vec2 x0{1.0, 0.0};
  std::optional<IndicatrixSpec> indicatrix;
  int steps = kDefaultSteps;
  VerifySpec verify;
  TorusSpec torus;
  FigureSpec figure;
  std::filesystem::path out_dir = ".";

  Connection2D connection() const { return semi_symmetric(surface.metric, rho); }
  /// Throws ConfigError when the scenario has no curve.
  const Curve& require_curve() const;
  /// Throws ConfigError when the scenario has no indicatrix.
  FinslerStructure finsler_structure() const;
};

/// Builds the scenario; `name` defaults to `fallback_name`.
Scenario make_scenario(const Config& config, const std::string& fallback_name = "scenario");

}  // namespace berwald
