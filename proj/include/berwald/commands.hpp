#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "berwald/scenario.hpp"

namespace berwald {

enum ExitCode : int { kExitPass = 0, kExitFailure = 1, kExitConfigError = 2, kExitDomainError = 3 };

/// Command-line values that override the scenario file.
struct CommandOptions {
  std::optional<int> steps;
  std::optional<int> frames;
  std::optional<std::filesystem::path> out_dir;
};

/// Applies the overrides; --frames replaces figure.times by evenly spaced
/// frames. Throws ConfigError on non-positive counts.
void apply_options(Scenario& scenario, const CommandOptions& options);

struct Check {
  std::string name;
  double value = 0.0;
  double tolerance = 0.0;
  bool pass = false;
};

/// Prints one aligned row per check followed by an overall PASS/FAIL line.
void print_checks(std::ostream& out, const std::vector<Check>& checks);

// ─── verify ─────────────────────────────────────────────────────────────────

struct VerifyReport {
  DivergenceReport divergence;
  std::vector<Check> checks;
  /// max |dρ| on the grid; zero iff the form is closed there (informational).
  double max_d_rho = 0.0;
  bool pass = false;
};

/// Divergence representation, flatness, metric compatibility and probe-loop
/// holonomy on the scenario's verify grid.
VerifyReport run_verify(const Scenario& scenario);

// ─── transport ──────────────────────────────────────────────────────────────

struct TransportRow {
  double t = 0.0;
  Point2 c;
  Vec2 x;
  std::optional<double> finsler;
};

/// X(t) along the scenario curve from vector.x0, plus F(c(t), X(t)) when an
/// indicatrix is configured.
std::vector<TransportRow> run_transport(const Scenario& scenario);
void write_transport_csv(std::ostream& out, const std::vector<TransportRow>& rows);

// ─── figure ─────────────────────────────────────────────────────────────────

struct FigureFrame {
  double t = 0.0;
  Point2 center;
  /// Transport from the base point to c(t).
  Mat2 transport = Mat2::identity();
  /// Image of the base focal vector.
  Vec2 focal;
  /// Translated indicatrix drawn at c(t) (closed: first = last).
  std::vector<Point2> outline;
  /// Level set with the moved foci and the original level, when it is
  /// non-empty; only produced on the hyperbolic plane.
  std::vector<Point2> fixed_level_outline;
};

struct FigureData {
  /// Focal vector X(t) at every integrator node along the curve.
  std::vector<TransportRow> samples;
  std::vector<FigureFrame> frames;
};

/// figure.times when given, else figure.frames evenly spaced over [t0, t1].
std::vector<double> frame_times(const Scenario& scenario);

FigureData build_figure(const Scenario& scenario, const std::vector<double>& times);
void write_figure_csv(std::ostream& out, const FigureData& data);
void write_figure_svg(std::ostream& out, const Scenario& scenario, const FigureData& data);

// ─── torus ──────────────────────────────────────────────────────────────────

struct TorusReport {
  PeriodicityReport periodicity;
  DivergenceReport divergence;
  std::optional<double> gauss_bonnet;
  double metric_defect = 0.0;
  std::vector<Check> checks;
  bool pass = false;
};

TorusReport run_torus(const Scenario& scenario);

// ─── Entry points ───────────────────────────────────────────────────────────

/// Each command writes its files under scenario.out_dir, prints a summary to
/// `out` and returns an ExitCode.
int cmd_verify(const Scenario& scenario, std::ostream& out);
int cmd_transport(const Scenario& scenario, std::ostream& out);
int cmd_figure(const Scenario& scenario, std::ostream& out);
int cmd_torus(const Scenario& scenario, std::ostream& out);

/// Loads the config, applies options, dispatches and maps exceptions to exit
/// codes (ConfigError and std::invalid_argument → 2; DomainError,
/// SingularMetricError and other numeric errors → 3). Messages go to `err`.
int run_command(std::string_view command, const std::filesystem::path& config_path, const CommandOptions& options,
                std::ostream& out, std::ostream& err);

}  // namespace berwald
