#include "berwald/commands.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <ostream>

#include "berwald/svg.hpp"

namespace berwald {

namespace {

std::string format(const char* fmt, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, fmt, v);
  return buf;
}

std::string g17(double v) { return format("%.17g", v); }

std::ofstream open_output(const Scenario& scenario, const std::string& file) {
  std::error_code ec;
  std::filesystem::create_directories(scenario.out_dir, ec);
  if (ec) throw ConfigError("cannot create output directory '" + scenario.out_dir.string() + "': " + ec.message());
  const std::filesystem::path path = scenario.out_dir / file;
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("cannot write '" + path.string() + "'");
  return out;
}

Check make_check(std::string name, double value, double tolerance) {
  return {std::move(name), value, tolerance, value <= tolerance};
}

bool all_pass(const std::vector<Check>& checks) {
  return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.pass; });
}

std::vector<double> even_spacing(double a, double b, int n) {
  if (n == 1) return {a};
  std::vector<double> out;
  for (int k = 0; k < n; ++k) out.push_back(k + 1 == n ? b : a + (b - a) * k / (n - 1));
  return out;
}

bool is_hyperbolic(const Scenario& s) { return s.surface.metric.name() == hyperbolic_metric().name(); }

}  // namespace

void apply_options(Scenario& scenario, const CommandOptions& options) {
  if (options.steps) {
    if (*options.steps < 1) throw ConfigError("--steps must be at least 1");
    scenario.steps = *options.steps;
  }
  if (options.frames) {
    if (*options.frames < 1) throw ConfigError("--frames must be at least 1");
    scenario.figure.frames = *options.frames;
    scenario.figure.times.clear();
  }
  if (options.out_dir) scenario.out_dir = *options.out_dir;
}

void print_checks(std::ostream& out, const std::vector<Check>& checks) {
  for (const Check& c : checks) {
    char line[160];
    std::snprintf(line, sizeof line, "  %-28s %-4s  value %.3e  tolerance %.1e\n", c.name.c_str(),
                  c.pass ? "PASS" : "FAIL", c.value, c.tolerance);
    out << line;
  }
  out << (all_pass(checks) ? "PASS" : "FAIL") << "\n";
}

// ─── verify ─────────────────────────────────────────────────────────────────

VerifyReport run_verify(const Scenario& scenario) {
  const VerifySpec& v = scenario.verify;
  const Metric2D& metric = scenario.surface.metric;
  const Connection2D conn = scenario.connection();
  const std::vector<Point2> grid = sample_grid(v.u1_lo, v.u1_hi, v.u2_lo, v.u2_hi, v.grid, v.grid);

  VerifyReport report;
  report.divergence = verify_divergence_representation(metric, scenario.rho, grid, v.divergence_tolerance);

  double curvature = 0.0, defect = 0.0;
  for (const Point2 p : grid) {
    curvature = std::max(curvature, curvature_tensor(conn, p).max_abs());
    defect = std::max(defect, metric_defect(conn, metric, p));
    report.max_d_rho = std::max(report.max_d_rho, std::abs(exterior_derivative(scenario.rho, p, metric.domain())));
  }

  const Point2 center{0.5 * (v.u1_lo + v.u1_hi), 0.5 * (v.u2_lo + v.u2_hi)};
  const double radius = 0.25 * std::min(v.u1_hi - v.u1_lo, v.u2_hi - v.u2_lo);
  const Curve loop = Curve::circle(center, radius, 0.0, 2.0 * std::numbers::pi);
  const double hol = max_abs_diff(holonomy(conn, loop, scenario.steps), Mat2::identity());

  report.checks = {make_check("divergence residual (max)", report.divergence.max_residual, v.divergence_tolerance),
                   make_check("curvature of connection", curvature, v.curvature_tolerance),
                   make_check("metric defect", defect, v.metric_tolerance),
                   make_check("probe-loop holonomy", hol, v.holonomy_tolerance)};
  report.pass = all_pass(report.checks);
  return report;
}

int cmd_verify(const Scenario& scenario, std::ostream& out) {
  const VerifyReport report = run_verify(scenario);
  std::ofstream csv = open_output(scenario, scenario.name + "-divergence.csv");
  write_csv(csv, report.divergence);

  out << "verify " << scenario.name << ": surface " << scenario.surface.name << ", rho = " << scenario.rho_description
      << "\n";
  out << "  grid " << scenario.verify.grid << "x" << scenario.verify.grid << ", mean divergence residual "
      << format("%.3e", report.divergence.mean_residual) << ", max |d rho| " << format("%.3e", report.max_d_rho)
      << (report.max_d_rho <= 1e-8 ? " (closed)" : " (not closed)") << "\n";
  print_checks(out, report.checks);
  return report.pass ? kExitPass : kExitFailure;
}

// ─── transport ──────────────────────────────────────────────────────────────

std::vector<TransportRow> run_transport(const Scenario& scenario) {
  const Curve& curve = scenario.require_curve();
  const TransportResult r = parallel_transport(scenario.connection(), curve, scenario.x0, scenario.steps);
  std::optional<FinslerStructure> fs;
  if (scenario.indicatrix) fs = scenario.finsler_structure();

  std::vector<TransportRow> rows;
  rows.reserve(r.ts.size());
  for (std::size_t n = 0; n < r.ts.size(); ++n) {
    TransportRow row{r.ts[n], curve(r.ts[n]), r.vectors[n], std::nullopt};
    if (fs) row.finsler = finsler_norm(*fs, row.c, row.x);
    rows.push_back(row);
  }
  return rows;
}

void write_transport_csv(std::ostream& out, const std::vector<TransportRow>& rows) {
  const bool with_f = !rows.empty() && rows.front().finsler.has_value();
  out << "t,c1,c2,X1,X2" << (with_f ? ",F" : "") << "\n";
  for (const TransportRow& r : rows) {
    out << g17(r.t) << "," << g17(r.c.u1) << "," << g17(r.c.u2) << "," << g17(r.x.x) << "," << g17(r.x.y);
    if (with_f) out << "," << g17(*r.finsler);
    out << "\n";
  }
}

int cmd_transport(const Scenario& scenario, std::ostream& out) {
  const std::vector<TransportRow> rows = run_transport(scenario);
  std::ofstream csv = open_output(scenario, scenario.name + "-transport.csv");
  write_transport_csv(csv, rows);

  const Metric2D& m = scenario.surface.metric;
  const double ref = m.inner(rows.front().c, rows.front().x, rows.front().x);
  double drift = 0.0, f_drift = 0.0;
  for (const TransportRow& r : rows) {
    drift = std::max(drift, std::abs(m.inner(r.c, r.x, r.x) - ref) / ref);
    if (r.finsler) f_drift = std::max(f_drift, std::abs(*r.finsler - *rows.front().finsler));
  }
  const TransportRow& last = rows.back();
  out << "transport " << scenario.name << ": " << rows.size() << " samples, t in [" << g17(rows.front().t) << ", "
      << g17(last.t) << "]\n";
  out << "  X(t1) = (" << g17(last.x.x) << ", " << g17(last.x.y) << ")\n";
  out << "  relative drift of the metric norm " << format("%.3e", drift) << "\n";
  if (last.finsler) out << "  drift of the Finsler norm " << format("%.3e", f_drift) << "\n";
  return kExitPass;
}

// ─── figure ─────────────────────────────────────────────────────────────────

std::vector<double> frame_times(const Scenario& scenario) {
  const Curve& curve = scenario.require_curve();
  if (!scenario.figure.times.empty()) return scenario.figure.times;
  return even_spacing(curve.t0, curve.t1, scenario.figure.frames);
}

FigureData build_figure(const Scenario& scenario, const std::vector<double>& times) {
  const Curve& curve = scenario.require_curve();
  if (curve.t1 < curve.t0) throw ConfigError("figure curves must have t1 >= t0");
  if (times.empty()) throw ConfigError("figure needs at least one frame");
  const FinslerStructure fs = scenario.finsler_structure();
  const Connection2D& conn = fs.connection();
  const TrifocalEllipse& base = fs.base_indicatrix();
  const int steps = scenario.steps;

  // Base point to c(t0) first, then along the curve.
  const Mat2 lead = indicatrix_at(fs, curve.start()).transport;
  const Vec2 focal0 = lead * base.focal();

  FigureData data;
  const TransportResult along = parallel_transport(conn, curve, focal0, steps);
  for (std::size_t n = 0; n < along.ts.size(); ++n)
    data.samples.push_back({along.ts[n], curve(along.ts[n]), along.vectors[n], std::nullopt});

  const double span = curve.t1 - curve.t0;
  const double slack = 1e-12 * std::max(1.0, std::abs(span));
  for (double t : times) {
    if (t < curve.t0 - slack || t > curve.t1 + slack)
      throw ConfigError("frame time " + g17(t) + " lies outside the curve interval");
    t = std::clamp(t, curve.t0, curve.t1);
    FigureFrame frame;
    frame.t = t;
    frame.center = curve(t);
    Mat2 m = Mat2::identity();
    if (t > curve.t0) {
      const int k = std::max(1, static_cast<int>(std::lround(steps * (t - curve.t0) / span)));
      m = transport_matrix(conn, curve.restricted(curve.t0, t), k);
    }
    frame.transport = m * lead;
    frame.focal = frame.transport * base.focal();

    const double scale = scenario.figure.scale;
    const TranslatedIndicatrix ti{frame.center, frame.transport, base};
    for (const Vec2& w : ti.boundary(scenario.figure.outline_points)) frame.outline.push_back(frame.center + scale * w);
    if (is_hyperbolic(scenario) && 2.0 * norm(frame.focal) < base.level()) {
      const TrifocalEllipse fixed_level(frame.focal, base.level());
      for (const Vec2& w : fixed_level.boundary(scenario.figure.outline_points))
        frame.fixed_level_outline.push_back(frame.center + scale * w);
    }
    data.frames.push_back(std::move(frame));
  }
  return data;
}

void write_figure_csv(std::ostream& out, const FigureData& data) { write_transport_csv(out, data.samples); }

void write_figure_svg(std::ostream& out, const Scenario& scenario, const FigureData& data) {
  const double scale = scenario.figure.scale;
  SvgCanvas canvas;
  std::vector<Point2> path, plus, minus;
  for (const TransportRow& r : data.samples) {
    path.push_back(r.c);
    plus.push_back(r.c + scale * r.x);
    minus.push_back(r.c - scale * r.x);
  }
  const std::string trajectory = "stroke=\"#999999\" stroke-width=\"0.75\"";
  canvas.path(plus, trajectory);
  canvas.path(minus, trajectory);
  canvas.path(path, "stroke=\"#000000\" stroke-width=\"1.5\"");
  if (path.size() == 1) canvas.circle(path.front(), 2.0, "fill=\"#000000\"");

  for (const FigureFrame& f : data.frames) {
    canvas.path(f.outline, "stroke=\"#1f77b4\" stroke-width=\"1.5\"");
    canvas.path(f.fixed_level_outline, "stroke=\"#d62728\" stroke-width=\"1\" stroke-dasharray=\"6,4\"");
    const Vec2 x = scale * f.focal;
    canvas.line(f.center, f.center + x, "stroke=\"#2ca02c\" stroke-width=\"1\"");
    for (const Point2 p : {f.center - x, f.center, f.center + x}) canvas.circle(p, 3.0, "fill=\"#d62728\"");
  }
  canvas.write(out);
}

int cmd_figure(const Scenario& scenario, std::ostream& out) {
  const FigureData data = build_figure(scenario, frame_times(scenario));
  std::ofstream svg = open_output(scenario, scenario.name + ".svg");
  write_figure_svg(svg, scenario, data);
  std::ofstream csv = open_output(scenario, scenario.name + ".csv");
  write_figure_csv(csv, data);

  out << "figure " << scenario.name << ": " << data.frames.size() << " frames, " << data.samples.size()
      << " samples -> " << (scenario.out_dir / (scenario.name + ".svg")).string() << "\n";
  for (const FigureFrame& f : data.frames)
    out << "  t = " << format("%.6f", f.t) << "  c = (" << format("%.6f", f.center.u1) << ", "
        << format("%.6f", f.center.u2) << ")  X = (" << format("%.6f", f.focal.x) << ", "
        << format("%.6f", f.focal.y) << ")" << (f.fixed_level_outline.empty() && is_hyperbolic(scenario)
                                                     ? "  fixed-level curve empty"
                                                     : "")
        << "\n";
  return kExitPass;
}

// ─── torus ──────────────────────────────────────────────────────────────────

TorusReport run_torus(const Scenario& scenario) {
  const PeriodicSurface& surface = scenario.surface;
  const TorusSpec& spec = scenario.torus;
  if (surface.kind == SurfaceKind::plane)
    throw ConfigError("torus command needs a periodic surface; set surface.periods or use a torus");

  const VectorField x = divergence_field(surface, spec.x2);
  TorusReport report;
  report.periodicity = check_periodicity(surface, x, spec.grid, spec.periodicity_tolerance);
  report.metric_defect = metric_periodicity_defect(surface, spec.grid);

  // Fundamental domain for periodic axes, [-1, 1] otherwise.
  auto range = [&](double period) {
    return period > 0.0 ? std::pair{0.0, period * (spec.grid - 1) / spec.grid} : std::pair{-1.0, 1.0};
  };
  const auto [a1, b1] = range(surface.periods.x);
  const auto [a2, b2] = range(surface.periods.y);
  const std::vector<Point2> grid = sample_grid(a1, b1, a2, b2, spec.grid, spec.grid);
  report.divergence =
      verify_divergence_representation(surface.metric, flat(surface.metric, x), grid, spec.divergence_tolerance);

  report.checks = {
      make_check("metric periodicity", report.metric_defect, spec.metric_tolerance),
      make_check("X periodicity", std::max(report.periodicity.max_difference.x, report.periodicity.max_difference.y),
                 spec.periodicity_tolerance),
      make_check("divergence residual (max)", report.divergence.max_residual, spec.divergence_tolerance)};
  if (surface.kind == SurfaceKind::torus) {
    report.gauss_bonnet = gauss_bonnet_integral(surface, spec.gauss_bonnet_grid, spec.gauss_bonnet_grid);
    report.checks.push_back(make_check("|Gauss-Bonnet integral|", std::abs(*report.gauss_bonnet),
                                       spec.gauss_bonnet_tolerance));
  }
  report.pass = all_pass(report.checks);
  return report;
}

int cmd_torus(const Scenario& scenario, std::ostream& out) {
  const TorusReport report = run_torus(scenario);
  std::ofstream csv = open_output(scenario, scenario.name + "-torus.csv");
  write_csv(csv, report.divergence);

  const PeriodicSurface& s = scenario.surface;
  out << "torus " << scenario.name << ": " << s.name << " (" << to_string(s.kind) << "), periods (" << g17(s.periods.x)
      << ", " << g17(s.periods.y) << ")\n";
  if (!report.gauss_bonnet) out << "  Gauss-Bonnet integral skipped (not a torus)\n";
  print_checks(out, report.checks);
  return report.pass ? kExitPass : kExitFailure;
}

// ─── Dispatch ───────────────────────────────────────────────────────────────

int run_command(std::string_view command, const std::filesystem::path& config_path, const CommandOptions& options,
                std::ostream& out, std::ostream& err) {
  try {
    if (command != "verify" && command != "transport" && command != "figure" && command != "torus")
      throw ConfigError("unknown command '" + std::string(command) + "'");
    const Config config = Config::load(config_path);
    Scenario scenario = make_scenario(config, config_path.stem().string());
    apply_options(scenario, options);
    if (command == "verify") return cmd_verify(scenario, out);
    if (command == "transport") return cmd_transport(scenario, out);
    if (command == "figure") return cmd_figure(scenario, out);
    return cmd_torus(scenario, out);
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << "\n";
    return kExitConfigError;
  } catch (const DomainError& e) {
    err << "domain error: " << e.what() << "\n";
    return kExitDomainError;
  } catch (const SingularMetricError& e) {
    err << "singular metric: " << e.what() << "\n";
    return kExitDomainError;
  } catch (const std::invalid_argument& e) {
    err << "invalid scenario: " << e.what() << "\n";
    return kExitConfigError;
  } catch (const Error& e) {
    err << "numerical error: " << e.what() << "\n";
    return kExitDomainError;
  }
}

}  // namespace berwald
