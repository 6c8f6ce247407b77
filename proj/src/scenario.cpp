#include "berwald/scenario.hpp"

#include <fstream>
#include <sstream>

namespace berwald {

namespace {

std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return std::string(s.substr(first, last - first + 1));
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::istringstream in(s);
  std::string item;
  while (std::getline(in, item, sep)) out.push_back(trim(item));
  if (!s.empty() && s.back() == sep) out.emplace_back();
  return out;
}

std::string strip_parens(const std::string& s) {
  const std::string t = trim(s);
  if (t.size() >= 2 && t.front() == '(' && t.back() == ')') return trim(t.substr(1, t.size() - 2));
  return t;
}

double constant_of(const std::string& text, const std::string& key) {
  if (trim(text).empty()) throw ConfigError("'" + key + "' needs a value");
  try {
    return Expression::parse(text).constant();
  } catch (const ConfigError& e) {
    throw ConfigError("'" + key + "': " + e.what());
  }
}

Vec2 pair_of(const std::string& text, const std::string& key) {
  const auto parts = split(strip_parens(text), ',');
  if (parts.size() != 2) throw ConfigError("'" + key + "' must be a pair 'a, b'");
  return {constant_of(parts[0], key), constant_of(parts[1], key)};
}

}  // namespace

// ─── Config ─────────────────────────────────────────────────────────────────

Config Config::parse(std::istream& in, const std::string& origin) {
  Config config;
  config.origin_ = origin;
  std::string line;
  int number = 0;
  while (std::getline(in, line)) {
    ++number;
    const std::string body = trim(line.substr(0, line.find('#')));
    if (body.empty()) continue;
    const auto eq = body.find('=');
    const std::string where = origin + ":" + std::to_string(number);
    if (eq == std::string::npos) throw ConfigError(where + ": expected 'key = value'");
    const std::string key = trim(body.substr(0, eq));
    const std::string value = trim(body.substr(eq + 1));
    if (!scenario_keys().count(key)) throw ConfigError(where + ": unknown key '" + key + "'");
    if (!config.entries_.emplace(key, value).second) throw ConfigError(where + ": duplicate key '" + key + "'");
  }
  return config;
}

Config Config::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file '" + path.string() + "'");
  return parse(in, path.string());
}

const std::string& Config::text(const std::string& key) const {
  const auto it = entries_.find(key);
  if (it == entries_.end()) throw ConfigError(origin_ + ": missing key '" + key + "'");
  return it->second;
}

std::string Config::text(const std::string& key, const std::string& fallback) const {
  return has(key) ? text(key) : fallback;
}

double Config::number(const std::string& key) const { return constant_of(text(key), key); }

double Config::number(const std::string& key, double fallback) const { return has(key) ? number(key) : fallback; }

int Config::integer(const std::string& key, int fallback) const {
  if (!has(key)) return fallback;
  const std::string& t = text(key);
  std::size_t used = 0;
  int value = 0;
  try {
    value = std::stoi(t, &used);
  } catch (const std::exception&) {
    throw ConfigError("'" + key + "' must be an integer, got '" + t + "'");
  }
  if (used != t.size()) throw ConfigError("'" + key + "' must be an integer, got '" + t + "'");
  return value;
}

Vec2 Config::pair(const std::string& key) const { return pair_of(text(key), key); }

Vec2 Config::pair(const std::string& key, Vec2 fallback) const { return has(key) ? pair(key) : fallback; }

std::vector<double> Config::list(const std::string& key) const {
  std::vector<double> out;
  for (const std::string& item : split(strip_parens(text(key)), ',')) out.push_back(constant_of(item, key));
  return out;
}

std::vector<Vec2> Config::pairs(const std::string& key) const {
  std::vector<Vec2> out;
  for (const std::string& item : split(text(key), ';')) out.push_back(pair_of(item, key));
  return out;
}

Expression Config::expression(const std::string& key) const {
  try {
    return Expression::parse(text(key));
  } catch (const ConfigError& e) {
    throw ConfigError("'" + key + "': " + e.what());
  }
}

const std::set<std::string>& scenario_keys() {
  static const std::set<std::string> keys{
      "name",
      "surface.name", "surface.periods",
      "rho.kind", "rho.potential", "rho.f", "rho.rho1", "rho.rho2",
      "curve.kind", "curve.from", "curve.to", "curve.origin", "curve.direction", "curve.t0", "curve.t1",
      "curve.center", "curve.radius", "curve.c1", "curve.c2", "curve.points", "curve.at",
      "vector.x0",
      "indicatrix.focal", "indicatrix.level", "indicatrix.base",
      "integrator.steps",
      "verify.region", "verify.grid", "verify.tolerance",
      "figure.frames", "figure.times", "figure.scale", "figure.outline_points",
      "torus.grid", "torus.gb_grid", "torus.x1", "torus.c", "torus.c0", "torus.quad_steps",
      "output.dir",
  };
  return keys;
}

// ─── Scenario ───────────────────────────────────────────────────────────────

namespace {

ScalarField field_of(const Expression& e, const std::string& name) {
  return {name, [e](Point2 p) { return e(p.u1, p.u2); }, {}};
}

OneForm make_rho(const Config& cfg, const PeriodicSurface& surface, std::string& description) {
  const std::string kind = cfg.text("rho.kind", "zero");
  if (kind == "zero") {
    description = "0";
    return zero_form();
  }
  if (kind == "form") {
    const Expression r1 = cfg.expression("rho.rho1");
    const Expression r2 = cfg.expression("rho.rho2");
    description = "(" + r1.source() + ") du1 + (" + r2.source() + ") du2";
    return {description, [r1, r2](Point2 p) { return Vec2{r1(p.u1, p.u2), r2(p.u1, p.u2)}; }};
  }
  if (kind == "potential") {
    PotentialRecipe recipe;
    try {
      recipe = recipe_for(surface.name);
    } catch (const std::invalid_argument& e) {
      throw ConfigError(std::string("rho.kind = potential: ") + e.what());
    }
    const std::string which = cfg.text("rho.potential");
    ScalarField f;
    if (which == "euclid-quadratic") f = euclid_quadratic_potential();
    else if (which == "hyp-log") f = hyp_log_potential();
    else if (which == "zero") f = zero_potential();
    else if (which == "expr") f = field_of(cfg.expression("rho.f"), cfg.text("rho.f"));
    else throw ConfigError("unknown rho.potential '" + which + "'");
    description = "potential f = " + f.name;
    return potential_to_oneform(recipe, f);
  }
  throw ConfigError("unknown rho.kind '" + kind + "' (zero, potential or form)");
}

std::optional<Curve> make_curve(const Config& cfg) {
  if (!cfg.has("curve.kind")) return std::nullopt;
  const std::string kind = cfg.text("curve.kind");
  const double t0 = cfg.number("curve.t0", 0.0);
  const double t1 = cfg.number("curve.t1", 1.0);
  Curve c;
  if (kind == "segment") {
    c = Curve::segment(Point2{cfg.pair("curve.from").x, cfg.pair("curve.from").y},
                       Point2{cfg.pair("curve.to").x, cfg.pair("curve.to").y});
  } else if (kind == "line") {
    const Vec2 o = cfg.pair("curve.origin");
    c = Curve::line({o.x, o.y}, cfg.pair("curve.direction"), t0, t1);
  } else if (kind == "radial") {
    c = Curve::line({0, 0}, {1, 1}, t0, t1);
    c.name = "radial";
  } else if (kind == "circle") {
    const Vec2 center = cfg.pair("curve.center");
    const double radius = cfg.number("curve.radius");
    if (!(radius > 0.0)) throw ConfigError("curve.radius must be positive");
    c = Curve::circle({center.x, center.y}, radius, t0, t1);
  } else if (kind == "expr") {
    const Expression c1 = cfg.expression("curve.c1");
    const Expression c2 = cfg.expression("curve.c2");
    if (c1.uses_point() || c2.uses_point()) throw ConfigError("curve.c1 and curve.c2 may only use t");
    c = Curve{"expr", [c1, c2](double t) { return Point2{c1(0, 0, t), c2(0, 0, t)}; }, {}, t0, t1};
  } else if (kind == "polyline") {
    std::vector<Point2> pts;
    for (const Vec2 v : cfg.pairs("curve.points")) pts.push_back({v.x, v.y});
    if (pts.size() < 2) throw ConfigError("curve.points needs at least two points");
    c = Curve::polyline(std::move(pts));
  } else if (kind == "point") {
    const Vec2 at = cfg.pair("curve.at");
    c = Curve::point({at.x, at.y});
  } else {
    throw ConfigError("unknown curve.kind '" + kind + "'");
  }
  if (!c.start().is_finite() || !c.end().is_finite()) throw ConfigError("curve endpoints are not finite");
  return c;
}

int positive(int value, const char* key) {
  if (value < 1) throw ConfigError(std::string(key) + " must be at least 1");
  return value;
}

}  // namespace

const Curve& Scenario::require_curve() const {
  if (!curve) throw ConfigError("scenario '" + name + "' has no curve (set curve.kind)");
  return *curve;
}

FinslerStructure Scenario::finsler_structure() const {
  if (!indicatrix) throw ConfigError("scenario '" + name + "' has no indicatrix (set indicatrix.focal)");
  try {
    return FinslerStructure(indicatrix->base, indicatrix->ellipse, connection(), steps);
  } catch (const DomainError&) {
    throw;
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
}

Scenario make_scenario(const Config& cfg, const std::string& fallback_name) {
  Scenario s;
  s.name = cfg.text("name", fallback_name);
  try {
    s.surface = make_surface(cfg.text("surface.name"));
    if (cfg.has("surface.periods")) s.surface = with_periods(s.surface, cfg.pair("surface.periods"));
  } catch (const ConfigError&) {
    throw;
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  s.rho = make_rho(cfg, s.surface, s.rho_description);
  s.curve = make_curve(cfg);
  s.x0 = cfg.pair("vector.x0", s.x0);
  s.steps = positive(cfg.integer("integrator.steps", s.steps), "integrator.steps");

  if (cfg.has("indicatrix.focal")) {
    const Vec2 focal = cfg.pair("indicatrix.focal");
    const double level = cfg.number("indicatrix.level", 4.0);
    Point2 base = s.curve ? s.curve->start() : Point2{};
    if (cfg.has("indicatrix.base")) {
      const Vec2 b = cfg.pair("indicatrix.base");
      base = {b.x, b.y};
    }
    try {
      s.indicatrix = IndicatrixSpec{TrifocalEllipse(focal, level), base};
    } catch (const std::invalid_argument& e) {
      throw ConfigError(e.what());
    }
  }

  if (s.surface.metric.name() == hyperbolic_metric().name()) {
    s.verify.u2_lo = 0.2;
    s.verify.u2_hi = 3.0;
  }
  if (cfg.has("verify.region")) {
    const auto r = cfg.list("verify.region");
    if (r.size() != 4 || !(r[0] < r[1]) || !(r[2] < r[3]))
      throw ConfigError("verify.region must be 'u1_lo, u1_hi, u2_lo, u2_hi' with lo < hi");
    s.verify.u1_lo = r[0];
    s.verify.u1_hi = r[1];
    s.verify.u2_lo = r[2];
    s.verify.u2_hi = r[3];
  }
  s.verify.grid = positive(cfg.integer("verify.grid", s.verify.grid), "verify.grid");
  s.verify.divergence_tolerance = cfg.number("verify.tolerance", s.verify.divergence_tolerance);

  s.figure.frames = positive(cfg.integer("figure.frames", s.figure.frames), "figure.frames");
  if (cfg.has("figure.times")) s.figure.times = cfg.list("figure.times");
  s.figure.scale = cfg.number("figure.scale", s.figure.scale);
  if (!(s.figure.scale > 0.0)) throw ConfigError("figure.scale must be positive");
  s.figure.outline_points = cfg.integer("figure.outline_points", s.figure.outline_points);
  if (s.figure.outline_points < 3) throw ConfigError("figure.outline_points must be at least 3");

  s.torus.grid = positive(cfg.integer("torus.grid", s.torus.grid), "torus.grid");
  s.torus.gauss_bonnet_grid = positive(cfg.integer("torus.gb_grid", s.torus.gauss_bonnet_grid), "torus.gb_grid");
  if (cfg.has("torus.x1")) s.torus.x2.x1 = field_of(cfg.expression("torus.x1"), cfg.text("torus.x1"));
  if (cfg.has("torus.c")) {
    const Expression c = cfg.expression("torus.c");
    if (c.uses_t() || c.uses_u2()) throw ConfigError("torus.c may only use u1");
    s.torus.x2.c = [c](double u1) { return c(u1, 0.0); };
  }
  s.torus.x2.c0 = cfg.number("torus.c0", 0.0);
  s.torus.x2.quad_steps = cfg.integer("torus.quad_steps", s.torus.x2.quad_steps);
  if (s.torus.x2.quad_steps < 2 || s.torus.x2.quad_steps % 2 != 0)
    throw ConfigError("torus.quad_steps must be even and at least 2");

  s.out_dir = cfg.text("output.dir", ".");
  return s;
}

}  // namespace berwald
