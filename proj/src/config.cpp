#include "greenopt/config.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "greenopt/solver.hpp"

namespace greenopt {
namespace {

using nlohmann::json;

[[noreturn]] void invalid(const std::string& field, const std::string& why) {
  throw ConfigError(field + ": " + why, field);
}

const json& require(const json& obj, const std::string& key, const std::string& path) {
  if (!obj.is_object() || !obj.contains(key)) invalid(path, "required field is missing");
  return obj.at(key);
}

double as_number(const json& v, const std::string& path) {
  if (!v.is_number()) invalid(path, "expected a number");
  const double d = v.get<double>();
  if (!std::isfinite(d)) invalid(path, "must be finite");
  return d;
}

int as_int(const json& v, const std::string& path) {
  if (!v.is_number_integer()) invalid(path, "expected an integer");
  return v.get<int>();
}

Vec2 as_vec2(const json& v, const std::string& path) {
  if (!v.is_array() || v.size() != 2) invalid(path, "expected a two-element array");
  return {as_number(v[0], path + "[0]"), as_number(v[1], path + "[1]")};
}

template <typename T, typename Fn>
void optional_field(const json& obj, const std::string& key, const std::string& path, T& out,
                    Fn convert) {
  if (obj.is_object() && obj.contains(key)) out = convert(obj.at(key), path + "." + key);
}

DipoleSpec parse_dipole(const json& j, const std::string& path, double omega) {
  if (!j.is_object()) invalid(path, "expected an object");
  const Vec2 pos = as_vec2(require(j, "position", path + ".position"), path + ".position");
  Vec2 dir(0.0, 1.0);
  optional_field(j, "orientation", path, dir, as_vec2);
  const double n = dir.norm();
  if (!(n > 0.0)) invalid(path + ".orientation", "must be non-zero");
  // Already-unit vectors are kept bit-for-bit so serialisation round-trips.
  if (std::abs(n - 1.0) > 1e-12) dir /= n;
  return DipoleSpec{pos, dir, omega};
}

json dump_vec2(const Vec2& v) { return json::array({v.x(), v.y()}); }

PresetSpec parse_preset(const json& j, const std::string& path) {
  if (!j.is_object()) invalid(path, "expected an object");
  PresetSpec p;
  const json& kind = require(j, "kind", path + ".kind");
  if (!kind.is_string()) invalid(path + ".kind", "expected a string");
  try {
    p.kind = preset_kind_from_string(kind.get<std::string>());
  } catch (const ConfigError& e) {
    invalid(path + ".kind", e.what());
  }
  optional_field(j, "center", path, p.center, as_vec2);
  optional_field(j, "axis_angle", path, p.axis_angle, as_number);
  optional_field(j, "radius", path, p.radius, as_number);
  optional_field(j, "thickness", path, p.thickness, as_number);
  optional_field(j, "focal_length", path, p.focal_length, as_number);
  optional_field(j, "aperture", path, p.aperture, as_number);
  optional_field(j, "cavity_length", path, p.cavity_length, as_number);
  optional_field(j, "periods", path, p.periods, as_int);
  optional_field(j, "permittivity", path, p.permittivity, as_number);
  if (j.contains("keep_clear")) {
    const json& kc = j.at("keep_clear");
    if (!kc.is_array()) invalid(path + ".keep_clear", "expected an array");
    for (std::size_t k = 0; k < kc.size(); ++k) {
      p.keep_clear.push_back(as_vec2(kc[k], path + ".keep_clear[" + std::to_string(k) + "]"));
    }
  }
  return p;
}

json dump_preset(const PresetSpec& p) {
  json kc = json::array();
  for (const Vec2& v : p.keep_clear) kc.push_back(dump_vec2(v));
  return {{"kind", to_string(p.kind)},
          {"center", dump_vec2(p.center)},
          {"axis_angle", p.axis_angle},
          {"radius", p.radius},
          {"thickness", p.thickness},
          {"focal_length", p.focal_length},
          {"aperture", p.aperture},
          {"cavity_length", p.cavity_length},
          {"periods", p.periods},
          {"permittivity", p.permittivity},
          {"keep_clear", kc}};
}

SolverParams parse_solver(const json& j) {
  SolverParams s;
  if (!j.is_object()) invalid("solver", "expected an object");
  if (j.contains("method")) {
    if (!j.at("method").is_string()) invalid("solver.method", "expected a string");
    s.method = solver_method_from_string(j.at("method").get<std::string>());
  }
  optional_field(j, "pml_cells", "solver", s.pml_cells, as_int);
  optional_field(j, "pml_order", "solver", s.pml_order, as_number);
  optional_field(j, "pml_reflection", "solver", s.pml_reflection, as_number);
  optional_field(j, "courant", "solver", s.courant, as_number);
  optional_field(j, "ramp_cycles", "solver", s.ramp_cycles, as_number);
  optional_field(j, "settle_cycles", "solver", s.settle_cycles, as_number);
  optional_field(j, "dft_cycles", "solver", s.dft_cycles, as_int);
  optional_field(j, "convergence_tol", "solver", s.convergence_tol, as_number);
  optional_field(j, "max_cycles", "solver", s.max_cycles, as_number);
  optional_field(j, "amplitude_scale", "solver", s.amplitude_scale, as_number);
  return s;
}

json dump_solver(const SolverParams& s) {
  return {{"method", to_string(s.method)},       {"pml_cells", s.pml_cells},
          {"pml_order", s.pml_order},            {"pml_reflection", s.pml_reflection},
          {"courant", s.courant},                {"ramp_cycles", s.ramp_cycles},
          {"settle_cycles", s.settle_cycles},    {"dft_cycles", s.dft_cycles},
          {"convergence_tol", s.convergence_tol}, {"max_cycles", s.max_cycles},
          {"amplitude_scale", s.amplitude_scale}};
}

}  // namespace

std::string to_string(DesignScheme s) {
  return s == DesignScheme::additive ? "additive" : "levelset";
}

void RunConfig::validate() const {
  if (!(wavelength > 0.0) || !std::isfinite(wavelength)) invalid("wavelength", "must be positive");
  if (block_size < 1) invalid("design.block_size", "must be >= 1");
  if (!(exclusion_radius >= 0.0)) invalid("design.exclusion_radius", "must be >= 0");
  if (!(alpha_n > 0.0)) invalid("design.alpha_n", "must be positive");
  if (!(eps_inclusion > 1.0) || !std::isfinite(eps_inclusion)) {
    invalid("design.eps_inclusion", "must be finite and > 1");
  }
  if (max_iterations < 0) invalid("design.max_iterations", "must be >= 0");
  if (snapshot_every < 0) invalid("design.snapshot_every", "must be >= 0");
  if (levelset.steps < 0) invalid("levelset.steps", "must be >= 0");
  if (levelset.reinit_every < 1) invalid("levelset.reinit_every", "must be >= 1");
  if (!(levelset.seed_radius > 0.0)) invalid("levelset.seed_radius", "must be positive");
  if (!(levelset.band_cells > 0.0)) invalid("levelset.band_cells", "must be positive");
  if (!(levelset.cfl > 0.0 && levelset.cfl <= 0.5)) invalid("levelset.cfl", "must lie in (0, 0.5]");
  if (levelset.max_backtracks < 0) invalid("levelset.max_backtracks", "must be >= 0");
  for (double s : validation.separations) {
    if (!(s > 0.0)) invalid("validation.separations", "separations must be positive");
  }
  if (!(validation.reference_separation >= 0.0)) {
    invalid("validation.reference_separation", "must be >= 0");
  }
  if (!(validation.tolerance > 0.0)) invalid("validation.tolerance", "must be positive");
  solver.validate();

  const CellBox box = interior_box(grid, solver);
  const Vec2 lo = grid.center(box.lo);
  const Vec2 hi = grid.center(box.hi);
  auto inside = [&](const Vec2& p) {
    return p.x() > lo.x() && p.y() > lo.y() && p.x() < hi.x() && p.y() < hi.y();
  };
  if (!inside(donor.position)) invalid("donor.position", "must lie inside the non-absorbing interior");
  if (!inside(acceptor.position)) {
    invalid("acceptor.position", "must lie inside the non-absorbing interior");
  }
  if ((donor.position - acceptor.position).norm() < 1e-12) {
    invalid("acceptor.position", "must differ from the donor position");
  }
  try {
    donor.validate();
  } catch (const DomainError& e) {
    invalid("donor", e.what());
  }
  try {
    acceptor.validate();
  } catch (const DomainError& e) {
    invalid("acceptor", e.what());
  }
}

RunConfig load_config(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text.begin(), text.end(), nullptr, true, /*ignore_comments=*/true);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("parse error: ") + e.what());
  }
  if (!doc.is_object()) throw ConfigError("parse error: top level must be an object");

  RunConfig cfg;
  const json& g = require(doc, "grid", "grid");
  const int nx = as_int(require(g, "nx", "grid.nx"), "grid.nx");
  const int ny = as_int(require(g, "ny", "grid.ny"), "grid.ny");
  const double dx = as_number(require(g, "dx", "grid.dx"), "grid.dx");
  if (nx < 16) invalid("grid.nx", "must be >= 16");
  if (ny < 16) invalid("grid.ny", "must be >= 16");
  if (!(dx > 0.0)) invalid("grid.dx", "must be positive");
  cfg.grid = g.contains("origin") ? Grid2D(nx, ny, dx, as_vec2(g.at("origin"), "grid.origin"))
                                  : Grid2D::centered(nx, ny, dx);

  cfg.wavelength = as_number(require(doc, "wavelength", "wavelength"), "wavelength");
  if (!(cfg.wavelength > 0.0)) invalid("wavelength", "must be positive");
  const double omega = cfg.omega();
  cfg.donor = parse_dipole(require(doc, "donor", "donor"), "donor", omega);
  cfg.acceptor = parse_dipole(require(doc, "acceptor", "acceptor"), "acceptor", omega);

  if (doc.contains("design")) {
    const json& d = doc.at("design");
    if (!d.is_object()) invalid("design", "expected an object");
    optional_field(d, "block_size", "design", cfg.block_size, as_int);
    optional_field(d, "exclusion_radius", "design", cfg.exclusion_radius, as_number);
    optional_field(d, "alpha_n", "design", cfg.alpha_n, as_number);
    optional_field(d, "eps_inclusion", "design", cfg.eps_inclusion, as_number);
    optional_field(d, "max_iterations", "design", cfg.max_iterations, as_int);
    optional_field(d, "snapshot_every", "design", cfg.snapshot_every, as_int);
    if (d.contains("scheme")) {
      const json& s = d.at("scheme");
      if (s == "additive") {
        cfg.scheme = DesignScheme::additive;
      } else if (s == "levelset") {
        cfg.scheme = DesignScheme::levelset;
      } else {
        invalid("design.scheme", "must be \"additive\" or \"levelset\"");
      }
    }
    if (d.contains("initial") && !d.at("initial").is_null()) {
      cfg.initial_design = parse_preset(d.at("initial"), "design.initial");
    }
  }

  if (doc.contains("levelset")) {
    const json& l = doc.at("levelset");
    if (!l.is_object()) invalid("levelset", "expected an object");
    optional_field(l, "seed_center", "levelset", cfg.levelset.seed_center, as_vec2);
    optional_field(l, "seed_radius", "levelset", cfg.levelset.seed_radius, as_number);
    optional_field(l, "steps", "levelset", cfg.levelset.steps, as_int);
    optional_field(l, "reinit_every", "levelset", cfg.levelset.reinit_every, as_int);
    optional_field(l, "band_cells", "levelset", cfg.levelset.band_cells, as_number);
    optional_field(l, "cfl", "levelset", cfg.levelset.cfl, as_number);
    optional_field(l, "max_backtracks", "levelset", cfg.levelset.max_backtracks, as_int);
  }

  if (doc.contains("validation")) {
    const json& v = doc.at("validation");
    if (!v.is_object()) invalid("validation", "expected an object");
    if (v.contains("separations")) {
      const json& s = v.at("separations");
      if (!s.is_array()) invalid("validation.separations", "expected an array");
      for (const json& x : s) {
        cfg.validation.separations.push_back(as_number(x, "validation.separations"));
      }
    }
    optional_field(v, "reference_separation", "validation", cfg.validation.reference_separation,
                   as_number);
    optional_field(v, "tolerance", "validation", cfg.validation.tolerance, as_number);
  }

  if (doc.contains("solver")) cfg.solver = parse_solver(doc.at("solver"));

  if (doc.contains("output")) {
    const json& o = doc.at("output");
    if (o.contains("dir")) {
      if (!o.at("dir").is_string()) invalid("output.dir", "expected a string");
      cfg.output_dir = o.at("dir").get<std::string>();
    }
  }

  cfg.validate();
  return cfg;
}

RunConfig load_config_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return load_config(ss.str());
}

std::string serialize(const RunConfig& cfg) {
  json doc;
  doc["grid"] = {{"nx", cfg.grid.nx()},
                 {"ny", cfg.grid.ny()},
                 {"dx", cfg.grid.dx()},
                 {"origin", dump_vec2(cfg.grid.origin())}};
  doc["wavelength"] = cfg.wavelength;
  doc["donor"] = {{"position", dump_vec2(cfg.donor.position)},
                  {"orientation", dump_vec2(cfg.donor.orientation)}};
  doc["acceptor"] = {{"position", dump_vec2(cfg.acceptor.position)},
                     {"orientation", dump_vec2(cfg.acceptor.orientation)}};
  doc["design"] = {{"scheme", to_string(cfg.scheme)},
                   {"block_size", cfg.block_size},
                   {"exclusion_radius", cfg.exclusion_radius},
                   {"alpha_n", cfg.alpha_n},
                   {"eps_inclusion", cfg.eps_inclusion},
                   {"max_iterations", cfg.max_iterations},
                   {"snapshot_every", cfg.snapshot_every},
                   {"initial", cfg.initial_design ? dump_preset(*cfg.initial_design) : json()}};
  doc["levelset"] = {{"seed_center", dump_vec2(cfg.levelset.seed_center)},
                     {"seed_radius", cfg.levelset.seed_radius},
                     {"steps", cfg.levelset.steps},
                     {"reinit_every", cfg.levelset.reinit_every},
                     {"band_cells", cfg.levelset.band_cells},
                     {"cfl", cfg.levelset.cfl},
                     {"max_backtracks", cfg.levelset.max_backtracks}};
  doc["validation"] = {{"separations", cfg.validation.separations},
                       {"reference_separation", cfg.validation.reference_separation},
                       {"tolerance", cfg.validation.tolerance}};
  doc["solver"] = dump_solver(cfg.solver);
  doc["output"] = {{"dir", cfg.output_dir}};
  return doc.dump(2);
}

}  // namespace greenopt
