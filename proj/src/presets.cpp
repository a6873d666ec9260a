#include "greenopt/presets.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <sstream>

namespace greenopt {
namespace {

constexpr std::array<std::pair<PresetKind, const char*>, 5> kNames{{
    {PresetKind::ring_resonator, "ring_resonator"},
    {PresetKind::circle, "circle"},
    {PresetKind::parabola, "parabola"},
    {PresetKind::half_wave_cavity, "half_wave_cavity"},
    {PresetKind::vacuum_validation, "vacuum_validation"},
}};

// Coordinates of `p` in the preset frame.
Vec2 to_local(const PresetSpec& s, const Vec2& p) {
  const double c = std::cos(s.axis_angle);
  const double sn = std::sin(s.axis_angle);
  const Vec2 d = p - s.center;
  return {c * d.x() + sn * d.y(), -sn * d.x() + c * d.y()};
}

Vec2 to_world(const PresetSpec& s, const Vec2& q) {
  const double c = std::cos(s.axis_angle);
  const double sn = std::sin(s.axis_angle);
  return s.center + Vec2(c * q.x() - sn * q.y(), sn * q.x() + c * q.y());
}

// Inner edge of the k-th slab on one side of the cavity; slabs repeat with a
// pitch of twice their thickness.
double slab_offset(const PresetSpec& s, int k) {
  return 0.5 * s.cavity_length + 2.0 * k * s.thickness;
}

// Outward shift of the k-th parabolic layer.
double layer_offset(const PresetSpec& s, int k) { return 2.0 * k * s.thickness; }

void check_parameters(const PresetSpec& s) {
  auto positive = [](double v, const char* name) {
    if (!(v > 0.0) || !std::isfinite(v)) {
      throw DomainError(std::string("preset: ") + name + " must be positive");
    }
  };
  if (!(s.permittivity >= 1.0) || !std::isfinite(s.permittivity)) {
    throw DomainError("preset: permittivity must be finite and >= 1");
  }
  switch (s.kind) {
    case PresetKind::ring_resonator:
      positive(s.radius, "radius");
      positive(s.thickness, "thickness");
      break;
    case PresetKind::circle:
      positive(s.radius, "radius");
      break;
    case PresetKind::parabola:
      positive(s.focal_length, "focal_length");
      positive(s.thickness, "thickness");
      positive(s.aperture, "aperture");
      if (s.periods < 1) throw DomainError("preset: periods must be >= 1");
      break;
    case PresetKind::half_wave_cavity:
      positive(s.cavity_length, "cavity_length");
      positive(s.thickness, "thickness");
      positive(s.aperture, "aperture");
      if (s.periods < 1) throw DomainError("preset: periods must be >= 1");
      break;
    case PresetKind::vacuum_validation:
      break;
  }
}

// World-space corners of a box that contains all material.
std::vector<Vec2> hull_points(const PresetSpec& s) {
  std::vector<Vec2> local;
  switch (s.kind) {
    case PresetKind::ring_resonator:
    case PresetKind::circle: {
      const double r = s.kind == PresetKind::circle ? s.radius : s.radius + 0.5 * s.thickness;
      return {s.center + Vec2(-r, -r), s.center + Vec2(r, r)};
    }
    case PresetKind::parabola: {
      const double f = s.focal_length;
      const double x_far = s.aperture * s.aperture / (4.0 * f) - f;
      const double x_near = -f - layer_offset(s, s.periods - 1) - s.thickness;
      local = {{x_near, -s.aperture},
               {x_near, s.aperture},
               {x_far, -s.aperture},
               {x_far, s.aperture}};
      break;
    }
    case PresetKind::half_wave_cavity: {
      const double outer = slab_offset(s, s.periods - 1) + s.thickness;
      const double half = 0.5 * s.aperture;
      local = {{-half, -outer}, {-half, outer}, {half, -outer}, {half, outer}};
      break;
    }
    case PresetKind::vacuum_validation:
      return {};
  }
  std::vector<Vec2> out;
  for (const Vec2& q : local) out.push_back(to_world(s, q));
  return out;
}

}  // namespace

std::string to_string(PresetKind kind) {
  for (const auto& [k, name] : kNames) {
    if (k == kind) return name;
  }
  return "unknown";
}

PresetKind preset_kind_from_string(const std::string& name) {
  for (const auto& [k, n] : kNames) {
    if (name == n) return k;
  }
  throw ConfigError("unknown preset '" + name + "'", "preset");
}

bool preset_contains(const PresetSpec& s, const Vec2& p) {
  const Vec2 q = to_local(s, p);
  switch (s.kind) {
    case PresetKind::ring_resonator:
      return std::abs(q.norm() - s.radius) <= 0.5 * s.thickness;
    case PresetKind::circle:
      return q.norm() <= s.radius;
    case PresetKind::parabola: {
      if (std::abs(q.y()) > s.aperture) return false;
      const double mirror = q.y() * q.y() / (4.0 * s.focal_length) - s.focal_length;
      for (int k = 0; k < s.periods; ++k) {
        const double inner = mirror - layer_offset(s, k);
        if (q.x() <= inner && q.x() >= inner - s.thickness) return true;
      }
      return false;
    }
    case PresetKind::half_wave_cavity: {
      if (std::abs(q.x()) > 0.5 * s.aperture) return false;
      const double d = std::abs(q.y());
      for (int k = 0; k < s.periods; ++k) {
        const double inner = slab_offset(s, k);
        if (d >= inner && d <= inner + s.thickness) return true;
      }
      return false;
    }
    case PresetKind::vacuum_validation:
      return false;
  }
  return false;
}

PermittivityGrid generate(const PresetSpec& preset, const Grid2D& grid,
                          std::optional<std::pair<CellIndex, CellIndex>> allowed) {
  check_parameters(preset);
  if (preset.kind == PresetKind::vacuum_validation) return PermittivityGrid::vacuum(grid);

  Vec2 lo = grid.lower();
  Vec2 hi = grid.upper();
  if (allowed) {
    lo = grid.center(allowed->first) - Vec2::Constant(0.5 * grid.dx());
    hi = grid.center(allowed->second) + Vec2::Constant(0.5 * grid.dx());
  }
  for (const Vec2& p : hull_points(preset)) {
    if (p.x() < lo.x() || p.y() < lo.y() || p.x() > hi.x() || p.y() > hi.y()) {
      std::ostringstream msg;
      msg << "preset " << to_string(preset.kind) << ": geometry reaches (" << p.x() << ", "
          << p.y() << "), outside the " << (allowed ? "non-absorbing interior" : "grid");
      throw DomainError(msg.str());
    }
  }

  std::vector<double> eps(grid.cell_count(), 1.0);
  for (int j = 0; j < grid.ny(); ++j) {
    for (int i = 0; i < grid.nx(); ++i) {
      const CellIndex c{i, j};
      if (preset_contains(preset, grid.center(c))) eps[grid.linear(c)] = preset.permittivity;
    }
  }
  PermittivityGrid out(grid, std::move(eps));
  for (const Vec2& p : preset.keep_clear) {
    if (preset_contains(preset, p) || (grid.contains(p) && out(world_to_index(grid, p)) != 1.0)) {
      std::ostringstream msg;
      msg << "preset " << to_string(preset.kind) << ": material covers the atom at (" << p.x()
          << ", " << p.y() << ")";
      throw DomainError(msg.str());
    }
  }
  return out;
}

PresetSpec default_preset(PresetKind kind, const DipoleSpec& donor, const DipoleSpec& acceptor,
                          double wavelength) {
  const Vec2 axis = acceptor.position - donor.position;
  const double sep = axis.norm();
  if (!(sep > 0.0)) throw DomainError("preset: donor and acceptor coincide");
  if (!(wavelength > 0.0)) throw DomainError("preset: wavelength must be positive");

  PresetSpec s;
  s.kind = kind;
  s.center = 0.5 * (donor.position + acceptor.position);
  s.axis_angle = std::atan2(axis.y(), axis.x());
  s.keep_clear = {donor.position, acceptor.position};

  // Dimensions scale with the wavelength. Each factor is the maximum of a
  // sweep at lambda = pi um, 5 um separation, eps = 12, in steps of 0.1 um
  // (0.01 um for the circle radius and the focal length).
  const double lam = wavelength;
  switch (kind) {
    case PresetKind::ring_resonator:
      s.radius = 0.5 * sep + 0.1273 * lam;
      s.thickness = 0.2228 * lam;
      break;
    case PresetKind::circle:
      s.radius = 0.5 * sep - 0.04456 * lam;
      break;
    case PresetKind::parabola:
      s.center = donor.position;
      s.focal_length = 0.28966 * lam;
      s.thickness = 0.0955 * lam;
      s.aperture = 1.9099 * lam;
      s.periods = 4;
      break;
    case PresetKind::half_wave_cavity:
      s.cavity_length = 0.2865 * lam;
      s.thickness = 0.0955 * lam;
      s.aperture = sep + lam;
      s.periods = 3;
      break;
    case PresetKind::vacuum_validation:
      break;
  }
  return s;
}

}  // namespace greenopt
