#include <doctest.h>

#include "greenopt/presets.hpp"
#include "greenopt/solver.hpp"
#include "support.hpp"

using namespace greenopt;

namespace {

const Grid2D kGrid = Grid2D::centered(201, 201, 0.1);

std::size_t filled(const PermittivityGrid& eps) {
  std::size_t n = 0;
  for (double v : eps.values()) n += v != 1.0;
  return n;
}

}  // namespace

TEST_CASE("preset names round-trip") {
  for (PresetKind k : {PresetKind::ring_resonator, PresetKind::circle, PresetKind::parabola,
                       PresetKind::half_wave_cavity, PresetKind::vacuum_validation}) {
    CHECK(preset_kind_from_string(to_string(k)) == k);
  }
  CHECK_THROWS_AS(preset_kind_from_string("torus"), ConfigError);
}

TEST_CASE("vacuum preset is all vacuum") {
  PresetSpec p;
  p.kind = PresetKind::vacuum_validation;
  CHECK(generate(p, kGrid).is_vacuum());
}

TEST_CASE("rasterised disk area is within 3% of pi R^2") {
  for (double r : {1.0, 1.37, 2.5, 4.0}) {
    PresetSpec p;
    p.kind = PresetKind::circle;
    p.center = Vec2(0.03, -0.02);
    p.radius = r;
    const PermittivityGrid eps = generate(p, kGrid);
    const double area = static_cast<double>(filled(eps)) * 0.01;
    CAPTURE(r);
    CHECK(std::abs(area - pi * r * r) <= 0.03 * pi * r * r);
    CHECK(eps(world_to_index(kGrid, p.center)) == 12.0);
  }
}

TEST_CASE("half-wave cavity keeps centred atoms in vacuum") {
  const double lam = pi;
  const double w = omega_from_wavelength(lam);
  const DipoleSpec d{Vec2(-1.5, 0.0), Vec2(0.0, 1.0), w};
  const DipoleSpec a{Vec2(1.5, 0.0), Vec2(0.0, 1.0), w};
  PresetSpec p = default_preset(PresetKind::half_wave_cavity, d, a, lam);
  p.cavity_length = lam / 2.0;
  const PermittivityGrid eps = generate(p, kGrid);
  CHECK(eps(world_to_index(kGrid, d.position)) == 1.0);
  CHECK(eps(world_to_index(kGrid, a.position)) == 1.0);
  CHECK(eps(world_to_index(kGrid, Vec2(0.0, 0.0))) == 1.0);
  CHECK(eps(world_to_index(kGrid, Vec2(0.0, lam / 4.0 + 0.5 * p.thickness))) == 12.0);
  CHECK(eps(world_to_index(kGrid, Vec2(0.0, -lam / 4.0 - 0.5 * p.thickness))) == 12.0);
}

TEST_CASE("ring and parabola membership") {
  PresetSpec ring;
  ring.kind = PresetKind::ring_resonator;
  ring.radius = 2.0;
  ring.thickness = 0.4;
  CHECK(preset_contains(ring, Vec2(2.1, 0.0)));
  CHECK(preset_contains(ring, Vec2(0.0, -1.85)));
  CHECK_FALSE(preset_contains(ring, Vec2(0.0, 0.0)));
  CHECK_FALSE(preset_contains(ring, Vec2(2.3, 0.0)));

  PresetSpec par;
  par.kind = PresetKind::parabola;
  par.center = Vec2(1.0, 1.0);
  par.axis_angle = pi / 2.0;  // opens along +y
  par.focal_length = 0.5;
  par.thickness = 0.2;
  par.aperture = 1.5;
  CHECK_FALSE(preset_contains(par, par.center));
  CHECK(preset_contains(par, par.center + Vec2(0.0, -0.6)));   // behind the vertex
  CHECK_FALSE(preset_contains(par, par.center + Vec2(0.0, -0.4)));
  CHECK(preset_contains(par, par.center + Vec2(1.0, 0.0 - 0.05)));  // y' = 1 -> x' = 0
}

TEST_CASE("geometry outside the grid or the allowed box is rejected") {
  PresetSpec p;
  p.kind = PresetKind::circle;
  p.radius = 12.0;
  CHECK_THROWS_AS(generate(p, kGrid), DomainError);
  p.radius = 9.0;
  CHECK_NOTHROW(generate(p, kGrid));
  const CellBox box = interior_box(kGrid, SolverParams{});
  CHECK_THROWS_AS(generate(p, kGrid, std::pair{box.lo, box.hi}), DomainError);
}

TEST_CASE("material over an atom is rejected") {
  PresetSpec p;
  p.kind = PresetKind::circle;
  p.radius = 1.0;
  p.keep_clear = {Vec2(0.5, 0.0)};
  CHECK_THROWS_AS(generate(p, kGrid), DomainError);
  p.keep_clear = {Vec2(1.5, 0.0)};
  CHECK_NOTHROW(generate(p, kGrid));
  p.radius = -1.0;
  CHECK_THROWS_AS(generate(p, kGrid), DomainError);
}

TEST_CASE("default presets leave both atoms in vacuum") {
  const double lam = pi;
  const double w = omega_from_wavelength(lam);
  const DipoleSpec d{Vec2(-2.0, 0.0), Vec2(0.0, 1.0), w};
  const DipoleSpec a{Vec2(2.0, 0.0), Vec2(0.0, 1.0), w};
  const Grid2D g = Grid2D::centered(301, 301, 0.1);
  const CellBox box = interior_box(g, SolverParams{});
  for (PresetKind k : {PresetKind::ring_resonator, PresetKind::circle, PresetKind::parabola,
                       PresetKind::half_wave_cavity}) {
    CAPTURE(to_string(k));
    const PresetSpec p = default_preset(k, d, a, lam);
    const PermittivityGrid eps = generate(p, g, std::pair{box.lo, box.hi});
    CHECK(filled(eps) > 0);
    CHECK(eps(world_to_index(g, d.position)) == 1.0);
    CHECK(eps(world_to_index(g, a.position)) == 1.0);
  }
}
