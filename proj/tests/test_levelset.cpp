#include <doctest.h>

#include "greenopt/levelset.hpp"
#include "support.hpp"

using namespace greenopt;

namespace {

const Grid2D kGrid = Grid2D::centered(81, 81, 0.1);

// Radius of the zero contour along +x, by linear interpolation on row 40.
double radius_along_x(const LevelSetField& f) {
  for (int i = 40; i < 80; ++i) {
    const double a = f({i, 40});
    const double b = f({i + 1, 40});
    if (a < 0.0 && b >= 0.0) {
      const double t = a / (a - b);
      return kGrid.center({i, 40}).x() + t * kGrid.dx();
    }
  }
  return -1.0;
}

}  // namespace

TEST_CASE("uniform outward speed grows a circle by v dt") {
  const LevelSetField phi = circle_level_set(kGrid, Vec2::Zero(), 1.5);
  const std::vector<double> v(kGrid.cell_count(), 2.0);
  const double dt = max_stable_dt(v, kGrid.dx());
  const LevelSetField next = levelset_evolve(phi, v, dt);
  const double grown = radius_along_x(next) - radius_along_x(phi);
  CHECK(std::abs(grown - 2.0 * dt) <= 1.5 * kGrid.dx());
  CHECK(grown > 0.0);
}

TEST_CASE("zero speed leaves the boundary fixed through reinitialisation") {
  const LevelSetField phi = circle_level_set(kGrid, Vec2(0.05, -0.1), 1.2);
  const std::vector<double> v(kGrid.cell_count(), 0.0);
  LevelSetField f = phi;
  for (int k = 1; k <= 10; ++k) {
    f = levelset_evolve(f, v, 0.01);
    if (k % 5 == 0) f = reinitialize(f);
  }
  // Cells next to the zero contour are untouched, so the contour does not move.
  double drift = 0.0;
  for (int j = 1; j < 80; ++j) {
    for (int i = 1; i < 80; ++i) {
      const CellIndex c{i, j};
      const bool interface = (phi({i + 1, j}) < 0) != (phi(c) < 0) ||
                             (phi({i - 1, j}) < 0) != (phi(c) < 0) ||
                             (phi({i, j + 1}) < 0) != (phi(c) < 0) ||
                             (phi({i, j - 1}) < 0) != (phi(c) < 0);
      if (interface) drift = std::max(drift, std::abs(f(c) - phi(c)));
      CHECK((f(c) < 0.0) == (phi(c) < 0.0));
    }
  }
  CHECK(drift <= 1e-3 * kGrid.dx());
}

TEST_CASE("reinitialisation restores a unit gradient") {
  LevelSetField f = circle_level_set(kGrid, Vec2::Zero(), 1.0);
  for (double& x : f.phi) x = x * (3.0 + 0.5 * std::tanh(x));  // distorted but same zero set
  CHECK(median_gradient_norm(f) > 2.0);
  const LevelSetField r = reinitialize(f);
  const double m = median_gradient_norm(r);
  CHECK(m >= 0.8);
  CHECK(m <= 1.2);
}

TEST_CASE("CFL violation is rejected") {
  const LevelSetField phi = circle_level_set(kGrid, Vec2::Zero(), 1.0);
  const std::vector<double> v(kGrid.cell_count(), 1.0);
  CHECK_THROWS_AS(levelset_evolve(phi, v, 0.051), DomainError);
  CHECK_NOTHROW(levelset_evolve(phi, v, 0.05));
}

TEST_CASE("velocity follows the sensitivity on the band") {
  const LevelSetField phi = circle_level_set(kGrid, Vec2::Zero(), 1.0);
  DeltaFMap zero{kGrid, std::vector<double>(kGrid.cell_count(), 0.0), CellMask(kGrid, true)};
  for (double x : levelset_velocity(zero, phi, 1.0, 2.0)) CHECK(x == 0.0);

  DeltaFMap map = zero;
  for (std::size_t k = 0; k < map.values.size(); ++k) {
    map.values[k] = kGrid.center(kGrid.cell(k)).x();  // positive on the right half
  }
  const std::vector<double> v1 = levelset_velocity(map, phi, 1.0, 2.0);
  const std::vector<double> v2 = levelset_velocity(map, phi, 2.0, 2.0);
  const CellMask band = boundary_band(phi, 2.0);
  for (std::size_t k = 0; k < v1.size(); ++k) {
    CHECK(v2[k] == 2.0 * v1[k]);
    if (band[k]) CHECK(v1[k] == map.values[k]);
  }
  // Off the band the value is copied from the nearest band cell.
  const std::size_t centre = kGrid.linear({40, 40});
  CHECK_FALSE(band[centre]);
  CHECK(std::abs(v1[kGrid.linear({75, 40})] - kGrid.center({50, 40}).x()) < 0.25);

  // Where the sensitivity is positive the material grows.
  const LevelSetField next = levelset_evolve(phi, v1, max_stable_dt(v1, kGrid.dx()));
  CHECK(next({50, 40}) < phi({50, 40}));
  CHECK(next({30, 40}) > phi({30, 40}));

  CHECK(predicted_gain(v1, band, kGrid.dx(), 0.01) >= 0.0);

  LevelSetField empty = phi;
  for (double& x : empty.phi) x = 10.0;
  CHECK_THROWS_AS(levelset_velocity(map, empty, 1.0, 2.0), DomainError);
}

TEST_CASE("material map fills the inside of allowed cells") {
  const LevelSetField phi = circle_level_set(kGrid, Vec2::Zero(), 1.0);
  CellMask allowed(kGrid, true);
  allowed.set({40, 40}, false);
  const PermittivityGrid eps = material_from_level_set(phi, allowed, 12.0);
  CHECK(eps({40, 40}) == 1.0);
  CHECK(eps({41, 40}) == 12.0);
  CHECK(eps({60, 40}) == 1.0);
}

TEST_CASE("level-set loop never lowers the re-simulated rate") {
  RunConfig cfg = test::small_config(61, 1.6);
  cfg.scheme = DesignScheme::levelset;
  cfg.levelset.seed_center = Vec2(0.0, 0.9);
  cfg.levelset.seed_radius = 0.35;
  cfg.levelset.steps = 4;
  cfg.levelset.reinit_every = 2;
  const LevelSetResult r = run_levelset(cfg);
  REQUIRE(r.steps.size() == 4);
  double prev = r.initial_gamma;
  for (const LevelSetStep& s : r.steps) {
    CHECK(s.gamma >= prev);
    CHECK(s.predicted >= 0.0);
    prev = s.gamma;
  }
}
