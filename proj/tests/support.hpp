#pragma once

#include <cmath>
#include <random>
#include <span>

#include "greenopt/config.hpp"
#include "greenopt/solver.hpp"

namespace greenopt::test {

inline double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }
inline double rel(Complex a, Complex b) { return std::abs(a - b) / std::abs(b); }

// Small frequency-domain setup: 10 cells per wavelength, 12-cell absorber.
inline SolverParams small_params() {
  SolverParams p;
  p.pml_cells = 12;
  return p;
}

inline RunConfig small_config(int n = 61, double separation = 1.0) {
  RunConfig cfg;
  cfg.grid = Grid2D::centered(n, n, 0.1);
  cfg.wavelength = 1.0;
  const double w = cfg.omega();
  cfg.donor = DipoleSpec{Vec2(-0.5 * separation, 0.0), Vec2(0.0, 1.0), w};
  cfg.acceptor = DipoleSpec{Vec2(0.5 * separation, 0.0), Vec2(0.0, 1.0), w};
  cfg.block_size = 1;
  cfg.exclusion_radius = 0.3;
  cfg.max_iterations = 5;
  cfg.solver = small_params();
  return cfg;
}

// Random dielectric layout: `count` blocks of eps in [2, 12] inside the
// interior, away from the listed points.
inline PermittivityGrid random_layout(const Grid2D& grid, const CellBox& interior,
                                      std::mt19937& rng, int count, std::span<const Vec2> avoid,
                                      double clearance) {
  std::vector<double> eps(grid.cell_count(), 1.0);
  std::uniform_int_distribution<int> ui(interior.lo.i, interior.hi.i - 2);
  std::uniform_int_distribution<int> uj(interior.lo.j, interior.hi.j - 2);
  std::uniform_real_distribution<double> ue(2.0, 12.0);
  for (int b = 0; b < count; ++b) {
    const CellIndex c{ui(rng), uj(rng)};
    const double value = ue(rng);
    for (int dj = 0; dj < 3; ++dj) {
      for (int di = 0; di < 3; ++di) {
        const CellIndex d{c.i + di, c.j + dj};
        bool ok = true;
        for (const Vec2& p : avoid) ok = ok && (grid.center(d) - p).norm() > clearance;
        if (ok) eps[grid.linear(d)] = value;
      }
    }
  }
  return PermittivityGrid(grid, std::move(eps));
}

}  // namespace greenopt::test
