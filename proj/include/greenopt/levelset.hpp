#pragma once

#include <functional>
#include <vector>

#include "greenopt/config.hpp"
#include "greenopt/merit.hpp"

namespace greenopt {

/// Implicit boundary: phi < 0 inside material, 0 on the boundary, > 0 outside.
struct LevelSetField {
  Grid2D grid;
  std::vector<double> phi;
  double dt = 0.0;  // last pseudo-time step taken

  double operator()(CellIndex c) const { return phi[grid.linear(c)]; }
};

/// Signed distance to a circle.
LevelSetField circle_level_set(const Grid2D& grid, const Vec2& center, double radius);

/// Cells within `band_cells` cells of the boundary.
CellMask boundary_band(const LevelSetField& phi, double band_cells);

/// Normal velocity alpha_n * dF on the boundary band, copied off the band from
/// the nearest band cell. `sensitivity` must carry a value on every band cell
/// (cells it masks out move with zero velocity). Throws DomainError when the
/// band is empty.
std::vector<double> levelset_velocity(const DeltaFMap& sensitivity, const LevelSetField& phi,
                                      double alpha_n, double band_cells);

/// Same, building the sensitivity from the two fields over the interior.
std::vector<double> levelset_velocity(const GreensField& field_D, const GreensField& field_A,
                                      const DipoleSpec& donor, const DipoleSpec& acceptor,
                                      const LevelSetField& phi, double alpha_n,
                                      double band_cells);

/// Largest step allowed by dt <= cfl dx / max|v|; infinity for v = 0.
double max_stable_dt(const std::vector<double>& v, double dx, double cfl = 0.5);

/// One first-order upwind step of phi_t + v |grad phi| = 0. Positive v moves
/// the boundary outward. Throws DomainError if dt > 0.5 dx / max|v|.
LevelSetField levelset_evolve(const LevelSetField& phi, const std::vector<double>& v, double dt);

/// Restores |grad phi| = 1 away from the boundary. Cells adjacent to a sign
/// change keep their values, so the zero contour does not move.
LevelSetField reinitialize(const LevelSetField& phi);

/// Median |grad phi| over cells with central differences.
double median_gradient_norm(const LevelSetField& phi);

/// eps_inclusion where phi < 0 and `allowed` is set, vacuum elsewhere.
PermittivityGrid material_from_level_set(const LevelSetField& phi, const CellMask& allowed,
                                         double eps_inclusion);

/// First-order predicted merit change sum_band v^2 dA dt (non-negative).
double predicted_gain(const std::vector<double>& v, const CellMask& band, double dx, double dt);

struct LevelSetStep {
  int step = 0;
  double dt = 0.0;
  double predicted = 0.0;
  double gamma_before = 0.0;
  double gamma = 0.0;  // re-simulated after the step (unchanged if rejected)
  double purcell = 0.0;
  int backtracks = 0;
  bool accepted = false;
  std::size_t material_cells = 0;
};

struct LevelSetResult {
  LevelSetField phi;
  PermittivityGrid eps;
  double gamma0 = 0.0;
  double initial_gamma = 0.0;
  std::vector<LevelSetStep> steps;
};

using LevelSetObserver = std::function<void(const LevelSetStep&, const PermittivityGrid&)>;

/// Evolves a seeded circle for cfg.levelset.steps steps. Each step moves the
/// boundary with the sensitivity velocity, reinitialises on the configured
/// cadence and re-simulates. A step that lowers the rate is retried with half
/// the pseudo-time step up to max_backtracks times and rejected if it still
/// does.
LevelSetResult run_levelset(const RunConfig& cfg, const LevelSetObserver& observer = {});

}  // namespace greenopt
