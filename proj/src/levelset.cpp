#include "greenopt/levelset.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "greenopt/optimize.hpp"

namespace greenopt {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

bool is_interface(const LevelSetField& f, int i, int j) {
  const Grid2D& g = f.grid;
  const double v = f({i, j});
  if (v == 0.0) return true;
  const int di[4] = {-1, 1, 0, 0};
  const int dj[4] = {0, 0, -1, 1};
  for (int k = 0; k < 4; ++k) {
    const CellIndex n{i + di[k], j + dj[k]};
    if (!g.in_range(n)) continue;
    if ((f(n) < 0.0) != (v < 0.0)) return true;
  }
  return false;
}

// Godunov update of |grad u| = 1 at one cell from its current neighbours.
double eikonal_update(double a, double b, double h) {
  if (std::abs(a - b) >= h) return std::min(a, b) + h;
  return 0.5 * (a + b + std::sqrt(2.0 * h * h - (a - b) * (a - b)));
}

}  // namespace

LevelSetField circle_level_set(const Grid2D& grid, const Vec2& center, double radius) {
  if (!(radius > 0.0)) throw DomainError("level set: seed radius must be positive");
  LevelSetField f{grid, std::vector<double>(grid.cell_count()), 0.0};
  for (std::size_t k = 0; k < grid.cell_count(); ++k) {
    f.phi[k] = (grid.center(grid.cell(k)) - center).norm() - radius;
  }
  return f;
}

CellMask boundary_band(const LevelSetField& phi, double band_cells) {
  CellMask band(phi.grid);
  const double width = band_cells * phi.grid.dx();
  for (std::size_t k = 0; k < phi.phi.size(); ++k) {
    if (std::abs(phi.phi[k]) < width) band.set(phi.grid.cell(k), true);
  }
  return band;
}

std::vector<double> levelset_velocity(const DeltaFMap& sensitivity, const LevelSetField& phi,
                                      double alpha_n, double band_cells) {
  if (!(sensitivity.grid == phi.grid)) throw DomainError("level set: grid mismatch");
  if (!(alpha_n > 0.0)) throw DomainError("level set: alpha_n must be positive");
  const Grid2D& g = phi.grid;
  const CellMask band = boundary_band(phi, band_cells);
  std::vector<std::size_t> band_cells_idx;
  for (std::size_t k = 0; k < g.cell_count(); ++k) {
    if (band[k]) band_cells_idx.push_back(k);
  }
  if (band_cells_idx.empty()) throw DomainError("level set: empty boundary band");

  std::vector<double> v(g.cell_count(), 0.0);
  for (std::size_t k : band_cells_idx) {
    const auto value = sensitivity.value(g.cell(k));
    v[k] = value ? alpha_n * *value : 0.0;
  }
  // Off the band, copy the nearest band value. For a signed-distance phi the
  // nearest band cell lies along the normal, so this is the usual constant
  // extension along grad phi.
  for (std::size_t k = 0; k < g.cell_count(); ++k) {
    if (band[k]) continue;
    const Vec2 p = g.center(g.cell(k));
    double best = kInf;
    std::size_t src = band_cells_idx.front();
    for (std::size_t b : band_cells_idx) {
      const double d = (g.center(g.cell(b)) - p).squaredNorm();
      if (d < best) {
        best = d;
        src = b;
      }
    }
    v[k] = v[src];
  }
  return v;
}

std::vector<double> levelset_velocity(const GreensField& field_D, const GreensField& field_A,
                                      const DipoleSpec& donor, const DipoleSpec& acceptor,
                                      const LevelSetField& phi, double alpha_n,
                                      double band_cells) {
  CellMask interior(field_D.grid);
  for (int j = field_D.interior.lo.j; j <= field_D.interior.hi.j; ++j) {
    for (int i = field_D.interior.lo.i; i <= field_D.interior.hi.i; ++i) interior.set({i, j}, true);
  }
  const DeltaFMap map = ret_delta_map(field_D, field_A, donor, acceptor, interior);
  return levelset_velocity(map, phi, alpha_n, band_cells);
}

double max_stable_dt(const std::vector<double>& v, double dx, double cfl) {
  double vmax = 0.0;
  for (double x : v) vmax = std::max(vmax, std::abs(x));
  return vmax > 0.0 ? cfl * dx / vmax : kInf;
}

LevelSetField levelset_evolve(const LevelSetField& phi, const std::vector<double>& v, double dt) {
  const Grid2D& g = phi.grid;
  if (v.size() != g.cell_count()) throw DomainError("level set: velocity size mismatch");
  if (!(dt >= 0.0)) throw DomainError("level set: dt must be non-negative");
  const double limit = max_stable_dt(v, g.dx(), 0.5);
  if (dt > limit) {
    std::ostringstream msg;
    msg << "level set: dt = " << dt << " violates the CFL limit " << limit;
    throw DomainError(msg.str());
  }

  const double h = g.dx();
  LevelSetField out{g, phi.phi, dt};
  auto at = [&](int i, int j) {
    i = std::clamp(i, 0, g.nx() - 1);
    j = std::clamp(j, 0, g.ny() - 1);
    return phi({i, j});
  };
  for (int j = 0; j < g.ny(); ++j) {
    for (int i = 0; i < g.nx(); ++i) {
      const std::size_t k = g.linear({i, j});
      const double speed = v[k];
      if (speed == 0.0) continue;
      const double c = phi.phi[k];
      const double dxm = (c - at(i - 1, j)) / h;
      const double dxp = (at(i + 1, j) - c) / h;
      const double dym = (c - at(i, j - 1)) / h;
      const double dyp = (at(i, j + 1) - c) / h;
      double grad;
      if (speed > 0.0) {
        grad = std::sqrt(std::pow(std::max(dxm, 0.0), 2) + std::pow(std::min(dxp, 0.0), 2) +
                         std::pow(std::max(dym, 0.0), 2) + std::pow(std::min(dyp, 0.0), 2));
      } else {
        grad = std::sqrt(std::pow(std::min(dxm, 0.0), 2) + std::pow(std::max(dxp, 0.0), 2) +
                         std::pow(std::min(dym, 0.0), 2) + std::pow(std::max(dyp, 0.0), 2));
      }
      out.phi[k] = c - dt * speed * grad;
    }
  }
  return out;
}

LevelSetField reinitialize(const LevelSetField& phi) {
  const Grid2D& g = phi.grid;
  const int nx = g.nx();
  const int ny = g.ny();
  const double h = g.dx();
  std::vector<double> u(g.cell_count(), kInf);
  std::vector<std::uint8_t> fixed(g.cell_count(), 0);
  bool any = false;
  for (int j = 0; j < ny; ++j) {
    for (int i = 0; i < nx; ++i) {
      if (!is_interface(phi, i, j)) continue;
      const std::size_t k = g.linear({i, j});
      u[k] = std::abs(phi.phi[k]);
      fixed[k] = 1;
      any = true;
    }
  }
  if (!any) return phi;  // no boundary to measure from

  auto val = [&](int i, int j) {
    if (i < 0 || j < 0 || i >= nx || j >= ny) return kInf;
    return u[g.linear({i, j})];
  };
  auto relax = [&](int i, int j) {
    const std::size_t k = g.linear({i, j});
    if (fixed[k]) return;
    const double a = std::min(val(i - 1, j), val(i + 1, j));
    const double b = std::min(val(i, j - 1), val(i, j + 1));
    if (a == kInf && b == kInf) return;
    u[k] = std::min(u[k], eikonal_update(a, b, h));
  };
  for (int pass = 0; pass < 2; ++pass) {
    for (int j = 0; j < ny; ++j)
      for (int i = 0; i < nx; ++i) relax(i, j);
    for (int j = 0; j < ny; ++j)
      for (int i = nx - 1; i >= 0; --i) relax(i, j);
    for (int j = ny - 1; j >= 0; --j)
      for (int i = 0; i < nx; ++i) relax(i, j);
    for (int j = ny - 1; j >= 0; --j)
      for (int i = nx - 1; i >= 0; --i) relax(i, j);
  }

  LevelSetField out{g, phi.phi, phi.dt};
  for (std::size_t k = 0; k < u.size(); ++k) {
    if (fixed[k]) continue;
    out.phi[k] = phi.phi[k] < 0.0 ? -u[k] : u[k];
  }
  return out;
}

double median_gradient_norm(const LevelSetField& phi) {
  const Grid2D& g = phi.grid;
  std::vector<double> norms;
  norms.reserve(g.cell_count());
  for (int j = 1; j < g.ny() - 1; ++j) {
    for (int i = 1; i < g.nx() - 1; ++i) {
      const double gx = (phi({i + 1, j}) - phi({i - 1, j})) / (2.0 * g.dx());
      const double gy = (phi({i, j + 1}) - phi({i, j - 1})) / (2.0 * g.dx());
      norms.push_back(std::hypot(gx, gy));
    }
  }
  if (norms.empty()) return 0.0;
  auto mid = norms.begin() + static_cast<std::ptrdiff_t>(norms.size() / 2);
  std::nth_element(norms.begin(), mid, norms.end());
  return *mid;
}

PermittivityGrid material_from_level_set(const LevelSetField& phi, const CellMask& allowed,
                                         double eps_inclusion) {
  if (!(phi.grid == allowed.grid())) throw DomainError("level set: mask grid mismatch");
  std::vector<double> eps(phi.grid.cell_count(), 1.0);
  for (std::size_t k = 0; k < eps.size(); ++k) {
    if (phi.phi[k] < 0.0 && allowed[k]) eps[k] = eps_inclusion;
  }
  return PermittivityGrid(phi.grid, std::move(eps));
}

double predicted_gain(const std::vector<double>& v, const CellMask& band, double dx, double dt) {
  double sum = 0.0;
  for (std::size_t k = 0; k < v.size(); ++k) {
    if (band[k]) sum += v[k] * v[k];
  }
  return sum * dx * dx * dt;
}

LevelSetResult run_levelset(const RunConfig& cfg, const LevelSetObserver& observer) {
  cfg.validate();
  const LevelSetSettings& ls = cfg.levelset;
  const Grid2D& grid = cfg.grid;
  const CellBox interior = interior_box(grid, cfg.solver);
  const std::vector<Vec2> atoms = atom_positions(cfg);
  const CellMask allowed = material_mask(grid, interior, atoms, cfg.exclusion_radius);
  const DipoleSpec sources[2] = {cfg.donor, cfg.acceptor};

  LevelSetResult r;
  r.phi = circle_level_set(grid, ls.seed_center, ls.seed_radius);
  r.eps = material_from_level_set(r.phi, allowed, cfg.eps_inclusion);
  r.gamma0 = ret_rate(
      solve_green_column(PermittivityGrid::vacuum(grid), cfg.donor, cfg.solver), cfg.acceptor);
  std::vector<GreensField> fields = solve_green_columns(r.eps, sources, cfg.solver);
  double gamma = ret_rate(fields[0], cfg.acceptor);
  r.initial_gamma = gamma;

  for (int step = 1; step <= ls.steps; ++step) {
    const DeltaFMap sens = ret_delta_map(fields[0], fields[1], cfg.donor, cfg.acceptor, allowed);
    const std::vector<double> v = levelset_velocity(sens, r.phi, cfg.alpha_n, ls.band_cells);
    const CellMask band = boundary_band(r.phi, ls.band_cells);

    LevelSetStep rec;
    rec.step = step;
    rec.gamma_before = gamma;
    rec.gamma = gamma;
    double dt = max_stable_dt(v, grid.dx(), ls.cfl);
    if (!std::isfinite(dt)) dt = 0.0;  // stationary boundary

    for (int attempt = 0; attempt <= ls.max_backtracks; ++attempt) {
      LevelSetField trial = levelset_evolve(r.phi, v, dt);
      if (step % ls.reinit_every == 0) trial = reinitialize(trial);
      PermittivityGrid eps = material_from_level_set(trial, allowed, cfg.eps_inclusion);
      double trial_gamma = gamma;
      std::vector<GreensField> trial_fields;
      if (!(eps == r.eps)) {
        trial_fields = solve_green_columns(eps, sources, cfg.solver);
        trial_gamma = ret_rate(trial_fields[0], cfg.acceptor);
      }
      if (trial_gamma >= gamma) {
        rec.accepted = true;
        rec.dt = dt;
        rec.predicted = predicted_gain(v, band, grid.dx(), dt);
        rec.gamma = trial_gamma;
        r.phi = std::move(trial);
        r.eps = std::move(eps);
        if (!trial_fields.empty()) fields = std::move(trial_fields);
        gamma = trial_gamma;
        break;
      }
      ++rec.backtracks;
      dt *= 0.5;
    }
    rec.purcell = rec.gamma / r.gamma0;
    for (std::size_t k = 0; k < r.eps.values().size(); ++k) {
      if (r.eps[k] != 1.0) ++rec.material_cells;
    }
    r.steps.push_back(rec);
    if (observer) observer(rec, r.eps);
  }
  return r;
}

}  // namespace greenopt
