#include "greenopt/grid.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace greenopt {

Grid2D::Grid2D(int nx, int ny, double dx, Vec2 origin)
    : nx_(nx), ny_(ny), dx_(dx), origin_(std::move(origin)) {
  if (!(dx > 0.0) || !std::isfinite(dx)) {
    throw DomainError("grid: dx must be positive and finite");
  }
  if (nx < 16 || ny < 16) {
    throw DomainError("grid: nx and ny must be at least 16");
  }
  if (!origin_.allFinite()) {
    throw DomainError("grid: origin must be finite");
  }
}

Grid2D Grid2D::centered(int nx, int ny, double dx) {
  return Grid2D(nx, ny, dx, Vec2(-0.5 * (nx - 1) * dx, -0.5 * (ny - 1) * dx));
}

bool Grid2D::contains(const Vec2& p) const noexcept {
  const Vec2 lo = lower();
  const Vec2 hi = upper();
  return p.x() >= lo.x() && p.y() >= lo.y() && p.x() <= hi.x() && p.y() <= hi.y();
}

CellIndex world_to_index(const Grid2D& grid, const Vec2& p) {
  if (!grid.contains(p)) {
    std::ostringstream msg;
    msg << "point (" << p.x() << ", " << p.y() << ") lies outside the grid";
    throw DomainError(msg.str());
  }
  const Vec2 rel = (p - grid.origin()) / grid.dx();
  CellIndex c{static_cast<int>(std::floor(rel.x() + 0.5)),
              static_cast<int>(std::floor(rel.y() + 0.5))};
  // The upper boundary rounds up to nx; clamp it back onto the last cell.
  c.i = std::clamp(c.i, 0, grid.nx() - 1);
  c.j = std::clamp(c.j, 0, grid.ny() - 1);
  return c;
}

Vec2 index_to_world(const Grid2D& grid, CellIndex c) {
  if (!grid.in_range(c)) {
    throw DomainError("cell index outside the grid");
  }
  return grid.center(c);
}

PermittivityGrid::PermittivityGrid(Grid2D grid, std::vector<double> eps)
    : grid_(std::move(grid)), eps_(std::move(eps)) {
  if (eps_.size() != grid_.cell_count()) {
    throw DomainError("permittivity: value count does not match the grid");
  }
  for (double e : eps_) {
    if (!std::isfinite(e) || e < 1.0) {
      throw DomainError("permittivity: values must be finite and >= 1");
    }
  }
}

PermittivityGrid PermittivityGrid::vacuum(const Grid2D& grid) {
  return PermittivityGrid(grid, std::vector<double>(grid.cell_count(), 1.0));
}

PermittivityGrid PermittivityGrid::with_cells(std::span<const CellIndex> cells,
                                              double value) const {
  if (!std::isfinite(value) || value < 1.0) {
    throw DomainError("permittivity: values must be finite and >= 1");
  }
  PermittivityGrid out = *this;
  for (const CellIndex& c : cells) {
    if (!grid_.in_range(c)) throw DomainError("permittivity: cell outside the grid");
    out.eps_[grid_.linear(c)] = value;
  }
  return out;
}

bool PermittivityGrid::is_vacuum() const noexcept {
  return std::all_of(eps_.begin(), eps_.end(), [](double e) { return e == 1.0; });
}

DipoleSpec DipoleSpec::make(const Vec2& position, const Vec2& direction, double omega) {
  const double n = direction.norm();
  if (!(n > 0.0) || !std::isfinite(n)) {
    throw DomainError("dipole: orientation must be a non-zero finite vector");
  }
  DipoleSpec d{position, direction / n, omega};
  d.validate();
  return d;
}

void DipoleSpec::validate() const {
  if (!position.allFinite()) throw DomainError("dipole: position must be finite");
  if (std::abs(orientation.norm() - 1.0) > 1e-12) {
    throw DomainError("dipole: orientation must be a unit vector");
  }
  if (!(omega > 0.0) || !std::isfinite(omega)) {
    throw DomainError("dipole: omega must be positive");
  }
}

}  // namespace greenopt
