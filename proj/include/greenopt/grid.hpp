#pragma once

#include <compare>
#include <cstddef>
#include <span>
#include <vector>

#include "greenopt/types.hpp"

namespace greenopt {

struct CellIndex {
  int i = 0;
  int j = 0;
  auto operator<=>(const CellIndex&) const = default;
};

/// Uniform square-cell Cartesian grid. Cell (i, j) has its centre at
/// origin + (i, j) * dx and spans half a cell either side of it.
class Grid2D {
 public:
  Grid2D() = default;
  Grid2D(int nx, int ny, double dx, Vec2 origin);

  /// Grid whose cell centres are symmetric about (0, 0).
  static Grid2D centered(int nx, int ny, double dx);

  int nx() const noexcept { return nx_; }
  int ny() const noexcept { return ny_; }
  double dx() const noexcept { return dx_; }
  const Vec2& origin() const noexcept { return origin_; }
  std::size_t cell_count() const noexcept {
    return static_cast<std::size_t>(nx_) * static_cast<std::size_t>(ny_);
  }

  std::size_t linear(CellIndex c) const noexcept {
    return static_cast<std::size_t>(c.j) * static_cast<std::size_t>(nx_) +
           static_cast<std::size_t>(c.i);
  }
  CellIndex cell(std::size_t linear_index) const noexcept {
    return {static_cast<int>(linear_index % static_cast<std::size_t>(nx_)),
            static_cast<int>(linear_index / static_cast<std::size_t>(nx_))};
  }
  bool in_range(CellIndex c) const noexcept {
    return c.i >= 0 && c.j >= 0 && c.i < nx_ && c.j < ny_;
  }

  Vec2 center(CellIndex c) const noexcept {
    return origin_ + dx_ * Vec2(c.i, c.j);
  }
  /// Lower-left and upper-right corners of the whole domain.
  Vec2 lower() const noexcept { return origin_ - Vec2(0.5 * dx_, 0.5 * dx_); }
  Vec2 upper() const noexcept {
    return origin_ + dx_ * Vec2(nx_ - 0.5, ny_ - 0.5);
  }
  bool contains(const Vec2& p) const noexcept;

  bool operator==(const Grid2D& other) const noexcept {
    return nx_ == other.nx_ && ny_ == other.ny_ && dx_ == other.dx_ &&
           origin_ == other.origin_;
  }

 private:
  int nx_ = 0;
  int ny_ = 0;
  double dx_ = 0.0;
  Vec2 origin_ = Vec2::Zero();
};

/// Nearest cell centre. Throws DomainError outside the grid.
CellIndex world_to_index(const Grid2D& grid, const Vec2& p);
Vec2 index_to_world(const Grid2D& grid, CellIndex c);

/// Relative permittivity per cell. Lossless, eps >= 1 everywhere.
class PermittivityGrid {
 public:
  PermittivityGrid() = default;
  PermittivityGrid(Grid2D grid, std::vector<double> eps);

  static PermittivityGrid vacuum(const Grid2D& grid);

  const Grid2D& grid() const noexcept { return grid_; }
  double operator()(CellIndex c) const noexcept { return eps_[grid_.linear(c)]; }
  double operator[](std::size_t k) const noexcept { return eps_[k]; }
  std::span<const double> values() const noexcept { return eps_; }

  /// Copy with every listed cell set to `value`.
  PermittivityGrid with_cells(std::span<const CellIndex> cells, double value) const;

  bool is_vacuum() const noexcept;

  bool operator==(const PermittivityGrid&) const = default;

 private:
  Grid2D grid_;
  std::vector<double> eps_;
};

/// A point dipole: position (um), in-plane unit orientation and angular
/// transition frequency (c / um).
struct DipoleSpec {
  Vec2 position = Vec2::Zero();
  Vec2 orientation = Vec2(0.0, 1.0);
  double omega = 1.0;

  /// Builds a dipole, normalising `direction`. Throws DomainError on a zero
  /// direction or non-positive frequency.
  static DipoleSpec make(const Vec2& position, const Vec2& direction, double omega);

  /// Throws DomainError unless |orientation| = 1 within 1e-12 and omega > 0.
  void validate() const;

  bool operator==(const DipoleSpec&) const = default;
};

}  // namespace greenopt
