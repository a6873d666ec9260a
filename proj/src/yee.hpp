#pragma once

// Shared Yee-lattice bookkeeping for the frequency- and time-domain solvers.
//
// Cells carry eps. Ex sits on the edge between cells (a, j) and (a+1, j),
// Ey between (i, b) and (i, b+1), Hz on the interior corner shared by cells
// (a, b), (a+1, b), (a, b+1), (a+1, b+1). Hz vanishes on the outer boundary,
// which lies behind the absorbing layer.

#include <cstddef>
#include <vector>

#include "greenopt/solver.hpp"

namespace greenopt::detail {

struct YeeLattice {
  Grid2D grid;
  int nx = 0;
  int ny = 0;
  double dx = 0.0;

  std::vector<double> eps_x;  // (nx-1) * ny
  std::vector<double> eps_y;  // nx * (ny-1)

  // Absorber conductivity sampled at cell centres and at corner positions.
  std::vector<double> sigma_x_cell;    // nx
  std::vector<double> sigma_x_corner;  // nx-1
  std::vector<double> sigma_y_cell;    // ny
  std::vector<double> sigma_y_corner;  // ny-1

  std::size_t ex_index(int a, int j) const {
    return static_cast<std::size_t>(j) * (nx - 1) + a;
  }
  std::size_t ey_index(int i, int b) const {
    return static_cast<std::size_t>(b) * nx + i;
  }
  std::size_t hz_index(int a, int b) const {
    return static_cast<std::size_t>(b) * (nx - 1) + a;
  }
  std::size_t ex_count() const { return static_cast<std::size_t>(nx - 1) * ny; }
  std::size_t ey_count() const { return static_cast<std::size_t>(nx) * (ny - 1); }
  std::size_t hz_count() const { return static_cast<std::size_t>(nx - 1) * (ny - 1); }
};

YeeLattice build_lattice(const PermittivityGrid& eps, const SolverParams& params);

/// Phasor current density J = -i omega p on the Ex / Ey edges of a unit
/// dipole, spread with the bilinear stencil and split evenly over the two
/// edges flanking each cell centre.
struct EdgeCurrent {
  std::vector<Complex> jx;
  std::vector<Complex> jy;
};
EdgeCurrent dipole_current(const YeeLattice& lattice, const CellBox& interior,
                           const DipoleSpec& src, double amplitude);

/// Averages the edge samples onto cell centres.
std::vector<CVec2> center_fields(const YeeLattice& lattice, const std::vector<Complex>& ex,
                                 const std::vector<Complex>& ey);

/// Checks that the source sits in the interior and that the grid has one.
void check_source(const Grid2D& grid, const CellBox& interior, const DipoleSpec& src);

GreensField solve_frequency_domain_one(const PermittivityGrid& eps, const DipoleSpec& src,
                                       const SolverParams& params);
std::vector<GreensField> solve_frequency_domain(const PermittivityGrid& eps,
                                                std::span<const DipoleSpec> sources,
                                                const SolverParams& params);
GreensField solve_time_domain(const PermittivityGrid& eps, const DipoleSpec& src,
                              const SolverParams& params);

}  // namespace greenopt::detail
