#pragma once

#include <span>
#include <vector>

#include "greenopt/grid.hpp"
#include "greenopt/solver_params.hpp"
#include "greenopt/types.hpp"

namespace greenopt {

/// Inclusive cell-index box.
struct CellBox {
  CellIndex lo;
  CellIndex hi;
  bool contains(CellIndex c) const noexcept {
    return c.i >= lo.i && c.j >= lo.j && c.i <= hi.i && c.j <= hi.j;
  }
};

/// Cells outside the absorbing layer.
CellBox interior_box(const Grid2D& grid, const SolverParams& params);

/// Steady-state electric field radiated by a unit point dipole: one column
/// of G contracted with the source orientation,
///   e_field(r) = mu0 omega^2 G(r, r_src, omega) . d_src.
///
/// The field is held both at the staggered Yee edge samples (`ex`, `ey`) and
/// averaged onto cell centres (`e_field`).
struct GreensField {
  Grid2D grid;
  DipoleSpec source;
  double omega = 0.0;
  double amplitude = 1.0;  // source dipole magnitude
  CellBox interior;

  std::vector<CVec2> e_field;  // per cell, row-major
  std::vector<Complex> ex;     // (nx-1) * ny, between cells (a, j) and (a+1, j)
  std::vector<Complex> ey;     // nx * (ny-1), between cells (i, b) and (i, b+1)

  const CVec2& at(CellIndex c) const { return e_field[grid.linear(c)]; }
  Complex ex_at(int a, int j) const {
    return ex[static_cast<std::size_t>(j) * (grid.nx() - 1) + a];
  }
  Complex ey_at(int i, int b) const {
    return ey[static_cast<std::size_t>(b) * grid.nx() + i];
  }
};

/// Solves for the field of one dipole source on the given design.
/// Throws DomainError when the source lies outside the interior,
/// NonConvergenceError / InstabilityError from the time-domain path.
GreensField solve_green_column(const PermittivityGrid& eps, const DipoleSpec& src,
                               const SolverParams& params);

/// Several sources on the same design. The frequency-domain path factors the
/// operator once; the time-domain path runs the sources concurrently.
std::vector<GreensField> solve_green_columns(const PermittivityGrid& eps,
                                             std::span<const DipoleSpec> sources,
                                             const SolverParams& params);

/// d_probe . e_field(r) with bilinear interpolation between cell centres.
/// Throws DomainError for points outside the interior.
Complex probe(const GreensField& field, const Vec2& r, const Vec2& d_probe);

/// Unconjugated contraction a . b.
inline Complex bilinear(const CVec2& a, const CVec2& b) {
  return a(0) * b(0) + a(1) * b(1);
}

/// Up to four (cell, weight) pairs for bilinear interpolation at `p`.
/// Source injection uses the same weights, so probing and sourcing are
/// transposes of each other.
struct StencilWeight {
  CellIndex cell;
  double weight;
};
std::vector<StencilWeight> bilinear_stencil(const Grid2D& grid, const CellBox& box,
                                            const Vec2& p);

}  // namespace greenopt
