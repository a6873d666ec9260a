#include "yee.hpp"

#include <cmath>
#include <sstream>

namespace greenopt::detail {
namespace {

// Conductivity at physical coordinate `x` along one axis whose cells span
// [lower, upper] with `pml` absorbing cells on either side.
double sigma_at(double x, double lower, double upper, double thickness, double sigma_max,
                double order) {
  double depth = 0.0;
  if (x < lower + thickness) depth = lower + thickness - x;
  if (x > upper - thickness) depth = x - (upper - thickness);
  if (depth <= 0.0) return 0.0;
  return sigma_max * std::pow(depth / thickness, order);
}

}  // namespace

YeeLattice build_lattice(const PermittivityGrid& eps, const SolverParams& params) {
  YeeLattice l;
  l.grid = eps.grid();
  l.nx = l.grid.nx();
  l.ny = l.grid.ny();
  l.dx = l.grid.dx();

  l.eps_x.resize(l.ex_count());
  for (int j = 0; j < l.ny; ++j) {
    for (int a = 0; a < l.nx - 1; ++a) {
      l.eps_x[l.ex_index(a, j)] = 0.5 * (eps({a, j}) + eps({a + 1, j}));
    }
  }
  l.eps_y.resize(l.ey_count());
  for (int b = 0; b < l.ny - 1; ++b) {
    for (int i = 0; i < l.nx; ++i) {
      l.eps_y[l.ey_index(i, b)] = 0.5 * (eps({i, b}) + eps({i, b + 1}));
    }
  }

  const double thickness = params.pml_cells * l.dx;
  const double sigma_max =
      thickness > 0.0 ? -(params.pml_order + 1.0) * std::log(params.pml_reflection) /
                            (2.0 * thickness * speed_of_light)
                      : 0.0;
  const Vec2 lo = l.grid.lower();
  const Vec2 hi = l.grid.upper();
  auto sample = [&](int count, double start, double lower, double upper) {
    std::vector<double> out(static_cast<std::size_t>(count));
    for (int k = 0; k < count; ++k) {
      out[static_cast<std::size_t>(k)] =
          sigma_at(start + k * l.dx, lower, upper, thickness, sigma_max, params.pml_order);
    }
    return out;
  };
  const Vec2& o = l.grid.origin();
  l.sigma_x_cell = sample(l.nx, o.x(), lo.x(), hi.x());
  l.sigma_x_corner = sample(l.nx - 1, o.x() + 0.5 * l.dx, lo.x(), hi.x());
  l.sigma_y_cell = sample(l.ny, o.y(), lo.y(), hi.y());
  l.sigma_y_corner = sample(l.ny - 1, o.y() + 0.5 * l.dx, lo.y(), hi.y());
  return l;
}

void check_source(const Grid2D& grid, const CellBox& interior, const DipoleSpec& src) {
  src.validate();
  if (interior.lo.i > interior.hi.i || interior.lo.j > interior.hi.j) {
    throw DomainError("solver: grid has no interior outside the absorbing layer");
  }
  const Vec2 lo = grid.center(interior.lo);
  const Vec2 hi = grid.center(interior.hi);
  const Vec2& p = src.position;
  if (p.x() < lo.x() || p.y() < lo.y() || p.x() > hi.x() || p.y() > hi.y()) {
    std::ostringstream msg;
    msg << "solver: source at (" << p.x() << ", " << p.y()
        << ") lies outside the non-absorbing interior";
    throw DomainError(msg.str());
  }
}

EdgeCurrent dipole_current(const YeeLattice& l, const CellBox& interior, const DipoleSpec& src,
                           double amplitude) {
  EdgeCurrent cur{std::vector<Complex>(l.ex_count()), std::vector<Complex>(l.ey_count())};
  const Complex j0 = Complex(0.0, -src.omega) * amplitude / (l.dx * l.dx);
  for (const StencilWeight& sw : bilinear_stencil(l.grid, interior, src.position)) {
    const auto [i, j] = sw.cell;
    const Complex jx = 0.5 * sw.weight * src.orientation.x() * j0;
    const Complex jy = 0.5 * sw.weight * src.orientation.y() * j0;
    // Interior cells are never on the outer boundary, so all four edges exist.
    cur.jx[l.ex_index(i - 1, j)] += jx;
    cur.jx[l.ex_index(i, j)] += jx;
    cur.jy[l.ey_index(i, j - 1)] += jy;
    cur.jy[l.ey_index(i, j)] += jy;
  }
  return cur;
}

std::vector<CVec2> center_fields(const YeeLattice& l, const std::vector<Complex>& ex,
                                 const std::vector<Complex>& ey) {
  std::vector<CVec2> out(l.grid.cell_count());
  for (int j = 0; j < l.ny; ++j) {
    for (int i = 0; i < l.nx; ++i) {
      Complex fx = 0.0;
      Complex fy = 0.0;
      if (i > 0) fx += ex[l.ex_index(i - 1, j)];
      if (i < l.nx - 1) fx += ex[l.ex_index(i, j)];
      if (j > 0) fy += ey[l.ey_index(i, j - 1)];
      if (j < l.ny - 1) fy += ey[l.ey_index(i, j)];
      out[l.grid.linear({i, j})] = CVec2(0.5 * fx, 0.5 * fy);
    }
  }
  return out;
}

}  // namespace greenopt::detail
