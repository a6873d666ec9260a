#include "greenopt/solver.hpp"

#include <cmath>
#include <future>
#include <sstream>

#include "yee.hpp"

namespace greenopt {

std::string to_string(SolverMethod m) {
  switch (m) {
    case SolverMethod::frequency_domain: return "frequency_domain";
    case SolverMethod::time_domain: return "time_domain";
  }
  return "unknown";
}

SolverMethod solver_method_from_string(const std::string& name) {
  if (name == "frequency_domain" || name == "fdfd") return SolverMethod::frequency_domain;
  if (name == "time_domain" || name == "fdtd") return SolverMethod::time_domain;
  throw ConfigError("unknown solver method '" + name + "'", "solver.method");
}

void SolverParams::validate() const {
  auto fail = [](const std::string& field, const std::string& why) {
    throw ConfigError("solver." + field + ": " + why, "solver." + field);
  };
  if (pml_cells < 1) fail("pml_cells", "must be >= 1");
  if (!(pml_order >= 0.0)) fail("pml_order", "must be >= 0");
  if (!(pml_reflection > 0.0 && pml_reflection < 1.0)) fail("pml_reflection", "must lie in (0, 1)");
  if (!(courant > 0.0 && courant <= 1.0 / std::sqrt(2.0))) {
    fail("courant", "must lie in (0, 1/sqrt(2)]");
  }
  if (!(ramp_cycles >= 0.0)) fail("ramp_cycles", "must be >= 0");
  if (!(settle_cycles >= 0.0)) fail("settle_cycles", "must be >= 0");
  if (dft_cycles < 1) fail("dft_cycles", "must be >= 1");
  if (!(convergence_tol > 0.0)) fail("convergence_tol", "must be > 0");
  if (!(max_cycles > ramp_cycles + settle_cycles)) {
    fail("max_cycles", "must exceed ramp_cycles + settle_cycles");
  }
  if (!(amplitude_scale > 0.0) || !std::isfinite(amplitude_scale)) {
    fail("amplitude_scale", "must be positive");
  }
}

CellBox interior_box(const Grid2D& grid, const SolverParams& params) {
  const int m = std::max(params.pml_cells, 1);
  return {{m, m}, {grid.nx() - 1 - m, grid.ny() - 1 - m}};
}

std::vector<StencilWeight> bilinear_stencil(const Grid2D& grid, const CellBox& box,
                                            const Vec2& p) {
  const Vec2 lo = grid.center(box.lo);
  const Vec2 hi = grid.center(box.hi);
  if (!(p.x() >= lo.x() && p.y() >= lo.y() && p.x() <= hi.x() && p.y() <= hi.y())) {
    std::ostringstream msg;
    msg << "point (" << p.x() << ", " << p.y() << ") lies outside the interior";
    throw DomainError(msg.str());
  }
  auto axis = [&](double coord, double origin, int lo_idx, int hi_idx) {
    double f = (coord - origin) / grid.dx();
    const double nearest = std::round(f);
    if (std::abs(f - nearest) < 1e-9) f = nearest;
    int k = static_cast<int>(std::floor(f));
    double t = f - k;
    if (k >= hi_idx) {
      k = hi_idx;
      t = 0.0;
    }
    k = std::max(k, lo_idx);
    return std::pair<int, double>{k, t};
  };
  const auto [i0, tx] = axis(p.x(), grid.origin().x(), box.lo.i, box.hi.i);
  const auto [j0, ty] = axis(p.y(), grid.origin().y(), box.lo.j, box.hi.j);

  std::vector<StencilWeight> out;
  out.reserve(4);
  const double wx[2] = {1.0 - tx, tx};
  const double wy[2] = {1.0 - ty, ty};
  for (int dj = 0; dj < 2; ++dj) {
    for (int di = 0; di < 2; ++di) {
      const double w = wx[di] * wy[dj];
      if (w == 0.0) continue;
      out.push_back({{i0 + di, j0 + dj}, w});
    }
  }
  return out;
}

Complex probe(const GreensField& field, const Vec2& r, const Vec2& d_probe) {
  const CVec2 d = d_probe.cast<Complex>();
  Complex sum = 0.0;
  for (const StencilWeight& sw : bilinear_stencil(field.grid, field.interior, r)) {
    sum += sw.weight * bilinear(d, field.at(sw.cell));
  }
  return sum;
}

GreensField solve_green_column(const PermittivityGrid& eps, const DipoleSpec& src,
                               const SolverParams& params) {
  const DipoleSpec one[1] = {src};
  return std::move(solve_green_columns(eps, one, params).front());
}

std::vector<GreensField> solve_green_columns(const PermittivityGrid& eps,
                                             std::span<const DipoleSpec> sources,
                                             const SolverParams& params) {
  params.validate();
  const CellBox interior = interior_box(eps.grid(), params);
  for (const DipoleSpec& s : sources) detail::check_source(eps.grid(), interior, s);

  if (params.method == SolverMethod::frequency_domain) {
    return detail::solve_frequency_domain(eps, sources, params);
  }
  if (sources.size() == 1) return {detail::solve_time_domain(eps, sources[0], params)};

  std::vector<std::future<GreensField>> jobs;
  jobs.reserve(sources.size());
  for (const DipoleSpec& s : sources) {
    jobs.push_back(std::async(std::launch::async, [&eps, s, &params] {
      return detail::solve_time_domain(eps, s, params);
    }));
  }
  std::vector<GreensField> out;
  out.reserve(sources.size());
  for (auto& job : jobs) out.push_back(job.get());
  return out;
}

}  // namespace greenopt
