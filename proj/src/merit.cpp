#include "greenopt/merit.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "greenopt/analytic2d.hpp"

namespace greenopt {
namespace {

void check_frequency(double a, double b, const char* what) {
  if (a != b) {
    std::ostringstream msg;
    msg << what << ": frequency mismatch (" << a << " vs " << b << ")";
    throw DomainError(msg.str());
  }
}

void check_grid(const GreensField& f, const CellMask& mask) {
  if (!(f.grid == mask.grid())) throw DomainError("delta map: mask grid differs from field grid");
  if (mask.count() == 0) throw NoEligibleCellsError("delta map: no eligible cells");
}

// Sum over the four Yee edges of cell c of the unconjugated product of the
// two fields, each edge weighted by 1/2 (the share of the cell in the edge
// permittivity).
Complex edge_product(const GreensField& a, const GreensField& b, CellIndex c) {
  const auto [i, j] = c;
  Complex s = a.ex_at(i - 1, j) * b.ex_at(i - 1, j) + a.ex_at(i, j) * b.ex_at(i, j) +
              a.ey_at(i, j - 1) * b.ey_at(i, j - 1) + a.ey_at(i, j) * b.ey_at(i, j);
  return 0.5 * s;
}

// Distance from point p to the square footprint of cell c.
double cell_distance(const Grid2D& grid, CellIndex c, const Vec2& p) {
  const Vec2 centre = grid.center(c);
  const double h = 0.5 * grid.dx();
  const double dx = std::max(std::abs(p.x() - centre.x()) - h, 0.0);
  const double dy = std::max(std::abs(p.y() - centre.y()) - h, 0.0);
  return std::hypot(dx, dy);
}

bool clear_of_atoms(const Grid2D& grid, CellIndex c, std::span<const Vec2> atoms, double radius) {
  for (const Vec2& a : atoms) {
    if (cell_distance(grid, c, a) < radius) return false;
  }
  return true;
}

template <typename Fn>
DeltaFMap build_map(const GreensField& f, const CellMask& mask, Fn value) {
  DeltaFMap map{f.grid, std::vector<double>(f.grid.cell_count(), 0.0), mask};
  for (int j = 0; j < f.grid.ny(); ++j) {
    for (int i = 0; i < f.grid.nx(); ++i) {
      const CellIndex c{i, j};
      if (!mask(c)) continue;
      if (!f.interior.contains(c)) {
        throw DomainError("delta map: mask admits cells outside the interior");
      }
      map.values[f.grid.linear(c)] = value(c);
    }
  }
  return map;
}

}  // namespace

std::size_t CellMask::count() const noexcept {
  return static_cast<std::size_t>(std::count(flags_.begin(), flags_.end(), 1));
}

std::optional<CellIndex> DeltaFMap::argmax() const {
  std::optional<std::size_t> best;
  for (std::size_t k = 0; k < values.size(); ++k) {
    if (!mask[k]) continue;
    if (!best || values[k] > values[*best]) best = k;
  }
  if (!best) return std::nullopt;
  return grid.cell(*best);
}

Complex transfer_amplitude(const GreensField& field_D, const DipoleSpec& acceptor) {
  check_frequency(field_D.omega, acceptor.omega, "ret_rate");
  const double w = field_D.omega;
  return probe(field_D, acceptor.position, acceptor.orientation) / (w * w * field_D.amplitude);
}

double ret_rate(const GreensField& field_D, const DipoleSpec& acceptor) {
  return ret_prefactor(field_D.omega) * std::norm(transfer_amplitude(field_D, acceptor));
}

double purcell_factor(const PermittivityGrid& eps, const DipoleSpec& donor,
                      const DipoleSpec& acceptor, const SolverParams& params) {
  check_frequency(donor.omega, acceptor.omega, "purcell_factor");
  const double gamma = ret_rate(solve_green_column(eps, donor, params), acceptor);
  const double gamma0 =
      ret_rate(solve_green_column(PermittivityGrid::vacuum(eps.grid()), donor, params), acceptor);
  return gamma / gamma0;
}

DeltaFMap ret_delta_map(const GreensField& field_D, const GreensField& field_A,
                        const DipoleSpec& donor, const DipoleSpec& acceptor,
                        const CellMask& mask) {
  check_frequency(field_D.omega, field_A.omega, "ret_delta_map");
  check_frequency(donor.omega, acceptor.omega, "ret_delta_map");
  check_frequency(field_D.omega, donor.omega, "ret_delta_map");
  if (!(field_D.grid == field_A.grid)) throw DomainError("ret_delta_map: fields on different grids");
  check_grid(field_D, mask);

  const double w = field_D.omega;
  const Complex c_conj = std::conj(transfer_amplitude(field_D, acceptor));
  const double scale = 4.0 * pi * std::pow(w, 6) / (std::pow(w, 4) * field_D.amplitude *
                                                    field_A.amplitude);
  return build_map(field_D, mask, [&](CellIndex c) {
    return scale * (c_conj * edge_product(field_A, field_D, c)).real();
  });
}

double decay_rate(const GreensField& field, const GreensField& vacuum_field,
                  const DipoleSpec& atom) {
  check_frequency(field.omega, atom.omega, "decay_rate");
  check_frequency(vacuum_field.omega, atom.omega, "decay_rate");
  const double w = atom.omega;
  const Complex scattered = probe(field, atom.position, atom.orientation) / field.amplitude -
                            probe(vacuum_field, atom.position, atom.orientation) /
                                vacuum_field.amplitude;
  // Im of the vacuum in-plane self term (i/4)(H0 - H1/z) as z -> 0 is 1/8.
  return 2.0 * w * w * (0.125 + scattered.imag() / (w * w));
}

DeltaFMap decay_delta_map(const GreensField& field, const DipoleSpec& atom,
                          const CellMask& mask) {
  check_frequency(field.omega, atom.omega, "decay_delta_map");
  check_grid(field, mask);
  const double scale = 2.0 / (field.amplitude * field.amplitude);
  return build_map(field, mask,
                   [&](CellIndex c) { return scale * edge_product(field, field, c).imag(); });
}

std::vector<CellIndex> block_cells(CellIndex anchor, int block_size) {
  const int start = -(block_size - 1) / 2;
  std::vector<CellIndex> out;
  out.reserve(static_cast<std::size_t>(block_size * block_size));
  for (int dj = 0; dj < block_size; ++dj) {
    for (int di = 0; di < block_size; ++di) {
      out.push_back({anchor.i + start + di, anchor.j + start + dj});
    }
  }
  return out;
}

CellMask material_mask(const Grid2D& grid, const CellBox& interior, std::span<const Vec2> atoms,
                       double exclusion_radius) {
  CellMask mask(grid);
  for (int j = interior.lo.j; j <= interior.hi.j; ++j) {
    for (int i = interior.lo.i; i <= interior.hi.i; ++i) {
      if (clear_of_atoms(grid, {i, j}, atoms, exclusion_radius)) mask.set({i, j}, true);
    }
  }
  return mask;
}

CellMask placement_mask(const PermittivityGrid& eps, const CellBox& interior,
                        std::span<const Vec2> atoms, double exclusion_radius, int block_size) {
  if (block_size < 1) throw DomainError("placement_mask: block_size must be >= 1");
  const Grid2D& grid = eps.grid();
  const CellMask allowed = material_mask(grid, interior, atoms, exclusion_radius);
  CellMask mask(grid);
  for (int j = interior.lo.j; j <= interior.hi.j; ++j) {
    for (int i = interior.lo.i; i <= interior.hi.i; ++i) {
      bool ok = true;
      for (const CellIndex& c : block_cells({i, j}, block_size)) {
        if (!grid.in_range(c) || !allowed(c) || eps(c) != 1.0) {
          ok = false;
          break;
        }
      }
      if (ok) mask.set({i, j}, true);
    }
  }
  return mask;
}

}  // namespace greenopt
