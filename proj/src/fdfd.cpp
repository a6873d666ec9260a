// Frequency-domain solve on the Yee lattice. Eliminating Ex and Ey leaves a
// five-point equation for Hz,
//   d_x(1/(eps s_x) d_x Hz)/s_x + d_y(1/(eps s_y) d_y Hz)/s_y + w^2 Hz = curl(J/eps),
// with stretched-coordinate absorbers s = 1 + i sigma/w. Multiplying through
// by s_x s_y makes the matrix complex symmetric, so the discrete Green's
// function is exactly reciprocal.

#include <Eigen/Sparse>

#ifdef GREENOPT_HAVE_UMFPACK
#include <Eigen/UmfPackSupport>
#else
#include <Eigen/SparseLU>
#endif

#include "yee.hpp"

namespace greenopt::detail {
namespace {

using SparseMatrix = Eigen::SparseMatrix<Complex>;
using Vector = Eigen::VectorXcd;
#ifdef GREENOPT_HAVE_UMFPACK
using Factorization = Eigen::UmfPackLU<SparseMatrix>;
#else
using Factorization = Eigen::SparseLU<SparseMatrix>;
#endif

struct Stretch {
  std::vector<Complex> x_cell, x_corner, y_cell, y_corner;
};

Stretch stretch_factors(const YeeLattice& l, double omega) {
  auto convert = [omega](const std::vector<double>& sigma) {
    std::vector<Complex> s(sigma.size());
    for (std::size_t k = 0; k < sigma.size(); ++k) s[k] = Complex(1.0, sigma[k] / omega);
    return s;
  };
  return {convert(l.sigma_x_cell), convert(l.sigma_x_corner), convert(l.sigma_y_cell),
          convert(l.sigma_y_corner)};
}

SparseMatrix assemble(const YeeLattice& l, const Stretch& s, double omega) {
  const int na = l.nx - 1;
  const int nb = l.ny - 1;
  const double inv_dx2 = 1.0 / (l.dx * l.dx);
  std::vector<Eigen::Triplet<Complex>> triplets;
  triplets.reserve(l.hz_count() * 5);

  for (int b = 0; b < nb; ++b) {
    for (int a = 0; a < na; ++a) {
      const auto row = static_cast<int>(l.hz_index(a, b));
      Complex diag = omega * omega * s.x_corner[a] * s.y_corner[b];
      // Links through the Ey edges to the left (i = a) and right (i = a + 1).
      for (int i : {a, a + 1}) {
        const Complex c = s.y_corner[b] / (s.x_cell[i] * l.eps_y[l.ey_index(i, b)]) * inv_dx2;
        diag -= c;
        const int nbr = (i == a) ? a - 1 : a + 1;
        if (nbr >= 0 && nbr < na) {
          triplets.emplace_back(row, static_cast<int>(l.hz_index(nbr, b)), c);
        }
      }
      // Links through the Ex edges below (j = b) and above (j = b + 1).
      for (int j : {b, b + 1}) {
        const Complex c = s.x_corner[a] / (s.y_cell[j] * l.eps_x[l.ex_index(a, j)]) * inv_dx2;
        diag -= c;
        const int nbr = (j == b) ? b - 1 : b + 1;
        if (nbr >= 0 && nbr < nb) {
          triplets.emplace_back(row, static_cast<int>(l.hz_index(a, nbr)), c);
        }
      }
      triplets.emplace_back(row, row, diag);
    }
  }
  SparseMatrix m(static_cast<int>(l.hz_count()), static_cast<int>(l.hz_count()));
  m.setFromTriplets(triplets.begin(), triplets.end());
  m.makeCompressed();
  return m;
}

Vector assemble_rhs(const YeeLattice& l, const Stretch& s, const EdgeCurrent& cur) {
  const int na = l.nx - 1;
  const int nb = l.ny - 1;
  Vector rhs = Vector::Zero(static_cast<Eigen::Index>(l.hz_count()));
  for (int b = 0; b < nb; ++b) {
    for (int a = 0; a < na; ++a) {
      const std::size_t right = l.ey_index(a + 1, b);
      const std::size_t left = l.ey_index(a, b);
      const std::size_t top = l.ex_index(a, b + 1);
      const std::size_t bottom = l.ex_index(a, b);
      const Complex dy_term = cur.jy[right] / l.eps_y[right] - cur.jy[left] / l.eps_y[left];
      const Complex dx_term = cur.jx[top] / l.eps_x[top] - cur.jx[bottom] / l.eps_x[bottom];
      if (dy_term == 0.0 && dx_term == 0.0) continue;
      rhs[static_cast<Eigen::Index>(l.hz_index(a, b))] =
          (-s.y_corner[b] * dy_term + s.x_corner[a] * dx_term) / l.dx;
    }
  }
  return rhs;
}

GreensField recover(const YeeLattice& l, const Stretch& s, const EdgeCurrent& cur,
                    const Vector& hz, const DipoleSpec& src, const CellBox& interior,
                    double amplitude) {
  const double omega = src.omega;
  const Complex iw(0.0, omega);
  auto h = [&](int a, int b) -> Complex {
    if (a < 0 || b < 0 || a >= l.nx - 1 || b >= l.ny - 1) return 0.0;
    return hz[static_cast<Eigen::Index>(l.hz_index(a, b))];
  };

  GreensField f;
  f.grid = l.grid;
  f.source = src;
  f.omega = omega;
  f.amplitude = amplitude;
  f.interior = interior;
  f.ex.resize(l.ex_count());
  f.ey.resize(l.ey_count());
  for (int j = 0; j < l.ny; ++j) {
    for (int a = 0; a < l.nx - 1; ++a) {
      const std::size_t k = l.ex_index(a, j);
      const Complex dyh = (h(a, j) - h(a, j - 1)) / (l.dx * s.y_cell[j]);
      f.ex[k] = (dyh - cur.jx[k]) / (-iw * l.eps_x[k]);
    }
  }
  for (int b = 0; b < l.ny - 1; ++b) {
    for (int i = 0; i < l.nx; ++i) {
      const std::size_t k = l.ey_index(i, b);
      const Complex dxh = (h(i, b) - h(i - 1, b)) / (l.dx * s.x_cell[i]);
      f.ey[k] = (dxh + cur.jy[k]) / (iw * l.eps_y[k]);
    }
  }
  f.e_field = center_fields(l, f.ex, f.ey);
  return f;
}

}  // namespace

std::vector<GreensField> solve_frequency_domain(const PermittivityGrid& eps,
                                                std::span<const DipoleSpec> sources,
                                                const SolverParams& params) {
  std::vector<GreensField> out;
  if (sources.empty()) return out;
  const double omega = sources.front().omega;
  for (const DipoleSpec& s : sources) {
    if (s.omega != omega) {
      // Different frequencies need different operators.
      for (const DipoleSpec& t : sources) out.push_back(solve_frequency_domain_one(eps, t, params));
      return out;
    }
  }

  const YeeLattice lattice = build_lattice(eps, params);
  const CellBox interior = interior_box(eps.grid(), params);
  const Stretch stretch = stretch_factors(lattice, omega);
  const SparseMatrix op = assemble(lattice, stretch, omega);

  Factorization lu;
  lu.compute(op);
  if (lu.info() != Eigen::Success) {
    throw SolverError("frequency-domain solver: factorization failed");
  }
  out.reserve(sources.size());
  for (const DipoleSpec& src : sources) {
    const EdgeCurrent cur = dipole_current(lattice, interior, src, params.amplitude_scale);
    const Vector hz = lu.solve(assemble_rhs(lattice, stretch, cur));
    if (lu.info() != Eigen::Success || !hz.allFinite()) {
      throw SolverError("frequency-domain solver: back-substitution failed");
    }
    out.push_back(recover(lattice, stretch, cur, hz, src, interior, params.amplitude_scale));
  }
  return out;
}

GreensField solve_frequency_domain_one(const PermittivityGrid& eps, const DipoleSpec& src,
                                       const SolverParams& params) {
  const DipoleSpec one[1] = {src};
  return std::move(solve_frequency_domain(eps, one, params).front());
}

}  // namespace greenopt::detail
