// Time-domain solve on the same Yee lattice as the frequency-domain path.
// Hz is split into Hzx + Hzy inside the absorber (Berenger). The source is a
// raised-cosine-ramped CW current; the steady-state phasor is extracted with
// a running DFT over whole periods, block by block, until successive blocks
// agree to `convergence_tol`.

#include <cmath>
#include <sstream>

#include "yee.hpp"

namespace greenopt::detail {
namespace {

struct Coefficients {
  std::vector<double> decay;
  std::vector<double> gain;
};

// Semi-implicit update for d u/dt + sigma u = rhs.
Coefficients coefficients(const std::vector<double>& sigma, double dt) {
  Coefficients c{std::vector<double>(sigma.size()), std::vector<double>(sigma.size())};
  for (std::size_t k = 0; k < sigma.size(); ++k) {
    const double half = 0.5 * sigma[k] * dt;
    c.decay[k] = (1.0 - half) / (1.0 + half);
    c.gain[k] = dt / (1.0 + half);
  }
  return c;
}

double ramp(double t, double ramp_time) {
  if (t >= ramp_time) return 1.0;
  return 0.5 * (1.0 - std::cos(pi * t / ramp_time));
}

double relative_change(const std::vector<Complex>& now, const std::vector<Complex>& before) {
  double diff = 0.0;
  double norm = 0.0;
  for (std::size_t k = 0; k < now.size(); ++k) {
    diff += std::norm(now[k] - before[k]);
    norm += std::norm(now[k]);
  }
  return norm > 0.0 ? std::sqrt(diff / norm) : 0.0;
}

}  // namespace

GreensField solve_time_domain(const PermittivityGrid& eps, const DipoleSpec& src,
                              const SolverParams& params) {
  const YeeLattice l = build_lattice(eps, params);
  const CellBox interior = interior_box(eps.grid(), params);
  const int nx = l.nx;
  const int ny = l.ny;
  const double omega = src.omega;

  // Whole number of steps per period so block DFTs are exact for a pure tone.
  const double period = 2.0 * pi / omega;
  const int steps_per_period =
      static_cast<int>(std::ceil(period / (params.courant * l.dx / speed_of_light)));
  const double dt = period / steps_per_period;

  const Coefficients ex_c = coefficients(l.sigma_y_cell, dt);
  const Coefficients ey_c = coefficients(l.sigma_x_cell, dt);
  const Coefficients hx_c = coefficients(l.sigma_x_corner, dt);
  const Coefficients hy_c = coefficients(l.sigma_y_corner, dt);

  // Phasor current J e^{-i w t}; the real current is Re of that.
  const EdgeCurrent cur = dipole_current(l, interior, src, params.amplitude_scale);

  std::vector<double> ex(l.ex_count(), 0.0), ey(l.ey_count(), 0.0);
  std::vector<double> hzx(l.hz_count(), 0.0), hzy(l.hz_count(), 0.0);
  auto hz = [&](int a, int b) -> double {
    if (a < 0 || b < 0 || a >= nx - 1 || b >= ny - 1) return 0.0;
    const std::size_t k = l.hz_index(a, b);
    return hzx[k] + hzy[k];
  };

  const double inv_dx = 1.0 / l.dx;
  const double ramp_time = params.ramp_cycles * period;
  const long settle_steps =
      static_cast<long>(std::ceil((params.ramp_cycles + params.settle_cycles) * steps_per_period));
  const long block_steps = static_cast<long>(params.dft_cycles) * steps_per_period;
  const long max_steps = static_cast<long>(std::ceil(params.max_cycles * steps_per_period));

  std::vector<Complex> acc_x(l.ex_count()), acc_y(l.ey_count());
  std::vector<Complex> prev_x, prev_y;
  long block_start = settle_steps;
  bool have_prev = false;

  for (long n = 0; n < max_steps; ++n) {
    // H: n - 1/2 -> n + 1/2
    for (int b = 0; b < ny - 1; ++b) {
      for (int a = 0; a < nx - 1; ++a) {
        const std::size_t k = l.hz_index(a, b);
        const double curl_x = (ey[l.ey_index(a + 1, b)] - ey[l.ey_index(a, b)]) * inv_dx;
        const double curl_y = (ex[l.ex_index(a, b + 1)] - ex[l.ex_index(a, b)]) * inv_dx;
        hzx[k] = hx_c.decay[a] * hzx[k] - hx_c.gain[a] * curl_x;
        hzy[k] = hy_c.decay[b] * hzy[k] + hy_c.gain[b] * curl_y;
      }
    }

    // E: n -> n + 1, current sampled at n + 1/2.
    const double t_half = (n + 0.5) * dt;
    const Complex phase = std::polar(ramp(t_half, ramp_time), -omega * t_half);
    for (int j = 0; j < ny; ++j) {
      for (int a = 0; a < nx - 1; ++a) {
        const std::size_t k = l.ex_index(a, j);
        const double source = (cur.jx[k] * phase).real();
        const double rhs = ((hz(a, j) - hz(a, j - 1)) * inv_dx - source) / l.eps_x[k];
        ex[k] = ex_c.decay[j] * ex[k] + ex_c.gain[j] * rhs;
      }
    }
    for (int b = 0; b < ny - 1; ++b) {
      for (int i = 0; i < nx; ++i) {
        const std::size_t k = l.ey_index(i, b);
        const double source = (cur.jy[k] * phase).real();
        const double rhs = (-(hz(i, b) - hz(i - 1, b)) * inv_dx - source) / l.eps_y[k];
        ey[k] = ey_c.decay[i] * ey[k] + ey_c.gain[i] * rhs;
      }
    }

    const long step = n + 1;  // E is now at time step * dt
    if (step <= settle_steps) continue;

    const Complex kernel = std::polar(2.0 / block_steps, omega * step * dt);
    for (std::size_t k = 0; k < ex.size(); ++k) acc_x[k] += kernel * ex[k];
    for (std::size_t k = 0; k < ey.size(); ++k) acc_y[k] += kernel * ey[k];

    if (step - block_start < block_steps) continue;
    block_start = step;

    bool diverged = false;
    for (const Complex& v : acc_x) diverged |= !(std::abs(v) < 1e30);
    for (const Complex& v : acc_y) diverged |= !(std::abs(v) < 1e30);
    if (diverged) {
      throw InstabilityError(
          "time-domain solver: field diverged; check courant <= 1/sqrt(2) and the absorber "
          "profile");
    }
    if (have_prev) {
      const double change =
          std::max(relative_change(acc_x, prev_x), relative_change(acc_y, prev_y));
      if (change < params.convergence_tol) {
        GreensField f;
        f.grid = l.grid;
        f.source = src;
        f.omega = omega;
        f.amplitude = params.amplitude_scale;
        f.interior = interior;
        f.ex = std::move(acc_x);
        f.ey = std::move(acc_y);
        f.e_field = center_fields(l, f.ex, f.ey);
        return f;
      }
    }
    prev_x = acc_x;
    prev_y = acc_y;
    have_prev = true;
    std::fill(acc_x.begin(), acc_x.end(), Complex(0.0));
    std::fill(acc_y.begin(), acc_y.end(), Complex(0.0));
  }

  std::ostringstream msg;
  msg << "time-domain solver: DFT did not converge to " << params.convergence_tol << " within "
      << params.max_cycles << " cycles";
  throw NonConvergenceError(msg.str());
}

}  // namespace greenopt::detail
