#include "greenopt/analytic2d.hpp"

#include <cmath>

#include "greenopt/special.hpp"

namespace greenopt {
namespace {

constexpr double kCoincidence = 1e-12;
const Complex kQuarterI(0.0, 0.25);

double separation(const Vec2& r, const Vec2& r_src) {
  const double rho = (r - r_src).norm();
  if (!(rho >= kCoincidence)) {
    throw DomainError("vacuum Green's tensor: observation and source points coincide");
  }
  return rho;
}

}  // namespace

GreenComponents vacuum_green_components(double rho, double omega) {
  if (!(rho >= kCoincidence)) {
    throw DomainError("vacuum Green's tensor: observation and source points coincide");
  }
  if (!(omega > 0.0)) throw DomainError("vacuum Green's tensor: omega must be positive");
  const double zeta = omega / speed_of_light * rho;
  const Complex h0 = hankel(0, 1, zeta);
  const Complex h1_over_z = hankel(1, 1, zeta) / zeta;
  return {kQuarterI * h1_over_z, kQuarterI * (h0 - h1_over_z)};
}

ComplexTensor2 vacuum_green_2d(const Vec2& r, const Vec2& r_src, double omega) {
  const Vec2 sep = r - r_src;
  const double rho = separation(r, r_src);
  const Vec2 u = sep / rho;
  const auto [gl, gt] = vacuum_green_components(rho, omega);

  ComplexTensor2 g;
  const double xx = u.x() * u.x();
  const double yy = u.y() * u.y();
  const double xy = u.x() * u.y();
  g(0, 0) = gl * xx + gt * (1.0 - xx);
  g(1, 1) = gl * yy + gt * (1.0 - yy);
  g(0, 1) = (gl - gt) * xy;
  g(1, 0) = g(0, 1);
  return g;
}

Complex vacuum_green_2d_zz(double rho, double omega) {
  if (!(rho >= kCoincidence)) {
    throw DomainError("vacuum Green's tensor: observation and source points coincide");
  }
  return kQuarterI * hankel(0, 1, omega / speed_of_light * rho);
}

Complex ret_iso_bracket(double zeta) {
  if (!(zeta > 0.0)) throw DomainError("ret_rate_iso_2d: separation must be positive");
  const Complex h10 = hankel(0, 1, zeta);
  const Complex h11 = hankel(1, 1, zeta);
  const Complex h12 = hankel(2, 1, zeta);
  const Complex h20 = hankel(0, 2, zeta);
  const Complex h21 = hankel(1, 2, zeta);
  return ((2.0 * zeta * h10 - h11) * h20 + h12 * h21) / (16.0 * zeta);
}

double ret_rate_iso_2d(double rho, double omega) {
  if (!(rho > 0.0)) throw DomainError("ret_rate_iso_2d: separation must be positive");
  if (!(omega > 0.0)) throw DomainError("ret_rate_iso_2d: omega must be positive");
  const double zeta = omega * rho / speed_of_light;
  return ret_prefactor(omega) * ret_iso_bracket(zeta).real();
}

double ret_rate_vacuum(const DipoleSpec& acceptor, const DipoleSpec& donor) {
  if (acceptor.omega != donor.omega) {
    throw DomainError("ret_rate_vacuum: donor and acceptor frequencies differ");
  }
  const ComplexTensor2 g = vacuum_green_2d(acceptor.position, donor.position, donor.omega);
  const Complex amp = acceptor.orientation.cast<Complex>().dot(g * donor.orientation.cast<Complex>());
  return ret_prefactor(donor.omega) * std::norm(amp);
}

}  // namespace greenopt
