#pragma once

#include <Eigen/Core>

#include "greenopt/grid.hpp"
#include "greenopt/types.hpp"

namespace greenopt {

/// In-plane block (xx, xy; yx, yy) of the dyadic Green's tensor.
using ComplexTensor2 = Eigen::Matrix2cd;

/// 2 pi mu0^2 omega^4 / hbar in internal units.
inline double ret_prefactor(double omega) {
  return 2.0 * pi * omega * omega * omega * omega;
}

/// Vacuum line-dipole Green's tensor, in-plane block, solving
/// curl curl G - k^2 G = I delta with outgoing (e^{-i omega t}) radiation:
///   G = (i/4) [ rr H1(z)/z + (I - rr)(H0(z) - H1(z)/z) ],  z = k rho.
/// Throws DomainError when |r - r_src| < 1e-12 um.
ComplexTensor2 vacuum_green_2d(const Vec2& r, const Vec2& r_src, double omega);

/// Out-of-plane (zz) component of the same tensor, (i/4) H0(k rho).
Complex vacuum_green_2d_zz(double rho, double omega);

/// Longitudinal and transverse eigenvalues of the in-plane block.
struct GreenComponents {
  Complex longitudinal;
  Complex transverse;
};
GreenComponents vacuum_green_components(double rho, double omega);

/// Isotropically averaged 2D transfer rate, evaluated as the closed form
///   2 pi w^4 / (16 z) { [2 z H0(1) - H1(1)] H0(2) + H2(1) H1(2) },  z = w rho / c.
/// The braced expression equals sum_ij |G_ij|^2 over the full 3x3 line-dipole
/// tensor (in-plane block plus zz); its imaginary part cancels analytically.
double ret_rate_iso_2d(double rho, double omega);

/// The braced expression above, before taking the real part. Exposed so the
/// cancellation of its imaginary part can be checked.
Complex ret_iso_bracket(double zeta);

/// 2 pi w^4 |d_A . G_vac(r_A, r_D) . d_D|^2 for unit dipoles.
double ret_rate_vacuum(const DipoleSpec& acceptor, const DipoleSpec& donor);

}  // namespace greenopt
