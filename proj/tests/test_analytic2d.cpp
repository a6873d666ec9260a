#include <doctest.h>

#include <Eigen/Dense>

#include "greenopt/analytic2d.hpp"
#include "greenopt/special.hpp"
#include "oracles.hpp"
#include "support.hpp"

using namespace greenopt;
using test::full_tensor;
using test::rel;
using test::sphere_average;

namespace {

// Transverse (G_yy) and longitudinal (G_xx) parts for a separation along x at
// z = 1, from eighth-order finite differences of (i/4) H0 in 40-digit
// arithmetic.
const Complex kTransverse1(-0.2173674463789914186, 0.0812867752032582589);
const Complex kLongitudinal1(0.1953032053250721791, 0.1100126464362333790);

// Fourth-order central differences of g(rho) = (i/4) H0(rho) (k = 1):
// G = g I + grad grad g, so G_xx = g + g'' and G_yy = g + g'/rho for a
// separation along x.
Complex fd_longitudinal(double rho, double h) {
  auto g = [](double r) { return Complex(0.0, 0.25) * hankel(0, 1, r); };
  const Complex d2 = (-g(rho + 2 * h) + 16.0 * g(rho + h) - 30.0 * g(rho) + 16.0 * g(rho - h) -
                      g(rho - 2 * h)) /
                     (12.0 * h * h);
  return g(rho) + d2;
}
Complex fd_transverse(double rho, double h) {
  auto g = [](double r) { return Complex(0.0, 0.25) * hankel(0, 1, r); };
  const Complex d1 = (-g(rho + 2 * h) + 8.0 * g(rho + h) - 8.0 * g(rho - h) + g(rho - 2 * h)) /
                     (12.0 * h);
  return g(rho) + d1 / rho;
}



}  // namespace

TEST_CASE("vacuum tensor components at z = 1 match the finite-difference oracle") {
  const GreenComponents c = vacuum_green_components(1.0, 1.0);
  CHECK(rel(c.transverse, kTransverse1) < 1e-14);
  CHECK(rel(c.longitudinal, kLongitudinal1) < 1e-14);
  for (double rho : {0.3, 1.0, 4.0, 17.0}) {
    CAPTURE(rho);
    const GreenComponents g = vacuum_green_components(rho, 1.0);
    CHECK(rel(g.longitudinal, fd_longitudinal(rho, 1e-3)) < 1e-7);
    CHECK(rel(g.transverse, fd_transverse(rho, 1e-3)) < 1e-7);
  }
}

TEST_CASE("vacuum tensor along x is diagonal") {
  const ComplexTensor2 g = vacuum_green_2d(Vec2(2.3, 0.0), Vec2(0.4, 0.0), 2.0);
  CHECK(g(0, 1) == Complex(0.0));
  CHECK(g(1, 0) == Complex(0.0));
  const GreenComponents c = vacuum_green_components(1.9, 2.0);
  CHECK(rel(g(0, 0), c.longitudinal) < 1e-15);
  CHECK(rel(g(1, 1), c.transverse) < 1e-15);
}

TEST_CASE("vacuum tensor is symmetric and bitwise reciprocal") {
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> u(-5.0, 5.0);
  for (int k = 0; k < 200; ++k) {
    const Vec2 a(u(rng), u(rng));
    const Vec2 b(u(rng), u(rng));
    const ComplexTensor2 g = vacuum_green_2d(a, b, 1.7);
    const ComplexTensor2 h = vacuum_green_2d(b, a, 1.7);
    CHECK(g(0, 1) == g(1, 0));
    CHECK(g(0, 0) == h(0, 0));
    CHECK(g(0, 1) == h(1, 0));
    CHECK(g(1, 0) == h(0, 1));
    CHECK(g(1, 1) == h(1, 1));
  }
}

TEST_CASE("vacuum tensor rejects coincident points") {
  CHECK_THROWS_AS(vacuum_green_2d(Vec2(1.0, 1.0), Vec2(1.0, 1.0 + 1e-13), 1.0), DomainError);
  CHECK_NOTHROW(vacuum_green_2d(Vec2(1.0, 1.0), Vec2(1.0, 1.0 + 1e-6), 1.0));
}

TEST_CASE("isotropic bracket is real") {
  CHECK(ret_iso_bracket(1.0).real() == doctest::Approx(0.141184570407309202833).epsilon(1e-14));
  for (int k = 0; k <= 500; ++k) {
    const double z = 0.1 * std::pow(500.0, k / 500.0);
    const Complex b = ret_iso_bracket(z);
    CHECK(std::abs(b.imag()) <= 1e-12 * std::abs(b.real()));
  }
}

TEST_CASE("isotropic bracket equals nine times the sphere average") {
  for (double z : {0.1, 0.37, 1.0, 2.5, 9.0, 23.0, 50.0}) {
    CAPTURE(z);
    const double avg = sphere_average(full_tensor(z), 256, 256);
    CHECK(rel(ret_iso_bracket(z).real(), 9.0 * avg) < 1e-8);
  }
}

TEST_CASE("isotropic rate decays in the far field") {
  CHECK(ret_rate_iso_2d(40.0, 1.0) < ret_rate_iso_2d(4.0, 1.0));
  CHECK_THROWS_AS(ret_rate_iso_2d(0.0, 1.0), DomainError);
}

TEST_CASE("fixed-orientation vacuum rate") {
  const double w = omega_from_wavelength(0.5);
  const double rho = 0.25;
  const DipoleSpec d{Vec2(0.0, 0.0), Vec2(0.0, 1.0), w};
  const DipoleSpec a{Vec2(rho, 0.0), Vec2(0.0, 1.0), w};
  const double expected = ret_prefactor(w) * std::norm(vacuum_green_components(rho, w).transverse);
  CHECK(rel(ret_rate_vacuum(a, d), expected) < 1e-15);
  CHECK(ret_rate_vacuum(a, d) == ret_rate_vacuum(d, a));

  // Closed form against the sphere-quadrature machinery restricted to the
  // fixed orientations: a = b = y gives |G_yy|^2.
  const Eigen::Matrix3cd g = full_tensor(w * rho);
  CHECK(rel(ret_prefactor(w) * std::norm(g(1, 1)), expected) < 1e-14);

  const DipoleSpec along{Vec2(0.0, 0.0), Vec2(1.0, 0.0), w};
  CHECK(ret_rate_vacuum(a, along) == 0.0);

  DipoleSpec other = a;
  other.omega = 2.0 * w;
  CHECK_THROWS_AS(ret_rate_vacuum(other, d), DomainError);
  CHECK_THROWS_AS(ret_rate_vacuum(d, d), DomainError);
}
