#pragma once

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include <Eigen/Dense>

#include "greenopt/analytic2d.hpp"

namespace greenopt::test {

// Full 3x3 vacuum tensor for a separation zeta along x at omega = 1, with the
// out-of-plane component.
inline Eigen::Matrix3cd full_tensor(double zeta) {
  const ComplexTensor2 g2 = vacuum_green_2d(Vec2(zeta, 0.0), Vec2::Zero(), 1.0);
  Eigen::Matrix3cd g = Eigen::Matrix3cd::Zero();
  g.topLeftCorner<2, 2>() = g2;
  g(2, 2) = vacuum_green_2d_zz(zeta, 1.0);
  return g;
}

inline // Average of |a . G . b|^2 with a and b drawn independently and uniformly
// from the unit sphere. Gauss-Legendre in cos(theta) and uniform nodes in
// phi give the second-moment tensor <a a^T> of each dipole; the average
// then follows from the two tensors without a four-fold loop.
double sphere_average(const Eigen::Matrix3cd& g, int n_theta, int n_phi) {
  // Gauss-Legendre nodes by Newton iteration on P_n.
  std::vector<double> x(n_theta), w(n_theta);
  for (int i = 0; i < n_theta; ++i) {
    double z = std::cos(pi * (i + 0.75) / (n_theta + 0.5));
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = z;
      for (int k = 2; k <= n_theta; ++k) {
        const double p2 = ((2 * k - 1) * z * p1 - (k - 1) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      const double dp = n_theta * (z * p1 - p0) / (z * z - 1.0);
      const double dz = p1 / dp;
      z -= dz;
      if (std::abs(dz) < 1e-16) {
        x[i] = z;
        w[i] = 2.0 / ((1.0 - z * z) * dp * dp);
        break;
      }
      x[i] = z;
      w[i] = 2.0 / ((1.0 - z * z) * dp * dp);
    }
  }
  Eigen::Matrix3d m = Eigen::Matrix3d::Zero();
  for (int i = 0; i < n_theta; ++i) {
    const double s = std::sqrt(1.0 - x[i] * x[i]);
    for (int k = 0; k < n_phi; ++k) {
      const double phi = 2.0 * pi * k / n_phi;
      const Eigen::Vector3d a(s * std::cos(phi), s * std::sin(phi), x[i]);
      m += (w[i] / (4.0 * pi) * (2.0 * pi / n_phi)) * a * a.transpose();
    }
  }
  double avg = 0.0;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 3; ++k)
        for (int l = 0; l < 3; ++l) avg += (g(i, j) * std::conj(g(k, l))).real() * m(i, k) * m(j, l);
  return avg;
}

// Rank correlation without tie handling.
inline double spearman(std::vector<double> a, std::vector<double> b) {
  auto ranks = [](const std::vector<double>& v) {
    std::vector<std::size_t> idx(v.size());
    std::iota(idx.begin(), idx.end(), 0);
    std::sort(idx.begin(), idx.end(), [&](auto x, auto y) { return v[x] < v[y]; });
    std::vector<double> r(v.size());
    for (std::size_t k = 0; k < idx.size(); ++k) r[idx[k]] = static_cast<double>(k);
    return r;
  };
  const std::vector<double> ra = ranks(a), rb = ranks(b);
  double d2 = 0.0;
  for (std::size_t k = 0; k < ra.size(); ++k) d2 += (ra[k] - rb[k]) * (ra[k] - rb[k]);
  const double n = static_cast<double>(a.size());
  return 1.0 - 6.0 * d2 / (n * (n * n - 1.0));
}
}  // namespace greenopt::test
