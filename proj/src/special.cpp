#include "greenopt/special.hpp"

#include <array>
#include <cmath>

namespace greenopt {
namespace {

constexpr double kSeriesLimit = 12.0;
constexpr int kMaxSeriesTerms = 80;
constexpr long double kEulerGamma = 0.577215664901532860606512090082402431L;
constexpr long double kPiL = 3.141592653589793238462643383279502884L;

void check_args(int n, double x) {
  if (n < 0 || n > 2) throw DomainError("bessel: order must be 0, 1 or 2");
  if (!(x > 0.0) || !std::isfinite(x)) {
    throw DomainError("bessel: argument must be positive and finite");
  }
}

long double factorial(int n) {
  long double f = 1.0L;
  for (int k = 2; k <= n; ++k) f *= k;
  return f;
}

long double series_j(int n, long double x) {
  const long double q = -0.25L * x * x;
  long double term = std::pow(0.5L * x, n) / factorial(n);
  long double sum = term;
  for (int k = 1; k < kMaxSeriesTerms; ++k) {
    term *= q / (static_cast<long double>(k) * (k + n));
    sum += term;
    if (std::fabs(term) < 1e-22L * std::fabs(sum)) break;
  }
  return sum;
}

long double series_y(int n, long double x) {
  const long double half = 0.5L * x;
  const long double q = 0.25L * x * x;

  long double finite = 0.0L;
  for (int k = 0; k < n; ++k) {
    finite += factorial(n - k - 1) / factorial(k) * std::pow(q, k);
  }
  finite *= -std::pow(half, -n) / kPiL;

  const long double log_part = 2.0L / kPiL * std::log(half) * series_j(n, x);

  // psi(m + 1) = H_m - gamma
  long double harmonic_k = 0.0L;
  long double harmonic_nk = 0.0L;
  for (int m = 1; m <= n; ++m) harmonic_nk += 1.0L / m;
  long double term = 1.0L / factorial(n);  // (-q)^k / (k! (n+k)!)
  long double sum = (harmonic_k + harmonic_nk - 2.0L * kEulerGamma) * term;
  for (int k = 1; k < kMaxSeriesTerms; ++k) {
    harmonic_k += 1.0L / k;
    harmonic_nk += 1.0L / (n + k);
    term *= -q / (static_cast<long double>(k) * (n + k));
    const long double contrib = (harmonic_k + harmonic_nk - 2.0L * kEulerGamma) * term;
    sum += contrib;
    if (std::fabs(contrib) < 1e-22L * std::fabs(sum)) break;
  }
  const long double tail = -std::pow(half, n) / kPiL * sum;
  return finite + log_part + tail;
}

// H_n^(1)(x) ~ sqrt(2/(pi x)) e^{i chi} sum_k i^k a_k(n) / x^k,
// truncated at the smallest term.
std::complex<long double> asymptotic_h1(int n, long double x) {
  const long double mu = 4.0L * n * n;
  std::complex<long double> sum = 1.0L;
  std::complex<long double> term = 1.0L;
  long double last = 1.0L;
  for (int k = 1; k < 200; ++k) {
    const long double odd = 2.0L * k - 1.0L;
    term *= std::complex<long double>(0.0L, 1.0L) * ((mu - odd * odd) / (8.0L * k * x));
    const long double mag = std::abs(term);
    if (mag > last) break;
    sum += term;
    last = mag;
    if (mag < 1e-20L) break;
  }
  const long double chi = x - (0.5L * n + 0.25L) * kPiL;
  const std::complex<long double> phase(std::cos(chi), std::sin(chi));
  return std::sqrt(2.0L / (kPiL * x)) * phase * sum;
}

}  // namespace

double bessel_j(int n, double x) {
  check_args(n, x);
  if (x < kSeriesLimit) return static_cast<double>(series_j(n, x));
  return static_cast<double>(asymptotic_h1(n, x).real());
}

double bessel_y(int n, double x) {
  check_args(n, x);
  if (x < kSeriesLimit) return static_cast<double>(series_y(n, x));
  return static_cast<double>(asymptotic_h1(n, x).imag());
}

Complex hankel(int n, int kind, double x) {
  if (kind != 1 && kind != 2) throw DomainError("hankel: kind must be 1 or 2");
  const double j = bessel_j(n, x);
  const double y = bessel_y(n, x);
  return kind == 1 ? Complex(j, y) : Complex(j, -y);
}

}  // namespace greenopt
