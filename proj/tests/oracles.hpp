#pragma once

// Reference implementations used only by the tests. They share no code with
// the library and favour directness over speed.

#include <cmath>
#include <random>
#include <vector>

#include "sphrkhs/special_functions.hpp"

namespace oracle {

inline long double binomial(int n, int k) {
  long double r = 1.0L;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

inline long double falling(int n, int k) {
  long double r = 1.0L;
  for (int i = 0; i < k; ++i) r *= n - i;
  return r;
}

// d^(l+m)/dz^(l+m) (z^2 - 1)^l expanded term by term, times the usual prefactors.
inline long double rodrigues_assoc(int l, int m, long double z) {
  long double sum = 0.0L;
  for (int k = 0; k <= l; ++k) {
    const int power = 2 * k;
    if (power < l + m) continue;
    const long double sign = ((l - k) % 2 == 0) ? 1.0L : -1.0L;
    sum += sign * binomial(l, k) * falling(power, l + m) * std::pow(z, static_cast<long double>(power - l - m));
  }
  long double prefactor = 1.0L;
  for (int i = 1; i <= l; ++i) prefactor *= 2.0L * i;  // 2^l l!
  const long double cs = (m % 2 == 0) ? 1.0L : -1.0L;
  return cs * std::pow(1.0L - z * z, m / 2.0L) * sum / prefactor;
}

inline long double rodrigues_legendre(int l, long double z) { return rodrigues_assoc(l, 0, z); }

inline long double factorial(int n) {
  long double r = 1.0L;
  for (int i = 2; i <= n; ++i) r *= i;
  return r;
}

// Y_l^m assembled from the Rodrigues oracle by hand.
inline std::complex<double> spherical_harmonic(int l, int m, double theta, double phi) {
  const int am = std::abs(m);
  const long double norm =
      std::sqrt((2.0L * l + 1.0L) / (4.0L * 3.14159265358979323846264338327950288L) * factorial(l - am) / factorial(l + am));
  long double p = rodrigues_assoc(l, am, std::cos(static_cast<long double>(theta)));
  std::complex<double> y = std::polar(static_cast<double>(norm * p), am * phi);
  if (m < 0) y = ((am % 2 == 0) ? 1.0 : -1.0) * std::conj(y);
  return y;
}

// Power series of J0, summed until terms stop changing the sum.
inline long double j0_series(long double x) {
  long double term = 1.0L, sum = 1.0L;
  const long double q = x * x / 4.0L;
  for (int k = 1; k < 200; ++k) {
    term *= -q / (static_cast<long double>(k) * k);
    sum += term;
    if (std::abs(term) < 1e-21L * std::abs(sum)) break;
  }
  return sum;
}

// Ascending series I_nu(x) = sum (x/2)^(2k+nu) / (k! Gamma(k+nu+1)); every term is positive.
inline long double bessel_i_series(long double nu, long double x) {
  long double sum = 0.0L;
  for (int k = 0; k < 1000; ++k) {
    const long double log_term =
        (2.0L * k + nu) * std::log(x / 2.0L) - std::lgamma(k + 1.0L) - std::lgamma(k + nu + 1.0L);
    const long double term = std::exp(log_term);
    sum += term;
    if (k > x && term < 1e-22L * sum) break;
  }
  return sum;
}

// Uniform random directions on the sphere.
class Directions {
 public:
  explicit Directions(unsigned seed) : rng_(seed) {}
  sphrkhs::UnitVector next() {
    std::uniform_real_distribution<double> u(-1.0, 1.0), v(0.0, 2.0 * sphrkhs::kPi);
    const double z = u(rng_);
    return sphrkhs::UnitVector::from_spherical(std::acos(z), v(rng_));
  }
  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }
  int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }
  std::complex<double> complex() { return {uniform(-1.0, 1.0), uniform(-1.0, 1.0)}; }

 private:
  std::mt19937_64 rng_;
};

}  // namespace oracle
