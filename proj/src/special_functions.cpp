#include "sphrkhs/special_functions.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <utility>

#include <boost/math/special_functions/bessel.hpp>

#include "sphrkhs/error.hpp"

namespace sphrkhs {

namespace {

constexpr double kDomainSlack = 1e-12;

double checked_argument(double z, const char* what) {
  if (!(std::abs(z) <= 1.0 + kDomainSlack))
    throw DomainError(std::string(what) + ": argument " + std::to_string(z) + " outside [-1, 1]");
  return std::clamp(z, -1.0, 1.0);
}

double wrap_longitude(double phi) {
  constexpr double two_pi = 2.0 * kPi;
  double wrapped = std::fmod(phi, two_pi);
  if (wrapped < 0.0) wrapped += two_pi;
  if (wrapped >= two_pi) wrapped = 0.0;
  return wrapped;
}

// Orthonormalized associated Legendre values Ptilde_l^m(cos theta) for
// 0 <= m <= l <= L, packed as l*(l+1)/2 + m.
std::vector<double> normalized_assoc_legendre_table(int max_degree, double z, double s) {
  const auto tri = [](int l, int m) { return static_cast<std::size_t>(l * (l + 1) / 2 + m); };
  std::vector<double> table(tri(max_degree, max_degree) + 1, 0.0);
  table[0] = 1.0 / std::sqrt(kFourPi);
  for (int m = 1; m <= max_degree; ++m)
    table[tri(m, m)] = -std::sqrt((2.0 * m + 1.0) / (2.0 * m)) * s * table[tri(m - 1, m - 1)];
  for (int m = 0; m < max_degree; ++m) {
    table[tri(m + 1, m)] = std::sqrt(2.0 * m + 3.0) * z * table[tri(m, m)];
    double a_prev = std::sqrt((4.0 * (m + 1) * (m + 1) - 1.0) / ((m + 1.0) * (m + 1.0) - m * m));
    for (int l = m + 2; l <= max_degree; ++l) {
      const double a = std::sqrt((4.0 * l * l - 1.0) / (static_cast<double>(l) * l - static_cast<double>(m) * m));
      table[tri(l, m)] = a * (z * table[tri(l - 1, m)] - table[tri(l - 2, m)] / a_prev);
      a_prev = a;
    }
  }
  return table;
}

}  // namespace

SphericalHarmonicIndex::SphericalHarmonicIndex(int degree, int order) : degree_(degree), order_(order) {
  if (degree < 0 || order < -degree || order > degree)
    throw DomainError("spherical harmonic index (" + std::to_string(degree) + ", " + std::to_string(order) +
                      ") violates -l <= m <= l");
}

UnitVector UnitVector::from_spherical(double theta, double phi) {
  if (!(theta >= 0.0 && theta <= kPi) || !std::isfinite(phi))
    throw DomainError("co-latitude must lie in [0, pi] and longitude must be finite");
  const double wrapped = wrap_longitude(phi);
  const double s = std::sin(theta);
  return UnitVector(theta, wrapped, s * std::cos(wrapped), s * std::sin(wrapped), std::cos(theta));
}

UnitVector UnitVector::from_cartesian(double x, double y, double z) {
  const double norm = std::sqrt(x * x + y * y + z * z);
  if (!(norm > 0.0) || !std::isfinite(norm)) throw DomainError("cannot normalize a zero or non-finite vector");
  x /= norm;
  y /= norm;
  z /= norm;
  const double theta = std::atan2(std::sqrt(x * x + y * y), z);
  const double phi = wrap_longitude(std::atan2(y, x));
  return UnitVector(theta, phi, x, y, z);
}

double UnitVector::dot(const UnitVector& other) const {
  return std::clamp(x_ * other.x_ + y_ * other.y_ + z_ * other.z_, -1.0, 1.0);
}

double legendre_p(int degree, double z) {
  if (degree < 0) throw DomainError("legendre_p: negative degree");
  z = checked_argument(z, "legendre_p");
  if (z == 1.0) return 1.0;
  if (z == -1.0) return degree % 2 == 0 ? 1.0 : -1.0;
  if (degree == 0) return 1.0;
  double p_prev = 1.0;
  double p = z;
  for (int l = 1; l < degree; ++l) {
    const double next = ((2.0 * l + 1.0) * z * p - l * p_prev) / (l + 1.0);
    p_prev = p;
    p = next;
  }
  return p;
}

std::vector<double> legendre_p_all(int max_degree, double z) {
  if (max_degree < 0) throw DomainError("legendre_p_all: negative degree");
  z = checked_argument(z, "legendre_p_all");
  std::vector<double> values(static_cast<std::size_t>(max_degree) + 1);
  values[0] = 1.0;
  if (max_degree >= 1) values[1] = z;
  for (int l = 1; l < max_degree; ++l)
    values[l + 1] = ((2.0 * l + 1.0) * z * values[l] - l * values[l - 1]) / (l + 1.0);
  return values;
}

double assoc_legendre(int degree, int order, double z) {
  if (degree < 0 || std::abs(order) > degree)
    throw DomainError("assoc_legendre: order " + std::to_string(order) + " exceeds degree " + std::to_string(degree));
  z = checked_argument(z, "assoc_legendre");
  const int m = std::abs(order);
  const double s = std::sqrt((1.0 - z) * (1.0 + z));

  double pmm = 1.0;
  for (int k = 1; k <= m; ++k) pmm *= -(2.0 * k - 1.0) * s;
  double value = pmm;
  if (degree > m) {
    double p_prev = pmm;
    double p = z * (2.0 * m + 1.0) * pmm;
    for (int l = m + 2; l <= degree; ++l) {
      const double next = ((2.0 * l - 1.0) * z * p - (l + m - 1.0) * p_prev) / (l - m);
      p_prev = p;
      p = next;
    }
    value = p;
  }
  if (order >= 0) return value;

  double ratio = 1.0;  // (l-m)!/(l+m)!
  for (int k = degree - m + 1; k <= degree + m; ++k) ratio /= k;
  return (m % 2 == 0 ? 1.0 : -1.0) * ratio * value;
}

std::complex<double> spherical_harmonic(const SphericalHarmonicIndex& idx, const UnitVector& x) {
  const int l = idx.degree();
  const int m = std::abs(idx.order());
  const auto table = normalized_assoc_legendre_table(l, x.z(), std::sin(x.theta()));
  const double p = table[static_cast<std::size_t>(l * (l + 1) / 2 + m)];
  const std::complex<double> y = std::polar(p, m * x.phi());
  if (idx.order() >= 0) return y;
  return (m % 2 == 0 ? 1.0 : -1.0) * std::conj(y);
}

std::vector<std::complex<double>> spherical_harmonics_all(int max_degree, const UnitVector& x) {
  if (max_degree < 0) throw DomainError("spherical_harmonics_all: negative degree");
  const auto table = normalized_assoc_legendre_table(max_degree, x.z(), std::sin(x.theta()));
  const auto n = static_cast<std::size_t>(max_degree + 1) * static_cast<std::size_t>(max_degree + 1);
  std::vector<std::complex<double>> out(n);

  std::vector<std::complex<double>> phase(static_cast<std::size_t>(max_degree) + 1);
  for (int m = 0; m <= max_degree; ++m) phase[m] = std::polar(1.0, m * x.phi());

  for (int l = 0; l <= max_degree; ++l) {
    const std::size_t centre = static_cast<std::size_t>(l * l + l);
    for (int m = 0; m <= l; ++m) {
      const std::complex<double> y = table[static_cast<std::size_t>(l * (l + 1) / 2 + m)] * phase[m];
      out[centre + m] = y;
      if (m > 0) out[centre - m] = (m % 2 == 0 ? 1.0 : -1.0) * std::conj(y);
    }
  }
  return out;
}

QuadratureRule gauss_legendre(int n) {
  if (n < 1) throw DomainError("gauss_legendre: node count must be >= 1");
  QuadratureRule rule;
  rule.nodes.assign(n, 0.0);
  rule.weights.assign(n, 0.0);
  // P_n and its derivative at x.
  const auto evaluate = [n](double x) {
    double p0 = 1.0;
    double p1 = x;
    for (int k = 1; k < n; ++k) {
      const double p2 = ((2.0 * k + 1.0) * x * p1 - k * p0) / (k + 1.0);
      p0 = p1;
      p1 = p2;
    }
    return std::pair{p1, n * (x * p1 - p0) / (x * x - 1.0)};
  };
  const int half = (n + 1) / 2;
  for (int i = 0; i < half; ++i) {
    double x = std::cos(kPi * (i + 0.75) / (n + 0.5));
    for (int iter = 0; iter < 100; ++iter) {
      const auto [p, dp] = evaluate(x);
      const double dx = p / dp;
      x -= dx;
      if (std::abs(dx) <= 1e-15) break;
    }
    const double dp = evaluate(x).second;
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    // Roots come out descending from +1; mirror into ascending slots.
    rule.nodes[n - 1 - i] = x;
    rule.nodes[i] = -x;
    rule.weights[n - 1 - i] = w;
    rule.weights[i] = w;
  }
  if (n % 2 == 1) rule.nodes[n / 2] = 0.0;
  return rule;
}

QuadratureRule graded_rule(int nodes_per_panel, int panels) {
  if (panels < 1) throw DomainError("graded_rule: panels must be >= 1");
  const QuadratureRule base = gauss_legendre(nodes_per_panel);
  if (panels == 1) return base;

  std::vector<double> bounds{-1.0};
  double width = 2.0 / (2.0 - std::ldexp(1.0, 1 - panels));
  for (int p = 0; p < panels; ++p) {
    bounds.push_back(bounds.back() + width);
    width *= 0.5;
  }
  bounds.back() = 1.0;

  QuadratureRule rule;
  rule.graded = true;
  rule.nodes.reserve(base.size() * panels);
  rule.weights.reserve(base.size() * panels);
  for (int p = 0; p < panels; ++p) {
    const double mid = 0.5 * (bounds[p] + bounds[p + 1]);
    const double half = 0.5 * (bounds[p + 1] - bounds[p]);
    for (std::size_t i = 0; i < base.size(); ++i) {
      rule.nodes.push_back(mid + half * base.nodes[i]);
      rule.weights.push_back(half * base.weights[i]);
    }
  }
  return rule;
}

double bessel_j0(double x) {
  if (!(x >= 0.0)) throw DomainError("bessel_j0: argument must be >= 0");
  return boost::math::cyl_bessel_j(0, x);
}

std::vector<double> log_bessel_i_half_ratios(int max_degree, double kappa) {
  if (!(kappa > 0.0) || !std::isfinite(kappa)) throw DomainError("Bessel ratios: kappa must be positive and finite");
  if (max_degree < 0) throw DomainError("Bessel ratios: negative degree");

  // r_l = I_{l+3/2} / I_{l+1/2} satisfies r_l = 1 / ((2l+3)/kappa + r_{l+1}).
  // Start well beyond both max_degree and kappa, where the ratios are small
  // and the downward map contracts.
  const int start = max_degree + 64 + static_cast<int>(std::ceil(std::min(kappa, 1e6)));
  const double nu = start + 1.5;
  double r = kappa / (nu + std::sqrt(nu * nu + kappa * kappa));
  std::vector<double> ratios(static_cast<std::size_t>(max_degree) + 1, 0.0);
  for (int l = start - 1; l >= 0; --l) {
    r = 1.0 / ((2.0 * l + 3.0) / kappa + r);
    if (l < max_degree) ratios[l] = r;
  }

  std::vector<double> log_lambda(static_cast<std::size_t>(max_degree) + 1, 0.0);
  for (int l = 1; l <= max_degree; ++l) log_lambda[l] = log_lambda[l - 1] + std::log(ratios[l - 1]);
  return log_lambda;
}

double bessel_i_half(int degree, double kappa) {
  if (!(kappa > 0.0)) throw DomainError("bessel_i_half: kappa must be > 0");
  if (degree < 0) throw DomainError("bessel_i_half: negative degree");
  // log I_{1/2}(k) = 0.5 log(2/(pi k)) + k + log((1 - e^{-2k}) / 2)
  const double log_i_half =
      0.5 * std::log(2.0 / (kPi * kappa)) + kappa + std::log(-std::expm1(-2.0 * kappa) / 2.0);
  const auto ratios = log_bessel_i_half_ratios(degree, kappa);
  return std::exp(log_i_half + ratios[degree]);
}

SphereQuadrature::SphereQuadrature(int z_nodes, int phi_nodes) : rule_(gauss_legendre(z_nodes)), phi_nodes_(phi_nodes) {
  if (phi_nodes < 1) throw DomainError("SphereQuadrature: phi node count must be >= 1");
  points_.reserve(rule_.size() * phi_nodes);
  weights_.reserve(rule_.size() * phi_nodes);
  const double dphi = 2.0 * kPi / phi_nodes;
  for (std::size_t i = 0; i < rule_.size(); ++i) {
    const double theta = std::acos(rule_.nodes[i]);
    for (int j = 0; j < phi_nodes; ++j) {
      points_.push_back(UnitVector::from_spherical(theta, j * dphi));
      weights_.push_back(rule_.weights[i] * dphi);
    }
  }
}

}  // namespace sphrkhs
