#pragma once

#include <complex>
#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace sphrkhs {

inline constexpr double kPi = 3.14159265358979323846264338327950288;
inline constexpr double kFourPi = 4.0 * kPi;

/// Degree/order pair of a spherical harmonic, -degree <= order <= degree.
class SphericalHarmonicIndex {
 public:
  SphericalHarmonicIndex(int degree, int order);

  int degree() const { return degree_; }
  int order() const { return order_; }

  /// Position in a degree-major packing: l*l + l + m.
  std::size_t flat() const {
    return static_cast<std::size_t>(degree_ * degree_ + degree_ + order_);
  }

  friend bool operator==(const SphericalHarmonicIndex&, const SphericalHarmonicIndex&) = default;

 private:
  int degree_;
  int order_;
};

/// A direction on the unit sphere. Co-latitude theta in [0, pi] is measured
/// from the north pole (0, 0, 1); longitude phi is kept in [0, 2pi).
class UnitVector {
 public:
  static UnitVector from_spherical(double theta, double phi);
  /// Normalizes the input; throws DomainError for the zero vector.
  static UnitVector from_cartesian(double x, double y, double z);
  static UnitVector north_pole() { return from_spherical(0.0, 0.0); }

  double theta() const { return theta_; }
  double phi() const { return phi_; }
  double x() const { return x_; }
  double y() const { return y_; }
  double z() const { return z_; }

  /// Dot product clamped to [-1, 1].
  double dot(const UnitVector& other) const;

 private:
  UnitVector(double theta, double phi, double x, double y, double z)
      : theta_(theta), phi_(phi), x_(x), y_(y), z_(z) {}

  double theta_, phi_;
  double x_, y_, z_;
};

/// Nodes and weights for integrals over [-1, 1].
struct QuadratureRule {
  std::vector<double> nodes;
  std::vector<double> weights;
  bool graded = false;

  std::size_t size() const { return nodes.size(); }

  template <typename F>
  double integrate(F&& f) const {
    double sum = 0.0;
    for (std::size_t i = 0; i < nodes.size(); ++i) sum += weights[i] * f(nodes[i]);
    return sum;
  }
};

/// Legendre polynomial P_l(z) by the Bonnet recurrence.
double legendre_p(int degree, double z);

/// P_0(z) .. P_L(z) in one recurrence sweep.
std::vector<double> legendre_p_all(int max_degree, double z);

/// Associated Legendre function with the Condon-Shortley phase (-1)^m.
/// Negative orders use P_l^{-m} = (-1)^m (l-m)!/(l+m)! P_l^m.
double assoc_legendre(int degree, int order, double z);

/// Complex spherical harmonic Y_l^m, orthonormal on the sphere.
std::complex<double> spherical_harmonic(const SphericalHarmonicIndex& idx, const UnitVector& x);

/// All Y_l^m for l <= max_degree, packed by SphericalHarmonicIndex::flat().
std::vector<std::complex<double>> spherical_harmonics_all(int max_degree, const UnitVector& x);

/// N-point Gauss-Legendre rule, nodes ascending.
QuadratureRule gauss_legendre(int n);

/// Composite Gauss-Legendre rule whose panel widths halve toward z = 1.
QuadratureRule graded_rule(int nodes_per_panel, int panels);

/// Bessel function of the first kind, order zero.
double bessel_j0(double x);

/// Modified Bessel function I_{l+1/2}(kappa), kappa > 0.
double bessel_i_half(int degree, double kappa);

/// Ratios I_{l+1/2}(kappa) / I_{1/2}(kappa) for l = 0..max_degree, returned as
/// natural logarithms so deep tails do not underflow. Backward recurrence.
std::vector<double> log_bessel_i_half_ratios(int max_degree, double kappa);

/// Product rule on the sphere: Gauss-Legendre in z = cos(theta) times the
/// trapezoid rule in phi.
class SphereQuadrature {
 public:
  explicit SphereQuadrature(int z_nodes = 64, int phi_nodes = 128);

  int z_nodes() const { return static_cast<int>(rule_.size()); }
  int phi_nodes() const { return phi_nodes_; }

  std::size_t size() const { return points_.size(); }
  std::span<const UnitVector> points() const { return points_; }
  std::span<const double> weights() const { return weights_; }

 private:
  QuadratureRule rule_;
  int phi_nodes_;
  std::vector<UnitVector> points_;
  std::vector<double> weights_;
};

}  // namespace sphrkhs
