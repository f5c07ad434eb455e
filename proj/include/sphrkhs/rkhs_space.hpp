#pragma once

#include <complex>
#include <span>
#include <vector>

#include "sphrkhs/kernels.hpp"
#include "sphrkhs/special_functions.hpp"

namespace sphrkhs {

using Complex = std::complex<double>;

/// f = sum_p alpha_p K(., y_p). An empty expansion is the zero vector.
struct PointExpansion {
  KernelFamily kernel;
  std::vector<UnitVector> points;
  std::vector<Complex> coeffs;

  PointExpansion(KernelFamily k, std::vector<UnitVector> pts = {}, std::vector<Complex> c = {});

  /// K(., y) as a one-term expansion with unit coefficient.
  static PointExpansion kernel_section(const KernelFamily& k, const UnitVector& y);

  std::size_t size() const { return points.size(); }
};

/// Coefficients <f, Y_l^m> for l <= L, packed as l*l + l + m.
class SHCoefficientVector {
 public:
  explicit SHCoefficientVector(int truncation);
  SHCoefficientVector(int truncation, std::vector<Complex> entries);

  int truncation() const { return truncation_; }
  Complex& operator()(int degree, int order) { return entries_[flat(degree, order)]; }
  Complex operator()(int degree, int order) const { return entries_[flat(degree, order)]; }
  std::span<const Complex> entries() const { return entries_; }
  std::span<Complex> entries() { return entries_; }

 private:
  static std::size_t flat(int degree, int order) {
    return static_cast<std::size_t>(degree * degree + degree + order);
  }

  int truncation_;
  std::vector<Complex> entries_;
};

/// The RKHS H_K of an isotropic kernel, with its eigenvalues tabulated up to L.
class RkhsSpace {
 public:
  explicit RkhsSpace(KernelFamily kernel, int truncation = 200);

  const KernelFamily& kernel() const { return kernel_; }
  const EigenvalueSequence& eigenvalues() const { return eigenvalues_; }
  int truncation() const { return eigenvalues_.truncation(); }

 private:
  KernelFamily kernel_;
  EigenvalueSequence eigenvalues_;
};

/// f(x) = sum_p alpha_p k(x . y_p).
Complex eval(const PointExpansion& f, const UnitVector& x);

/// <f, g>_H = sum_p sum_q alpha_p conj(beta_q) K(x_q, y_p). Throws MismatchError
/// when f and g use different kernels.
Complex inner_product_gram(const PointExpansion& f, const PointExpansion& g);

/// <f, Y_l^m> = sum_p alpha_p lambda_l conj(Y_l^m(y_p)), exact up to truncation L.
SHCoefficientVector sh_analysis(const PointExpansion& f, int truncation);

/// sum_{l,m} F_lm conj(G_lm) / lambda_l. Degrees whose eigenvalue underflows a
/// double contribute nothing. Throws MismatchError for differing truncations or
/// a truncation beyond the space's.
Complex inner_product_spectral(const SHCoefficientVector& f, const SHCoefficientVector& g, const RkhsSpace& space);

/// phi_l^m(x) = sqrt(lambda_l) Y_l^m(x), orthonormal in H_K.
Complex basis_phi(const RkhsSpace& space, const SphericalHarmonicIndex& idx, const UnitVector& x);

/// Entrywise F_lm * lambda_l^p, i.e. the coefficients of L_K^p f.
SHCoefficientVector apply_operator_power(const SHCoefficientVector& f, const RkhsSpace& space, double p);

/// max over samples of |(L_K Y_l^m)(x) - lambda_l Y_l^m(x)|, with L_K evaluated
/// by product quadrature on the sphere.
double eigenfunction_residual(const RkhsSpace& space, const SphericalHarmonicIndex& idx,
                              std::span<const UnitVector> samples, const SphereQuadrature& quadrature = SphereQuadrature());

/// |<f, K(., y)>_H (spectral, truncated at L) - f(y)|.
double reproducing_residual(const RkhsSpace& space, const PointExpansion& f, const UnitVector& y, int truncation);

/// Solves (G + ridge I) alpha = values with G_qp = K(x_q, x_p) and returns the
/// expansion centred on the nodes. Throws SingularSystemError if the system is
/// numerically singular.
PointExpansion fit_interpolant(const KernelFamily& kernel, std::span<const UnitVector> points,
                               std::span<const Complex> values, double ridge = 0.0);

/// Real symmetric Gram matrix G_qp = K(x_q, x_p), row-major.
std::vector<double> gram_matrix(const KernelFamily& kernel, std::span<const UnitVector> points);

}  // namespace sphrkhs
