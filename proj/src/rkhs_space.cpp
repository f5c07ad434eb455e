#include "sphrkhs/rkhs_space.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include <Eigen/Dense>

#include "sphrkhs/error.hpp"

namespace sphrkhs {

namespace {

void require_same_kernel(const PointExpansion& f, const PointExpansion& g) {
  if (!(f.kernel == g.kernel))
    throw MismatchError("expansions use different kernels: " + f.kernel.label() + " vs " + g.kernel.label());
}

}  // namespace

PointExpansion::PointExpansion(KernelFamily k, std::vector<UnitVector> pts, std::vector<Complex> c)
    : kernel(k), points(std::move(pts)), coeffs(std::move(c)) {
  if (points.size() != coeffs.size()) throw ParameterError("expansion points and coefficients differ in length");
}

PointExpansion PointExpansion::kernel_section(const KernelFamily& k, const UnitVector& y) {
  return PointExpansion(k, {y}, {Complex(1.0, 0.0)});
}

SHCoefficientVector::SHCoefficientVector(int truncation)
    : truncation_(truncation),
      entries_(static_cast<std::size_t>(truncation + 1) * static_cast<std::size_t>(truncation + 1)) {
  if (truncation < 0) throw DomainError("coefficient truncation must be >= 0");
}

SHCoefficientVector::SHCoefficientVector(int truncation, std::vector<Complex> entries)
    : truncation_(truncation), entries_(std::move(entries)) {
  if (truncation < 0) throw DomainError("coefficient truncation must be >= 0");
  if (entries_.size() != static_cast<std::size_t>(truncation + 1) * static_cast<std::size_t>(truncation + 1))
    throw ParameterError("coefficient vector must hold (L+1)^2 entries");
}

RkhsSpace::RkhsSpace(KernelFamily kernel, int truncation)
    : kernel_(kernel), eigenvalues_(sphrkhs::eigenvalues(kernel, truncation)) {}

Complex eval(const PointExpansion& f, const UnitVector& x) {
  Complex sum(0.0, 0.0);
  for (std::size_t p = 0; p < f.size(); ++p) sum += f.coeffs[p] * f.kernel(x.dot(f.points[p]));
  return sum;
}

Complex inner_product_gram(const PointExpansion& f, const PointExpansion& g) {
  require_same_kernel(f, g);
  Complex sum(0.0, 0.0);
  for (std::size_t p = 0; p < f.size(); ++p) {
    Complex row(0.0, 0.0);
    for (std::size_t q = 0; q < g.size(); ++q) row += std::conj(g.coeffs[q]) * f.kernel(g.points[q].dot(f.points[p]));
    sum += f.coeffs[p] * row;
  }
  return sum;
}

SHCoefficientVector sh_analysis(const PointExpansion& f, int truncation) {
  SHCoefficientVector out(truncation);
  if (f.size() == 0) return out;
  const EigenvalueSequence lambda = eigenvalues(f.kernel, truncation);
  auto entries = out.entries();
  for (std::size_t p = 0; p < f.size(); ++p) {
    const auto y = spherical_harmonics_all(truncation, f.points[p]);
    for (int l = 0; l <= truncation; ++l) {
      const Complex scale = f.coeffs[p] * lambda[l];
      for (int m = -l; m <= l; ++m) {
        const std::size_t i = static_cast<std::size_t>(l * l + l + m);
        entries[i] += scale * std::conj(y[i]);
      }
    }
  }
  return out;
}

Complex inner_product_spectral(const SHCoefficientVector& f, const SHCoefficientVector& g, const RkhsSpace& space) {
  if (f.truncation() != g.truncation())
    throw MismatchError("coefficient vectors have truncations " + std::to_string(f.truncation()) + " and " +
                        std::to_string(g.truncation()));
  if (f.truncation() > space.truncation())
    throw MismatchError("coefficient truncation exceeds the space's eigenvalue table");
  const auto& lambda = space.eigenvalues();
  Complex sum(0.0, 0.0);
  for (int l = 0; l <= f.truncation(); ++l) {
    if (lambda[l] == 0.0) continue;
    Complex degree_sum(0.0, 0.0);
    for (int m = -l; m <= l; ++m) degree_sum += (f(l, m) / lambda[l]) * std::conj(g(l, m));
    sum += degree_sum;
  }
  return sum;
}

Complex basis_phi(const RkhsSpace& space, const SphericalHarmonicIndex& idx, const UnitVector& x) {
  if (idx.degree() > space.truncation()) throw DomainError("basis_phi: degree beyond the space's truncation");
  return std::exp(0.5 * space.eigenvalues().log_value(idx.degree())) * spherical_harmonic(idx, x);
}

SHCoefficientVector apply_operator_power(const SHCoefficientVector& f, const RkhsSpace& space, double p) {
  if (f.truncation() > space.truncation())
    throw MismatchError("coefficient truncation exceeds the space's eigenvalue table");
  SHCoefficientVector out = f;
  const auto& lambda = space.eigenvalues();
  for (int l = 0; l <= f.truncation(); ++l) {
    const double factor = p == 0.0 ? 1.0 : std::exp(p * lambda.log_value(l));
    for (int m = -l; m <= l; ++m) {
      const Complex v = f(l, m);
      out(l, m) = v == Complex(0.0, 0.0) ? v : v * factor;
    }
  }
  return out;
}

double eigenfunction_residual(const RkhsSpace& space, const SphericalHarmonicIndex& idx,
                              std::span<const UnitVector> samples, const SphereQuadrature& quadrature) {
  const auto nodes = quadrature.points();
  const auto weights = quadrature.weights();
  std::vector<Complex> y_at_nodes(nodes.size());
  for (std::size_t j = 0; j < nodes.size(); ++j) y_at_nodes[j] = spherical_harmonic(idx, nodes[j]);

  const double lambda = std::exp(space.eigenvalues().log_value(idx.degree()));
  double worst = 0.0;
  for (const UnitVector& x : samples) {
    Complex integral(0.0, 0.0);
    for (std::size_t j = 0; j < nodes.size(); ++j) integral += weights[j] * space.kernel()(x.dot(nodes[j])) * y_at_nodes[j];
    worst = std::max(worst, std::abs(integral - lambda * spherical_harmonic(idx, x)));
  }
  return worst;
}

double reproducing_residual(const RkhsSpace& space, const PointExpansion& f, const UnitVector& y, int truncation) {
  if (f.size() == 0) return 0.0;
  const SHCoefficientVector fc = sh_analysis(f, truncation);
  const SHCoefficientVector kc = sh_analysis(PointExpansion::kernel_section(f.kernel, y), truncation);
  return std::abs(inner_product_spectral(fc, kc, space) - eval(f, y));
}

std::vector<double> gram_matrix(const KernelFamily& kernel, std::span<const UnitVector> points) {
  const std::size_t n = points.size();
  std::vector<double> g(n * n);
  for (std::size_t q = 0; q < n; ++q)
    for (std::size_t p = q; p < n; ++p) g[q * n + p] = g[p * n + q] = kernel(points[q].dot(points[p]));
  return g;
}

PointExpansion fit_interpolant(const KernelFamily& kernel, std::span<const UnitVector> points,
                               std::span<const Complex> values, double ridge) {
  if (points.size() != values.size()) throw ParameterError("fit_interpolant: points and values differ in length");
  if (!(ridge >= 0.0)) throw ParameterError("fit_interpolant: ridge must be >= 0");
  const auto n = static_cast<Eigen::Index>(points.size());
  std::vector<UnitVector> centres(points.begin(), points.end());
  if (n == 0) return PointExpansion(kernel);

  const std::vector<double> g = gram_matrix(kernel, points);
  Eigen::MatrixXd system(n, n);
  for (Eigen::Index q = 0; q < n; ++q)
    for (Eigen::Index p = 0; p < n; ++p) system(q, p) = g[static_cast<std::size_t>(q * n + p)];
  system.diagonal().array() += ridge;

  Eigen::MatrixXd rhs(n, 2);
  for (Eigen::Index q = 0; q < n; ++q) {
    rhs(q, 0) = values[static_cast<std::size_t>(q)].real();
    rhs(q, 1) = values[static_cast<std::size_t>(q)].imag();
  }

  const Eigen::LDLT<Eigen::MatrixXd> ldlt(system);
  // LDLT treats zero pivots as a pseudo-inverse, which hides exact singularity
  // from rcond(); the pivot ratio catches that case.
  double rcond = ldlt.info() == Eigen::Success ? ldlt.rcond() : 0.0;
  const Eigen::VectorXd pivots = ldlt.vectorD().cwiseAbs();
  if (!(pivots.minCoeff() > std::numeric_limits<double>::epsilon() * pivots.maxCoeff())) rcond = 0.0;
  if (!(rcond > std::numeric_limits<double>::epsilon()))
    throw SingularSystemError("Gram system is numerically singular (reciprocal condition estimate " +
                              std::to_string(rcond) + "); add a ridge or remove clustered points");
  const Eigen::MatrixXd solution = ldlt.solve(rhs);

  std::vector<Complex> coeffs(static_cast<std::size_t>(n));
  for (Eigen::Index p = 0; p < n; ++p) coeffs[static_cast<std::size_t>(p)] = Complex(solution(p, 0), solution(p, 1));
  return PointExpansion(kernel, std::move(centres), std::move(coeffs));
}

}  // namespace sphrkhs
