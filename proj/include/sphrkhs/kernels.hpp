#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "sphrkhs/special_functions.hpp"

namespace sphrkhs {

enum class KernelKind { CuiFreden, Lebedev, LegendreGen, LegendreGenDeriv, AltGen, VonMisesFisher };

std::string_view to_string(KernelKind kind);
/// Parses the canonical family tag ("CuiFreden", "VonMisesFisher", ...).
KernelKind kernel_kind_from_string(std::string_view tag);

/// A closed-form isotropic kernel K(x, y) = k(x . y) on the 2-sphere.
///
/// Families and their parameters:
///   CuiFreden         k = (1 + eta (1 - 2 log(1 + sqrt((1-z)/2)))) / 4pi,   eta > 0
///   Lebedev           k = (1/4pi + eta/12pi) - (eta/8pi) sqrt((1-z)/2),     eta > 0
///   LegendreGen       k = 1 / (4pi sqrt(1 - 2 z rho + rho^2)),              0 < rho < 1
///   LegendreGenDeriv  k = (c0 + (z - rho) / (1 - 2 rho z + rho^2)^{3/2}) / 4pi, 0 < rho < 1, c0 > 0
///   AltGen            k = e^{rho z} J0(rho sqrt(1 - z^2)) / 4pi,           rho > 0
///   VonMisesFisher    k = kappa e^{kappa z} / (4pi sinh kappa),            kappa > 0
///
/// Every family has strictly positive eigenvalues lambda_l; all but the
/// derivative family (for c0 != 1) are normalized to lambda_0 = 1.
class KernelFamily {
 public:
  static KernelFamily cui_freden(double eta = 1.0);
  static KernelFamily lebedev(double eta = 1.0);
  static KernelFamily legendre_gen(double rho = 0.5);
  static KernelFamily legendre_gen_deriv(double rho = 0.5, double c0 = 1.0);
  static KernelFamily alt_gen(double rho = 1.0);
  static KernelFamily von_mises_fisher(double kappa = 4.0);

  /// Builds a family from its tag and a name -> value parameter map
  /// ("eta", "rho", "kappa", "c0"). Missing parameters take the defaults above;
  /// unknown names throw ParameterError.
  static KernelFamily from_params(KernelKind kind, const std::map<std::string, double>& params);

  KernelKind kind() const { return kind_; }
  /// Named parameters of this family, e.g. {"rho": 0.5, "c0": 1}.
  std::map<std::string, double> params() const;
  /// Short human-readable description, e.g. "LegendreGen(rho=0.5)".
  std::string label() const;

  /// The univariate profile k(z). Throws DomainError for |z| > 1 (beyond rounding slack).
  double operator()(double z) const;

  /// lambda_l.
  double eigenvalue(int degree) const;
  /// log(lambda_l), finite for every l even where lambda_l underflows a double.
  double log_eigenvalue(int degree) const;
  /// alpha_l = (2l + 1) lambda_l / 4pi, the Legendre coefficient of k.
  double legendre_coefficient(int degree) const;

  /// True for profiles with a derivative singularity (or near-singularity) at z = 1,
  /// which call for graded quadrature.
  bool singular_at_one() const;

  friend bool operator==(const KernelFamily&, const KernelFamily&) = default;

 private:
  KernelFamily(KernelKind kind, double p1, double p2) : kind_(kind), p1_(p1), p2_(p2) {}

  KernelKind kind_;
  double p1_;  // eta, rho or kappa
  double p2_;  // c0 for LegendreGenDeriv, unused otherwise
};

double eval_univariate(const KernelFamily& kernel, double z);
double eval_bivariate(const KernelFamily& kernel, const UnitVector& x, const UnitVector& y);
double eigenvalue(const KernelFamily& kernel, int degree);
double legendre_coefficient(const KernelFamily& kernel, int degree);

/// lambda_0 .. lambda_L of an isotropic kernel (lambda_l^m = lambda_l for all m).
class EigenvalueSequence {
 public:
  EigenvalueSequence(std::vector<double> log_values);

  int truncation() const { return static_cast<int>(log_values_.size()) - 1; }
  bool isotropic() const { return true; }

  double operator[](int degree) const { return values_[static_cast<std::size_t>(degree)]; }
  double log_value(int degree) const { return log_values_[static_cast<std::size_t>(degree)]; }
  const std::vector<double>& values() const { return values_; }
  const std::vector<double>& log_values() const { return log_values_; }

 private:
  std::vector<double> log_values_;
  std::vector<double> values_;
};

/// Smallest L with lambda_L / lambda_0 < 1e-14, capped at 512.
int default_truncation(const KernelFamily& kernel);

/// Eigenvalue table of a family up to `truncation` (default_truncation when empty).
EigenvalueSequence eigenvalues(const KernelFamily& kernel, std::optional<int> truncation = std::nullopt);

/// von Mises-Fisher eigenvalues I_{l+1/2}(kappa) / I_{1/2}(kappa), l = 0..L,
/// computed from Bessel ratios by backward recurrence.
EigenvalueSequence vmf_eigenvalues(double kappa, int truncation);

/// Estimate of sum_{l > L} (2l + 1) lambda_l / 4pi, i.e. the neglected part of
/// k(1) when the Mercer series is cut at L.
double mercer_tail(const KernelFamily& kernel, int truncation);

}  // namespace sphrkhs
