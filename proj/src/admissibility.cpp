#include "sphrkhs/admissibility.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>

// Boost 1.74's pchip calls isnan unqualified.
namespace boost::math::interpolators {
using std::isnan;
}
#include <boost/math/interpolators/pchip.hpp>

#include "sphrkhs/error.hpp"

namespace sphrkhs {

namespace {

double relative_change(double previous, double current) {
  const double scale = std::max(std::abs(previous), std::abs(current));
  return scale == 0.0 ? 0.0 : std::abs(current - previous) / scale;
}

double max_abs_difference(const std::vector<double>& a, const std::vector<double>& b) {
  double diff = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) diff = std::max(diff, std::abs(a[i] - b[i]));
  return diff;
}

// 2 pi int |k|, which bounds every |lambda_l|.
double spectral_mass(const UnivariateCandidate& c, const QuadratureRule& rule) {
  return 2.0 * kPi * rule.integrate([&](double z) { return std::abs(c(z)); });
}

double sqrt_half_one_minus(double z) { return std::sqrt((1.0 - std::clamp(z, -1.0, 1.0)) / 2.0); }

}  // namespace

UnivariateCandidate candidate_from_kernel(const KernelFamily& kernel) {
  return {[kernel](double z) { return kernel(z); }, kernel.label(), kernel.singular_at_one(),
          [kernel](int l) { return kernel.eigenvalue(l); }};
}

UnivariateCandidate cui_freden_raw() {
  return {[](double z) { return (1.0 - 2.0 * std::log1p(sqrt_half_one_minus(z))) / kFourPi; }, "cui-raw", true};
}

UnivariateCandidate lebedev_raw() {
  return {[](double z) { return (1.0 / 3.0 - 0.5 * sqrt_half_one_minus(z)) / kFourPi; }, "lebedev-raw", true};
}

UnivariateCandidate legendre_gen_deriv_raw(double rho) {
  if (!(rho > 0.0 && rho < 1.0)) throw ParameterError("legendre_gen_deriv_raw requires 0 < rho < 1");
  return {[rho](double z) {
            const double d = (1.0 - rho) * (1.0 - rho) + 2.0 * rho * (1.0 - std::clamp(z, -1.0, 1.0));
            return (z - rho) / (d * std::sqrt(d)) / kFourPi;
          },
          "leggen-deriv-raw", rho >= 0.9};
}

UnivariateCandidate candidate_from_samples(std::vector<double> z, std::vector<double> k, std::string label) {
  if (z.size() != k.size()) throw ParameterError("sample columns differ in length");
  if (z.size() < 4) throw ParameterError("at least 4 samples are required");
  for (std::size_t i = 1; i < z.size(); ++i)
    if (!(z[i] > z[i - 1])) throw ParameterError("sample abscissae must be strictly increasing");
  if (z.front() > -1.0 + 1e-12 || z.back() < 1.0 - 1e-12)
    throw ParameterError("samples must cover [-1, 1]");
  for (double v : k)
    if (!std::isfinite(v)) throw ParameterError("sample values must be finite");
  using Interpolant = boost::math::interpolators::pchip<std::vector<double>>;
  auto interpolant = std::make_shared<Interpolant>(std::move(z), std::move(k));
  return {[interpolant](double x) { return (*interpolant)(std::clamp(x, -1.0, 1.0)); }, std::move(label), false};
}

QuadratureRule candidate_rule(const UnivariateCandidate& c, int truncation, int level, const QuadratureOptions& options) {
  const int scale = 1 << level;
  if (c.singular_at_one) {
    // The widest panel spans half the interval, so it needs enough nodes to
    // resolve P_L there on its own.
    const int base = std::max(options.graded_nodes_per_panel, truncation / 2 + 16);
    return graded_rule(base * scale, options.graded_panels);
  }
  return gauss_legendre(std::max(options.smooth_min_nodes, 2 * truncation) * scale);
}

EnergyResult energy_check(const UnivariateCandidate& c, const QuadratureOptions& options) {
  const auto energy_with = [&](int level) {
    const QuadratureRule rule = candidate_rule(c, 0, level, options);
    return rule.integrate([&](double z) {
      const double v = c(z);
      return v * v;
    });
  };
  EnergyResult result;
  double previous = energy_with(0);
  double change = std::numeric_limits<double>::infinity();
  double current = previous;
  for (int level = 1; level <= options.max_refinements; ++level) {
    current = energy_with(level);
    change = std::isfinite(current) ? relative_change(previous, current) : std::numeric_limits<double>::infinity();
    previous = current;
    if (change < 1e-8) break;
  }
  result.energy = current;
  result.relative_change = change;
  if (!(change <= 1e-4))
    throw ConvergenceError("energy integral of '" + c.label + "' does not converge under refinement");
  result.hilbert_schmidt_ok = std::isfinite(current) && change < 1e-8;
  return result;
}

std::vector<double> compute_spectrum(const UnivariateCandidate& c, int truncation, const QuadratureRule& rule) {
  if (truncation < 0) throw DomainError("compute_spectrum: truncation must be >= 0");
  const auto n = static_cast<std::size_t>(truncation) + 1;
  std::vector<double> lambdas(n, 0.0);
  std::vector<double> p(n);
  // Node-major accumulation: one Legendre sweep per node, fixed summation order.
  for (std::size_t j = 0; j < rule.size(); ++j) {
    const double z = rule.nodes[j];
    const double wk = rule.weights[j] * c(z);
    p[0] = 1.0;
    if (n > 1) p[1] = z;
    for (std::size_t l = 1; l + 1 < n; ++l) p[l + 1] = ((2.0 * l + 1.0) * z * p[l] - l * p[l - 1]) / (l + 1.0);
    for (std::size_t l = 0; l < n; ++l) lambdas[l] += wk * p[l];
  }
  for (double& v : lambdas) v *= 2.0 * kPi;
  return lambdas;
}

std::vector<double> compute_spectrum(const UnivariateCandidate& c, int truncation, const QuadratureOptions& options) {
  std::vector<double> previous = compute_spectrum(c, truncation, candidate_rule(c, truncation, 0, options));
  double change = std::numeric_limits<double>::infinity();
  for (int level = 1; level <= options.max_refinements; ++level) {
    const QuadratureRule rule = candidate_rule(c, truncation, level, options);
    std::vector<double> current = compute_spectrum(c, truncation, rule);
    const double scale = std::max(spectral_mass(c, rule), std::numeric_limits<double>::min());
    change = max_abs_difference(previous, current) / scale;
    previous = std::move(current);
    if (change <= options.refine_tolerance) return previous;
  }
  if (!(change <= 1e-4))
    throw ConvergenceError("spectrum of '" + c.label + "' does not converge under quadrature refinement");
  return previous;
}

bool AdmissibilityReport::is_indeterminate() const {
  return !admissible && hilbert_schmidt_ok && !exception_set.empty() &&
         indeterminate.size() == exception_set.size();
}

AdmissibilityReport check_admissibility(const UnivariateCandidate& c, int truncation, double tolerance,
                                        const QuadratureOptions& options) {
  AdmissibilityReport report;
  report.label = c.label;
  report.truncation = truncation;
  report.tolerance = tolerance;

  try {
    const EnergyResult energy = energy_check(c, options);
    report.energy = energy.energy;
    report.hilbert_schmidt_ok = energy.hilbert_schmidt_ok;
  } catch (const ConvergenceError&) {
    report.energy = std::numeric_limits<double>::infinity();
    report.hilbert_schmidt_ok = false;
  }

  try {
    report.lambdas = compute_spectrum(c, truncation, options);
  } catch (const ConvergenceError&) {
    report.lambdas.assign(static_cast<std::size_t>(truncation) + 1, std::numeric_limits<double>::quiet_NaN());
    report.hilbert_schmidt_ok = false;
  }

  // Round-off level of the lambda integrals: a hundred ulps of 2 pi int |k|.
  const double mass = spectral_mass(c, candidate_rule(c, truncation, 0, options));
  report.zero_floor = 100.0 * std::numeric_limits<double>::epsilon() * mass;

  for (int l = 0; l <= truncation; ++l) {
    const double lambda = report.lambdas[static_cast<std::size_t>(l)];
    if (lambda > tolerance) continue;
    if (c.reference_eigenvalue && std::isfinite(lambda)) {
      const double exact = c.reference_eigenvalue(l);
      if (exact > 0.0 && std::abs(lambda - exact) <= report.zero_floor) {
        report.closed_form_degrees.push_back(l);
        continue;
      }
    }
    report.exception_set.push_back(l);
    if (lambda > report.zero_floor) report.indeterminate.push_back(l);
  }
  report.admissible = report.hilbert_schmidt_ok && report.exception_set.empty();
  report.normalized = std::abs(report.lambdas.front() - 1.0) <= kNormalizationTolerance;
  const auto [min_value, nonnegative] = nonnegativity_check(c);
  report.min_value = min_value;
  report.nonnegative = nonnegative;
  return report;
}

UnivariateCandidate repair(const UnivariateCandidate& c, const AdmissibilityReport& report, double fill,
                           int max_exceptions) {
  if (report.exception_set.empty()) throw PreconditionError("repair: exception set is empty, nothing to repair");
  if (static_cast<int>(report.exception_set.size()) > max_exceptions)
    throw PreconditionError("repair: exception set has " + std::to_string(report.exception_set.size()) +
                            " degrees, more than the allowed " + std::to_string(max_exceptions));
  if (!(fill > 0.0)) throw ParameterError("repair: fill must be positive");

  std::vector<std::pair<int, double>> terms;
  for (int l : report.exception_set) {
    const double lambda = report.lambdas.at(static_cast<std::size_t>(l));
    terms.emplace_back(l, (fill - lambda) * (2.0 * l + 1.0) / kFourPi);
  }
  auto base = c.evaluator;
  return {[base, terms](double z) {
            double v = base(z);
            for (const auto& [l, coefficient] : terms) v += coefficient * legendre_p(l, z);
            return v;
          },
          c.label + "+repair", c.singular_at_one};
}

UnivariateCandidate normalize(const UnivariateCandidate& c, double tolerance, const QuadratureOptions& options) {
  const double lambda0 = compute_spectrum(c, 0, options).front();
  if (!(lambda0 > tolerance)) throw PreconditionError("normalize: lambda_0 is not positive");
  auto base = c.evaluator;
  const double scale = 1.0 / lambda0;
  return {[base, scale](double z) { return scale * base(z); }, c.label, c.singular_at_one};
}

std::pair<double, bool> nonnegativity_check(const UnivariateCandidate& c, int grid) {
  if (grid < 2) throw DomainError("nonnegativity_check: grid must be >= 2");
  double minimum = std::min(c(-1.0), c(1.0));
  for (int j = 0; j < grid; ++j) minimum = std::min(minimum, c(std::cos(kPi * (j + 0.5) / grid)));
  return {minimum, minimum >= -1e-12};
}

}  // namespace sphrkhs
