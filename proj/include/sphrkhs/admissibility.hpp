#pragma once

#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "sphrkhs/kernels.hpp"
#include "sphrkhs/special_functions.hpp"

namespace sphrkhs {

/// A univariate function on [-1, 1] proposed as an isotropic kernel profile.
struct UnivariateCandidate {
  std::function<double(double)> evaluator;
  std::string label;
  /// Selects graded quadrature (derivative singularity at z = 1).
  bool singular_at_one = false;
  /// Closed-form lambda_l when known (built-in families). Decides degrees whose
  /// quadrature value is too small to resolve; empty for unknown candidates.
  std::function<double(int)> reference_eigenvalue;

  double operator()(double z) const { return evaluator(z); }
};

/// The profile of a built-in family as a candidate.
UnivariateCandidate candidate_from_kernel(const KernelFamily& kernel);

/// The Cui-Freden log identity 1 - 2 log(1 + sqrt((1-z)/2)) scaled by 1/4pi,
/// before the constant term is added (lambda_0 = 0).
UnivariateCandidate cui_freden_raw();
/// (1/3 - sqrt((1-z)/2) / 2) / 4pi, the Lebedev profile before adding the constant term.
UnivariateCandidate lebedev_raw();
/// (z - rho) / (1 - 2 rho z + rho^2)^{3/2} / 4pi, the derivative of the generating
/// function before adding the constant term.
UnivariateCandidate legendre_gen_deriv_raw(double rho);

/// Candidate interpolating tabulated (z, k) samples with a monotone cubic
/// Hermite interpolant. Samples must cover [-1, 1] with strictly increasing z.
UnivariateCandidate candidate_from_samples(std::vector<double> z, std::vector<double> k, std::string label);

/// Quadrature configuration for the spectrum and energy integrals.
struct QuadratureOptions {
  int smooth_min_nodes = 64;
  int graded_nodes_per_panel = 32;
  int graded_panels = 24;
  /// Refinement stops once successive spectra agree to this fraction of max |lambda|.
  double refine_tolerance = 1e-13;
  int max_refinements = 6;
};

/// The rule used at refinement `level` (0 = base) for a candidate and truncation.
QuadratureRule candidate_rule(const UnivariateCandidate& c, int truncation, int level = 0,
                              const QuadratureOptions& options = {});

struct EnergyResult {
  double energy = 0.0;
  bool hilbert_schmidt_ok = false;
  double relative_change = 0.0;  // between the two finest refinements
};

/// Integral of k^2 over [-1, 1]. Finite and converged (doubling nodes moves the
/// value by < 1e-8 relative) means the Hilbert-Schmidt condition holds.
/// Throws ConvergenceError if the refinements disagree by more than 1e-4 relative.
EnergyResult energy_check(const UnivariateCandidate& c, const QuadratureOptions& options = {});

/// lambda_l = 2 pi int k(z) P_l(z) dz for l = 0..L with the given rule.
std::vector<double> compute_spectrum(const UnivariateCandidate& c, int truncation, const QuadratureRule& rule);

/// As above, refining the candidate's default rule until successive spectra agree.
std::vector<double> compute_spectrum(const UnivariateCandidate& c, int truncation, const QuadratureOptions& options = {});

struct AdmissibilityReport {
  std::string label;
  double energy = 0.0;
  bool hilbert_schmidt_ok = false;
  std::vector<double> lambdas;
  /// Degrees with lambda_l <= tolerance.
  std::vector<int> exception_set;
  /// Subset of the exception set with 0 < lambda_l <= tolerance that is
  /// distinguishable from quadrature round-off: positivity cannot be decided.
  std::vector<int> indeterminate;
  bool admissible = false;
  bool normalized = false;
  bool nonnegative = false;
  double min_value = 0.0;
  int truncation = 0;
  double tolerance = 0.0;
  /// Quadrature round-off level below which a coefficient is treated as zero.
  double zero_floor = 0.0;
  /// Degrees with lambda_l <= tolerance that were decided by the candidate's
  /// closed form, consistent with the quadrature value to within zero_floor.
  std::vector<int> closed_form_degrees;

  /// Inadmissible only because of coefficients in (zero_floor, tolerance].
  bool is_indeterminate() const;
};

inline constexpr int kDefaultReportTruncation = 64;
inline constexpr double kDefaultPositivityTolerance = 1e-12;
inline constexpr double kNormalizationTolerance = 1e-9;

/// Full admissibility report. The verdict covers degrees 0..L only. A degree is
/// an exception when its quadrature value is <= tolerance, unless the candidate
/// carries a closed form that is positive there and agrees with the quadrature.
AdmissibilityReport check_admissibility(const UnivariateCandidate& c, int truncation = kDefaultReportTruncation,
                                        double tolerance = kDefaultPositivityTolerance,
                                        const QuadratureOptions& options = {});

/// Adds (fill - lambda_l) (2l + 1)/4pi P_l(z) for every l in the exception set,
/// so the repaired candidate has lambda_l = fill there.
/// Throws PreconditionError for an empty exception set or one larger than max_exceptions.
UnivariateCandidate repair(const UnivariateCandidate& c, const AdmissibilityReport& report, double fill = 1.0,
                           int max_exceptions = 4);

/// Scales the candidate by 1 / lambda_0. Throws PreconditionError if lambda_0 <= tolerance.
UnivariateCandidate normalize(const UnivariateCandidate& c, double tolerance = kDefaultPositivityTolerance,
                              const QuadratureOptions& options = {});

/// Minimum of k over `grid` Chebyshev points plus both endpoints, and whether it is >= -1e-12.
std::pair<double, bool> nonnegativity_check(const UnivariateCandidate& c, int grid = 512);

}  // namespace sphrkhs
