#include "sphrkhs/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "sphrkhs/error.hpp"

namespace sphrkhs {

namespace {

constexpr double kDomainSlack = 1e-12;

void require(bool ok, const std::string& message) {
  if (!ok) throw ParameterError(message);
}

bool is_finite_positive(double v) { return std::isfinite(v) && v > 0.0; }

}  // namespace

std::string_view to_string(KernelKind kind) {
  switch (kind) {
    case KernelKind::CuiFreden: return "CuiFreden";
    case KernelKind::Lebedev: return "Lebedev";
    case KernelKind::LegendreGen: return "LegendreGen";
    case KernelKind::LegendreGenDeriv: return "LegendreGenDeriv";
    case KernelKind::AltGen: return "AltGen";
    case KernelKind::VonMisesFisher: return "VonMisesFisher";
  }
  return "unknown";
}

KernelKind kernel_kind_from_string(std::string_view tag) {
  for (auto kind : {KernelKind::CuiFreden, KernelKind::Lebedev, KernelKind::LegendreGen,
                    KernelKind::LegendreGenDeriv, KernelKind::AltGen, KernelKind::VonMisesFisher})
    if (to_string(kind) == tag) return kind;
  throw ParameterError("unknown kernel family '" + std::string(tag) + "'");
}

KernelFamily KernelFamily::cui_freden(double eta) {
  require(is_finite_positive(eta), "CuiFreden requires eta > 0");
  return {KernelKind::CuiFreden, eta, 0.0};
}

KernelFamily KernelFamily::lebedev(double eta) {
  require(is_finite_positive(eta), "Lebedev requires eta > 0");
  return {KernelKind::Lebedev, eta, 0.0};
}

KernelFamily KernelFamily::legendre_gen(double rho) {
  require(rho > 0.0 && rho < 1.0, "LegendreGen requires 0 < rho < 1");
  return {KernelKind::LegendreGen, rho, 0.0};
}

KernelFamily KernelFamily::legendre_gen_deriv(double rho, double c0) {
  require(rho > 0.0 && rho < 1.0, "LegendreGenDeriv requires 0 < rho < 1");
  require(is_finite_positive(c0), "LegendreGenDeriv requires c0 > 0");
  return {KernelKind::LegendreGenDeriv, rho, c0};
}

KernelFamily KernelFamily::alt_gen(double rho) {
  require(is_finite_positive(rho), "AltGen requires rho > 0");
  return {KernelKind::AltGen, rho, 0.0};
}

KernelFamily KernelFamily::von_mises_fisher(double kappa) {
  require(is_finite_positive(kappa),
          "VonMisesFisher requires kappa > 0 (kappa = 0 is the uniform limit, whose higher eigenvalues vanish)");
  return {KernelKind::VonMisesFisher, kappa, 0.0};
}

KernelFamily KernelFamily::from_params(KernelKind kind, const std::map<std::string, double>& params) {
  const auto allowed = [&](std::initializer_list<const char*> names) {
    for (const auto& [name, value] : params) {
      bool known = false;
      for (const char* n : names) known = known || name == n;
      if (!known)
        throw ParameterError("parameter '" + name + "' does not apply to " + std::string(to_string(kind)));
    }
  };
  const auto get = [&](const char* name, double fallback) {
    const auto it = params.find(name);
    return it == params.end() ? fallback : it->second;
  };
  switch (kind) {
    case KernelKind::CuiFreden: allowed({"eta"}); return cui_freden(get("eta", 1.0));
    case KernelKind::Lebedev: allowed({"eta"}); return lebedev(get("eta", 1.0));
    case KernelKind::LegendreGen: allowed({"rho"}); return legendre_gen(get("rho", 0.5));
    case KernelKind::LegendreGenDeriv:
      allowed({"rho", "c0"});
      return legendre_gen_deriv(get("rho", 0.5), get("c0", 1.0));
    case KernelKind::AltGen: allowed({"rho"}); return alt_gen(get("rho", 1.0));
    case KernelKind::VonMisesFisher: allowed({"kappa"}); return von_mises_fisher(get("kappa", 4.0));
  }
  throw ParameterError("unknown kernel family");
}

std::map<std::string, double> KernelFamily::params() const {
  switch (kind_) {
    case KernelKind::CuiFreden:
    case KernelKind::Lebedev: return {{"eta", p1_}};
    case KernelKind::LegendreGen:
    case KernelKind::AltGen: return {{"rho", p1_}};
    case KernelKind::LegendreGenDeriv: return {{"rho", p1_}, {"c0", p2_}};
    case KernelKind::VonMisesFisher: return {{"kappa", p1_}};
  }
  return {};
}

std::string KernelFamily::label() const {
  std::ostringstream os;
  os << to_string(kind_) << '(';
  bool first = true;
  for (const auto& [name, value] : params()) {
    if (!first) os << ", ";
    os << name << '=' << value;
    first = false;
  }
  os << ')';
  return os.str();
}

double KernelFamily::operator()(double z) const {
  if (!(std::abs(z) <= 1.0 + kDomainSlack))
    throw DomainError("kernel profile evaluated outside [-1, 1]");
  z = std::clamp(z, -1.0, 1.0);
  switch (kind_) {
    case KernelKind::CuiFreden: {
      const double s = std::sqrt((1.0 - z) / 2.0);
      return (1.0 + p1_ * (1.0 - 2.0 * std::log1p(s))) / kFourPi;
    }
    case KernelKind::Lebedev: {
      // (1/4pi + eta/12pi) - (eta/8pi) s, written over 12pi so eta = 6 at z = -1 is exactly 0.
      const double s = std::sqrt((1.0 - z) / 2.0);
      return (3.0 + p1_ * (1.0 - 1.5 * s)) / (12.0 * kPi);
    }
    case KernelKind::LegendreGen: {
      const double d = (1.0 - p1_) * (1.0 - p1_) + 2.0 * p1_ * (1.0 - z);
      return 1.0 / (kFourPi * std::sqrt(d));
    }
    case KernelKind::LegendreGenDeriv: {
      const double d = (1.0 - p1_) * (1.0 - p1_) + 2.0 * p1_ * (1.0 - z);
      return (p2_ + (z - p1_) / (d * std::sqrt(d))) / kFourPi;
    }
    case KernelKind::AltGen:
      return std::exp(p1_ * z) * bessel_j0(p1_ * std::sqrt((1.0 - z) * (1.0 + z))) / kFourPi;
    case KernelKind::VonMisesFisher:
      // kappa e^{kappa z} / (4pi sinh kappa) without overflow.
      return p1_ * std::exp(p1_ * (z - 1.0)) / (2.0 * kPi * -std::expm1(-2.0 * p1_));
  }
  return 0.0;
}

double KernelFamily::eigenvalue(int degree) const {
  if (degree < 0) throw DomainError("eigenvalue: negative degree");
  const double l = degree;
  switch (kind_) {
    case KernelKind::CuiFreden: return degree == 0 ? 1.0 : p1_ / (l * (l + 1.0) * (2.0 * l + 1.0));
    case KernelKind::Lebedev: return degree == 0 ? 1.0 : p1_ / ((4.0 * l * l - 1.0) * (2.0 * l + 3.0));
    case KernelKind::LegendreGen: return std::pow(p1_, l) / (2.0 * l + 1.0);
    case KernelKind::LegendreGenDeriv: return degree == 0 ? p2_ : l * std::pow(p1_, l - 1.0) / (2.0 * l + 1.0);
    case KernelKind::AltGen: {
      double v = 1.0 / (2.0 * l + 1.0);
      for (int j = 1; j <= degree; ++j) v *= p1_ / j;
      return v;
    }
    case KernelKind::VonMisesFisher: return std::exp(log_eigenvalue(degree));
  }
  return 0.0;
}

double KernelFamily::log_eigenvalue(int degree) const {
  if (degree < 0) throw DomainError("eigenvalue: negative degree");
  const double l = degree;
  switch (kind_) {
    case KernelKind::CuiFreden:
      return degree == 0 ? 0.0 : std::log(p1_) - std::log(l) - std::log(l + 1.0) - std::log(2.0 * l + 1.0);
    case KernelKind::Lebedev:
      return degree == 0 ? 0.0
                         : std::log(p1_) - std::log(2.0 * l - 1.0) - std::log(2.0 * l + 1.0) - std::log(2.0 * l + 3.0);
    case KernelKind::LegendreGen: return l * std::log(p1_) - std::log(2.0 * l + 1.0);
    case KernelKind::LegendreGenDeriv:
      return degree == 0 ? std::log(p2_) : std::log(l) + (l - 1.0) * std::log(p1_) - std::log(2.0 * l + 1.0);
    case KernelKind::AltGen: return l * std::log(p1_) - std::log(2.0 * l + 1.0) - std::lgamma(l + 1.0);
    case KernelKind::VonMisesFisher: return log_bessel_i_half_ratios(degree, p1_)[degree];
  }
  return 0.0;
}

double KernelFamily::legendre_coefficient(int degree) const {
  return (2.0 * degree + 1.0) * eigenvalue(degree) / kFourPi;
}

bool KernelFamily::singular_at_one() const {
  switch (kind_) {
    case KernelKind::CuiFreden:
    case KernelKind::Lebedev: return true;
    case KernelKind::LegendreGen:
    case KernelKind::LegendreGenDeriv: return p1_ >= 0.9;
    default: return false;
  }
}

double eval_univariate(const KernelFamily& kernel, double z) { return kernel(z); }

double eval_bivariate(const KernelFamily& kernel, const UnitVector& x, const UnitVector& y) {
  return kernel(x.dot(y));
}

double eigenvalue(const KernelFamily& kernel, int degree) { return kernel.eigenvalue(degree); }

double legendre_coefficient(const KernelFamily& kernel, int degree) { return kernel.legendre_coefficient(degree); }

EigenvalueSequence::EigenvalueSequence(std::vector<double> log_values) : log_values_(std::move(log_values)) {
  if (log_values_.empty()) throw ParameterError("eigenvalue sequence must hold at least lambda_0");
  values_.reserve(log_values_.size());
  for (double lv : log_values_) {
    if (std::isnan(lv) || lv == std::numeric_limits<double>::infinity() || lv == -std::numeric_limits<double>::infinity())
      throw ParameterError("eigenvalues must be strictly positive and finite");
    values_.push_back(std::exp(lv));
  }
}

int default_truncation(const KernelFamily& kernel) {
  constexpr int cap = 512;
  const double threshold = std::log(1e-14);
  const double head = kernel.log_eigenvalue(0);
  if (kernel.kind() == KernelKind::VonMisesFisher) {
    const auto logs = log_bessel_i_half_ratios(cap, kernel.params().at("kappa"));
    for (int l = 1; l <= cap; ++l)
      if (logs[l] - head < threshold) return l;
    return cap;
  }
  for (int l = 1; l <= cap; ++l)
    if (kernel.log_eigenvalue(l) - head < threshold) return l;
  return cap;
}

EigenvalueSequence eigenvalues(const KernelFamily& kernel, std::optional<int> truncation) {
  const int L = truncation.value_or(default_truncation(kernel));
  if (L < 0) throw DomainError("truncation must be >= 0");
  if (kernel.kind() == KernelKind::VonMisesFisher) return vmf_eigenvalues(kernel.params().at("kappa"), L);
  std::vector<double> logs(static_cast<std::size_t>(L) + 1);
  for (int l = 0; l <= L; ++l) logs[l] = kernel.log_eigenvalue(l);
  return EigenvalueSequence(std::move(logs));
}

EigenvalueSequence vmf_eigenvalues(double kappa, int truncation) {
  require(is_finite_positive(kappa), "VonMisesFisher requires kappa > 0");
  if (truncation < 0) throw DomainError("truncation must be >= 0");
  return EigenvalueSequence(log_bessel_i_half_ratios(truncation, kappa));
}

double mercer_tail(const KernelFamily& kernel, int truncation) {
  const double L = truncation;
  const auto params = kernel.params();
  switch (kernel.kind()) {
    case KernelKind::CuiFreden:
      // sum_{l > L} 1 / (l (l + 1)) telescopes.
      return params.at("eta") / (kFourPi * (L + 1.0));
    case KernelKind::Lebedev:
      // 1 / ((2l-1)(2l+3)) = (1/(2l-1) - 1/(2l+3)) / 4 telescopes in steps of two.
      return params.at("eta") * 0.25 * (1.0 / (2.0 * L + 1.0) + 1.0 / (2.0 * L + 3.0)) / kFourPi;
    case KernelKind::LegendreGen: {
      const double rho = params.at("rho");
      return std::pow(rho, L + 1.0) / ((1.0 - rho) * kFourPi);
    }
    default: break;
  }
  // Remaining families decay at least geometrically; sum in log space until
  // terms stop mattering.
  double tail = 0.0;
  std::vector<double> vmf_logs;
  const int horizon = truncation + 4096;
  if (kernel.kind() == KernelKind::VonMisesFisher)
    vmf_logs = log_bessel_i_half_ratios(horizon, params.at("kappa"));
  for (int l = truncation + 1; l <= horizon; ++l) {
    const double log_lambda = vmf_logs.empty() ? kernel.log_eigenvalue(l) : vmf_logs[l];
    const double term = (2.0 * l + 1.0) * std::exp(log_lambda) / kFourPi;
    tail += term;
    if (term <= 1e-18 * tail || (term == 0.0 && l > truncation + 8)) break;
  }
  return tail;
}

}  // namespace sphrkhs
