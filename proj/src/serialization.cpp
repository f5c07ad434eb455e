#include "sphrkhs/serialization.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <map>
#include <string>

#include "sphrkhs/error.hpp"

namespace sphrkhs {

namespace {

std::string trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return std::string(s);
}

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return s;
}

KernelKind kind_from_shorthand(const std::string& name) {
  static const std::map<std::string, KernelKind> names{
      {"cui", KernelKind::CuiFreden},           {"cui-freden", KernelKind::CuiFreden},
      {"cuifreden", KernelKind::CuiFreden},     {"lebedev", KernelKind::Lebedev},
      {"leggen", KernelKind::LegendreGen},      {"legendregen", KernelKind::LegendreGen},
      {"leggen-deriv", KernelKind::LegendreGenDeriv}, {"legendregenderiv", KernelKind::LegendreGenDeriv},
      {"altgen", KernelKind::AltGen},           {"vmf", KernelKind::VonMisesFisher},
      {"vonmisesfisher", KernelKind::VonMisesFisher}};
  const auto it = names.find(lower(name));
  if (it == names.end()) throw ParameterError("unknown kernel name '" + name + "'");
  return it->second;
}

double parse_number(const std::string& text) {
  try {
    std::size_t used = 0;
    const double v = std::stod(text, &used);
    if (used != text.size()) throw ParameterError("trailing characters in number '" + text + "'");
    return v;
  } catch (const std::logic_error&) {
    throw ParameterError("invalid number '" + text + "'");
  }
}

}  // namespace

nlohmann::json to_json(const KernelFamily& kernel) {
  nlohmann::json params = nlohmann::json::object();
  for (const auto& [name, value] : kernel.params()) params[name] = value;
  return {{"family", std::string(to_string(kernel.kind()))}, {"params", params}};
}

KernelFamily kernel_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("family") || !j["family"].is_string())
    throw ParameterError("kernel JSON must be an object with a string \"family\"");
  std::map<std::string, double> params;
  if (j.contains("params")) {
    if (!j["params"].is_object()) throw ParameterError("kernel \"params\" must be an object");
    for (const auto& [name, value] : j["params"].items()) {
      if (!value.is_number()) throw ParameterError("kernel parameter '" + name + "' must be a number");
      params[name] = value.get<double>();
    }
  }
  return KernelFamily::from_params(kernel_kind_from_string(j["family"].get<std::string>()), params);
}

nlohmann::json to_json(const PointExpansion& f) {
  nlohmann::json points = nlohmann::json::array();
  nlohmann::json coeffs = nlohmann::json::array();
  for (std::size_t p = 0; p < f.size(); ++p) {
    points.push_back({f.points[p].theta(), f.points[p].phi()});
    coeffs.push_back({f.coeffs[p].real(), f.coeffs[p].imag()});
  }
  return {{"kernel", to_json(f.kernel)}, {"points", points}, {"coeffs", coeffs}};
}

PointExpansion expansion_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("kernel")) throw ParameterError("expansion JSON must contain \"kernel\"");
  const KernelFamily kernel = kernel_from_json(j["kernel"]);
  const nlohmann::json empty = nlohmann::json::array();
  const auto& points = j.contains("points") ? j["points"] : empty;
  const auto& coeffs = j.contains("coeffs") ? j["coeffs"] : empty;
  if (!points.is_array() || !coeffs.is_array() || points.size() != coeffs.size())
    throw ParameterError("expansion \"points\" and \"coeffs\" must be arrays of equal length");
  std::vector<UnitVector> pts;
  std::vector<Complex> cs;
  for (std::size_t p = 0; p < points.size(); ++p) {
    const auto& pt = points[p];
    const auto& c = coeffs[p];
    if (!pt.is_array() || pt.size() != 2 || !c.is_array() || c.size() != 2)
      throw ParameterError("expansion entries must be [theta, phi] and [re, im] pairs");
    pts.push_back(UnitVector::from_spherical(pt[0].get<double>(), pt[1].get<double>()));
    cs.emplace_back(c[0].get<double>(), c[1].get<double>());
  }
  return PointExpansion(kernel, std::move(pts), std::move(cs));
}

nlohmann::json to_json(const AdmissibilityReport& report) {
  const auto number = [](double v) { return std::isfinite(v) ? nlohmann::json(v) : nlohmann::json(nullptr); };
  nlohmann::json lambdas = nlohmann::json::array();
  for (double v : report.lambdas) lambdas.push_back(number(v));
  return {{"label", report.label},
          {"energy", number(report.energy)},
          {"hilbert_schmidt_ok", report.hilbert_schmidt_ok},
          {"lambdas", lambdas},
          {"exception_set", report.exception_set},
          {"indeterminate", report.indeterminate},
          {"admissible", report.admissible},
          {"normalized", report.normalized},
          {"nonnegative", report.nonnegative},
          {"min_value", number(report.min_value)},
          {"truncation", report.truncation},
          {"tolerance", report.tolerance},
          {"zero_floor", report.zero_floor},
          {"closed_form_degrees", report.closed_form_degrees},
          {"verdict_scope", "numerical: degrees 0.." + std::to_string(report.truncation) +
                                " at quadrature accuracy; not an analytic proof"}};
}

KernelFamily parse_kernel_spec(std::string_view text) {
  const std::string spec = trim(text);
  if (spec.empty()) throw ParameterError("empty kernel specification");
  if (spec.front() == '{') {
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(spec);
    } catch (const nlohmann::json::parse_error& e) {
      throw ParameterError(std::string("kernel JSON does not parse: ") + e.what());
    }
    return kernel_from_json(j);
  }
  const auto colon = spec.find(':');
  const KernelKind kind = kind_from_shorthand(trim(spec.substr(0, colon)));
  std::map<std::string, double> params;
  if (colon != std::string::npos) {
    std::string_view rest(spec);
    rest.remove_prefix(colon + 1);
    while (!rest.empty()) {
      const auto comma = rest.find(',');
      const std::string item = trim(rest.substr(0, comma));
      rest = comma == std::string_view::npos ? std::string_view{} : rest.substr(comma + 1);
      if (item.empty()) continue;
      const auto eq = item.find('=');
      if (eq == std::string::npos) throw ParameterError("kernel parameter '" + item + "' must be key=value");
      params[trim(item.substr(0, eq))] = parse_number(trim(item.substr(eq + 1)));
    }
  }
  return KernelFamily::from_params(kind, params);
}

}  // namespace sphrkhs
