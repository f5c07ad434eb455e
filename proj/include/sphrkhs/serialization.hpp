#pragma once

#include <string_view>

#include <json.hpp>

#include "sphrkhs/admissibility.hpp"
#include "sphrkhs/kernels.hpp"
#include "sphrkhs/rkhs_space.hpp"

namespace sphrkhs {

/// {"family": "VonMisesFisher", "params": {"kappa": 4}}
nlohmann::json to_json(const KernelFamily& kernel);
KernelFamily kernel_from_json(const nlohmann::json& j);

/// {"kernel": {...}, "points": [[theta, phi], ...], "coeffs": [[re, im], ...]}
nlohmann::json to_json(const PointExpansion& f);
PointExpansion expansion_from_json(const nlohmann::json& j);

/// {"label", "energy", "hilbert_schmidt_ok", "lambdas", "exception_set", "admissible",
///  "normalized", "nonnegative", "truncation", "tolerance", ...}
nlohmann::json to_json(const AdmissibilityReport& report);

/// Accepts either a JSON kernel object or the shorthand "name:key=value,key=value"
/// with names cui, lebedev, leggen, leggen-deriv, altgen, vmf (or the family tags).
KernelFamily parse_kernel_spec(std::string_view text);

}  // namespace sphrkhs
