#pragma once

#include <json.hpp>

#include "faberlab/curve.hpp"
#include "faberlab/laurent.hpp"
#include "faberlab/polynomial.hpp"
#include "faberlab/weighted.hpp"

namespace faberlab {

/// Complex numbers travel as [re, im] pairs.
nlohmann::json complex_to_json(cplx z);
cplx complex_from_json(const nlohmann::json& j);

nlohmann::json to_json(const LaurentSeries& s);
LaurentSeries series_from_json(const nlohmann::json& j);

nlohmann::json to_json(const Polynomial& p);
Polynomial polynomial_from_json(const nlohmann::json& j);

nlohmann::json to_json(const WeightPlan& plan);
WeightPlan weight_plan_from_json(const nlohmann::json& j);

/// Curve specs: {"kind":"circle","r":2}, {"kind":"ellipse","c":0.5},
/// {"kind":"deltoid"}, {"kind":"lune"}, and
/// {"kind":"laurent","b":1,"b0":[re,im],"coeffs":[[re,im],...],
///  "corners":[{"theta":t,"lambda":l},...]}. Unknown keys are rejected.
ExteriorMap curve_from_json(const nlohmann::json& spec);
nlohmann::json curve_to_json(const ExteriorMap& map);

}  // namespace faberlab
