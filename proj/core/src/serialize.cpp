#include "faberlab/serialize.hpp"

#include <set>

#include <fmt/format.h>

#include "faberlab/error.hpp"

namespace faberlab {

using nlohmann::json;

namespace {

void reject_unknown(const json& j, const std::set<std::string>& allowed, std::string_view what) {
  if (!j.is_object()) throw InvalidArgument(fmt::format("{} must be a JSON object", what));
  for (const auto& [key, _] : j.items()) {
    if (!allowed.count(key)) throw InvalidArgument(fmt::format("unknown field '{}' in {}", key, what));
  }
}

std::vector<cplx> complex_array(const json& j, std::string_view what) {
  if (!j.is_array()) throw InvalidArgument(fmt::format("{} must be an array of [re, im]", what));
  std::vector<cplx> out;
  out.reserve(j.size());
  for (const auto& e : j) out.push_back(complex_from_json(e));
  return out;
}

json complex_list(std::span<const cplx> v) {
  json a = json::array();
  for (const cplx& z : v) a.push_back(complex_to_json(z));
  return a;
}

double number(const json& j, std::string_view what) {
  if (!j.is_number()) throw InvalidArgument(fmt::format("{} must be a number", what));
  return j.get<double>();
}

}  // namespace

json complex_to_json(cplx z) { return json::array({z.real(), z.imag()}); }

cplx complex_from_json(const json& j) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number()) {
    throw InvalidArgument(fmt::format("expected [re, im], got {}", j.dump()));
  }
  return {j[0].get<double>(), j[1].get<double>()};
}

json to_json(const LaurentSeries& s) {
  return {{"kind", s.kind() == SeriesKind::MapSeries ? "map" : "unit"},
          {"b", s.b()},
          {"b0", complex_to_json(s.b0())},
          {"coeffs", complex_list(s.neg_coeffs())},
          {"tail_estimate", s.tail_estimate()}};
}

LaurentSeries series_from_json(const json& j) {
  reject_unknown(j, {"kind", "b", "b0", "coeffs", "tail_estimate"}, "Laurent series");
  const std::string kind = j.at("kind").get<std::string>();
  auto coeffs = complex_array(j.at("coeffs"), "coeffs");
  LaurentSeries s;
  if (kind == "map") {
    s = LaurentSeries::map_series(number(j.at("b"), "b"), complex_from_json(j.at("b0")),
                                  std::move(coeffs));
  } else if (kind == "unit") {
    s = LaurentSeries::unit(std::move(coeffs));
  } else {
    throw InvalidArgument(fmt::format("unknown series kind '{}'", kind));
  }
  if (j.contains("tail_estimate")) s.set_tail_estimate(number(j["tail_estimate"], "tail_estimate"));
  return s;
}

json to_json(const Polynomial& p) { return complex_list(p.coeffs()); }

Polynomial polynomial_from_json(const json& j) { return Polynomial(complex_array(j, "polynomial")); }

json to_json(const WeightPlan& plan) {
  return {{"m", plan.m},
          {"r_m", plan.r_m},
          {"delta_m", plan.delta_m},
          {"corner_thetas", plan.corner_thetas},
          {"a", complex_list(plan.a)},
          {"d_m", plan.d_m},
          {"sup_P_on_circle", plan.sup_P_on_circle},
          {"sup_g_minus_P", plan.sup_g_minus_P},
          {"max_window_g", plan.max_window_g},
          {"tail_bound", plan.tail_bound}};
}

WeightPlan weight_plan_from_json(const json& j) {
  reject_unknown(j,
                 {"m", "r_m", "delta_m", "corner_thetas", "a", "d_m", "sup_P_on_circle",
                  "sup_g_minus_P", "max_window_g", "tail_bound"},
                 "weight plan");
  WeightPlan plan;
  plan.m = j.at("m").get<int>();
  plan.r_m = number(j.at("r_m"), "r_m");
  plan.delta_m = number(j.at("delta_m"), "delta_m");
  plan.corner_thetas = j.at("corner_thetas").get<std::vector<double>>();
  for (double t : plan.corner_thetas) plan.corner_points.push_back(std::polar(1.0, t));
  plan.a = complex_array(j.at("a"), "a");
  plan.d_m = j.at("d_m").get<int>();
  if (plan.d_m != static_cast<int>(plan.a.size())) {
    throw InvalidArgument("weight plan d_m does not match the length of a");
  }
  plan.sup_P_on_circle = j.value("sup_P_on_circle", 0.0);
  plan.sup_g_minus_P = j.value("sup_g_minus_P", 0.0);
  plan.max_window_g = j.value("max_window_g", 0.0);
  plan.tail_bound = j.value("tail_bound", 0.0);
  return plan;
}

ExteriorMap curve_from_json(const json& spec) {
  if (!spec.is_object() || !spec.contains("kind") || !spec["kind"].is_string()) {
    throw InvalidArgument("curve spec needs a string field 'kind'");
  }
  const std::string kind = spec["kind"].get<std::string>();
  if (kind == "circle") {
    reject_unknown(spec, {"kind", "r"}, "circle spec");
    return ExteriorMap::circle(spec.contains("r") ? number(spec["r"], "r") : 1.0);
  }
  if (kind == "ellipse") {
    reject_unknown(spec, {"kind", "c"}, "ellipse spec");
    if (!spec.contains("c")) throw InvalidArgument("ellipse spec needs 'c'");
    return ExteriorMap::ellipse(number(spec["c"], "c"));
  }
  if (kind == "deltoid") {
    reject_unknown(spec, {"kind"}, "deltoid spec");
    return ExteriorMap::deltoid();
  }
  if (kind == "lune") {
    reject_unknown(spec, {"kind"}, "lune spec");
    return ExteriorMap::lune();
  }
  if (kind == "laurent") {
    reject_unknown(spec, {"kind", "b", "b0", "coeffs", "corners"}, "laurent spec");
    const double b = spec.contains("b") ? number(spec["b"], "b") : 1.0;
    const cplx b0 = spec.contains("b0") ? complex_from_json(spec["b0"]) : cplx{};
    auto coeffs = spec.contains("coeffs") ? complex_array(spec["coeffs"], "coeffs")
                                          : std::vector<cplx>{};
    std::vector<CornerSpec> corners;
    if (spec.contains("corners")) {
      if (!spec["corners"].is_array()) throw InvalidArgument("'corners' must be an array");
      for (const auto& c : spec["corners"]) {
        reject_unknown(c, {"theta", "lambda"}, "corner");
        corners.push_back({number(c.at("theta"), "theta"), number(c.at("lambda"), "lambda")});
      }
    }
    return ExteriorMap::laurent(b, b0, std::move(coeffs), std::move(corners));
  }
  throw InvalidArgument(fmt::format("unknown curve kind '{}'", kind));
}

json curve_to_json(const ExteriorMap& map) {
  switch (map.kind()) {
    case CurveKind::Circle: return {{"kind", "circle"}, {"r", map.parameter()}};
    case CurveKind::Ellipse: return {{"kind", "ellipse"}, {"c", map.parameter()}};
    case CurveKind::Deltoid: return {{"kind", "deltoid"}};
    case CurveKind::Lune: return {{"kind", "lune"}};
    case CurveKind::LaurentPoly: {
      json corners = json::array();
      for (const auto& c : map.corners()) corners.push_back({{"theta", c.theta}, {"lambda", c.lambda}});
      return {{"kind", "laurent"},
              {"b", map.capacity()},
              {"b0", complex_to_json(map.laurent_b0())},
              {"coeffs", complex_list(map.laurent_coeffs())},
              {"corners", corners}};
    }
  }
  throw Error("unknown curve kind");
}

}  // namespace faberlab
