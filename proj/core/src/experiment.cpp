#include "faberlab/experiment.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <ctime>
#include <fstream>
#include <set>
#include <sstream>

#include <fmt/format.h>
#include <openssl/evp.h>

#include "faberlab/error.hpp"
#include "faberlab/faber.hpp"
#include "faberlab/laurent.hpp"
#include "faberlab/serialize.hpp"
#include "faberlab/sweep.hpp"
#include "faberlab/variation.hpp"
#include "faberlab/weighted.hpp"

namespace faberlab {

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

constexpr std::pair<Task, std::string_view> kTaskNames[] = {
    {Task::FaberNorms, "faber_norms"},
    {Task::WeightedNorms, "weighted_norms"},
    {Task::ChebyshevWidom, "chebyshev_widom"},
    {Task::PointwiseProfile, "pointwise_profile"},
    {Task::VariationChecks, "variation_checks"},
    {Task::Figure1, "figure1"},
    {Task::Figure2, "figure2"},
};

void reject_unknown(const json& j, const std::set<std::string>& allowed, std::string_view what) {
  if (!j.is_object()) throw InvalidArgument(fmt::format("{} must be a JSON object", what));
  for (const auto& [key, _] : j.items()) {
    if (!allowed.count(key)) throw InvalidArgument(fmt::format("unknown field '{}' in {}", key, what));
  }
}

int get_int(const json& j, std::string_view what) {
  if (!j.is_number_integer()) throw InvalidArgument(fmt::format("{} must be an integer", what));
  return j.get<int>();
}

double get_number(const json& j, std::string_view what) {
  if (!j.is_number()) throw InvalidArgument(fmt::format("{} must be a number", what));
  return j.get<double>();
}

bool get_bool(const json& j, std::string_view what) {
  if (!j.is_boolean()) throw InvalidArgument(fmt::format("{} must be a boolean", what));
  return j.get<bool>();
}

std::vector<int> parse_n_list(const json& j) {
  std::vector<int> out;
  if (j.is_array()) {
    for (const auto& e : j) out.push_back(get_int(e, "n_list entry"));
  } else if (j.is_object()) {
    reject_unknown(j, {"from", "to", "step"}, "n_list range");
    const int from = get_int(j.at("from"), "n_list.from");
    const int to = get_int(j.at("to"), "n_list.to");
    const int step = j.contains("step") ? get_int(j["step"], "n_list.step") : 1;
    if (step < 1) throw InvalidArgument("n_list.step must be >= 1");
    for (int n = from; n <= to; n += step) out.push_back(n);
  } else {
    throw InvalidArgument("n_list must be an array or a {from, to, step} range");
  }
  if (out.empty()) throw InvalidArgument("n_list is empty");
  for (std::size_t i = 0; i < out.size(); ++i) {
    if (out[i] < 1) throw InvalidArgument("degrees in n_list must be >= 1");
    if (i && out[i] <= out[i - 1]) throw InvalidArgument("n_list must be strictly ascending");
  }
  return out;
}

std::string sha256_hex(std::string_view data) {
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(data.data(), data.size(), md, &len, EVP_sha256(), nullptr) != 1) {
    throw Error("SHA-256 digest failed");
  }
  std::string hex;
  for (unsigned int i = 0; i < len; ++i) hex += fmt::format("{:02x}", md[i]);
  return hex;
}

std::string utc_timestamp() {
  const std::time_t now = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

json read_json_file(const fs::path& p) {
  std::ifstream f(p);
  if (!f) throw Error(fmt::format("cannot open '{}'", p.string()));
  try {
    return json::parse(f);
  } catch (const json::exception& e) {
    throw InvalidArgument(fmt::format("'{}' is not valid JSON: {}", p.string(), e.what()));
  }
}

void write_text(const fs::path& p, const std::string& text) {
  std::ofstream f(p, std::ios::binary);
  if (!f) throw Error(fmt::format("cannot open '{}' for writing", p.string()));
  f << text;
  if (!f) throw Error(fmt::format("write to '{}' failed", p.string()));
}

double nearest_corner_distance(const ExteriorMap& map, double theta) {
  double best = std::nan("");
  for (const auto& c : map.corners()) {
    double d = std::abs(wrap_angle(theta - c.theta));
    d = std::min(d, kTwoPi - d);
    if (std::isnan(best) || d < best) best = d;
  }
  return best;
}

BoundaryMesh mesh_for(const ExperimentConfig& cfg, const ExteriorMap& map, int n_max) {
  return boundary_mesh(map, std::max(cfg.base_count, 16 * (n_max + 1)), cfg.corner_refine_levels);
}

// Ten parameters spread over the arcs at distance >= 0.3 from every corner.
std::vector<double> mid_arc_points(const ExteriorMap& map, int count = 10, double clearance = 0.3) {
  std::vector<double> out;
  const auto corners = map.corners();
  if (corners.empty()) {
    for (int j = 0; j < count; ++j) out.push_back(kTwoPi * (j + 0.5) / count);
    return out;
  }
  std::vector<std::pair<double, double>> arcs;
  double total = 0.0;
  for (std::size_t k = 0; k < corners.size(); ++k) {
    const double a = corners[k].theta + clearance;
    const double b = (k + 1 < corners.size() ? corners[k + 1].theta : corners[0].theta + kTwoPi) -
                     clearance;
    if (b > a) {
      arcs.emplace_back(a, b);
      total += b - a;
    }
  }
  if (arcs.empty()) throw InvalidArgument("no arc stays 0.3 away from the corners");
  for (int j = 0; j < count; ++j) {
    double s = total * (j + 0.5) / count;
    for (const auto& [a, b] : arcs) {
      if (s <= b - a) {
        out.push_back(wrap_angle(a + s));
        break;
      }
      s -= b - a;
    }
  }
  return out;
}

ResultTable task_faber_norms(const ExperimentConfig& cfg, const ExteriorMap& map) {
  const auto mesh = mesh_for(cfg, map, cfg.n_list.back());
  const auto sweep = faber_norm_sweep(map, cfg.n_list, mesh, nullptr, cfg.norm_tol);
  ResultTable t({"n", "faber_norm", "argmax_theta", "corner_distance", "converged"});
  for (std::size_t i = 0; i < sweep.n.size(); ++i) {
    const auto& e = sweep.faber[i];
    t.add_row({static_cast<std::int64_t>(sweep.n[i]), e.value, e.argmax_theta,
               nearest_corner_distance(map, e.argmax_theta), e.converged});
  }
  t.metadata["mesh_points"] = mesh.size();
  t.metadata["max_Lambda"] = map.max_Lambda();
  return t;
}

ResultTable task_weighted_norms(const ExperimentConfig& cfg, const ExteriorMap& map) {
  if (!cfg.m) throw InvalidArgument("weighted_norms needs 'm'");
  const auto plan = make_weight_plan(map, *cfg.m);
  const auto mesh = mesh_for(cfg, map, cfg.n_list.back());
  const auto sweep = faber_norm_sweep(map, cfg.n_list, mesh, &plan, cfg.norm_tol);
  ResultTable t({"n", "faber_norm", "weighted_norm", "ratio", "status"});
  for (std::size_t i = 0; i < sweep.n.size(); ++i) {
    const double f = sweep.faber[i].value;
    if (sweep.weighted[i]) {
      const double q = sweep.weighted[i]->value;
      t.add_row({static_cast<std::int64_t>(sweep.n[i]), f, q, q / f, std::string("ok")});
    } else {
      t.add_row({static_cast<std::int64_t>(sweep.n[i]), f, Cell{}, Cell{}, std::string("n<=d_m")});
    }
  }
  t.metadata["weight_plan"] = to_json(plan);
  t.metadata["weighted_bound"] = std::pow(2.0, static_cast<double>(plan.corner_count()) / plan.m) +
                                 2.0 / plan.m;
  t.metadata["mesh_points"] = mesh.size();
  return t;
}

ResultTable task_chebyshev(const ExperimentConfig& cfg, const ExteriorMap& map) {
  WidomTableOptions opts;
  opts.base_count = cfg.base_count;
  opts.corner_refine_levels = cfg.corner_refine_levels;
  opts.solver = cfg.solver;
  opts.norm_tol = cfg.norm_tol;
  return widom_table(map, cfg.n_list, cfg.m, opts);
}

ResultTable task_pointwise(const ExperimentConfig& cfg, const ExteriorMap& map) {
  const int n_max = cfg.n_list.back();
  const auto faber = FaberEvaluator::for_map(map, n_max);
  struct Point {
    std::string kind;
    double theta;
    double target;
  };
  std::vector<Point> points;
  for (const auto& c : map.corners()) points.push_back({"corner", c.theta, c.lambda});
  for (double t : mid_arc_points(map)) points.push_back({"mid", t, 1.0});

  ResultTable t({"n", "kind", "theta", "modulus", "target", "distance"});
  std::vector<std::vector<cplx>> values;
  for (const auto& p : points) values.push_back(faber.evaluate(map.boundary_point(p.theta), n_max));
  for (int n : cfg.n_list) {
    for (std::size_t i = 0; i < points.size(); ++i) {
      const double mod = std::abs(values[i][n]);
      t.add_row({static_cast<std::int64_t>(n), points[i].kind, points[i].theta, mod,
                 points[i].target, std::abs(mod - points[i].target)});
    }
  }
  return t;
}

ResultTable task_variation(const ExperimentConfig& cfg, const ExteriorMap& map) {
  LemmaReport report = lemma_checks(map);
  report.rows.push_back(straight_segment_check());

  std::vector<double> thetas;
  for (int j = 0; j < 32; ++j) thetas.push_back(kTwoPi * (j + 0.5) / 32);
  double prev = std::numeric_limits<double>::infinity();
  for (int n : cfg.n_list) {
    const double sup = riemann_lebesgue_sup(map, 0.3, n, thetas);
    report.rows.push_back({"riemann_lebesgue_tail", 0.3, static_cast<double>(n), sup, prev,
                           "< previous", sup < prev});
    prev = sup;
  }

  // the basepoint alpha of the representation is arbitrary
  const double theta = mid_arc_points(map, 1).front();
  const int n = cfg.n_list.front();
  QuadOptions a1;
  QuadOptions a2;
  a2.alpha = theta - 0.5;
  const cplx v1 = pommerenke_faber_value(map, theta, n, a1).value;
  const cplx v2 = pommerenke_faber_value(map, theta, n, a2).value;
  report.rows.push_back({"alpha_insensitivity", theta, static_cast<double>(n), std::abs(v1 - v2),
                         1e-8, "|difference| <= bound", std::abs(v1 - v2) <= 1e-8});
  return report.to_table();
}

ResultTable task_figure1(const ExperimentConfig& cfg, const ExteriorMap& map) {
  const int n = cfg.n_list.back();
  const int P = cfg.profile_points;
  const auto faber = FaberEvaluator::for_map(map, n);
  ResultTable t({"t", "abs_F"});
  std::vector<cplx> buf(n + 1);
  double vmax = 0.0;
  double tmax = 0.0;
  for (int j = 0; j < P; ++j) {
    const double tt = static_cast<double>(j) / P;
    faber.evaluate(map.boundary_point(kTwoPi * tt), buf);
    const double v = std::abs(buf[n]);
    if (v > vmax) {
      vmax = v;
      tmax = tt;
    }
    t.add_row({tt, v});
  }
  // lobe structure: the peak near each corner against the peak far from all corners
  json lobes = json::array();
  double away = 0.0;
  for (const auto& c : map.corners()) {
    double peak = 0.0;
    for (std::size_t r = 0; r < t.row_count(); ++r) {
      if (nearest_corner_distance(map, kTwoPi * t.number(r, "t")) > 0.2) continue;
      double d = std::abs(wrap_angle(kTwoPi * t.number(r, "t") - c.theta));
      if (std::min(d, kTwoPi - d) <= 0.2) peak = std::max(peak, t.number(r, "abs_F"));
    }
    lobes.push_back({{"theta", c.theta}, {"max_abs_F", peak}});
  }
  for (std::size_t r = 0; r < t.row_count(); ++r) {
    const double d = nearest_corner_distance(map, kTwoPi * t.number(r, "t"));
    if (std::isnan(d) || d >= 0.5) away = std::max(away, t.number(r, "abs_F"));
  }
  t.metadata["n"] = n;
  t.metadata["max_abs_F"] = vmax;
  t.metadata["argmax_t"] = tmax;
  t.metadata["corner_lobes"] = lobes;
  t.metadata["max_abs_F_away_from_corners"] = away;
  return t;
}

ResultTable task_figure2(const ExperimentConfig& cfg, const ExteriorMap& map) {
  const auto corners = map.corners();
  if (corners.size() < 2) throw InvalidArgument("figure2 needs a curve with at least two corners");
  const int n = cfg.n_list.back();
  const int P = cfg.profile_points;
  if (P < 2) throw InvalidArgument("profile_points must be >= 2");
  const double a = corners[0].theta;
  const double b = corners[1].theta;

  const auto cheb = chebyshev_monic(map, n, mesh_for(cfg, map, n), cfg.solver);
  const auto faber = FaberEvaluator::for_map(map, n);
  const double scale = std::exp(n * std::log(map.capacity()));

  std::vector<double> thetas(P);
  for (int j = 0; j < P; ++j) thetas[j] = a + (b - a) * j / (P - 1);
  thetas.back() = b;
  const auto s = cumulative_arc_length(map, thetas);
  std::vector<double> fine(2 * P - 1);
  for (int j = 0; j < 2 * P - 1; ++j) fine[j] = a + (b - a) * j / (2 * P - 2);
  fine.back() = b;
  const double length_doubled = cumulative_arc_length(map, fine).back();

  ResultTable t({"s", "theta", "abs_T", "abs_F"});
  std::vector<cplx> buf(n + 1);
  double maxT = 0.0;
  double maxF = 0.0;
  for (int j = 0; j < P; ++j) {
    faber.evaluate(map.boundary_point(thetas[j]), buf);
    cplx T = buf[n];
    for (int k = 0; k < n; ++k) T += cheb.faber_coeffs[k] * buf[k];
    const double absT = std::abs(T) * scale;
    const double absF = std::abs(buf[n]) * scale;
    maxT = std::max(maxT, absT);
    maxF = std::max(maxF, absF);
    t.add_row({s[j], thetas[j], absT, absF});
  }
  t.metadata["n"] = n;
  t.metadata["arc_length"] = s.back();
  t.metadata["arc_length_doubled"] = length_doubled;
  t.metadata["max_abs_T"] = maxT;
  t.metadata["max_abs_F"] = maxF;
  t.metadata["widom"] = cheb.widom;
  t.metadata["chebyshev_converged"] = cheb.converged;
  return t;
}

json curve_summary(const ExteriorMap& map) {
  json corners = json::array();
  for (const auto& c : map.corners()) {
    corners.push_back({{"theta", c.theta},
                       {"z", complex_to_json(c.z)},
                       {"lambda", c.lambda},
                       {"Lambda", c.Lambda}});
  }
  return {{"kind", std::string(to_string(map.kind()))},
          {"capacity", map.capacity()},
          {"corners", corners}};
}

}  // namespace

std::string_view to_string(Task task) {
  for (const auto& [t, name] : kTaskNames) {
    if (t == task) return name;
  }
  return "unknown";
}

Task task_from_string(std::string_view name) {
  for (const auto& [t, n] : kTaskNames) {
    if (n == name) return t;
  }
  throw InvalidArgument(fmt::format("unknown task '{}'", name));
}

ExperimentConfig ExperimentConfig::from_json(const json& j, const fs::path& base_dir) {
  reject_unknown(j,
                 {"curve", "task", "n_list", "m", "mesh", "solver", "norm_tol", "profile_points",
                  "seed", "output", "cache"},
                 "experiment config");
  ExperimentConfig cfg;
  if (!j.contains("curve")) throw InvalidArgument("config needs 'curve'");
  if (!j.contains("task")) throw InvalidArgument("config needs 'task'");
  if (!j.contains("n_list")) throw InvalidArgument("config needs 'n_list'");
  cfg.curve = j["curve"];
  curve_to_json(curve_from_json(cfg.curve));  // validates the curve spec
  if (!j["task"].is_string()) throw InvalidArgument("'task' must be a string");
  cfg.task = task_from_string(j["task"].get<std::string>());
  cfg.n_list = parse_n_list(j["n_list"]);
  if (j.contains("m") && !j["m"].is_null()) {
    cfg.m = get_int(j["m"], "m");
    if (*cfg.m < 1) throw InvalidArgument("m must be >= 1");
  }
  if (j.contains("mesh")) {
    const auto& mj = j["mesh"];
    reject_unknown(mj, {"base_count", "corner_refine_levels"}, "mesh");
    if (mj.contains("base_count")) cfg.base_count = get_int(mj["base_count"], "mesh.base_count");
    if (mj.contains("corner_refine_levels")) {
      cfg.corner_refine_levels = get_int(mj["corner_refine_levels"], "mesh.corner_refine_levels");
    }
    if (cfg.base_count < 64) throw InvalidArgument("mesh.base_count must be >= 64");
    if (cfg.corner_refine_levels < 0) throw InvalidArgument("mesh.corner_refine_levels must be >= 0");
  }
  if (j.contains("solver")) {
    const auto& sj = j["solver"];
    reject_unknown(sj, {"tol", "max_iter", "gamma", "polish", "exchange_pass"}, "solver");
    if (sj.contains("tol")) cfg.solver.tol = get_number(sj["tol"], "solver.tol");
    if (sj.contains("max_iter")) cfg.solver.max_iter = get_int(sj["max_iter"], "solver.max_iter");
    if (sj.contains("gamma")) cfg.solver.gamma = get_number(sj["gamma"], "solver.gamma");
    if (sj.contains("polish")) cfg.solver.polish = get_bool(sj["polish"], "solver.polish");
    if (sj.contains("exchange_pass")) {
      cfg.solver.exchange_pass = get_bool(sj["exchange_pass"], "solver.exchange_pass");
    }
    if (!(cfg.solver.tol > 0.0)) throw InvalidArgument("solver.tol must be positive");
    if (cfg.solver.max_iter < 1) throw InvalidArgument("solver.max_iter must be >= 1");
  }
  if (j.contains("norm_tol")) cfg.norm_tol = get_number(j["norm_tol"], "norm_tol");
  if (!(cfg.norm_tol > 0.0)) throw InvalidArgument("norm_tol must be positive");
  if (j.contains("profile_points")) cfg.profile_points = get_int(j["profile_points"], "profile_points");
  if (cfg.profile_points < 2) throw InvalidArgument("profile_points must be >= 2");
  if (j.contains("seed")) cfg.seed = get_int(j["seed"], "seed");
  if (j.contains("output")) {
    if (!j["output"].is_string()) throw InvalidArgument("'output' must be a string");
    cfg.output = j["output"].get<std::string>();
  }
  if (cfg.output.is_relative() && !base_dir.empty()) cfg.output = base_dir / cfg.output;
  if (j.contains("cache")) cfg.cache = get_bool(j["cache"], "cache");
  return cfg;
}

ExperimentConfig ExperimentConfig::load(const fs::path& file) {
  return from_json(read_json_file(file), file.parent_path());
}

json ExperimentConfig::to_json(bool with_location) const {
  json j = {
      {"curve", curve},
      {"task", std::string(to_string(task))},
      {"n_list", n_list},
      {"m", m ? json(*m) : json(nullptr)},
      {"mesh", {{"base_count", base_count}, {"corner_refine_levels", corner_refine_levels}}},
      {"solver",
       {{"tol", solver.tol},
        {"max_iter", solver.max_iter},
        {"gamma", solver.gamma},
        {"polish", solver.polish},
        {"exchange_pass", solver.exchange_pass}}},
      {"norm_tol", norm_tol},
      {"profile_points", profile_points},
      {"seed", seed},
  };
  if (with_location) {
    j["output"] = output.string();
    j["cache"] = cache;
  }
  return j;
}

ExteriorMap ExperimentConfig::make_curve() const { return curve_from_json(curve); }

std::string cache_key(const ExperimentConfig& config) {
  json payload = config.to_json(false);
  payload["software_version"] = FABERLAB_VERSION;
  return sha256_hex(payload.dump());
}

ResultTable compute_experiment(const ExperimentConfig& cfg) {
  const auto map = cfg.make_curve();
  switch (cfg.task) {
    case Task::FaberNorms: return task_faber_norms(cfg, map);
    case Task::WeightedNorms: return task_weighted_norms(cfg, map);
    case Task::ChebyshevWidom: return task_chebyshev(cfg, map);
    case Task::PointwiseProfile: return task_pointwise(cfg, map);
    case Task::VariationChecks: return task_variation(cfg, map);
    case Task::Figure1: return task_figure1(cfg, map);
    case Task::Figure2: return task_figure2(cfg, map);
  }
  throw Error("unknown task");
}

ExperimentRun run_experiment(const ExperimentConfig& cfg) {
  const std::string key = cache_key(cfg);
  const fs::path out = cfg.output;
  const fs::path cache_dir = out / ".cache" / key;
  std::error_code ec;
  fs::create_directories(out, ec);
  if (ec) throw Error(fmt::format("cannot create output directory '{}': {}", out.string(), ec.message()));

  ExperimentRun run;
  if (cfg.cache && fs::exists(cache_dir / "results.csv") && fs::exists(cache_dir / "meta.json")) {
    run.table = ResultTable::read_csv(cache_dir / "results.csv");
    run.meta = read_json_file(cache_dir / "meta.json");
    run.table.metadata = run.meta.value("details", json::object());
    run.from_cache = true;
  } else {
    const auto start = std::chrono::steady_clock::now();
    run.table = compute_experiment(cfg);
    const double wall =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    run.meta = {{"config", cfg.to_json(false)},
                {"config_hash", key},
                {"software_version", FABERLAB_VERSION},
                {"task", std::string(to_string(cfg.task))},
                {"curve", curve_summary(cfg.make_curve())},
                {"rows", run.table.row_count()},
                {"wall_time_seconds", wall},
                {"timestamp", utc_timestamp()},
                {"details", run.table.metadata}};
    if (cfg.cache) {
      fs::create_directories(cache_dir, ec);
      if (ec) throw Error(fmt::format("cannot create cache '{}': {}", cache_dir.string(), ec.message()));
      run.table.write_csv(cache_dir / "results.csv");
      write_text(cache_dir / "meta.json", run.meta.dump(2) + "\n");
    }
  }
  json meta = run.meta;
  meta["from_cache"] = run.from_cache;
  run.table.write_csv(out / "results.csv");
  write_text(out / "meta.json", meta.dump(2) + "\n");
  run.meta = std::move(meta);
  return run;
}

std::vector<Assertion> verify_experiment(const ExperimentConfig& cfg, const ResultTable& table) {
  std::vector<Assertion> out;
  auto check = [&](std::string name, bool pass, std::string detail) {
    out.push_back({std::move(name), pass, std::move(detail)});
  };
  const auto map = cfg.make_curve();

  {
    const double big = 1e6;
    const double err = std::abs(map.psi(cplx(big, 0.0)) / big - map.capacity());
    check("capacity_limit", err < 1e-10, fmt::format("|psi(w)/w - cap| = {:.3e} at |w| = 1e6", err));
  }
  check("simple_near_circle", is_simple_on_circle(map, 1.0 + 1e-3, 4096),
        "psi on |w| = 1.001, 4096 points");
  {
    bool ok = true;
    double worst = 0.0;
    const auto corners = map.corners();
    for (std::size_t k = 0; k < corners.size(); ++k) {
      if (k && !(corners[k].theta > corners[k - 1].theta)) ok = false;
      worst = std::max(worst, std::abs(corners[k].z - map.boundary_point(corners[k].theta)));
      if (corners[k].Lambda != std::max(corners[k].lambda, 2.0 - corners[k].lambda)) ok = false;
    }
    check("corner_metadata", ok && worst < 1e-12, fmt::format("max |z_k - psi(w_k)| = {:.3e}", worst));
    double angle_err = 0.0;
    for (const auto& c : corners) {
      angle_err = std::max(angle_err, kPi * std::abs(measured_lambda(map, c.theta) - c.lambda));
    }
    check("corner_angles", angle_err < 1e-3, fmt::format("max angle error {:.3e} rad", angle_err));
  }
  {
    const int N = map.has_corners() ? 2048 : 256;
    const auto series = laurent_coeffs(map, N);
    double err = 0.0;
    for (int i = 0; i < 2048; ++i) {
      const cplx w = std::polar(1.01, kTwoPi * i / 2048);
      err = std::max(err, std::abs(map.psi(w) - series(w)));
    }
    check("laurent_consistency", err < 1e-8,
          fmt::format("max |psi - series_{}| = {:.3e} on |w| = 1.01", N, err));
  }

  const std::size_t R = table.row_count();
  switch (cfg.task) {
    case Task::FaberNorms: {
      double lo = std::numeric_limits<double>::infinity();
      for (std::size_t r = 0; r < R; ++r) lo = std::min(lo, table.number(r, "faber_norm"));
      check("faber_norm_at_least_one", lo >= 1.0 - 1e-9, fmt::format("min ||F_n|| = {:.12g}", lo));
      if (map.kind() == CurveKind::Ellipse) {
        double err = 0.0;
        for (std::size_t r = 0; r < R; ++r) {
          const double n = table.number(r, "n");
          err = std::max(err, std::abs(table.number(r, "faber_norm") -
                                       (1.0 + std::pow(map.parameter(), n))));
        }
        check("ellipse_closed_form", err < 1e-6, fmt::format("max |norm - (1 + c^n)| = {:.3e}", err));
      }
      if (map.has_corners()) {
        double worst = 0.0;
        bool any = false;
        for (std::size_t r = 0; r < R; ++r) {
          if (table.number(r, "n") < 300) continue;
          any = true;
          worst = std::max(worst, table.number(r, "faber_norm"));
        }
        if (any) {
          check("faber_norm_ceiling", worst <= map.max_Lambda() + 0.05,
                fmt::format("max ||F_n|| over n >= 300 = {:.10g}, max Lambda = {}", worst,
                            map.max_Lambda()));
        }
      }
      break;
    }
    case Task::WeightedNorms: {
      const double bound = table.metadata.value("weighted_bound", 0.0) + 0.1;
      double worst = 0.0;
      bool below = true;
      bool any = false;
      for (std::size_t r = 0; r < R; ++r) {
        if (table.number(r, "n") < 300 || std::isnan(table.number(r, "weighted_norm"))) continue;
        any = true;
        worst = std::max(worst, table.number(r, "weighted_norm"));
        below = below && table.number(r, "weighted_norm") < table.number(r, "faber_norm");
      }
      if (any) {
        check("weighted_norm_bound", worst <= bound,
              fmt::format("max ||Q_n,m|| over n >= 300 = {:.10g} <= {:.6g}", worst, bound));
        check("weighted_below_faber", below, "||Q_n,m|| < ||F_n|| for n >= 300");
      }
      break;
    }
    case Task::ChebyshevWidom: {
      bool szego = true;
      bool sandwich = true;
      bool conv = true;
      double circle_err = 0.0;
      for (std::size_t r = 0; r < R; ++r) {
        const double w = table.number(r, "widom");
        szego = szego && w >= 1.0 - 1e-6;
        sandwich = sandwich && table.flag(r, "sandwich_ok");
        conv = conv && table.flag(r, "converged");
        circle_err = std::max(circle_err, std::abs(w - 1.0));
      }
      check("szego_lower_bound", szego, "W_n >= 1 - 1e-6");
      check("widom_sandwich", sandwich, "1 - 1e-6 <= W_n <= min(||F_n||, ||Q_n,m||) + 1e-6");
      check("solver_converged", conv, "equioscillation spread below tolerance");
      if (map.kind() == CurveKind::Circle) {
        check("circle_widom_equals_one", circle_err < 1e-6, fmt::format("max |W_n - 1| = {:.3e}", circle_err));
      }
      break;
    }
    case Task::PointwiseProfile: {
      const double n_last = cfg.n_list.back();
      bool corner_ok = true;
      bool mid_ok = true;
      for (std::size_t r = 0; r < R; ++r) {
        if (table.number(r, "n") != n_last) continue;
        const auto kind = std::get<std::string>(table.at(r, "kind"));
        const double mod = table.number(r, "modulus");
        const double target = table.number(r, "target");
        if (kind == "corner") {
          corner_ok = corner_ok && mod >= target - 0.2 && mod <= target + 0.1;
        } else {
          mid_ok = mid_ok && table.number(r, "distance") < 0.1;
        }
      }
      check("corner_limits", corner_ok, "|F_n| within [lambda - 0.2, lambda + 0.1] at the last n");
      check("mid_arc_limits", mid_ok, "||F_n| - 1| < 0.1 at the last n");
      break;
    }
    case Task::VariationChecks: {
      for (std::size_t r = 0; r < R; ++r) {
        if (!table.flag(r, "pass")) {
          check("lemma_" + std::get<std::string>(table.at(r, "check")), false,
                fmt::format("theta = {:.6g}, param = {:.6g}, lhs = {:.10g}, bound = {:.10g}",
                            table.number(r, "theta"), table.number(r, "param"),
                            table.number(r, "lhs"), table.number(r, "bound")));
        }
      }
      check("variation_rows", R > 0, fmt::format("{} rows checked", R));
      break;
    }
    case Task::Figure1: {
      const double vmax = table.metadata.value("max_abs_F", 0.0);
      check("figure1_max_range", vmax > 1.0 && vmax < map.max_Lambda() + 0.05,
            fmt::format("max |F_n| = {:.10g}", vmax));
      const double away = table.metadata.value("max_abs_F_away_from_corners", 0.0);
      bool lobes = map.has_corners();
      for (const auto& l : table.metadata.value("corner_lobes", json::array())) {
        lobes = lobes && l.value("max_abs_F", 0.0) > away;
      }
      if (map.has_corners()) {
        check("figure1_corner_lobes", lobes,
              fmt::format("every corner lobe exceeds the peak away from corners ({:.10g})", away));
      }
      break;
    }
    case Task::Figure2: {
      const double mt = table.metadata.value("max_abs_T", 0.0);
      const double mf = table.metadata.value("max_abs_F", 0.0);
      check("figure2_faber_above_chebyshev", mf > mt,
            fmt::format("max |F_n| = {:.10g}, max |T_n| = {:.10g}", mf, mt));
      const double l1 = table.metadata.value("arc_length", 0.0);
      const double l2 = table.metadata.value("arc_length_doubled", 0.0);
      check("figure2_arc_length_stable", std::abs(l1 - l2) < 1e-6,
            fmt::format("arc length {:.12g} vs {:.12g}", l1, l2));
      break;
    }
  }
  return out;
}

}  // namespace faberlab
