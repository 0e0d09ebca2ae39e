#include <chrono>
#include <cmath>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <sstream>

#include "dchaos/errors.hpp"
#include "dchaos/scenario.hpp"
#include "json_read.hpp"

namespace dchaos {
namespace {

using namespace jsonread;

const std::vector<std::string> kConventions = {
    "upper densities are finite-horizon estimates: the maximum of the density profile over the final "
    "tail_window fraction of the horizon; no report claims density 1",
    "the continuous and discrete upper densities are treated as one functional on their time axes",
    "the unbounded condition is read as p_m(orbit) -> infinity and tested against every configured level M",
    "fractional orbits on eigenvectors are E_zeta(lambda t^zeta) times the regularizer multiplier",
};

struct TaskOutcome {
  json body = json::object();
  std::string status = "info";  // pass | fail | inconclusive | info
};

struct Context {
  const ScenarioConfig& config;
  const RunOptions& options;
  std::map<std::string, std::string>& csv;
};

std::string level_suffix(double level) {
  std::string s = format_number(level);
  for (char& ch : s) {
    if (ch == '.' || ch == '+' || ch == '-') ch = '_';
  }
  return s;
}

std::vector<FamilySpec> task_families(const Context& ctx, const json& task, const std::string& path) {
  if (!task.contains("families")) return ctx.config.families;
  std::vector<FamilySpec> out;
  const std::string p = at(path, "families");
  for (std::size_t i = 0; i < array(task["families"], p).size(); ++i) {
    out.push_back(ctx.config.family(text(task["families"][i], at(p, i)), at(p, i)));
  }
  if (out.empty()) schema(p, "needs at least one family");
  return out;
}

const FamilySpec& task_family(const Context& ctx, const json& task, const std::string& path) {
  return ctx.config.family(text(require(task, "family", path), at(path, "family")), at(path, "family"));
}

const VectorDef& task_vector(const Context& ctx, const json& task, const std::string& key, const std::string& path) {
  return ctx.config.vector(text(require(task, key, path), at(path, key)), at(path, key));
}

const SpectralVector& spectral(const VectorDef& v, const std::string& path) {
  const auto* s = std::get_if<SpectralVector>(&v.value);
  if (s == nullptr) schema(path, "must name a spectral vector");
  return *s;
}

DetectionParams task_detection(const Context& ctx, const json& task, const std::string& path) {
  DetectionParams p = ctx.config.detection;
  if (task.contains("detection")) p = detection_params(task["detection"], at(path, "detection"), p);
  p.threads = ctx.options.threads;
  return p;
}

std::vector<double> speeds_of(const std::vector<FamilySpec>& families) {
  std::vector<double> out;
  for (const auto& f : families) {
    if (f.kind == FamilyKind::Translation || f.kind == FamilyKind::Cosine) out.push_back(std::abs(f.speed));
  }
  return out;
}

SamplePlan task_plan(const Context& ctx, const json& task, const std::string& path,
                     const std::vector<FamilySpec>& families) {
  const bool own = task.contains("plan");
  const json& p = own ? task["plan"] : ctx.config.plan;
  const std::string where = own ? at(path, "plan") : "plan";
  if (!p.is_object()) schema(where, "a sample plan is required");
  const std::string kind = text_or(p, "kind", "log", where);

  const BlockFunction* blocks = nullptr;
  if (p.contains("events_from")) {
    const VectorDef& v = ctx.config.vector(text(p["events_from"], at(where, "events_from")), at(where, "events_from"));
    blocks = std::get_if<BlockFunction>(&v.value);
    if (blocks == nullptr) schema(at(where, "events_from"), "must name a block vector");
  }
  double horizon = 0.0;
  const json& h = require(p, "horizon", where);
  if (h.is_string() && h.get<std::string>() == "last_block_end") {
    if (blocks == nullptr || blocks->empty()) schema(at(where, "horizon"), "last_block_end needs events_from");
    horizon = blocks->blocks().back().end;
  } else {
    horizon = number(h, at(where, "horizon"));
  }
  if (ctx.options.horizon) horizon = *ctx.options.horizon;

  try {
    if (kind == "uniform") {
      return SamplePlan::uniform(number_or(p, "start", 0.0, where), horizon, integer_or(p, "count", 200, where));
    }
    if (kind == "log") {
      return SamplePlan::log(number_or(p, "start", 1.0, where), horizon, integer_or(p, "count", 200, where));
    }
    if (kind == "event_aware") {
      std::vector<double> events;
      if (blocks != nullptr) events = block_events(*blocks, speeds_of(families));
      return SamplePlan::event_aware(number_or(p, "start", 1.0, where), horizon, std::move(events),
                                     integer_or(p, "per_decade", 50, where));
    }
  } catch (const Error& e) {
    schema(where, e.what());
  }
  schema(at(where, "kind"), "must be uniform, log or event_aware");
}

json density_json(Context& ctx, const std::string& id, const FlagDensity& d) {
  json j;
  j["name"] = d.name;
  j["level"] = d.level;
  j["upper_estimate"] = d.estimate.upper_estimate;
  j["horizon"] = d.estimate.horizon;
  j["tail_window"] = d.estimate.tail_window;
  j["meets_threshold"] = d.flag;
  if (ctx.config.csv_profiles) {
    const std::string file = id + "_" + d.name + "_" + level_suffix(d.level) + ".csv";
    std::vector<double> t, r;
    for (const auto& point : d.estimate.profile) {
      t.push_back(point.t);
      r.push_back(point.ratio);
    }
    ctx.csv[file] = profile_csv(t, r, "ratio");
    j["profile"] = file;
  }
  return j;
}

bool verdict_flag(const Verdict& v, const std::string& name, const std::string& path) {
  if (name == "near_zero") return v.near_zero;
  if (name == "m_unbounded") return v.m_unbounded;
  if (name == "irregular") return v.irregular;
  if (name == "scrambled_pair") return v.scrambled_pair;
  if (name == "disjoint_chaotic_evidence") return v.disjoint_chaotic_evidence;
  schema(path, "unknown verdict flag '" + name + "'");
}

TaskOutcome verdict_outcome(Context& ctx, const json& task, const std::string& path, const Verdict& v,
                            const std::string& default_flag) {
  TaskOutcome out;
  const std::string id = task["id"].get<std::string>();
  out.body["horizon"] = v.horizon;
  out.body["samples"] = v.traces.empty() ? 0 : v.traces.front().times.size();
  out.body["parameters"] = {{"eps", v.params.eps},
                            {"sigma", v.params.sigma},
                            {"M_levels", v.params.M_levels},
                            {"m", v.params.m},
                            {"threshold", v.params.threshold},
                            {"tail_window", v.params.tail_window}};
  if (v.inconclusive) {
    out.status = "inconclusive";
    out.body["cause"] = v.cause;
    return out;
  }
  json densities = json::array();
  for (const auto& d : v.densities) densities.push_back(density_json(ctx, id, d));
  out.body["densities"] = densities;
  out.body["flags"] = {{"near_zero", v.near_zero},
                       {"m_unbounded", v.m_unbounded},
                       {"irregular", v.irregular},
                       {"scrambled_pair", v.scrambled_pair},
                       {"disjoint_chaotic_evidence", v.disjoint_chaotic_evidence}};

  bool ok = true;
  if (task.contains("expect")) {
    const std::string p = at(path, "expect");
    if (!task["expect"].is_object()) schema(p, "must be an object of flag -> bool");
    for (const auto& [flag, want] : task["expect"].items()) {
      if (!want.is_boolean()) schema(at(p, flag), "must be true or false");
      ok = ok && verdict_flag(v, flag, at(p, flag)) == want.get<bool>();
    }
    out.body["expect"] = task["expect"];
  } else {
    ok = verdict_flag(v, default_flag, path);
    out.body["expect"] = {{default_flag, true}};
  }
  out.status = ok ? "pass" : "fail";
  if (flag_or(task, "informational", false, path)) out.status = "info";
  return out;
}

TaskOutcome run_scrambled_pair(Context& ctx, const json& task, const std::string& path) {
  const auto families = task_families(ctx, task, path);
  const Element& x = task_vector(ctx, task, "x", path).value;
  const Element& y = task_vector(ctx, task, "y", path).value;
  const Verdict v = scrambled_pair_test(families, x, y, task_detection(ctx, task, path),
                                        task_plan(ctx, task, path, families));
  return verdict_outcome(ctx, task, path, v, "scrambled_pair");
}

TaskOutcome run_classify(Context& ctx, const json& task, const std::string& path) {
  const auto families = task_families(ctx, task, path);
  const Element& x = task_vector(ctx, task, "vector", path).value;
  const Verdict v = classify_vector(families, x, task_detection(ctx, task, path), task_plan(ctx, task, path, families));
  return verdict_outcome(ctx, task, path, v, "irregular");
}

json item_json(const HypothesisItem& item) {
  json j;
  j["name"] = item.name;
  j["status"] = status_name(item.status);
  j["detail"] = item.detail;
  json points = json::array();
  for (Complex z : item.witness_points) points.push_back(complex_json(z));
  j["witness_points"] = points;
  j["witness_times"] = item.witness_times;
  j["witness_values"] = item.witness_values;
  return j;
}

TaskOutcome report_outcome(const HypothesisReport& report, const json& task, const std::string& path) {
  TaskOutcome out;
  out.body["label"] = report.label;
  json items = json::array();
  bool ok = true;
  bool inconclusive = false;
  for (const auto& item : report.items) {
    items.push_back(item_json(item));
    std::string want = "pass";
    if (task.contains("expect")) want = text_or(task["expect"], item.name, "pass", at(path, "expect"));
    if (item.status == Status::Inconclusive) inconclusive = true;
    ok = ok && want == status_name(item.status);
  }
  out.body["items"] = items;
  if (task.contains("expect")) out.body["expect"] = task["expect"];
  out.status = inconclusive ? "inconclusive" : (ok ? "pass" : "fail");
  return out;
}

TaskOutcome run_sector_check(Context& ctx, const json& task, const std::string& path) {
  std::vector<Polynomial> polys;
  std::vector<FamilySpec> families;
  if (task.contains("polynomials")) {
    const std::string p = at(path, "polynomials");
    for (std::size_t i = 0; i < array(task["polynomials"], p).size(); ++i) {
      polys.push_back(polynomial(task["polynomials"][i], at(p, i)));
    }
  } else {
    families = task_families(ctx, task, path);
    for (const auto& f : families) polys.push_back(f.symbol);
  }
  const std::string region_name = text(require(task, "region", path), at(path, "region"));
  const auto it = ctx.config.regions.find(region_name);
  if (it == ctx.config.regions.end()) schema(at(path, "region"), "unknown region '" + region_name + "'");
  RegionPredicate region = it->second;
  if (task.contains("witness_samples")) {
    region.witness_samples = complex_list(task["witness_samples"], at(path, "witness_samples"));
  }

  SectorVariant variant;
  const std::string name = text_or(task, "variant", "AB", path);
  if (name == "ABprime") {
    const double zeta = families.empty() ? 1.5 : families.front().zeta;
    const double theta = families.empty() ? 0.0 : families.front().theta;
    variant = SectorVariant::ab_prime(number_or(task, "zeta", zeta, path), number_or(task, "theta", theta, path));
  } else if (name != "AB") {
    schema(at(path, "variant"), "must be AB or ABprime");
  }
  TaskOutcome out = report_outcome(sector_condition_check(polys, region, variant), task, path);
  out.body["variant"] = name;
  out.body["region"] = region.describe();
  json symbols = json::array();
  for (const auto& q : polys) symbols.push_back(q.describe());
  out.body["polynomials"] = symbols;
  return out;
}

std::vector<Element> region_eigenvectors(const Context& ctx, const json& spec, const std::string& path, bool witness) {
  const std::string name = text(require(spec, "from_region", path), at(path, "from_region"));
  const auto it = ctx.config.regions.find(name);
  if (it == ctx.config.regions.end()) schema(at(path, "from_region"), "unknown region '" + name + "'");
  const auto& samples = witness ? it->second.witness_samples : it->second.decay_samples;
  const int count = integer_or(spec, "count", static_cast<int>(samples.size()), path);
  std::vector<Element> out;
  for (int i = 0; i < count && i < static_cast<int>(samples.size()); ++i) {
    out.emplace_back(SpectralVector::eigenvector(samples[i]));
  }
  if (out.empty()) schema(path, "region supplies no samples");
  return out;
}

TaskOutcome run_dense_chaos(Context& ctx, const json& task, const std::string& path) {
  const auto families = task_families(ctx, task, path);
  std::vector<Element> x0;
  const json& x0_spec = require(task, "x0", path);
  if (x0_spec.is_object()) {
    x0 = region_eigenvectors(ctx, x0_spec, at(path, "x0"), false);
  } else {
    const std::string p = at(path, "x0");
    for (std::size_t i = 0; i < array(x0_spec, p).size(); ++i) {
      x0.push_back(ctx.config.vector(text(x0_spec[i], at(p, i)), at(p, i)).value);
    }
  }
  const json& c_spec = require(task, "candidate", path);
  const std::string c_path = at(path, "candidate");
  const Element candidate = c_spec.is_object() ? region_eigenvectors(ctx, c_spec, c_path, true).front()
                                               : ctx.config.vector(text(c_spec, c_path), c_path).value;
  DenseChaosOptions options;
  options.decay_tolerance = number_or(task, "decay_tolerance", options.decay_tolerance, path);
  options.tail_segments = integer_or(task, "tail_segments", options.tail_segments, path);
  const SamplePlan plan = task_plan(ctx, task, path, families);
  const HypothesisReport report =
      hypothesis_check_dense_chaos(families, x0, candidate, task_detection(ctx, task, path), plan, options);
  TaskOutcome out = report_outcome(report, task, path);
  out.body["horizon"] = plan.horizon;
  out.body["x0_count"] = x0.size();
  return out;
}

std::vector<double> number_list(const json& j, const std::string& path) {
  std::vector<double> out;
  for (std::size_t i = 0; i < array(j, path).size(); ++i) out.push_back(number(j[i], at(path, i)));
  return out;
}

json residual_row(double t, const IdentityResidual& r) {
  return {{"t", t},
          {"step", r.step},
          {"residual", r.residual},
          {"quadrature_error", r.quadrature_error},
          {"quadrature_ok", r.quadrature_ok}};
}

TaskOutcome run_resolvent(Context& ctx, const json& task, const std::string& path) {
  const FamilySpec& family = task_family(ctx, task, path);
  const SpectralVector& x = spectral(task_vector(ctx, task, "vector", path), at(path, "vector"));
  const double step = number_or(task, "step", 1e-4, path);
  const double tol = number_or(task, "tolerance", 1e-6, path);
  TaskOutcome out;
  out.status = "pass";
  json rows = json::array();
  for (double t : number_list(require(task, "times", path), at(path, "times"))) {
    const IdentityResidual r = check_resolvent_identity(family, x, t, step, tol);
    rows.push_back(residual_row(t, r));
    if (!(r.residual <= tol) || !r.quadrature_ok) out.status = "fail";
  }
  out.body["family"] = family.name;
  out.body["tolerance"] = tol;
  out.body["rows"] = rows;
  return out;
}

// Residuals at successive halvings; pass when each ratio reaches min_ratio.
TaskOutcome refinement_outcome(const std::vector<json>& rows, const std::vector<double>& residuals, double min_ratio) {
  TaskOutcome out;
  out.status = "pass";
  json table = json::array();
  for (std::size_t i = 0; i < rows.size(); ++i) {
    json row = rows[i];
    if (i > 0) {
      const double ratio = residuals[i] > 0.0 ? residuals[i - 1] / residuals[i] : HUGE_VAL;
      row["ratio"] = std::isfinite(ratio) ? json(ratio) : json("inf");
      if (!(ratio >= min_ratio)) out.status = "fail";
    }
    table.push_back(row);
  }
  out.body["min_ratio"] = min_ratio;
  out.body["rows"] = table;
  return out;
}

TaskOutcome run_integrated(Context& ctx, const json& task, const std::string& path) {
  const FamilySpec& family = task_family(ctx, task, path);
  const VectorDef& v = task_vector(ctx, task, "vector", path);
  const double alpha = number_or(task, "alpha", 0.0, path);
  const double t = number(require(task, "t", path), at(path, "t"));
  const double step = number(require(task, "step", path), at(path, "step"));
  const int refinements = integer_or(task, "refinements", 0, path);
  if (refinements > 0) {
    if (!v.grid) schema(at(path, "vector"), "refinement needs a grid vector");
    std::vector<json> rows;
    std::vector<double> residuals;
    for (int r = 0; r <= refinements; ++r) {
      const double scale = std::ldexp(1.0, -r);
      const IdentityResidual res =
          check_integrated_identity(family, v.grid->sample(v.grid->h * scale), alpha, t, step * scale);
      rows.push_back({{"h", v.grid->h * scale}, {"step", step * scale}, {"residual", res.residual}});
      residuals.push_back(res.residual);
    }
    TaskOutcome out = refinement_outcome(rows, residuals, number_or(task, "min_ratio", 1.8, path));
    out.body["family"] = family.name;
    out.body["alpha"] = alpha;
    return out;
  }
  const double tol = number_or(task, "tolerance", 1e-6, path);
  const IdentityResidual r = check_integrated_identity(family, v.value, alpha, t, step);
  TaskOutcome out;
  out.status = r.residual <= tol ? "pass" : "fail";
  out.body["family"] = family.name;
  out.body["alpha"] = alpha;
  out.body["tolerance"] = tol;
  out.body["rows"] = json::array({residual_row(t, r)});
  return out;
}

TaskOutcome run_block_identity(Context& ctx, const json& task, const std::string& path) {
  const VectorDef& u = task_vector(ctx, task, "u", path);
  const VectorDef& w = task_vector(ctx, task, "w", path);
  if (!u.grid || !w.grid) schema(path, "u and w must be grid vectors");
  if (u.grid->h != w.grid->h || u.grid->x_max != w.grid->x_max) schema(path, "u and w must share a grid");
  const double t = number(require(task, "t", path), at(path, "t"));
  const double factor = number_or(task, "quad_factor", 2.0, path);
  const double speed = number_or(task, "speed", 1.0, path);
  const Weight rho = task.contains("weight") ? weight(task["weight"], at(path, "weight")) : Weight::exp_decay(1.0);
  const int refinements = integer_or(task, "refinements", 2, path);
  std::vector<json> rows;
  std::vector<double> residuals;
  for (int r = 0; r <= refinements; ++r) {
    const double h = u.grid->h * std::ldexp(1.0, -r);
    const GridPair v{u.grid->sample(h), w.grid->sample(h)};
    const IdentityResidual res = block_identity_residual(v, t, factor * h, speed, rho);
    rows.push_back({{"h", h}, {"quad_step", factor * h}, {"residual", res.residual}});
    residuals.push_back(res.residual);
  }
  return refinement_outcome(rows, residuals, number_or(task, "min_ratio", 1.8, path));
}

double spectral_l1(const SpectralVector& x) {
  double s = 0.0;
  for (const auto& [mu, c] : x.entries()) s += std::abs(c);
  return s;
}

TaskOutcome run_matrix_eigen(Context&, const json& task, const std::string& path) {
  const double a = number(require(task, "a", path), at(path, "a"));
  TaskOutcome out;
  out.status = "pass";
  json rows = json::array();
  for (Complex lambda : complex_list(require(task, "lambdas", path), at(path, "lambdas"))) {
    json row{{"lambda", complex_json(lambda)}};
    try {
      const auto F = matrix_eigenvector(lambda, a);
      const auto AF = matrix_apply(F);
      const double residual = spectral_l1(AF.first - lambda * F.first) + spectral_l1(AF.second - lambda * F.second);
      row["residual"] = residual;
      if (!(residual <= 1e-12 * (1.0 + std::norm(lambda)))) out.status = "fail";
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::Domain) throw;
      row["error"] = e.what();
      out.status = "fail";
    }
    rows.push_back(row);
  }
  out.body["a"] = a;
  out.body["rows"] = rows;
  return out;
}

TaskOutcome run_product_check(Context& ctx, const json& task, const std::string& path) {
  const auto families = task_families(ctx, task, path);
  const SpectralVector& x = spectral(task_vector(ctx, task, "vector", path), at(path, "vector"));
  const auto product = product_family(families);
  const double step = number_or(task, "step", 1e-4, path);
  const double tol = number_or(task, "tolerance", 1e-6, path);
  TaskOutcome out;
  out.status = "pass";
  json multipliers = json::array();
  for (const auto& [mu, c] : x.entries()) {
    Complex expected = 1.0;
    for (const auto& f : families) expected *= f.regularizer(mu);
    for (const auto& f : product) {
      const Complex got = f.regularizer(mu);
      if (std::abs(got - expected) > 1e-12 * std::max(1.0, std::abs(expected))) out.status = "fail";
    }
    multipliers.push_back({{"mu", complex_json(mu)}, {"product", complex_json(expected)}});
  }
  json rows = json::array();
  for (const auto& f : product) {
    for (double t : number_list(require(task, "times", path), at(path, "times"))) {
      const IdentityResidual r = check_resolvent_identity(f, x, t, step, tol);
      json row = residual_row(t, r);
      row["family"] = f.name;
      rows.push_back(row);
      if (!(r.residual <= tol) || !r.quadrature_ok) out.status = "fail";
    }
  }
  out.body["multipliers"] = multipliers;
  out.body["tolerance"] = tol;
  out.body["rows"] = rows;
  return out;
}

TaskOutcome run_discrete_trace(Context& ctx, const json& task, const std::string& path) {
  const FamilySpec& family = task_family(ctx, task, path);
  const Element& x = task_vector(ctx, task, "vector", path).value;
  const int k_max = integer_or(task, "k_max", 100, path);
  const DetectionParams params = task_detection(ctx, task, path);
  const OrbitTrace trace = discrete_power_trace(family, x, k_max, params);
  std::vector<bool> near(trace.times.size());
  for (std::size_t i = 0; i < near.size(); ++i) near[i] = trace.distance[i] < params.eps;
  const DensityEstimate est = density_profile(IndicatorTrace::discrete(near), params.tail_window);
  TaskOutcome out;
  const std::string id = task["id"].get<std::string>();
  out.body["family"] = family.name;
  out.body["period"] = family.period;
  out.body["k_max"] = k_max;
  out.body["near_zero_upper_estimate"] = est.upper_estimate;
  out.body["first_distance"] = trace.distance.front();
  out.body["last_distance"] = trace.distance.back();
  if (ctx.config.csv_profiles) {
    std::vector<double> k(trace.times.size());
    for (std::size_t i = 0; i < k.size(); ++i) k[i] = static_cast<double>(i + 1);
    ctx.csv[id + "_distance.csv"] = profile_csv(k, trace.distance, "value");
    out.body["profile"] = id + "_distance.csv";
  }
  return out;
}

TaskOutcome run_orbit_profile(Context& ctx, const json& task, const std::string& path) {
  const auto families = task_families(ctx, task, path);
  const Element& x = task_vector(ctx, task, "vector", path).value;
  const DetectionParams params = task_detection(ctx, task, path);
  const SamplePlan plan = task_plan(ctx, task, path, families);
  TaskOutcome out;
  const std::string id = task["id"].get<std::string>();
  json per_family = json::array();
  try {
    const auto traces = trace_orbits(families, x, plan.times(), params);
    for (const auto& trace : traces) {
      const auto [lo, hi] = std::minmax_element(trace.distance.begin(), trace.distance.end());
      json j{{"family", families[trace.family].name}, {"min_distance", *lo}, {"max_distance", *hi}};
      if (ctx.config.csv_profiles) {
        const std::string file = id + "_" + families[trace.family].name + ".csv";
        ctx.csv[file] = profile_csv(trace.times, trace.distance, "value");
        j["profile"] = file;
      }
      per_family.push_back(j);
    }
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::Schema || e.kind() == ErrorKind::Precondition) throw;
    out.body["cause"] = e.what();
  }
  out.body["horizon"] = plan.horizon;
  out.body["families"] = per_family;
  return out;
}

TaskOutcome run_task(Context& ctx, const json& task, const std::string& path) {
  const std::string type = task["type"].get<std::string>();
  if (type == "scrambled_pair") return run_scrambled_pair(ctx, task, path);
  if (type == "classify") return run_classify(ctx, task, path);
  if (type == "sector_check") return run_sector_check(ctx, task, path);
  if (type == "dense_chaos_hypotheses") return run_dense_chaos(ctx, task, path);
  if (type == "resolvent_identity") return run_resolvent(ctx, task, path);
  if (type == "integrated_identity") return run_integrated(ctx, task, path);
  if (type == "block_identity") return run_block_identity(ctx, task, path);
  if (type == "matrix_eigen") return run_matrix_eigen(ctx, task, path);
  if (type == "product_check") return run_product_check(ctx, task, path);
  if (type == "discrete_trace") return run_discrete_trace(ctx, task, path);
  if (type == "orbit_profile") return run_orbit_profile(ctx, task, path);
  schema(at(path, "type"), "unknown task type '" + type + "'");
}

std::string timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  std::ostringstream out;
  out << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
  return out.str();
}

void write_file(const std::filesystem::path& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(ErrorKind::Io, "cannot write '" + path.string() + "'");
  out << contents;
  if (!out) fail(ErrorKind::Io, "failed writing '" + path.string() + "'");
}

}  // namespace

ScenarioResult run_scenario(const ScenarioConfig& config, const RunOptions& options) {
  ScenarioResult result;
  Context ctx{config, options, result.csv};
  json report;
  report["schema_version"] = kSchemaVersion;
  report["scenario"] = config.scenario;
  report["description"] = config.description;
  report["metadata"] = {{"tool", "dchaos"}, {"generated_at", ""}, {"threads", options.threads}};
  report["run"] = {{"seed", options.seed},
                   {"horizon_override", options.horizon ? json(*options.horizon) : json(nullptr)}};
  report["conventions"] = kConventions;

  std::ostringstream summary;
  summary << "scenario: " << config.scenario << "\n";
  int counts[4] = {0, 0, 0, 0};
  json tasks = json::array();
  for (std::size_t i = 0; i < config.tasks.size(); ++i) {
    const json& task = config.tasks[i];
    const std::string path = "tasks[" + std::to_string(i) + "]";
    TaskOutcome outcome;
    try {
      outcome = run_task(ctx, task, path);
    } catch (const Error& e) {
      if (e.kind() == ErrorKind::Schema || e.kind() == ErrorKind::Io) throw;
      outcome.status = "inconclusive";
      outcome.body["cause"] = e.what();
    }
    json entry;
    entry["id"] = task["id"];
    entry["type"] = task["type"];
    if (task.contains("note")) entry["note"] = task["note"];
    entry["status"] = outcome.status;
    for (auto& [key, value] : outcome.body.items()) entry[key] = value;
    tasks.push_back(entry);

    const std::string& s = outcome.status;
    counts[s == "pass" ? 0 : s == "fail" ? 1 : s == "inconclusive" ? 2 : 3]++;
    summary << "[" << s << "] " << task["id"].get<std::string>() << " (" << task["type"].get<std::string>() << ")";
    if (entry.contains("cause")) summary << ": " << entry["cause"].get<std::string>();
    summary << "\n";
  }
  report["tasks"] = tasks;
  report["counts"] = {{"pass", counts[0]}, {"fail", counts[1]}, {"inconclusive", counts[2]}, {"info", counts[3]}};
  result.exit_code = (counts[1] + counts[2]) > 0 ? 2 : 0;
  report["exit_code"] = result.exit_code;
  summary << "pass " << counts[0] << ", fail " << counts[1] << ", inconclusive " << counts[2] << ", info "
          << counts[3] << "\n";
  summary << "exit code " << result.exit_code << "\n";
  result.report = std::move(report);
  result.summary = summary.str();
  return result;
}

void write_outputs(const ScenarioResult& result, const std::string& dir) {
  namespace fs = std::filesystem;
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) fail(ErrorKind::Io, "cannot create output directory '" + dir + "': " + ec.message());
  json report = result.report;
  report["metadata"]["generated_at"] = timestamp();
  write_file(fs::path(dir) / "report.json", report.dump(2) + "\n");
  write_file(fs::path(dir) / "summary.txt", result.summary);
  for (const auto& [name, contents] : result.csv) write_file(fs::path(dir) / name, contents);
}

std::string report_without_metadata(const json& report) {
  json copy = report;
  copy.erase("metadata");
  return copy.dump(2);
}

}  // namespace dchaos
