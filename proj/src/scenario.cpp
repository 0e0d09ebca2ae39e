#include "dchaos/scenario.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "dchaos/errors.hpp"
#include "json_read.hpp"

namespace dchaos {
namespace {

using namespace jsonread;

FamilyKind family_kind(const std::string& s, const std::string& path) {
  for (FamilyKind k : {FamilyKind::SpectralFirstOrder, FamilyKind::SpectralFractional, FamilyKind::Translation,
                       FamilyKind::Cosine, FamilyKind::IntegratedBlock}) {
    if (s == family_kind_name(k)) return k;
  }
  schema(path, "unknown family kind '" + s + "'");
}

SpaceKind space_kind(const json& obj, const std::string& path) {
  const std::string s = text_or(obj, "space", "banach", path);
  if (s == "banach") return SpaceKind::Banach;
  if (s == "frechet") return SpaceKind::Frechet;
  schema(at(path, "space"), "must be banach or frechet");
}

FamilySpec family(const json& j, const std::string& path) {
  FamilySpec f;
  f.name = text(require(j, "name", path), at(path, "name"));
  f.kind = family_kind(text(require(j, "kind", path), at(path, "kind")), at(path, "kind"));
  if (j.contains("symbol")) f.symbol = polynomial(j["symbol"], at(path, "symbol"));
  f.zeta = number_or(j, "zeta", f.zeta, path);
  f.theta = number_or(j, "theta", f.theta, path);
  f.speed = number_or(j, "speed", f.speed, path);
  if (j.contains("weight")) f.weight = weight(j["weight"], at(path, "weight"));
  f.p = number_or(j, "p", f.p, path);
  f.space = space_kind(j, path);
  if (j.contains("regularizer")) f.regularizer = regularizer(j["regularizer"], at(path, "regularizer"));
  f.period = number_or(j, "period", f.period, path);
  if (j.contains("ml")) {
    const json& ml = j["ml"];
    const std::string p = at(path, "ml");
    f.ml.series_tol = number_or(ml, "series_tol", f.ml.series_tol, p);
    f.ml.asymptotic_order = integer_or(ml, "asymptotic_order", f.ml.asymptotic_order, p);
    f.ml.crossover_radius = number_or(ml, "crossover_radius", f.ml.crossover_radius, p);
    f.ml.asymptotic_gate = number_or(ml, "asymptotic_gate", f.ml.asymptotic_gate, p);
  }
  f.ml.beta = f.kind == FamilyKind::SpectralFractional ? f.zeta : 1.0;
  try {
    f.validate();
    f.ml.validate();
  } catch (const Error& e) {
    schema(path, e.what());
  }
  return f;
}

AmplitudeRule amplitude_rule(const json& obj, const std::string& path) {
  AmplitudeRule rule;
  if (!obj.contains("amplitude")) return rule;
  const std::string p = at(path, "amplitude");
  const std::string kind = text(require(obj["amplitude"], "kind", p), at(p, "kind"));
  if (kind == "index") {
    rule.kind = AmplitudeRule::Kind::Index;
  } else if (kind == "constant") {
    rule.kind = AmplitudeRule::Kind::Constant;
  } else if (kind == "geometric") {
    rule.kind = AmplitudeRule::Kind::Geometric;
  } else {
    schema(at(p, "kind"), "must be index, constant or geometric");
  }
  rule.value = number_or(obj["amplitude"], "value", 1.0, p);
  return rule;
}

BlockFunction block_literal(const json& j, const std::string& path) {
  const std::string p = at(path, "blocks");
  std::vector<Block> blocks;
  for (std::size_t k = 0; k < array(require(j, "blocks", path), p).size(); ++k) {
    const std::string where = at(p, k);
    const json& b = j["blocks"][k];
    Block block{number(require(b, "start", where), at(where, "start")),
                number(require(b, "end", where), at(where, "end")), number_or(b, "amplitude", 1.0, where)};
    if (block.start < 0.0) schema(at(where, "start"), "must be >= 0");
    if (!(block.end > block.start)) schema(at(where, "end"), "must exceed " + at(where, "start"));
    if (!blocks.empty() && !(blocks.back().end < block.start)) {
      schema(at(at(p, k - 1), "end"), "must be below " + at(where, "start"));
    }
    blocks.push_back(block);
  }
  BlockFunction f(std::move(blocks));
  f.validate_input();
  return f;
}

GridRecipe grid_recipe(const json& j, const std::string& path) {
  GridRecipe r;
  r.shape = text_or(j, "shape", r.shape, path);
  if (r.shape != "gaussian" && r.shape != "x_gaussian") schema(at(path, "shape"), "must be gaussian or x_gaussian");
  r.center = number_or(j, "center", r.center, path);
  r.width = number_or(j, "width", r.width, path);
  r.amplitude = number_or(j, "amplitude", r.amplitude, path);
  r.x_max = number_or(j, "x_max", r.x_max, path);
  r.h = number_or(j, "h", r.h, path);
  if (!(r.width > 0.0)) schema(at(path, "width"), "must be positive");
  if (!(r.h > 0.0)) schema(at(path, "h"), "must be positive");
  const double ratio = r.x_max / r.h;
  if (!(r.x_max > 0.0) || std::abs(ratio - std::round(ratio)) > 1e-9 * ratio) {
    schema(at(path, "x_max"), "must be a positive integer multiple of h");
  }
  return r;
}

VectorDef vector_def(const json& j, const std::string& path) {
  const std::string type = text(require(j, "type", path), at(path, "type"));
  VectorDef out;
  if (type == "spectral") {
    SpectralVector s;
    const std::string p = at(path, "entries");
    for (std::size_t i = 0; i < array(require(j, "entries", path), p).size(); ++i) {
      const json& e = j["entries"][i];
      const std::string where = at(p, i);
      s.set(complex_value(require(e, "mu", where), at(where, "mu")),
            e.contains("c") ? complex_value(e["c"], at(where, "c")) : Complex(1.0));
    }
    out.value = s;
  } else if (type == "blocks") {
    out.value = block_literal(j, path);
  } else if (type == "block_plan") {
    BlockPlan plan;
    plan.first_start = number_or(j, "first_start", plan.first_start, path);
    plan.ratio_in = number(require(j, "ratio_in", path), at(path, "ratio_in"));
    plan.ratio_gap = number(require(j, "ratio_gap", path), at(path, "ratio_gap"));
    plan.K = integer(require(j, "K", path), at(path, "K"));
    plan.amplitude = amplitude_rule(j, path);
    try {
      out.value = build_block_vector(plan);
    } catch (const Error& e) {
      schema(path, e.what());
    }
  } else if (type == "grid") {
    out.grid = grid_recipe(j, path);
    out.value = out.grid->sample();
  } else {
    schema(at(path, "type"), "must be spectral, blocks, block_plan or grid");
  }
  return out;
}

RegionPredicate region(const json& j, const std::string& path) {
  const std::string kind = text(require(j, "kind", path), at(path, "kind"));
  RegionPredicate r;
  try {
    if (kind == "half_plane_neg") {
      r = RegionPredicate::half_plane_neg();
    } else if (kind == "half_plane_pos") {
      r = RegionPredicate::half_plane_pos();
    } else if (kind == "sector") {
      r = RegionPredicate::sector(number(require(j, "alpha", path), at(path, "alpha")));
    } else if (kind == "closed_sector_complement") {
      r = RegionPredicate::closed_sector_complement(number(require(j, "alpha", path), at(path, "alpha")));
    } else if (kind == "disk") {
      r = RegionPredicate::disk(complex_value(require(j, "center", path), at(path, "center")),
                                number(require(j, "radius", path), at(path, "radius")));
    } else if (kind == "polygon") {
      r = RegionPredicate::polygon(complex_list(require(j, "vertices", path), at(path, "vertices")));
    } else if (kind == "lambda_region") {
      r = RegionPredicate::lambda_region(number(require(j, "a", path), at(path, "a")),
                                         number(require(j, "b", path), at(path, "b")),
                                         number(require(j, "c", path), at(path, "c")));
    } else {
      schema(at(path, "kind"), "unknown region kind '" + kind + "'");
    }
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::Schema) throw;
    schema(path, e.what());
  }
  if (j.contains("decay_samples")) {
    const json& d = j["decay_samples"];
    const std::string p = at(path, "decay_samples");
    if (d.is_object()) {
      r.cluster_point = complex_value(require(d, "cluster", p), at(p, "cluster"));
      const double radius = number(require(d, "radius", p), at(p, "radius"));
      const int count = integer(require(d, "count", p), at(p, "count"));
      if (!(radius > 0.0) || count < 1) schema(p, "needs radius > 0 and count >= 1");
      r.decay_samples = RegionPredicate::accumulating_samples(r.cluster_point, radius, count);
    } else {
      r.decay_samples = complex_list(d, p);
    }
  }
  if (j.contains("cluster_point")) r.cluster_point = complex_value(j["cluster_point"], at(path, "cluster_point"));
  if (j.contains("witness_samples")) {
    r.witness_samples = complex_list(j["witness_samples"], at(path, "witness_samples"));
  }
  try {
    r.validate_samples();
  } catch (const Error& e) {
    schema(path, e.what());
  }
  return r;
}

}  // namespace

GridFunction GridRecipe::sample() const { return sample(h); }

GridFunction GridRecipe::sample(double step) const {
  const GridRecipe r = *this;
  return GridFunction::sample(x_max, step, [r](double x) {
    const double u = (x - r.center) / r.width;
    const double g = r.amplitude * std::exp(-u * u);
    return r.shape == "x_gaussian" ? u * g : g;
  });
}

const FamilySpec& ScenarioConfig::family(const std::string& name, const std::string& path) const {
  for (const auto& f : families) {
    if (f.name == name) return f;
  }
  schema(path, "unknown family '" + name + "'");
}

const VectorDef& ScenarioConfig::vector(const std::string& name, const std::string& path) const {
  const auto it = vectors.find(name);
  if (it == vectors.end()) schema(path, "unknown vector '" + name + "'");
  return it->second;
}

ScenarioConfig parse_scenario(const json& doc) {
  if (!doc.is_object()) schema("$", "scenario document must be a JSON object");
  const int version = integer(require(doc, "schema_version", ""), "schema_version");
  if (version != kSchemaVersion) {
    schema("schema_version", "unsupported version " + std::to_string(version) + " (expected " +
                                 std::to_string(kSchemaVersion) + ")");
  }
  ScenarioConfig c;
  c.scenario = text(require(doc, "scenario", ""), "scenario");
  c.description = text_or(doc, "description", "", "");

  const json& families = array(require(doc, "families", ""), "families");
  if (families.empty()) schema("families", "needs at least one family");
  for (std::size_t i = 0; i < families.size(); ++i) {
    FamilySpec f = family(families[i], at("families", i));
    for (const auto& g : c.families) {
      if (g.name == f.name) schema(at(at("families", i), "name"), "duplicate family name '" + f.name + "'");
    }
    c.families.push_back(std::move(f));
  }

  if (doc.contains("vectors")) {
    if (!doc["vectors"].is_object()) schema("vectors", "must be an object");
    for (const auto& [name, def] : doc["vectors"].items()) c.vectors[name] = vector_def(def, at("vectors", name));
  }
  if (doc.contains("regions")) {
    if (!doc["regions"].is_object()) schema("regions", "must be an object");
    for (const auto& [name, def] : doc["regions"].items()) c.regions[name] = region(def, at("regions", name));
  }
  if (doc.contains("detection")) c.detection = detection_params(doc["detection"], "detection", c.detection);
  if (doc.contains("plan")) c.plan = doc["plan"];
  c.tasks = array(require(doc, "tasks", ""), "tasks");
  if (c.tasks.empty()) schema("tasks", "needs at least one task");
  for (std::size_t i = 0; i < c.tasks.size(); ++i) {
    const std::string p = at("tasks", i);
    text(require(c.tasks[i], "type", p), at(p, "type"));
    text(require(c.tasks[i], "id", p), at(p, "id"));
  }
  if (doc.contains("output")) c.csv_profiles = flag_or(doc["output"], "csv_profiles", true, "output");
  return c;
}

ScenarioConfig load_scenario(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorKind::Io, "cannot open scenario file '" + path + "'");
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    fail(ErrorKind::Schema, "'" + path + "' is not valid JSON: " + e.what());
  }
  return parse_scenario(doc);
}

std::string format_number(double x) {
  std::ostringstream out;
  out.precision(16);
  out << x;
  return out.str();
}

std::string profile_csv(const std::vector<double>& t, const std::vector<double>& values, const std::string& column) {
  std::string out = "t," + column + "\n";
  for (std::size_t i = 0; i < t.size(); ++i) out += format_number(t[i]) + "," + format_number(values[i]) + "\n";
  return out;
}


}  // namespace dchaos
