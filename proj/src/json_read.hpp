#pragma once

// JSON field readers that report violations as Schema errors with field paths.

#include <cmath>
#include <string>
#include <vector>

#include <json.hpp>

#include "dchaos/chaos_detect.hpp"
#include "dchaos/errors.hpp"

namespace dchaos::jsonread {

using json = nlohmann::ordered_json;

[[noreturn]] inline void schema(const std::string& path, const std::string& message) {
  fail(ErrorKind::Schema, path + ": " + message);
}

inline std::string at(const std::string& path, const std::string& key) { return path.empty() ? key : path + "." + key; }
inline std::string at(const std::string& path, std::size_t index) { return path + "[" + std::to_string(index) + "]"; }

inline const json& require(const json& obj, const std::string& key, const std::string& path) {
  if (!obj.is_object()) schema(path, "must be an object");
  const auto it = obj.find(key);
  if (it == obj.end()) schema(at(path, key), "is required");
  return *it;
}

inline double number(const json& j, const std::string& path) {
  if (!j.is_number()) schema(path, "must be a number");
  const double x = j.get<double>();
  if (!std::isfinite(x)) schema(path, "must be finite");
  return x;
}

inline double number_or(const json& obj, const std::string& key, double fallback, const std::string& path) {
  const auto it = obj.find(key);
  return it == obj.end() ? fallback : number(*it, at(path, key));
}

inline int integer(const json& j, const std::string& path) {
  if (!j.is_number_integer()) schema(path, "must be an integer");
  return j.get<int>();
}

inline int integer_or(const json& obj, const std::string& key, int fallback, const std::string& path) {
  const auto it = obj.find(key);
  return it == obj.end() ? fallback : integer(*it, at(path, key));
}

inline std::string text(const json& j, const std::string& path) {
  if (!j.is_string()) schema(path, "must be a string");
  return j.get<std::string>();
}

inline std::string text_or(const json& obj, const std::string& key, const std::string& fallback,
                           const std::string& path) {
  const auto it = obj.find(key);
  return it == obj.end() ? fallback : text(*it, at(path, key));
}

inline bool flag_or(const json& obj, const std::string& key, bool fallback, const std::string& path) {
  const auto it = obj.find(key);
  if (it == obj.end()) return fallback;
  if (!it->is_boolean()) schema(at(path, key), "must be true or false");
  return it->get<bool>();
}

inline const json& array(const json& j, const std::string& path) {
  if (!j.is_array()) schema(path, "must be an array");
  return j;
}

/// A number or [re, im].
inline Complex complex_value(const json& j, const std::string& path) {
  if (j.is_number()) return number(j, path);
  if (j.is_array() && j.size() == 2) return {number(j[0], at(path, 0)), number(j[1], at(path, 1))};
  schema(path, "must be a number or a [re, im] pair");
}

inline std::vector<Complex> complex_list(const json& j, const std::string& path) {
  std::vector<Complex> out;
  for (std::size_t i = 0; i < array(j, path).size(); ++i) out.push_back(complex_value(j[i], at(path, i)));
  return out;
}

inline json complex_json(Complex z) { return json::array({z.real(), z.imag()}); }

inline Polynomial polynomial(const json& j, const std::string& path) {
  Polynomial p{complex_list(j, path)};
  if (p.degree() < 0) schema(path, "polynomial must have a nonzero coefficient");
  return p;
}

inline Weight weight(const json& j, const std::string& path) {
  const std::string kind = text(require(j, "kind", path), at(path, "kind"));
  Weight w;
  if (kind == "exp_decay") {
    w = Weight::exp_decay(number_or(j, "a", 1.0, path));
    if (!(w.a > 0.0)) schema(at(path, "a"), "must be positive");
  } else if (kind == "rational") {
    w = Weight::rational(integer_or(j, "n", 1, path));
    if (w.n < 1) schema(at(path, "n"), "must be >= 1");
  } else {
    schema(at(path, "kind"), "must be exp_decay or rational");
  }
  return w;
}

inline Regularizer regularizer(const json& j, const std::string& path) {
  Regularizer r;
  for (std::size_t i = 0; i < array(j, path).size(); ++i) {
    const std::string p = at(path, i);
    const std::string kind = text(require(j[i], "kind", p), at(p, "kind"));
    if (kind == "exp_neg_power") {
      const int L = integer(require(j[i], "L", p), at(p, "L"));
      if (L < 1) schema(at(p, "L"), "must be >= 1");
      r.factors.push_back(MultiplierFactor::exp_neg_power(L));
    } else if (kind == "constant") {
      r.factors.push_back(MultiplierFactor::constant(complex_value(require(j[i], "value", p), at(p, "value"))));
    } else {
      schema(at(p, "kind"), "must be exp_neg_power or constant");
    }
  }
  return r;
}

inline DetectionParams detection_params(const json& j, const std::string& path, DetectionParams base) {
  if (!j.is_object()) schema(path, "must be an object");
  base.eps = number_or(j, "eps", base.eps, path);
  base.sigma = number_or(j, "sigma", base.sigma, path);
  if (j.contains("M_levels")) {
    base.M_levels.clear();
    const std::string p = at(path, "M_levels");
    for (std::size_t i = 0; i < array(j["M_levels"], p).size(); ++i) {
      base.M_levels.push_back(number(j["M_levels"][i], at(p, i)));
    }
  }
  base.m = integer_or(j, "m", base.m, path);
  base.threshold = number_or(j, "threshold", base.threshold, path);
  base.tail_window = number_or(j, "tail_window", base.tail_window, path);
  base.n_max = integer_or(j, "n_max", base.n_max, path);
  try {
    base.validate();
  } catch (const Error& e) {
    schema(path, e.what());
  }
  return base;
}


}  // namespace dchaos::jsonread
