#include "dchaos/chaos_detect.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <thread>

#include "dchaos/errors.hpp"

namespace dchaos {
namespace {

// Runs body(i) for i in [0, n) on up to `threads` workers. The exception of the
// lowest failing index is rethrown so failures do not depend on scheduling.
void parallel_for(std::size_t n, int threads, const std::function<void(std::size_t)>& body) {
  const std::size_t workers = std::clamp<std::size_t>(threads < 1 ? 1 : threads, 1, std::max<std::size_t>(n, 1));
  if (workers == 1) {
    for (std::size_t i = 0; i < n; ++i) body(i);
    return;
  }
  std::vector<std::exception_ptr> errors(workers);
  std::vector<std::size_t> error_index(workers, n);
  std::vector<std::thread> pool;
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      for (std::size_t i = w; i < n; i += workers) {
        try {
          body(i);
        } catch (...) {
          errors[w] = std::current_exception();
          error_index[w] = i;
          return;
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  std::size_t first = workers;
  for (std::size_t w = 0; w < workers; ++w) {
    if (errors[w] && (first == workers || error_index[w] < error_index[first])) first = w;
  }
  if (first != workers) std::rethrow_exception(errors[first]);
}

bool orbit_failure(const Error& e) {
  switch (e.kind()) {
    case ErrorKind::Window:
    case ErrorKind::Sector:
    case ErrorKind::Overflow:
    case ErrorKind::TimeGrid:
    case ErrorKind::Quadrature: return true;
    default: return false;
  }
}

std::vector<OrbitTrace> trace_impl(const std::vector<FamilySpec>& specs, const Element& x, const Element* y,
                                   const std::vector<double>& times, const DetectionParams& params) {
  std::vector<OrbitTrace> traces;
  for (std::size_t j = 0; j < specs.size(); ++j) {
    const FamilySpec& spec = specs[j];
    const SeminormFamily family = spec.seminorms(x, params.n_max);
    OrbitTrace trace;
    trace.family = static_cast<int>(j);
    trace.times = times;
    trace.seminorm.resize(times.size());
    trace.distance.resize(times.size());
    parallel_for(times.size(), params.threads, [&](std::size_t i) {
      const Element u = orbit(spec, x, times[i]);
      trace.seminorm[i] = family(params.m, u);
      trace.distance[i] =
          y == nullptr ? distance_to_zero(family, u).value : frechet_metric(family, u, orbit(spec, *y, times[i])).value;
    });
    traces.push_back(std::move(trace));
  }
  return traces;
}

FlagDensity flag_density(const std::string& name, double level, const IndicatorTrace& trace,
                         const DetectionParams& params) {
  FlagDensity out;
  out.name = name;
  out.level = level;
  out.estimate = density_profile(trace, params.tail_window);
  out.flag = out.estimate.upper_estimate >= params.threshold;
  return out;
}

}  // namespace

SamplePlan SamplePlan::uniform(double start, double horizon, int count) {
  SamplePlan p;
  p.kind = Kind::Uniform;
  p.start = start;
  p.horizon = horizon;
  p.count = count;
  p.validate();
  return p;
}

SamplePlan SamplePlan::log(double start, double horizon, int count) {
  SamplePlan p;
  p.kind = Kind::Log;
  p.start = start;
  p.horizon = horizon;
  p.count = count;
  p.validate();
  return p;
}

SamplePlan SamplePlan::event_aware(double start, double horizon, std::vector<double> events, int per_decade) {
  SamplePlan p;
  p.kind = Kind::EventAware;
  p.start = start;
  p.horizon = horizon;
  p.events = std::move(events);
  p.per_decade = per_decade;
  p.validate();
  return p;
}

void SamplePlan::validate() const {
  if (!(horizon > 0.0) || !std::isfinite(horizon)) fail(ErrorKind::Domain, "sample plan horizon must be positive");
  if (!(start >= 0.0 && start < horizon)) fail(ErrorKind::Domain, "sample plan needs 0 <= start < horizon");
  if (kind != Kind::Uniform && !(start > 0.0)) fail(ErrorKind::Domain, "log-spaced sample plans need start > 0");
  if (kind != Kind::EventAware && count < 2) fail(ErrorKind::Domain, "sample plan needs count >= 2");
  if (kind == Kind::EventAware && per_decade < 1) fail(ErrorKind::Domain, "sample plan needs per_decade >= 1");
}

std::vector<double> SamplePlan::times() const {
  validate();
  std::vector<double> out;
  switch (kind) {
    case Kind::Uniform:
      for (int i = 0; i < count; ++i) out.push_back(start + (horizon - start) * i / (count - 1));
      break;
    case Kind::Log: {
      const double ratio = std::log(horizon / start);
      for (int i = 0; i < count; ++i) out.push_back(start * std::exp(ratio * i / (count - 1)));
      break;
    }
    case Kind::EventAware: {
      const int n = std::max(2, static_cast<int>(std::ceil(std::log10(horizon / start) * per_decade)) + 1);
      const double ratio = std::log(horizon / start);
      for (int i = 0; i < n; ++i) out.push_back(start * std::exp(ratio * i / (n - 1)));
      std::vector<double> offsets{0.0};
      for (double d = 0.25; d <= 8.0; d += 0.25) offsets.push_back(d);
      for (double d = 16.0; d <= 64.0; d *= 2.0) offsets.push_back(d);
      for (double e : events) {
        for (double d : offsets) {
          out.push_back(e + d);
          out.push_back(e - d);
        }
      }
      break;
    }
  }
  out.push_back(horizon);
  std::erase_if(out, [&](double t) { return !(t >= start && t <= horizon); });
  std::sort(out.begin(), out.end());
  std::vector<double> unique;
  for (double t : out) {
    if (unique.empty() || t > unique.back() * (1.0 + 1e-13) + 1e-300) unique.push_back(t);
  }
  unique.back() = horizon;
  return unique;
}

void DetectionParams::validate() const {
  if (!(eps > 0.0)) fail(ErrorKind::Domain, "eps must be positive");
  if (!(sigma > 0.0)) fail(ErrorKind::Domain, "sigma must be positive");
  if (M_levels.empty()) fail(ErrorKind::Domain, "at least one M level is required");
  for (double M : M_levels) {
    if (!(M > 0.0)) fail(ErrorKind::Domain, "M levels must be positive");
  }
  if (m < 1) fail(ErrorKind::Domain, "seminorm index m must be >= 1");
  if (!(threshold > 0.0 && threshold <= 1.0)) fail(ErrorKind::Domain, "threshold must lie in (0, 1]");
  if (!(tail_window > 0.0 && tail_window <= 1.0)) fail(ErrorKind::Domain, "tail_window must lie in (0, 1]");
  if (n_max < 1) fail(ErrorKind::Domain, "n_max must be >= 1");
}

const FlagDensity* Verdict::find(const std::string& name, double level) const {
  for (const auto& d : densities) {
    if (d.name == name && (level < 0.0 || d.level == level)) return &d;
  }
  return nullptr;
}

std::vector<OrbitTrace> trace_orbits(const std::vector<FamilySpec>& specs, const Element& x,
                                     const std::vector<double>& times, const DetectionParams& params) {
  return trace_impl(specs, x, nullptr, times, params);
}

std::vector<OrbitTrace> trace_pair(const std::vector<FamilySpec>& specs, const Element& x, const Element& y,
                                   const std::vector<double>& times, const DetectionParams& params) {
  return trace_impl(specs, x, &y, times, params);
}

IndicatorTrace intersected_trace(const std::vector<OrbitTrace>& traces,
                                 const std::function<bool(const OrbitTrace&, std::size_t)>& member) {
  if (traces.empty()) fail(ErrorKind::Precondition, "no traces to intersect");
  std::vector<IndicatorTrace> parts;
  for (const auto& trace : traces) {
    std::vector<bool> membership(trace.times.size());
    for (std::size_t i = 0; i < membership.size(); ++i) membership[i] = member(trace, i);
    if (trace.mode == TraceMode::Discrete) {
      parts.push_back(IndicatorTrace::discrete(std::move(membership)));
    } else {
      parts.push_back(IndicatorTrace::continuous(trace.times, std::move(membership)));
    }
  }
  return intersect_traces(parts);
}

Verdict classify_vector(const std::vector<FamilySpec>& specs, const Element& x, const DetectionParams& params,
                        const SamplePlan& plan) {
  params.validate();
  if (specs.empty()) fail(ErrorKind::Precondition, "classification needs at least one family");
  Verdict v;
  v.params = params;
  v.horizon = plan.horizon;
  try {
    v.traces = trace_orbits(specs, x, plan.times(), params);
  } catch (const Error& e) {
    if (!orbit_failure(e)) throw;
    v.inconclusive = true;
    v.cause = e.what();
    return v;
  }
  const auto near = intersected_trace(v.traces, [&](const OrbitTrace& t, std::size_t i) {
    return t.distance[i] < params.eps;
  });
  v.densities.push_back(flag_density("near_zero", params.eps, near, params));
  v.near_zero = v.densities.back().flag;
  v.m_unbounded = true;
  for (double M : params.M_levels) {
    const auto big = intersected_trace(v.traces, [&](const OrbitTrace& t, std::size_t i) {
      return t.seminorm[i] > M;
    });
    v.densities.push_back(flag_density("unbounded", M, big, params));
    v.m_unbounded = v.m_unbounded && v.densities.back().flag;
  }
  v.irregular = v.near_zero && v.m_unbounded;
  v.disjoint_chaotic_evidence = v.irregular;
  return v;
}

Verdict scrambled_pair_test(const std::vector<FamilySpec>& specs, const Element& x, const Element& y,
                            const DetectionParams& params, const SamplePlan& plan) {
  params.validate();
  if (specs.empty()) fail(ErrorKind::Precondition, "pair test needs at least one family");
  if (x == y) fail(ErrorKind::Precondition, "scrambled pair test needs x != y");
  Verdict v;
  v.params = params;
  v.horizon = plan.horizon;
  try {
    v.traces = trace_pair(specs, x, y, plan.times(), params);
  } catch (const Error& e) {
    if (!orbit_failure(e)) throw;
    v.inconclusive = true;
    v.cause = e.what();
    return v;
  }
  const auto far = intersected_trace(v.traces, [&](const OrbitTrace& t, std::size_t i) {
    return t.distance[i] >= params.sigma;
  });
  const auto close = intersected_trace(v.traces, [&](const OrbitTrace& t, std::size_t i) {
    return t.distance[i] < params.eps;
  });
  v.densities.push_back(flag_density("separation", params.sigma, far, params));
  v.densities.push_back(flag_density("proximity", params.eps, close, params));
  v.scrambled_pair = v.densities[0].flag && v.densities[1].flag;
  v.disjoint_chaotic_evidence = v.scrambled_pair;
  return v;
}

OrbitTrace discrete_power_trace(const FamilySpec& spec, const Element& x, int k_max, const DetectionParams& params,
                                int family) {
  if (k_max < 1) fail(ErrorKind::Precondition, "k_max must be >= 1");
  std::vector<double> times(k_max);
  for (int k = 1; k <= k_max; ++k) times[k - 1] = k * spec.period;
  OrbitTrace trace = std::move(trace_orbits({spec}, x, times, params).front());
  trace.family = family;
  trace.mode = TraceMode::Discrete;
  return trace;
}

double AmplitudeRule::operator()(int k) const {
  switch (kind) {
    case Kind::Index: return static_cast<double>(k);
    case Kind::Constant: return value;
    case Kind::Geometric: return std::pow(value, k);
  }
  return 0.0;
}

BlockFunction build_block_vector(const BlockPlan& plan) {
  if (!(plan.ratio_in > 1.0)) fail(ErrorKind::Domain, "ratio_in must exceed 1");
  if (!(plan.ratio_gap > 1.0)) fail(ErrorKind::Domain, "ratio_gap must exceed 1");
  if (plan.K < 2) fail(ErrorKind::Domain, "block plan needs K >= 2");
  if (!(plan.first_start > 0.0)) fail(ErrorKind::Domain, "first block start must be positive");
  std::vector<Block> blocks;
  double a = plan.first_start;
  for (int k = 1; k <= plan.K; ++k) {
    const double b = plan.ratio_in * a;
    const double c = plan.amplitude(k);
    if (!std::isfinite(b) || !std::isfinite(c)) {
      fail(ErrorKind::Overflow, "block " + std::to_string(k) + " has a non-finite endpoint or amplitude");
    }
    blocks.push_back({a, b, c});
    a = plan.ratio_gap * b;
  }
  return BlockFunction(std::move(blocks));
}

std::vector<double> block_events(const BlockFunction& f, const std::vector<double>& speeds) {
  std::vector<double> out;
  for (double v : speeds) {
    if (v == 0.0) continue;
    for (const Block& b : f.blocks()) {
      out.push_back(b.start / std::abs(v));
      out.push_back(b.end / std::abs(v));
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace dchaos
