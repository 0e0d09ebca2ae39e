#pragma once

// Numerical classification of vectors and pairs under tuples of operator
// families: orbit traces, intersected density estimates, sector conditions and
// hypothesis reports. Every outcome is finite-horizon evidence; densities are
// reported with their horizon and never rounded up to 1.

#include <string>
#include <vector>

#include "dchaos/density.hpp"
#include "dchaos/elements.hpp"
#include "dchaos/operator_models.hpp"
#include "dchaos/regions.hpp"

namespace dchaos {

struct SamplePlan {
  enum class Kind { Uniform, Log, EventAware };
  Kind kind = Kind::Log;
  double start = 1.0;
  double horizon = 1.0;
  int count = 200;
  /// Times where membership may switch (EventAware only).
  std::vector<double> events;
  int per_decade = 50;

  /// count points on [start, horizon] (start may be 0 for Uniform).
  static SamplePlan uniform(double start, double horizon, int count);
  static SamplePlan log(double start, double horizon, int count);
  /// Log background with per_decade points per decade, plus points at each event
  /// offset by 0, +-0.25, +-0.5, ... +-8 and then doubling up to +-64.
  static SamplePlan event_aware(double start, double horizon, std::vector<double> events, int per_decade = 50);

  void validate() const;
  /// Strictly increasing sample times inside [start, horizon], horizon included.
  std::vector<double> times() const;
};

struct DetectionParams {
  double eps = 1e-3;
  double sigma = 1.0;
  std::vector<double> M_levels{10.0, 100.0, 1000.0};
  int m = 1;
  double threshold = 0.85;
  double tail_window = kDefaultTailWindow;
  int n_max = 30;
  int threads = 1;

  void validate() const;
};

struct OrbitTrace {
  int family = 0;
  TraceMode mode = TraceMode::Continuous;
  std::vector<double> times;
  /// p_m(u_j(t)).
  std::vector<double> seminorm;
  /// d(u_j(t), v_j(t)); v = 0 for single-vector traces.
  std::vector<double> distance;
};

struct FlagDensity {
  std::string name;  // near_zero, unbounded, separation, proximity
  double level = 0.0;
  DensityEstimate estimate;
  bool flag = false;
};

struct Verdict {
  bool inconclusive = false;
  std::string cause;
  bool near_zero = false;
  bool m_unbounded = false;
  bool irregular = false;
  bool scrambled_pair = false;
  bool disjoint_chaotic_evidence = false;
  std::vector<FlagDensity> densities;
  std::vector<OrbitTrace> traces;
  DetectionParams params;
  double horizon = 0.0;

  const FlagDensity* find(const std::string& name, double level = -1.0) const;
};

/// Traces of x under each family: p_m(u_j(t)) and d(u_j(t), 0).
std::vector<OrbitTrace> trace_orbits(const std::vector<FamilySpec>& specs, const Element& x,
                                     const std::vector<double>& times, const DetectionParams& params);

/// Traces of the pair: p_m(u_j(t; x)) and d(u_j(t; x), u_j(t; y)).
std::vector<OrbitTrace> trace_pair(const std::vector<FamilySpec>& specs, const Element& x, const Element& y,
                                   const std::vector<double>& times, const DetectionParams& params);

/// Intersected indicator trace of {t : pred(j, i)} over all families j.
IndicatorTrace intersected_trace(const std::vector<OrbitTrace>& traces,
                                 const std::function<bool(const OrbitTrace&, std::size_t)>& member);

/// near_zero: dens of cap_j {d(u_j, 0) < eps}; unbounded: for every M level dens of
/// cap_j {p_m(u_j) > M}; irregular when both flags hold. Orbit failures (window,
/// sector, overflow, grid) give an inconclusive verdict with the cause.
Verdict classify_vector(const std::vector<FamilySpec>& specs, const Element& x, const DetectionParams& params,
                        const SamplePlan& plan);

/// separation: dens of cap_j {d >= sigma}; proximity: dens of cap_j {d < eps}.
/// Precondition error when y == x.
Verdict scrambled_pair_test(const std::vector<FamilySpec>& specs, const Element& x, const Element& y,
                            const DetectionParams& params, const SamplePlan& plan);

/// u_j(k t_j), k = 1 .. k_max, as a discrete trace.
OrbitTrace discrete_power_trace(const FamilySpec& spec, const Element& x, int k_max, const DetectionParams& params,
                                int family = 0);

enum class Status { Pass, Fail, Inconclusive };
const char* status_name(Status status);

struct HypothesisItem {
  std::string name;
  Status status = Status::Inconclusive;
  std::string detail;
  std::vector<Complex> witness_points;
  std::vector<double> witness_times;
  std::vector<double> witness_values;
};

struct HypothesisReport {
  std::string label;
  std::vector<HypothesisItem> items;

  bool all_pass() const;
  const HypothesisItem* find(const std::string& name) const;
};

struct SectorVariant {
  enum class Kind { AB, ABprime };
  Kind kind = Kind::AB;
  double zeta = 1.5;
  double theta = 0.0;

  static SectorVariant ab() { return {}; }
  static SectorVariant ab_prime(double zeta, double theta) { return {Kind::ABprime, zeta, theta}; }
};

/// Variant AB: (A) every decay sample z has Q_j(z) in C_- for all j, (B) some witness
/// sample has Q_j(z) in C_+ for all j. Variant ABprime with lambda = -e^{i theta} P_j(z):
/// (A)' lambda outside the closed sector of half-angle zeta pi/2, (B)' lambda in the
/// open sector. Precondition error for an empty sample set or inadmissible zeta, theta.
HypothesisReport sector_condition_check(const std::vector<Polynomial>& polys, const RegionPredicate& region,
                                        const SectorVariant& variant);

struct DenseChaosOptions {
  /// Orbit distance to 0 every X0 sample must reach by the horizon.
  double decay_tolerance = 1e-2;
  /// Tail segments for the monotone-tail check.
  int tail_segments = 4;
};

/// (a) every X0 orbit decays below decay_tolerance at the horizon with a monotone
/// tail for every family; (b) for every M level the density of cap_j {p_m > M} along
/// the candidate's orbit is at least the threshold.
HypothesisReport hypothesis_check_dense_chaos(const std::vector<FamilySpec>& specs, const std::vector<Element>& x0,
                                              const Element& candidate, const DetectionParams& params,
                                              const SamplePlan& plan, const DenseChaosOptions& options = {});

struct AmplitudeRule {
  enum class Kind { Index, Constant, Geometric };
  Kind kind = Kind::Index;
  double value = 1.0;

  /// c_k for k = 1 .. K: k, value, or value^k.
  double operator()(int k) const;
};

struct BlockPlan {
  double first_start = 1.0;
  double ratio_in = 2.0;
  double ratio_gap = 2.0;
  int K = 2;
  AmplitudeRule amplitude;
};

/// Blocks [a_k, b_k] with b_k = ratio_in a_k, a_{k+1} = ratio_gap b_k, a_1 = first_start.
/// Overflow error when an endpoint or amplitude is not finite.
BlockFunction build_block_vector(const BlockPlan& plan);

/// Block endpoints divided by each speed: the times where a translation orbit's
/// spikes begin and end.
std::vector<double> block_events(const BlockFunction& f, const std::vector<double>& speeds);

}  // namespace dchaos
