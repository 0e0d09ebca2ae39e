#pragma once

// Upper density of time sets, estimated from sampled membership.
//
// The limsup over an infinite horizon cannot be read off finite data; the
// estimate reported is the maximum of the density profile over the final
// tail_window fraction of the sampled horizon, and the whole profile is kept.
// Continuous and discrete upper densities are treated as the same functional on
// their respective time axes.

#include <span>
#include <vector>

namespace dchaos {

enum class TraceMode { Continuous, Discrete };

class IndicatorTrace {
 public:
  /// Membership on [t_i, t_{i+1}) is membership[i] (piecewise constant from the
  /// left sample); [0, t_0) inherits membership[0]. Times strictly increasing, >= 0.
  static IndicatorTrace continuous(std::vector<double> times, std::vector<bool> membership);
  /// Membership of k = 1 .. K.
  static IndicatorTrace discrete(std::vector<bool> membership);

  TraceMode mode() const { return mode_; }
  const std::vector<double>& times() const { return times_; }
  const std::vector<bool>& membership() const { return membership_; }
  std::size_t size() const { return times_.size(); }
  double horizon() const { return times_.back(); }

 private:
  IndicatorTrace(TraceMode mode, std::vector<double> times, std::vector<bool> membership);

  TraceMode mode_;
  std::vector<double> times_;
  std::vector<bool> membership_;
};

struct DensityPoint {
  double t = 0.0;
  double ratio = 0.0;
};

struct DensityEstimate {
  std::vector<DensityPoint> profile;
  double upper_estimate = 0.0;
  double tail_window = 0.5;
  double horizon = 0.0;
};

inline constexpr double kDefaultTailWindow = 0.5;

/// Continuous: ratio(t) = m(D cap [0, t]) / t. Discrete: ratio(n) = #{k <= n in D} / n.
/// Throws Domain when the horizon is 0.
DensityEstimate density_profile(const IndicatorTrace& trace, double tail_window = kDefaultTailWindow);

/// Pointwise conjunction. Throws Precondition unless all sample times coincide.
IndicatorTrace intersect_traces(std::span<const IndicatorTrace> traces);

}  // namespace dchaos
