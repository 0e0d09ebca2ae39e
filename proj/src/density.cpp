#include "dchaos/density.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "dchaos/errors.hpp"

namespace dchaos {

IndicatorTrace::IndicatorTrace(TraceMode mode, std::vector<double> times, std::vector<bool> membership)
    : mode_(mode), times_(std::move(times)), membership_(std::move(membership)) {
  if (times_.empty()) fail(ErrorKind::Precondition, "indicator trace must be nonempty");
  if (times_.size() != membership_.size()) {
    fail(ErrorKind::Precondition, "indicator trace: times and membership lengths differ");
  }
  for (std::size_t i = 0; i < times_.size(); ++i) {
    if (!std::isfinite(times_[i]) || times_[i] < 0.0) {
      fail(ErrorKind::Precondition, "indicator trace: sample time " + std::to_string(i) + " is not >= 0");
    }
    if (i > 0 && !(times_[i] > times_[i - 1])) {
      fail(ErrorKind::Precondition, "indicator trace: sample times must be strictly increasing");
    }
  }
}

IndicatorTrace IndicatorTrace::continuous(std::vector<double> times, std::vector<bool> membership) {
  return IndicatorTrace(TraceMode::Continuous, std::move(times), std::move(membership));
}

IndicatorTrace IndicatorTrace::discrete(std::vector<bool> membership) {
  std::vector<double> times(membership.size());
  for (std::size_t k = 0; k < times.size(); ++k) times[k] = static_cast<double>(k + 1);
  return IndicatorTrace(TraceMode::Discrete, std::move(times), std::move(membership));
}

DensityEstimate density_profile(const IndicatorTrace& trace, double tail_window) {
  if (!(tail_window > 0.0 && tail_window <= 1.0)) {
    fail(ErrorKind::Precondition, "tail_window must lie in (0, 1]");
  }
  const double horizon = trace.horizon();
  if (!(horizon > 0.0)) fail(ErrorKind::Domain, "density of a trace with horizon 0");

  const auto& times = trace.times();
  const auto& member = trace.membership();
  DensityEstimate out;
  out.tail_window = tail_window;
  out.horizon = horizon;
  out.profile.reserve(times.size());

  if (trace.mode() == TraceMode::Discrete) {
    std::size_t count = 0;
    for (std::size_t i = 0; i < times.size(); ++i) {
      if (member[i]) ++count;
      out.profile.push_back({times[i], static_cast<double>(count) / times[i]});
    }
  } else {
    // Measure accumulated with the left sample's membership on each interval.
    double measure = member[0] ? times[0] : 0.0;
    for (std::size_t i = 0; i < times.size(); ++i) {
      if (i > 0 && member[i - 1]) measure += times[i] - times[i - 1];
      if (times[i] > 0.0) out.profile.push_back({times[i], std::min(1.0, measure / times[i])});
    }
  }

  const double tail_start = (1.0 - tail_window) * horizon;
  for (const DensityPoint& point : out.profile) {
    if (point.t >= tail_start) out.upper_estimate = std::max(out.upper_estimate, point.ratio);
  }
  return out;
}

IndicatorTrace intersect_traces(std::span<const IndicatorTrace> traces) {
  if (traces.empty()) fail(ErrorKind::Precondition, "intersection of an empty list of traces");
  const IndicatorTrace& first = traces.front();
  std::vector<bool> member = first.membership();
  for (std::size_t j = 1; j < traces.size(); ++j) {
    const IndicatorTrace& tr = traces[j];
    if (tr.mode() != first.mode() || tr.times() != first.times()) {
      fail(ErrorKind::Precondition, "intersect_traces: trace " + std::to_string(j) +
                                        " has different sample times (no resampling is done)");
    }
    for (std::size_t i = 0; i < member.size(); ++i) member[i] = member[i] && tr.membership()[i];
  }
  if (first.mode() == TraceMode::Discrete) return IndicatorTrace::discrete(std::move(member));
  return IndicatorTrace::continuous(first.times(), std::move(member));
}

}  // namespace dchaos
