#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "dchaos/chaos_detect.hpp"
#include "dchaos/errors.hpp"

namespace dchaos {
namespace {

constexpr const char* kEvidenceLabel =
    "numerical evidence for the hypotheses on a finite horizon; the dense scrambled "
    "subspace would follow from the hypotheses and is not verified";

std::string fmt(double x) {
  std::ostringstream out;
  out.precision(15);
  out << x;
  return out.str();
}

std::string fmt(Complex z) { return "(" + fmt(z.real()) + ", " + fmt(z.imag()) + ")"; }

// Condition on one sample point across all polynomials.
struct PointTest {
  bool holds = true;
  double worst = 0.0;  // Re Q_j(z) or |arg lambda_j| of the binding polynomial
};

PointTest decay_test(const std::vector<Polynomial>& polys, const SectorVariant& variant, Complex z) {
  PointTest out;
  out.worst = variant.kind == SectorVariant::Kind::AB ? -HUGE_VAL : HUGE_VAL;
  const double alpha = variant.zeta * std::numbers::pi / 2.0;
  for (const auto& q : polys) {
    if (variant.kind == SectorVariant::Kind::AB) {
      const double re = q(z).real();
      out.worst = std::max(out.worst, re);
      out.holds = out.holds && re < -kSlack;
    } else {
      const Complex lambda = -std::polar(1.0, variant.theta) * q(z);
      const double angle = lambda == Complex{} ? 0.0 : std::abs(std::arg(lambda));
      out.worst = std::min(out.worst, angle);
      out.holds = out.holds && !in_closed_sector(lambda, alpha);
    }
  }
  return out;
}

PointTest growth_test(const std::vector<Polynomial>& polys, const SectorVariant& variant, Complex z) {
  PointTest out;
  out.worst = variant.kind == SectorVariant::Kind::AB ? HUGE_VAL : -HUGE_VAL;
  const double alpha = variant.zeta * std::numbers::pi / 2.0;
  for (const auto& q : polys) {
    if (variant.kind == SectorVariant::Kind::AB) {
      const double re = q(z).real();
      out.worst = std::min(out.worst, re);
      out.holds = out.holds && re > kSlack;
    } else {
      const Complex lambda = -std::polar(1.0, variant.theta) * q(z);
      const double angle = lambda == Complex{} ? HUGE_VAL : std::abs(std::arg(lambda));
      out.worst = std::max(out.worst, angle);
      out.holds = out.holds && in_open_sector(lambda, alpha);
    }
  }
  return out;
}

}  // namespace

const char* status_name(Status status) {
  switch (status) {
    case Status::Pass: return "pass";
    case Status::Fail: return "fail";
    case Status::Inconclusive: return "inconclusive";
  }
  return "unknown";
}

bool HypothesisReport::all_pass() const {
  return !items.empty() &&
         std::all_of(items.begin(), items.end(), [](const HypothesisItem& i) { return i.status == Status::Pass; });
}

const HypothesisItem* HypothesisReport::find(const std::string& name) const {
  for (const auto& item : items) {
    if (item.name == name) return &item;
  }
  return nullptr;
}

HypothesisReport sector_condition_check(const std::vector<Polynomial>& polys, const RegionPredicate& region,
                                        const SectorVariant& variant) {
  if (polys.empty()) fail(ErrorKind::Precondition, "sector check needs at least one polynomial");
  if (region.decay_samples.empty()) fail(ErrorKind::Precondition, "sector check has an empty decay sample set");
  if (region.witness_samples.empty()) fail(ErrorKind::Precondition, "sector check has an empty witness sample set");
  for (const auto& q : polys) q.validate();
  const bool prime = variant.kind == SectorVariant::Kind::ABprime;
  if (prime) {
    if (!(variant.zeta > 1.0 && variant.zeta < 2.0)) fail(ErrorKind::Precondition, "(A)'/(B)' need zeta in (1, 2)");
    const double bound = std::numbers::pi - variant.zeta * std::numbers::pi / 2.0;
    if (!(std::abs(variant.theta) < bound)) {
      fail(ErrorKind::Precondition, "theta must lie in (zeta pi/2 - pi, pi - zeta pi/2)");
    }
  }
  region.validate_samples();

  HypothesisReport report;
  report.label = "sector conditions on " + region.describe() + "; finite sample sets stand in for the regions";

  HypothesisItem a;
  a.name = prime ? "A'" : "A";
  a.status = Status::Pass;
  double closest = HUGE_VAL;
  for (Complex z : region.decay_samples) {
    const PointTest test = decay_test(polys, variant, z);
    closest = std::min(closest, std::abs(z - region.cluster_point));
    if (!test.holds) {
      a.status = Status::Fail;
      a.witness_points = {z};
      a.witness_values = {test.worst};
      a.detail = "decay condition fails at z = " + fmt(z);
      break;
    }
    a.witness_points.push_back(z);
    a.witness_values.push_back(test.worst);
  }
  if (a.status == Status::Pass) {
    a.detail = std::to_string(region.decay_samples.size()) + " samples pass; closest sample lies " + fmt(closest) +
               " from the cluster point " + fmt(region.cluster_point);
  }
  report.items.push_back(std::move(a));

  HypothesisItem b;
  b.name = prime ? "B'" : "B";
  b.status = Status::Fail;
  b.detail = "no witness sample satisfies the growth condition for every polynomial";
  for (Complex z : region.witness_samples) {
    const PointTest test = growth_test(polys, variant, z);
    if (test.holds) {
      b.status = Status::Pass;
      b.witness_points = {z};
      b.witness_values = {test.worst};
      b.detail = "growth witness z = " + fmt(z);
      break;
    }
  }
  report.items.push_back(std::move(b));
  return report;
}

HypothesisReport hypothesis_check_dense_chaos(const std::vector<FamilySpec>& specs, const std::vector<Element>& x0,
                                              const Element& candidate, const DetectionParams& params,
                                              const SamplePlan& plan, const DenseChaosOptions& options) {
  params.validate();
  if (x0.empty()) fail(ErrorKind::Precondition, "hypothesis (a) needs a nonempty X0 sample set");
  if (specs.empty()) fail(ErrorKind::Precondition, "hypothesis check needs at least one family");
  if (options.tail_segments < 1) fail(ErrorKind::Domain, "tail_segments must be >= 1");
  const std::vector<double> times = plan.times();
  HypothesisReport report;
  report.label = kEvidenceLabel;

  HypothesisItem a;
  a.name = "a";
  a.status = Status::Pass;
  a.detail = "every X0 orbit is below " + fmt(options.decay_tolerance) + " at the horizon with a nonincreasing tail";
  try {
    for (std::size_t i = 0; i < x0.size() && a.status == Status::Pass; ++i) {
      for (const OrbitTrace& trace : trace_orbits(specs, x0[i], times, params)) {
        const double last = trace.distance.back();
        a.witness_values.push_back(last);
        if (!(last < options.decay_tolerance)) {
          a.status = Status::Fail;
          a.detail = "X0 sample " + std::to_string(i) + ", family " + std::to_string(trace.family) +
                     ": orbit distance to 0 is " + fmt(last) + " at the horizon";
          break;
        }
        // Maxima over equal segments of the second half must not increase.
        const std::size_t begin = trace.distance.size() / 2;
        const std::size_t length = trace.distance.size() - begin;
        const auto segments = static_cast<std::size_t>(options.tail_segments);
        double previous = HUGE_VAL;
        for (std::size_t s = 0; s < segments && length >= segments; ++s) {
          const auto first = trace.distance.begin() + static_cast<long>(begin + s * length / segments);
          const auto end = trace.distance.begin() + static_cast<long>(begin + (s + 1) * length / segments);
          const double peak = *std::max_element(first, end);
          if (peak > previous * (1.0 + 1e-9) + kSlack) {
            a.status = Status::Fail;
            a.detail = "X0 sample " + std::to_string(i) + ", family " + std::to_string(trace.family) +
                       ": orbit tail is not decreasing";
            break;
          }
          previous = peak;
        }
        if (a.status != Status::Pass) break;
      }
    }
  } catch (const Error& e) {
    a.status = Status::Inconclusive;
    a.detail = e.what();
  }
  report.items.push_back(std::move(a));

  HypothesisItem b;
  b.name = "b";
  try {
    const std::vector<OrbitTrace> traces = trace_orbits(specs, candidate, times, params);
    b.status = Status::Pass;
    for (double M : params.M_levels) {
      const IndicatorTrace big = intersected_trace(traces, [&](const OrbitTrace& t, std::size_t i) {
        return t.seminorm[i] > M;
      });
      const DensityEstimate est = density_profile(big, params.tail_window);
      b.witness_values.push_back(est.upper_estimate);
      b.witness_times.push_back(est.horizon);
      if (est.upper_estimate < params.threshold) b.status = Status::Fail;
    }
    b.detail = "density of {p_" + std::to_string(params.m) + " > M} for every family, per M level, against threshold " +
               fmt(params.threshold);
  } catch (const Error& e) {
    b.status = Status::Inconclusive;
    b.detail = e.what();
  }
  report.items.push_back(std::move(b));
  return report;
}

}  // namespace dchaos
