#include "dchaos/frechet.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <memory>
#include <string>

#include "dchaos/errors.hpp"
#include "dchaos/kernels.hpp"

namespace dchaos {

SeminormFamily::SeminormFamily(SpaceKind kind, Eval eval, int n_max)
    : kind_(kind), eval_(std::move(eval)), n_max_(n_max) {
  if (n_max_ < 1) fail(ErrorKind::Precondition, "seminorm family needs n_max >= 1");
  if (!eval_) fail(ErrorKind::Precondition, "seminorm family needs an evaluator");
}

double SeminormFamily::operator()(int n, const Element& x) const {
  if (n < 1) fail(ErrorKind::Precondition, "seminorm index must be >= 1");
  return eval_(n, x);
}

SeminormFamily SeminormFamily::with_n_max(int n_max) const { return SeminormFamily(kind_, eval_, n_max); }

MetricValue frechet_metric(const SeminormFamily& family, const Element& x, const Element& y) {
  const Element diff = subtract(x, y);
  if (family.kind() == SpaceKind::Banach) return {family(1, diff), 0.0};
  double value = 0.0;
  double scale = 1.0;
  for (int n = 1; n <= family.n_max(); ++n) {
    scale *= 0.5;
    const double p = family(n, diff);
    value += scale * (std::isinf(p) ? 1.0 : p / (1.0 + p));
  }
  return {value, std::ldexp(1.0, -family.n_max())};
}

MetricValue distance_to_zero(const SeminormFamily& family, const Element& x) {
  return frechet_metric(family, x, zero_like(x));
}

MetricValue product_metric(const SeminormFamily& family, std::span<const Element> xs,
                           std::span<const Element> ys) {
  if (xs.empty()) fail(ErrorKind::Precondition, "product metric needs N >= 1 components");
  if (xs.size() != ys.size()) {
    fail(ErrorKind::Precondition, "product metric: " + std::to_string(xs.size()) + " vs " +
                                      std::to_string(ys.size()) + " components");
  }
  MetricValue out;
  for (std::size_t j = 0; j < xs.size(); ++j) {
    const MetricValue d = frechet_metric(family, xs[j], ys[j]);
    out.value = std::max(out.value, d.value);
    out.tail_bound = std::max(out.tail_bound, d.tail_bound);
  }
  return out;
}

SeminormFamily renorm(const SeminormFamily& family, std::span<const RenormConstant> constants) {
  // extra[n] collects the cross terms entering p'_n.
  auto extra = std::make_shared<std::map<int, std::vector<RenormConstant>>>();
  for (const RenormConstant& rc : constants) {
    if (rc.l < 1 || rc.k < 1) fail(ErrorKind::Precondition, "renorm constant indices must be >= 1");
    if (!(rc.c > 0.0)) fail(ErrorKind::Precondition, "renorm constant c must be positive");
    if (rc.a < 1 || rc.a > family.n_max()) {
      fail(ErrorKind::Precondition, "renorm index a = " + std::to_string(rc.a) + " outside 1.." +
                                        std::to_string(family.n_max()));
    }
    if (rc.l + rc.k > family.n_max()) {
      fail(ErrorKind::Precondition, "renorm constant (" + std::to_string(rc.l) + "," + std::to_string(rc.k) +
                                        ") exceeds n_max");
    }
    (*extra)[rc.l + rc.k].push_back(rc);
  }
  auto eval = [family, extra](int n, const Element& x) {
    double total = 0.0;
    for (int i = 1; i <= n; ++i) {
      total += family(i, x);
      auto it = extra->find(i);
      if (it == extra->end()) continue;
      for (const RenormConstant& rc : it->second) total += rc.c * family(rc.a, x);
    }
    return total;
  };
  return SeminormFamily(SpaceKind::Frechet, eval, family.n_max());
}

SeminormFamily banach_as_frechet(const SeminormFamily& banach) {
  auto eval = [banach](int n, const Element& x) { return n * banach(1, x); };
  return SeminormFamily(SpaceKind::Frechet, eval, banach.n_max());
}

SeminormFamily grid_seminorms(SpaceKind kind, const Weight& weight, double p, int n_max) {
  weight.validate();
  if (!(p >= 1.0)) fail(ErrorKind::Domain, "grid seminorms need p >= 1");
  auto eval = [kind, weight, p](int n, const Element& x) {
    const auto* g = std::get_if<GridFunction>(&x);
    if (g == nullptr) fail(ErrorKind::Representation, "grid seminorm applied to a non-grid element");
    const double window = kind == SpaceKind::Banach ? g->x_max() : static_cast<double>(n);
    const auto values = g->values();
    // Riemann sum over the grid points with |x_i| <= window.
    std::size_t lo = 0;
    std::size_t hi = values.size();
    while (lo < hi && g->x(lo) < -window - kSlack) ++lo;
    while (hi > lo && g->x(hi - 1) > window + kSlack) --hi;
    const std::size_t count = hi - lo;
    std::vector<double> w(count);
    for (std::size_t i = 0; i < count; ++i) w[i] = weight(g->x(lo + i)) * g->h();
    if (p == 2.0) return std::sqrt(kernels::weighted_sum_squares(values.subspan(lo, count), w));
    double sum = 0.0;
    for (std::size_t i = 0; i < count; ++i) sum += w[i] * std::pow(std::abs(values[lo + i]), p);
    return std::pow(sum, 1.0 / p);
  };
  return SeminormFamily(kind, eval, n_max);
}

SeminormFamily block_seminorms(SpaceKind kind, const Weight& weight, double p, int n_max) {
  weight.validate();
  auto eval = [kind, weight, p](int n, const Element& x) {
    const auto* f = std::get_if<BlockFunction>(&x);
    if (f == nullptr) fail(ErrorKind::Representation, "block seminorm applied to a non-block element");
    const double window = kind == SpaceKind::Banach ? HUGE_VAL : static_cast<double>(n);
    return f->weighted_norm(weight, p, window);
  };
  return SeminormFamily(kind, eval, n_max);
}

SeminormFamily spectral_seminorms(SpaceKind kind, int n_max) {
  auto eval = [kind](int n, const Element& x) {
    const auto* s = std::get_if<SpectralVector>(&x);
    if (s == nullptr) fail(ErrorKind::Representation, "spectral seminorm applied to a non-spectral element");
    double sum = 0.0;
    for (const auto& [mu, c] : s->entries()) {
      if (kind == SpaceKind::Frechet && std::abs(mu) > n + kSlack) continue;
      sum += std::abs(c);
    }
    return sum;
  };
  return SeminormFamily(kind, eval, n_max);
}

double graph_seminorm(const SpectralOperator& op, const SeminormFamily& family, int m, int n,
                      const SpectralVector& x) {
  if (n < 0) fail(ErrorKind::Precondition, "graph seminorm power n must be >= 0");
  double total = 0.0;
  SpectralVector power = x;
  for (int k = 0; k <= n; ++k) {
    total += family(m, power);
    if (k < n) power = power.mapped(op);
  }
  return total;
}

}  // namespace dchaos
