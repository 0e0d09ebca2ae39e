#include <cmath>
#include <vector>

#include "detail.hpp"
#include "dchaos/errors.hpp"
#include "dchaos/kernels.hpp"
#include "dchaos/operator_models.hpp"

namespace dchaos {
namespace {

// (1 + x)^p - 1 without cancellation for small x.
double pow1pm1(double x, double p) { return std::expm1(p * std::log1p(x)); }

// Second difference (m+1)^p - 2 m^p + (m-1)^p, m >= 1.
double second_difference(double m, double p) {
  if (m < 2.0) return std::pow(m + 1.0, p) - 2.0 * std::pow(m, p) + std::pow(m - 1.0, p);
  return std::pow(m, p) * (pow1pm1(1.0 / m, p) + pow1pm1(-1.0 / m, p));
}

// Product-trapezoid weights for int_0^{nh} g_q(nh - s) f(s) ds, without the
// h^q / Gamma(q + 2) factor.
std::vector<double> product_trapezoid_weights(std::size_t n, double q) {
  const double p = q + 1.0;
  const double nn = static_cast<double>(n);
  std::vector<double> a(n + 1);
  a[0] = std::pow(nn, q) * (nn * pow1pm1(-1.0 / nn, p) + p);
  for (std::size_t j = 1; j < n; ++j) a[j] = second_difference(static_cast<double>(n - j), p);
  a[n] = 1.0;
  return a;
}

// Every other sample, for the step-doubling estimate.
std::vector<Complex> coarsen(std::span<const Complex> samples) {
  std::vector<Complex> out;
  for (std::size_t k = 0; k < samples.size(); k += 2) out.push_back(samples[k]);
  return out;
}

// Central second difference in the interior, 0 at the two end points.
GridFunction second_derivative(const GridFunction& f) {
  GridFunction out = GridFunction::zeros(f.x_max(), f.h());
  const auto in = f.values();
  auto values = out.values();
  const double inv = 1.0 / (f.h() * f.h());
  for (std::size_t i = 1; i + 1 < in.size(); ++i) values[i] = (in[i + 1] - 2.0 * in[i] + in[i - 1]) * inv;
  return out;
}

GridFunction first_derivative(const GridFunction& f) {
  GridFunction out = GridFunction::zeros(f.x_max(), f.h());
  const auto in = f.values();
  auto values = out.values();
  const double inv = 0.5 / f.h();
  for (std::size_t i = 1; i + 1 < in.size(); ++i) values[i] = (in[i + 1] - in[i - 1]) * inv;
  return out;
}

double weighted_l2(const GridFunction& f, const Weight& weight) {
  std::vector<double> w(f.size());
  for (std::size_t i = 0; i < w.size(); ++i) w[i] = weight(f.x(i)) * f.h();
  return std::sqrt(kernels::weighted_sum_squares(f.values(), w));
}

// Grid steps per quadrature step must be whole so every node is an exact shift.
std::size_t checked_steps(double t, double step) { return detail::whole_steps(t, step, "quadrature step"); }

IdentityResidual spectral_integrated_identity(const FamilySpec& spec, const SpectralVector& x, double alpha,
                                              double t, double step) {
  std::size_t n = checked_steps(t, step);
  IdentityResidual out;
  if (n == 0) return out;
  if (n % 2 == 1) n += 1;
  const double h = t / static_cast<double>(n);
  out.step = h;
  const double g_next = std::pow(t, alpha) / std::tgamma(alpha + 1.0);

  for (const auto& [mu, c] : x.entries()) {
    const Complex lambda = spec.eigenvalue(mu);
    std::vector<Complex> e(n + 1);
    for (std::size_t k = 0; k <= n; ++k) e[k] = std::exp(lambda * (static_cast<double>(k) * h));
    const auto coarse = coarsen(e);
    auto residual_at = [&](std::span<const Complex> samples, double hh) {
      const Complex s_t = alpha == 0.0 ? samples.back() : fractional_integral(samples, hh, alpha);
      const Complex integral = fractional_integral(samples, hh, alpha + 1.0);
      return lambda * integral - s_t + g_next;
    };
    const Complex fine = residual_at(e, h);
    const Complex rough = residual_at(coarse, 2.0 * h);
    const double scale = std::abs(c) * std::abs(spec.regularizer(mu));
    out.residual += std::abs(fine) * scale;
    out.quadrature_error += std::abs(fine - rough) / 3.0 * scale;
  }
  return out;
}

IdentityResidual grid_integrated_identity(const FamilySpec& spec, const GridFunction& x, double alpha, double t,
                                          double step) {
  if (alpha != 0.0 && alpha != 1.0) fail(ErrorKind::Domain, "translation identity supports alpha in {0, 1}");
  const std::size_t n = checked_steps(t, step);
  IdentityResidual out;
  out.step = step;
  if (n == 0) return out;

  // s_int = int_0^t T(s)x ds; weighted = int_0^t (t - s) T(s)x ds.
  GridFunction s_int = GridFunction::zeros(x.x_max(), x.h());
  GridFunction weighted = GridFunction::zeros(x.x_max(), x.h());
  for (std::size_t k = 0; k <= n; ++k) {
    const double s = static_cast<double>(k) * step;
    const double tau = (k == 0 || k == n) ? 0.5 * step : step;
    const GridFunction shifted = grid_orbit(x, s, spec.speed);
    kernels::axpy(tau, shifted.values(), s_int.values());
    kernels::axpy(tau * (t - s), shifted.values(), weighted.values());
  }

  GridFunction r;
  if (alpha == 0.0) {
    r = spec.speed * first_derivative(s_int) - grid_orbit(x, t, spec.speed) + x;
  } else {
    r = spec.speed * first_derivative(weighted) - s_int + t * x;
  }
  out.residual = weighted_l2(r, spec.weight);
  return out;
}

}  // namespace

Complex fractional_integral(std::span<const Complex> samples, double h, double order) {
  if (!(order > 0.0)) fail(ErrorKind::Domain, "fractional integral order must be positive");
  if (!(h > 0.0)) fail(ErrorKind::Domain, "quadrature step must be positive");
  if (samples.size() < 2) return 0.0;
  const std::size_t n = samples.size() - 1;
  const std::vector<double> a = product_trapezoid_weights(n, order);
  std::vector<double> re(n + 1), im(n + 1);
  for (std::size_t k = 0; k <= n; ++k) {
    re[k] = samples[k].real();
    im[k] = samples[k].imag();
  }
  const double scale = std::pow(h, order) / std::tgamma(order + 2.0);
  return scale * Complex(kernels::dot(a, re), kernels::dot(a, im));
}

IdentityResidual check_integrated_identity(const FamilySpec& spec, const Element& x, double alpha, double t,
                                           double step) {
  if (!(alpha >= 0.0)) fail(ErrorKind::Domain, "integration order alpha must be >= 0");
  if (spec.kind == FamilyKind::SpectralFirstOrder) {
    if (const auto* s = std::get_if<SpectralVector>(&x)) return spectral_integrated_identity(spec, *s, alpha, t, step);
  }
  if (spec.kind == FamilyKind::Translation) {
    if (const auto* g = std::get_if<GridFunction>(&x)) return grid_integrated_identity(spec, *g, alpha, t, step);
  }
  fail(ErrorKind::Domain, std::string("integrated identity is not available for ") + family_kind_name(spec.kind) +
                              " families on " + representation_name(x) + " elements");
}

IdentityResidual check_resolvent_identity(const FamilySpec& spec, const SpectralVector& x, double t, double step,
                                          double tol) {
  if (spec.kind != FamilyKind::SpectralFractional) {
    fail(ErrorKind::Precondition, "resolvent identity needs a spectral_fractional family");
  }
  std::size_t n = checked_steps(t, step);
  IdentityResidual out;
  if (n == 0) return out;
  if (n % 2 == 1) n += 1;
  const double h = t / static_cast<double>(n);
  out.step = h;
  MLParams params = spec.ml;
  params.beta = spec.zeta;

  for (const auto& [mu, c] : x.entries()) {
    const Complex lambda = spec.eigenvalue(mu);
    std::vector<Complex> e(n + 1);
    for (std::size_t k = 0; k <= n; ++k) {
      e[k] = ml_eval(params, lambda * std::pow(static_cast<double>(k) * h, spec.zeta)).value;
    }
    const Complex fine = fractional_integral(e, h, spec.zeta);
    const Complex rough = fractional_integral(coarsen(e), 2.0 * h, spec.zeta);
    const double scale = std::abs(c) * std::abs(spec.regularizer(mu));
    out.residual += std::abs(e.back() - 1.0 - lambda * fine) * scale;
    out.quadrature_error += std::abs(lambda) * std::abs(fine - rough) / 3.0 * scale;
  }
  out.quadrature_ok = out.quadrature_error <= tol;
  return out;
}

IdentityResidual block_identity_residual(const GridPair& v, double t, double quad_step, double speed,
                                         const Weight& weight) {
  const auto& [u, w] = v;
  if (!u.same_grid(w)) fail(ErrorKind::Representation, "block components must share a grid");
  const std::size_t n = checked_steps(t, quad_step);
  IdentityResidual out;
  out.step = quad_step;
  if (n == 0) return out;

  // int_0^t S_1(s) v ds, reduced to single integrals against C(r):
  //   first  = int (t-r) C u + int (t-r)^2/2 C w,
  //   second = int C u - t u + int (t-r) C w.
  GridFunction first = GridFunction::zeros(u.x_max(), u.h());
  GridFunction second = GridFunction::zeros(u.x_max(), u.h());
  for (std::size_t k = 0; k <= n; ++k) {
    const double r = static_cast<double>(k) * quad_step;
    const double tau = (k == 0 || k == n) ? 0.5 * quad_step : quad_step;
    const GridFunction cu = cosine_orbit(u, r, speed);
    const GridFunction cw = cosine_orbit(w, r, speed);
    kernels::axpy(tau * (t - r), cu.values(), first.values());
    kernels::axpy(tau * 0.5 * (t - r) * (t - r), cw.values(), first.values());
    kernels::axpy(tau, cu.values(), second.values());
    kernels::axpy(tau * (t - r), cw.values(), second.values());
  }
  kernels::axpy(-t, u.values(), second.values());

  const GridPair s1 = integrated_block(v, t, quad_step, speed);
  const GridFunction r1 = second - s1.first + t * u;
  const GridFunction r2 = (speed * speed) * second_derivative(first) - s1.second + t * w;
  const double a = weighted_l2(r1, weight);
  const double b = weighted_l2(r2, weight);
  out.residual = std::sqrt(a * a + b * b);
  return out;
}

}  // namespace dchaos
