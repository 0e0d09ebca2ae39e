#include "dchaos/mittag_leffler.hpp"

#include <boost/math/special_functions/gamma.hpp>
#include <boost/multiprecision/cpp_bin_float.hpp>
#include <cmath>
#include <limits>
#include <map>
#include <numbers>
#include <string>

#include "dchaos/errors.hpp"
#include "dchaos/kernels.hpp"

namespace dchaos {
namespace {

namespace mp = boost::multiprecision;

constexpr int kMaxTerms = 200000;
constexpr double kPi = std::numbers::pi;

bool is_gamma_pole(double x) { return x <= 0.0 && std::abs(x - std::round(x)) < 1e-12; }

double reciprocal_gamma(double x) { return is_gamma_pole(x) ? 0.0 : 1.0 / std::tgamma(x); }

// Double-precision pass. Terms are formed from logarithms so large |z| cannot
// overflow the running power.
// Terms and the running sum are carried in long double so the rounded result is
// faithful to double precision when no cancellation occurs.
SeriesResult series_double(double beta, Complex z, double tol) {
  using Wide = std::complex<long double>;
  SeriesResult out;
  const long double log_abs = std::log(static_cast<long double>(std::abs(z)));
  const long double angle = std::atan2(static_cast<long double>(z.imag()), static_cast<long double>(z.real()));
  Wide sum{};
  int small = 0;
  for (int n = 0; n < kMaxTerms; ++n) {
    const long double magnitude =
        n == 0 ? 1.0L : std::exp(n * log_abs - std::lgamma(static_cast<long double>(beta) * n + 1.0L));
    if (z.imag() == 0.0) {
      sum += (z.real() < 0.0 && n % 2 == 1) ? -magnitude : magnitude;
    } else {
      sum += std::polar(magnitude, n * angle);
    }
    const double m = static_cast<double>(magnitude);
    out.max_term = std::max(out.max_term, m);
    out.last_term = m;
    out.terms = n + 1;
    if (n > 0 && magnitude <= tol * std::abs(sum)) {
      if (++small == 2) break;
    } else {
      small = 0;
    }
  }
  out.value = Complex(static_cast<double>(sum.real()), static_cast<double>(sum.imag()));
  out.precision_digits = 16;
  out.converged = small == 2 && std::isfinite(std::abs(out.value));
  out.error_estimate = out.last_term + 4.0 * std::numeric_limits<double>::epsilon() * out.max_term;
  return out;
}

template <class Real>
const std::vector<Real>& reciprocal_gamma_table(double beta, std::size_t needed) {
  thread_local std::map<double, std::vector<Real>> cache;
  std::vector<Real>& table = cache[beta];
  const Real b(beta);
  while (table.size() < needed) {
    const Real x = b * static_cast<int>(table.size()) + 1;
    table.push_back(Real(1) / boost::math::tgamma(x));
  }
  return table;
}

template <int Digits>
SeriesResult series_wide(double beta, Complex z, double tol) {
  using Real = mp::number<mp::cpp_bin_float<Digits>, mp::et_off>;
  SeriesResult out;
  const Real zr(z.real());
  const Real zi(z.imag());
  Real pr(1), pi(0);
  Real sr(0), si(0);
  int small = 0;
  std::size_t chunk = 256;
  const std::vector<Real>* rg = &reciprocal_gamma_table<Real>(beta, chunk);
  for (int n = 0; n < kMaxTerms; ++n) {
    if (static_cast<std::size_t>(n) >= rg->size()) {
      chunk *= 2;
      rg = &reciprocal_gamma_table<Real>(beta, chunk);
    }
    const Real& w = (*rg)[n];
    const Real tr = pr * w;
    const Real ti = pi * w;
    sr += tr;
    si += ti;
    const double magnitude = std::hypot(static_cast<double>(tr), static_cast<double>(ti));
    const double sum_magnitude = std::hypot(static_cast<double>(sr), static_cast<double>(si));
    out.max_term = std::max(out.max_term, magnitude);
    out.last_term = magnitude;
    out.terms = n + 1;
    if (n > 0 && magnitude <= tol * sum_magnitude) {
      if (++small == 2) break;
    } else {
      small = 0;
    }
    const Real nr = pr * zr - pi * zi;
    pi = pr * zi + pi * zr;
    pr = nr;
  }
  out.value = Complex(static_cast<double>(sr), static_cast<double>(si));
  out.precision_digits = Digits;
  out.converged = small == 2 && std::isfinite(std::abs(out.value));
  out.error_estimate = out.last_term + out.max_term * std::pow(10.0, 2 - Digits);
  return out;
}

bool accurate(const SeriesResult& r, double relative) {
  return r.converged && r.error_estimate <= relative * std::abs(r.value);
}

}  // namespace

double g_kernel(double zeta, double t) {
  if (!(zeta > 0.0)) fail(ErrorKind::Domain, "g_zeta needs zeta > 0");
  if (t < 0.0 || !std::isfinite(t)) fail(ErrorKind::Domain, "g_zeta(t) needs t >= 0");
  if (t == 0.0) {
    if (zeta < 1.0) fail(ErrorKind::Domain, "g_zeta is singular at t = 0 for zeta < 1");
    return zeta == 1.0 ? 1.0 : 0.0;
  }
  return std::pow(t, zeta - 1.0) / std::tgamma(zeta);
}

SeriesResult ml_series(double beta, Complex z, double tol) {
  if (!(beta > 0.0)) fail(ErrorKind::Domain, "Mittag-Leffler series needs beta > 0");
  if (!(tol > 0.0)) fail(ErrorKind::Precondition, "series tolerance must be positive");
  if (z == Complex{}) {
    SeriesResult one;
    one.value = 1.0;
    one.max_term = 1.0;
    one.terms = 1;
    return one;
  }
  SeriesResult r = series_double(beta, z, tol);
  if (accurate(r, 1e-13)) return r;
  constexpr double kWide = 1e-15;
  r = series_wide<50>(beta, z, tol);
  if (accurate(r, kWide)) return r;
  r = series_wide<100>(beta, z, tol);
  if (accurate(r, kWide)) return r;
  r = series_wide<200>(beta, z, tol);
  if (accurate(r, kWide)) return r;
  r.converged = false;
  return r;
}

MLSector ml_sector(double zeta, Complex z) {
  if (z == Complex{}) return MLSector::Neither;
  const double growth_half_angle = zeta * kPi / 2.0;
  if (std::abs(std::arg(z)) < growth_half_angle - kSlack) return MLSector::Growth;
  if (std::abs(std::arg(-z)) < kPi - growth_half_angle - kSlack) return MLSector::Decay;
  return MLSector::Neither;
}

AsymptoticResult ml_asymptotic(double zeta, Complex z, int order) {
  if (!(zeta > 0.0 && zeta < 2.0) || zeta == 1.0) {
    fail(ErrorKind::Domain, "asymptotic expansion needs zeta in (0,2) without 1");
  }
  if (order < 2) fail(ErrorKind::Precondition, "asymptotic order must be >= 2");
  AsymptoticResult out;
  out.sector = ml_sector(zeta, z);
  if (out.sector == MLSector::Neither) {
    fail(ErrorKind::Sector, "arg z = " + std::to_string(std::arg(z)) + " lies on or outside both open sectors");
  }

  Complex eps{};
  Complex inverse_power = 1.0;
  const Complex inverse = 1.0 / z;
  for (int n = 1; n < order; ++n) {
    inverse_power *= inverse;
    eps -= inverse_power * reciprocal_gamma(1.0 - zeta * n);
  }
  out.value = eps;
  if (out.sector == MLSector::Growth) out.value += std::exp(std::pow(z, 1.0 / zeta)) / zeta;

  const double abs_z = std::abs(z);
  for (int n = order; n < order + 64; ++n) {
    const double rg = reciprocal_gamma(1.0 - zeta * n);
    if (rg == 0.0) continue;
    out.remainder_estimate = std::abs(rg) * std::pow(abs_z, -n);
    break;
  }

  // Exponential branches exp(|z|^{1/zeta} e^{i(arg z + 2 pi m)/zeta}) that can be
  // present (|arg z + 2 pi m| < zeta pi) but are not part of the formula.
  const double radius = std::pow(abs_z, 1.0 / zeta);
  for (int m = -2; m <= 2; ++m) {
    if (m == 0 && out.sector == MLSector::Growth) continue;
    const double angle = std::arg(z) + 2.0 * kPi * m;
    if (std::abs(angle) >= zeta * kPi) continue;
    out.neglected_exponential += std::exp(radius * std::cos(angle / zeta)) / zeta;
  }
  return out;
}

void MLParams::validate() const {
  if (!(beta > 0.0)) fail(ErrorKind::Domain, "MLParams.beta must be positive");
  if (!(series_tol > 0.0)) fail(ErrorKind::Precondition, "MLParams.series_tol must be positive");
  if (asymptotic_order < 2) fail(ErrorKind::Precondition, "MLParams.asymptotic_order must be >= 2");
  if (!(crossover_radius >= 5.0)) fail(ErrorKind::Precondition, "MLParams.crossover_radius must be >= 5");
}

MLValue ml_eval(const MLParams& params, Complex z) {
  params.validate();
  const bool asymptotics_apply = (params.beta > 0.0 && params.beta < 2.0 && params.beta != 1.0);
  MLValue out;
  if (std::abs(z) >= params.crossover_radius && asymptotics_apply &&
      ml_sector(params.beta, z) != MLSector::Neither) {
    const AsymptoticResult a = ml_asymptotic(params.beta, z, params.asymptotic_order);
    const double error = a.remainder_estimate + a.neglected_exponential;
    if (std::isfinite(std::abs(a.value)) && error <= params.asymptotic_gate * std::abs(a.value)) {
      out = {a.value, MLBranch::Asymptotic, error, true};
    } else {
      const SeriesResult s = ml_series(params.beta, z, params.series_tol);
      if (s.converged || s.error_estimate <= error) {
        out = {s.value, MLBranch::Series, s.error_estimate, s.converged};
      } else {
        out = {a.value, MLBranch::Asymptotic, error, false};
      }
    }
  } else {
    const SeriesResult s = ml_series(params.beta, z, params.series_tol);
    out = {s.value, MLBranch::Series, s.error_estimate, s.converged};
  }
  if (!std::isfinite(out.value.real()) || !std::isfinite(out.value.imag())) {
    fail(ErrorKind::Overflow, "E_beta(z) at |z| = " + std::to_string(std::abs(z)) + " is not a finite double");
  }
  return out;
}

std::vector<double> caputo_l1(std::span<const double> samples, double h, double zeta) {
  if (!(h > 0.0)) fail(ErrorKind::Domain, "Caputo L1 step h must be positive");
  if (!(zeta > 0.0 && zeta < 1.0)) fail(ErrorKind::Domain, "Caputo L1 scheme needs zeta in (0,1)");
  if (samples.size() < 3) fail(ErrorKind::Precondition, "Caputo L1 scheme needs at least 3 samples");

  const std::size_t steps = samples.size() - 1;
  std::vector<double> weights(steps);
  for (std::size_t k = 0; k < steps; ++k) {
    weights[k] = std::pow(static_cast<double>(k + 1), 1.0 - zeta) - std::pow(static_cast<double>(k), 1.0 - zeta);
  }
  // Increments stored in reverse so each convolution is a contiguous dot product.
  std::vector<double> reversed(steps);
  for (std::size_t j = 0; j < steps; ++j) reversed[steps - 1 - j] = samples[j + 1] - samples[j];

  const double scale = std::pow(h, -zeta) / std::tgamma(2.0 - zeta);
  std::vector<double> out(steps);
  const std::span<const double> w(weights);
  const std::span<const double> r(reversed);
  for (std::size_t n = 1; n <= steps; ++n) {
    out[n - 1] = scale * kernels::dot(w.first(n), r.subspan(steps - n, n));
  }
  return out;
}

}  // namespace dchaos
