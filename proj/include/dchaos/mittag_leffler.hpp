#pragma once

// Mittag-Leffler function E_beta(z) = sum_n z^n / Gamma(beta n + 1), the kernels
// g_zeta(t) = t^{zeta-1} / Gamma(zeta), and an L1 discretization of the Caputo
// derivative of order zeta in (0, 1).

#include <span>
#include <vector>

#include "dchaos/elements.hpp"

namespace dchaos {

/// t^{zeta-1} / Gamma(zeta). Throws Domain for zeta <= 0, t < 0, or t = 0 with zeta < 1.
double g_kernel(double zeta, double t);

inline constexpr double kDefaultSeriesTol = 1e-17;

struct SeriesResult {
  Complex value;
  double last_term = 0.0;  // magnitude of the last term added
  double max_term = 0.0;   // largest term magnitude (cancellation scale)
  double error_estimate = 0.0;
  int terms = 0;
  int precision_digits = 16;  // working precision that produced the value
  bool converged = true;      // false when even the widest precision lost the value
};

/// Partial sums until two consecutive terms fall below tol relative to the running
/// sum. The working precision is widened (double, 50, 100, 200 digits) until the
/// cancellation error max_term * 10^-digits is negligible against the result.
SeriesResult ml_series(double beta, Complex z, double tol = kDefaultSeriesTol);

enum class MLSector { Growth, Decay, Neither };

/// Growth: |arg z| < zeta pi/2. Decay: |arg(-z)| < pi - zeta pi/2. Open sectors;
/// points within kSlack of a boundary ray (and z = 0) are in neither.
MLSector ml_sector(double zeta, Complex z);

struct AsymptoticResult {
  Complex value;
  MLSector sector = MLSector::Neither;
  double remainder_estimate = 0.0;     // first omitted nonzero term of eps_zeta
  double neglected_exponential = 0.0;  // exponential branches the formula leaves out
};

/// Growth sector: exp(z^{1/zeta}) / zeta + eps(z); decay sector: eps(z), with
/// eps(z) = -sum_{n=1}^{order-1} z^{-n} / Gamma(1 - zeta n) (principal branch;
/// terms at poles of Gamma vanish). zeta in (0,2)\{1}; meant for large |z|.
/// Throws Sector outside both open sectors.
AsymptoticResult ml_asymptotic(double zeta, Complex z, int order);

struct MLParams {
  double beta = 0.5;
  double series_tol = kDefaultSeriesTol;
  int asymptotic_order = 12;
  double crossover_radius = 10.0;
  /// Relative error the asymptotic branch must certify before ml_eval uses it.
  double asymptotic_gate = 1e-10;

  void validate() const;
};

enum class MLBranch { Series, Asymptotic };

struct MLValue {
  Complex value;
  MLBranch branch = MLBranch::Series;
  double error_estimate = 0.0;
  bool converged = true;
};

/// Series inside crossover_radius; outside, the asymptotic formula when z is in a
/// sector and the formula's own error estimate passes asymptotic_gate, else the
/// series. Throws Overflow when the value is not a finite double.
MLValue ml_eval(const MLParams& params, Complex z);

/// L1 product-integration scheme for the order-zeta Caputo derivative on the
/// uniform grid t_k = k h (samples[0] = u(0)). Returns D^zeta u(t_k), k = 1..n-1.
std::vector<double> caputo_l1(std::span<const double> samples, double h, double zeta);

}  // namespace dchaos
