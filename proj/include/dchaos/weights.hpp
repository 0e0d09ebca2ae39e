#pragma once

#include <string>

namespace dchaos {

/// Spatial weight rho for the weighted L^p spaces on the real line.
struct Weight {
  enum class Kind {
    ExpDecay,  // rho(x) = exp(-a |x|)
    Rational,  // rho(x) = 1 / (x^{2n} + 1)
  };

  Kind kind = Kind::ExpDecay;
  double a = 1.0;
  int n = 1;

  static Weight exp_decay(double a);
  static Weight rational(int n);

  /// Throws Domain for a <= 0 or n < 1.
  void validate() const;
  double operator()(double x) const;
  /// Integral of rho over [lo, hi] (either bound may be infinite). Closed form for
  /// ExpDecay, piecewise Gauss-Kronrod on dyadic segments for Rational.
  double integral(double lo, double hi) const;

  std::string describe() const;
};

}  // namespace dchaos
