#include "dchaos/weights.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <limits>
#include <sstream>

#include "dchaos/errors.hpp"

namespace dchaos {
namespace {

// Integral of exp(-a x) over [lo, hi] with 0 <= lo <= hi.
double exp_tail(double a, double lo, double hi) {
  if (hi <= lo) return 0.0;
  if (std::isinf(hi)) return std::exp(-a * lo) / a;
  return std::exp(-a * lo) * (-std::expm1(-a * (hi - lo))) / a;
}

double rational_segment(int n, double lo, double hi) {
  auto rho = [n](double x) { return 1.0 / (std::pow(x * x, n) + 1.0); };
  double error = 0.0;
  return boost::math::quadrature::gauss_kronrod<double, 31>::integrate(rho, lo, hi, 12, 1e-14, &error);
}

// Integral of 1/(x^{2n}+1) over [lo, hi] with 0 <= lo <= hi, split on the dyadic
// grid 0, 1, 2, 4, 8, ... so each piece is smooth on its own scale.
double rational_tail(int n, double lo, double hi) {
  if (hi <= lo) return 0.0;
  double total = 0.0;
  double left = 0.0;
  double right = 1.0;
  while (left < hi) {
    const double a = std::max(left, lo);
    if (std::isinf(hi) && left >= 1.0) {
      // Tail beyond a via x = a / u: a u^{2n-2} / (a^{2n} + u^{2n}) on (0, 1].
      auto f = [n, a](double u) {
        const double u2n = std::pow(u, 2 * n);
        return a * std::pow(u, 2 * n - 2) / (std::pow(a, 2 * n) + u2n);
      };
      double error = 0.0;
      total += boost::math::quadrature::gauss_kronrod<double, 31>::integrate(f, 0.0, 1.0, 12, 1e-14, &error);
      break;
    }
    const double b = std::min(right, hi);
    if (a < b) total += rational_segment(n, a, b);
    left = right;
    right *= 2.0;
  }
  return total;
}

}  // namespace

Weight Weight::exp_decay(double a) {
  Weight w{Kind::ExpDecay, a, 1};
  w.validate();
  return w;
}

Weight Weight::rational(int n) {
  Weight w{Kind::Rational, 1.0, n};
  w.validate();
  return w;
}

void Weight::validate() const {
  if (kind == Kind::ExpDecay && !(a > 0.0 && std::isfinite(a))) {
    fail(ErrorKind::Domain, "exp_decay weight needs a > 0");
  }
  if (kind == Kind::Rational && n < 1) fail(ErrorKind::Domain, "rational weight needs n >= 1");
}

double Weight::operator()(double x) const {
  if (kind == Kind::ExpDecay) return std::exp(-a * std::abs(x));
  return 1.0 / (std::pow(x * x, n) + 1.0);
}

double Weight::integral(double lo, double hi) const {
  if (!(lo < hi)) return 0.0;
  auto half_line = [this](double l, double h) {
    return kind == Kind::ExpDecay ? exp_tail(a, l, h) : rational_tail(n, l, h);
  };
  if (lo >= 0.0) return half_line(lo, hi);
  if (hi <= 0.0) return half_line(-hi, -lo);
  return half_line(0.0, -lo) + half_line(0.0, hi);
}

std::string Weight::describe() const {
  std::ostringstream out;
  if (kind == Kind::ExpDecay) {
    out << "exp(-" << a << "|x|)";
  } else {
    out << "1/(x^" << 2 * n << "+1)";
  }
  return out.str();
}

}  // namespace dchaos
