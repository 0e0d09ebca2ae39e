#include <doctest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include <boost/math/special_functions/erf.hpp>

#include "dchaos/errors.hpp"
#include "dchaos/mittag_leffler.hpp"

using namespace dchaos;

namespace {

double rel(Complex a, Complex b) { return std::abs(a - b) / std::abs(b); }

MLParams params(double beta) {
  MLParams p;
  p.beta = beta;
  return p;
}

}  // namespace

TEST_CASE("g kernel") {
  CHECK(g_kernel(1.0, 0.0) == 1.0);
  CHECK(g_kernel(2.0, 0.0) == 0.0);
  CHECK(g_kernel(0.5, 4.0) == doctest::Approx(0.5 / std::sqrt(std::numbers::pi)).epsilon(1e-15));
  CHECK(g_kernel(3.0, 2.0) == doctest::Approx(2.0).epsilon(1e-15));
  CHECK_THROWS_AS(g_kernel(0.0, 1.0), Error);
  CHECK_THROWS_AS(g_kernel(0.5, 0.0), Error);
  CHECK_THROWS_AS(g_kernel(1.0, -1.0), Error);
}

TEST_CASE("series reproduces exp, cosh and the erfc form of E_1/2") {
  for (Complex z : {Complex(1, 0), Complex(-4, 2), Complex(0.3, -3)}) {
    CHECK(rel(ml_series(1.0, z).value, std::exp(z)) < 1e-14);
    CHECK(rel(ml_series(2.0, z * z).value, std::cosh(z)) < 1e-13);
  }
  // E_{1/2}(-x) = exp(x^2) erfc(x) for real x.
  for (double x : {0.5, 2.0, 6.0}) {
    const double expected = std::exp(x * x) * boost::math::erfc(x);
    CHECK(std::abs(ml_series(0.5, -x).value.real() - expected) <= 1e-12 * expected);
  }
}

TEST_CASE("cancellation escalates the working precision") {
  const SeriesResult r = ml_series(1.0, -30.0);
  CHECK(r.precision_digits > 16);
  CHECK(r.converged);
  CHECK(std::abs(r.value.real() - std::exp(-30.0)) <= 1e-14 * std::exp(-30.0));
}

TEST_CASE("sectors") {
  CHECK(ml_sector(0.5, 10.0) == MLSector::Growth);
  CHECK(ml_sector(0.5, -10.0) == MLSector::Decay);
  CHECK(ml_sector(1.5, std::polar(10.0, 0.74 * std::numbers::pi)) == MLSector::Growth);
  CHECK(ml_sector(1.5, std::polar(10.0, 0.75 * std::numbers::pi)) == MLSector::Neither);
  CHECK(ml_sector(1.5, 0.0) == MLSector::Neither);
  CHECK_THROWS_AS(ml_asymptotic(1.5, std::polar(10.0, 0.75 * std::numbers::pi), 8), Error);
  CHECK_THROWS_AS(ml_asymptotic(1.0, 10.0, 8), Error);
}

TEST_CASE("asymptotic agrees with the series for zeta = 1/2") {
  for (double r : {10.0, 11.0, 12.0}) {
    for (double a : {0.0, 0.15, -0.2}) {
      const Complex g = std::polar(r, a * std::numbers::pi);
      CHECK(rel(ml_asymptotic(0.5, g, 12).value, ml_series(0.5, g).value) < 1e-6);
      const Complex d = -std::polar(r, a * std::numbers::pi);
      CHECK(rel(ml_asymptotic(0.5, d, 12).value, ml_series(0.5, d).value) < 1e-6);
    }
  }
}

TEST_CASE("ml_eval reports the branch and stays finite") {
  const MLValue near = ml_eval(params(1.0), 1.0);
  CHECK(near.branch == MLBranch::Series);
  CHECK(near.value.real() == doctest::Approx(std::exp(1.0)).epsilon(1e-15));
  const MLValue far = ml_eval(params(0.5), -100.0);
  CHECK(far.branch == MLBranch::Asymptotic);
  // Leading term -z^{-1} / Gamma(1/2).
  CHECK(far.value.real() == doctest::Approx(1.0 / (100.0 * std::sqrt(std::numbers::pi))).epsilon(1e-3));
  CHECK_THROWS_AS(ml_eval(params(1.0), 1000.0), Error);
}

TEST_CASE("parameter validation") {
  MLParams p;
  p.crossover_radius = 1.0;
  CHECK_THROWS_AS(p.validate(), Error);
  CHECK_THROWS_AS(ml_eval(params(-1.0), 1.0), Error);
}

TEST_CASE("Caputo L1 on the power rule") {
  // D^{zeta} t^2 = 2 t^{2-zeta} / Gamma(3 - zeta).
  const double h = 1e-3;
  std::vector<double> u(1001);
  for (std::size_t k = 0; k < u.size(); ++k) u[k] = std::pow(k * h, 2);
  const auto d = caputo_l1(u, h, 0.3);
  CHECK(d.back() == doctest::Approx(2.0 / std::tgamma(2.7)).epsilon(1e-3));
  CHECK_THROWS_AS(caputo_l1(u, h, 1.0), Error);
  CHECK_THROWS_AS(caputo_l1(std::vector<double>{1, 2}, h, 0.5), Error);
}
