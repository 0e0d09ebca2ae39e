#include <doctest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "dchaos/errors.hpp"
#include "dchaos/operator_models.hpp"

using namespace dchaos;

namespace {

FamilySpec first_order(std::vector<Complex> coeffs) {
  FamilySpec f;
  f.name = "Q";
  f.symbol = Polynomial{std::move(coeffs)};
  return f;
}

FamilySpec translation(double speed) {
  FamilySpec f;
  f.name = "T";
  f.kind = FamilyKind::Translation;
  f.speed = speed;
  return f;
}

GridFunction gaussian(double x_max, double h) {
  return GridFunction::sample(x_max, h, [](double x) { return std::exp(-x * x); });
}

}  // namespace

TEST_CASE("polynomials evaluate by Horner and describe themselves") {
  const Polynomial p{{1.0, 0.0, 2.0}};
  CHECK(p(Complex(0, 1)) == Complex(-1, 0));
  CHECK(p.degree() == 2);
  CHECK(Polynomial{{0.0}}.degree() < 0);
  CHECK_THROWS_AS(Polynomial{{0.0}}.validate(), Error);
}

TEST_CASE("first-order eigen orbit is exp(lambda t)") {
  const FamilySpec f = first_order({0.0, 1.0});
  const auto y = eigen_orbit_first_order(f, SpectralVector::eigenvector(-1.0), std::log(2.0));
  CHECK(y.coefficient(-1.0).real() == doctest::Approx(0.5).epsilon(1e-15));
}

TEST_CASE("fractional eigen orbit uses E_zeta(lambda t^zeta) with lambda = -e^{i theta} P(mu)") {
  FamilySpec f = first_order({0.0, 1.0});
  f.kind = FamilyKind::SpectralFractional;
  f.zeta = 1.5;
  const auto y = eigen_orbit_fractional(f, SpectralVector::eigenvector(1.0), 2.0);
  CHECK(std::abs(y.coefficient(1.0) - ml_series(1.5, -std::pow(2.0, 1.5)).value) < 1e-14);
  CHECK(f.eigenvalue(2.0) == Complex(-2.0, 0.0));
}

TEST_CASE("regularizer multiplies the orbit and flags overflow") {
  FamilySpec f = first_order({0.0, 1.0});
  f.regularizer.factors = {MultiplierFactor::exp_neg_power(2), MultiplierFactor::constant(0.5)};
  const auto y = eigen_orbit_first_order(f, SpectralVector::eigenvector(1.0), 0.0);
  CHECK(y.coefficient(1.0).real() == doctest::Approx(0.5 * std::exp(-1.0)).epsilon(1e-15));
  SpectralVector x = SpectralVector::eigenvector(1.0);
  x.set(std::polar(30.0, std::numbers::pi / 4), 1.0);  // (-mu^2)^2 = -30^4
  const RegularizedVector r = apply_regularizer(x, 2);
  CHECK(r.flagged.size() == 1);
  CHECK(r.value.size() == 1);
}

TEST_CASE("translation norm matches independent quadrature") {
  const BlockFunction f({{2, 5, 3}, {9, 12, -1}});
  const Weight w = Weight::exp_decay(1.0);
  for (double t : {0.0, 1.5, 4.0, 10.0, 11.9}) {
    double sq = 0.0;
    for (const Block& b : f.blocks()) {
      const double lo = b.start - t, hi = b.end - t;
      auto g = [&](double x) { return b.amplitude * b.amplitude * std::exp(-std::abs(x)); };
      if (lo < 0 && hi > 0) {
        sq += boost::math::quadrature::gauss_kronrod<double, 31>::integrate(g, lo, 0.0) +
              boost::math::quadrature::gauss_kronrod<double, 31>::integrate(g, 0.0, hi);
      } else {
        sq += boost::math::quadrature::gauss_kronrod<double, 31>::integrate(g, lo, hi);
      }
    }
    CHECK(translate_orbit_norm(f, w, 1.0, t) == doctest::Approx(std::sqrt(sq)).epsilon(1e-10));
  }
}

TEST_CASE("grid orbit is an exact index shift") {
  const GridFunction g = gaussian(10.0, 0.1);
  const GridFunction s = grid_orbit(g, 1.0, 1.0);
  for (std::size_t i = 0; i + 10 < g.size(); ++i) CHECK(s.values()[i] == g.values()[i + 10]);
  CHECK_THROWS_AS(grid_orbit(g, 0.05, 1.0), Error);  // not a multiple of h
  const GridFunction wide = GridFunction::sample(10.0, 0.1, [](double) { return 1.0; });
  CHECK_THROWS_AS(grid_orbit(wide, 1.0, 1.0), Error);  // support leaves the window
}

TEST_CASE("cosine orbit averages both shifts") {
  const BlockFunction f({{0, 1, 2}});
  const BlockFunction c = cosine_orbit(f, 2.0, 1.0);
  CHECK(c.value_at(-1.5) == doctest::Approx(1.0));
  CHECK(c.value_at(2.5) == doctest::Approx(1.0));
  CHECK(c.value_at(0.5) == doctest::Approx(0.0));
}

TEST_CASE("orbit dispatch rejects mismatched representations") {
  CHECK_THROWS_AS(orbit(translation(1.0), SpectralVector::eigenvector(1.0), 1.0), Error);
  CHECK_THROWS_AS(orbit(first_order({0.0, 1.0}), BlockFunction({{0, 1, 1}}), 1.0), Error);
}

TEST_CASE("spectral integrated identity holds for alpha = 0 and 1") {
  const FamilySpec f = first_order({0.0, 1.0});
  SpectralVector x = SpectralVector::eigenvector(-1.0);
  x.set(Complex(0.5, 1), 2.0);
  CHECK(check_integrated_identity(f, x, 0.0, 2.0, 1e-3).residual < 1e-6);
  CHECK(check_integrated_identity(f, x, 1.0, 2.0, 1e-3).residual < 1e-6);
}

TEST_CASE("grid integrated identity converges at second order") {
  const FamilySpec f = translation(1.0);
  const double r1 = check_integrated_identity(f, gaussian(12.0, 0.04), 1.0, 1.0, 0.04).residual;
  const double r2 = check_integrated_identity(f, gaussian(12.0, 0.02), 1.0, 1.0, 0.02).residual;
  CHECK(r1 / r2 > 3.5);
  CHECK_THROWS_AS(check_integrated_identity(f, gaussian(12.0, 0.04), 0.5, 1.0, 0.04), Error);
}

TEST_CASE("resolvent identity of the fractional family") {
  FamilySpec f = first_order({0.0, 1.0});
  f.kind = FamilyKind::SpectralFractional;
  f.zeta = 1.5;
  SpectralVector x = SpectralVector::eigenvector(1.0);
  x.set(Complex(0, -1), 1.0);
  const IdentityResidual r = check_resolvent_identity(f, x, 2.0, 1e-3);
  CHECK(r.residual < 1e-5);
}

TEST_CASE("block identity residual shrinks under refinement") {
  const double h = 0.05;
  auto pair = [](double step) {
    return GridPair{GridFunction::sample(10.0, step, [](double x) { return std::exp(-x * x); }),
                    GridFunction::sample(10.0, step, [](double x) { return x * std::exp(-x * x); })};
  };
  const double r1 = block_identity_residual(pair(h), 1.0, 2 * h).residual;
  const double r2 = block_identity_residual(pair(h / 2), 1.0, h).residual;
  CHECK(r1 / r2 > 1.8);
}

TEST_CASE("matrix eigenvectors satisfy Acal F = lambda F") {
  for (Complex lambda : {Complex(-0.2, 0.5), Complex(0.5, 0.1)}) {
    const auto F = matrix_eigenvector(lambda, 1.0);
    const auto AF = matrix_apply(F);
    for (const auto& [mu, c] : F.first.entries()) {
      CHECK(std::abs(AF.first.coefficient(mu) - lambda * c) < 1e-14);
      CHECK(std::abs(AF.second.coefficient(mu) - lambda * F.second.coefficient(mu)) < 1e-14);
    }
  }
  CHECK_THROWS_AS(matrix_eigenvector(1.5, 1.0), Error);
}

TEST_CASE("product family carries the product regularizer") {
  FamilySpec a = first_order({0.0, 1.0});
  a.regularizer.factors = {MultiplierFactor::constant(2.0)};
  FamilySpec b = first_order({0.0, 0.0, 1.0});
  b.regularizer.factors = {MultiplierFactor::constant(3.0)};
  const auto p = product_family({a, b});
  REQUIRE(p.size() == 2);
  CHECK(p[0].regularizer(1.0) == Complex(6.0));
  CHECK(p[1].regularizer(1.0) == Complex(6.0));
  CHECK_THROWS_AS(product_family({a, translation(1.0)}), Error);
}

TEST_CASE("fractional integral of a constant") {
  const std::vector<Complex> one(101, 1.0);
  // int_0^1 g_{1/2}(1 - s) ds = 1 / Gamma(3/2).
  CHECK(std::abs(fractional_integral(one, 0.01, 0.5) - 1.0 / std::tgamma(1.5)) < 1e-12);
}
