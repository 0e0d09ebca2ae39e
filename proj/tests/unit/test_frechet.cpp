#include <doctest.h>

#include <cmath>
#include <vector>

#include "dchaos/errors.hpp"
#include "dchaos/frechet.hpp"

using namespace dchaos;

namespace {

// p_n(x) = n |c_1| on spectral vectors, an increasing family with a known metric.
SeminormFamily linear_family(int n_max) {
  return SeminormFamily(SpaceKind::Frechet, [](int n, const Element& x) {
    return n * std::abs(std::get<SpectralVector>(x).coefficient(1.0));
  }, n_max);
}

}  // namespace

TEST_CASE("Frechet metric equals the truncated series") {
  const auto fam = linear_family(40);
  const Element x = SpectralVector::eigenvector(1.0, 0.7);
  const Element y = SpectralVector::eigenvector(1.0, 0.2);
  double expected = 0.0;
  for (int n = 1; n <= 40; ++n) expected += std::ldexp(1.0, -n) * (0.5 * n) / (1.0 + 0.5 * n);
  const MetricValue d = frechet_metric(fam, x, y);
  CHECK(d.value == doctest::Approx(expected).epsilon(1e-15));
  CHECK(d.tail_bound == std::ldexp(1.0, -40));
}

TEST_CASE("Banach kind uses the norm of the difference") {
  const SeminormFamily fam(SpaceKind::Banach, [](int, const Element& x) {
    return std::abs(std::get<SpectralVector>(x).coefficient(1.0));
  });
  const Element x = SpectralVector::eigenvector(1.0, 5.0);
  const Element y = SpectralVector::eigenvector(1.0, 2.0);
  CHECK(frechet_metric(fam, x, y).value == 3.0);
  CHECK(frechet_metric(fam, x, y).tail_bound == 0.0);
}

TEST_CASE("product metric is the componentwise maximum") {
  const auto fam = linear_family(30);
  const std::vector<Element> xs{SpectralVector::eigenvector(1.0, 1.0), SpectralVector::eigenvector(1.0, 3.0)};
  const std::vector<Element> ys{SpectralVector::eigenvector(1.0, 0.0), SpectralVector::eigenvector(1.0, 0.0)};
  const double d0 = distance_to_zero(fam, xs[0]).value;
  const double d1 = distance_to_zero(fam, xs[1]).value;
  CHECK(product_metric(fam, xs, ys).value == std::max(d0, d1));
}

TEST_CASE("renorm follows the recursion") {
  const auto fam = linear_family(5);
  const std::vector<RenormConstant> constants{{1, 1, 2.0, 1}};
  const auto r = renorm(fam, constants);
  const Element x = SpectralVector::eigenvector(1.0, 1.0);
  // p'_1 = 1, p'_2 = p'_1 + 2 p_1 + p_2 = 5, p'_3 = p'_2 + p_3 = 8.
  CHECK(r(1, x) == doctest::Approx(1.0));
  CHECK(r(2, x) == doctest::Approx(5.0));
  CHECK(r(3, x) == doctest::Approx(8.0));
}

TEST_CASE("graph seminorm sums powers of the operator") {
  const auto fam = spectral_seminorms(SpaceKind::Banach);
  SpectralVector x = SpectralVector::eigenvector(2.0, 1.0);
  x.set(-1.0, 1.0);
  const SpectralOperator op = [](Complex mu) { return mu; };
  // sum_{k=0}^{2} (2^k + 1).
  CHECK(graph_seminorm(op, fam, 1, 2, x) == doctest::Approx(1 + 2 + 4 + 3));
}

TEST_CASE("grid seminorms restrict to [-n, n] in the Frechet kind") {
  const auto fam = grid_seminorms(SpaceKind::Frechet, Weight::exp_decay(1.0), 2.0, 10);
  const Element g = GridFunction::sample(5.0, 0.001, [](double) { return 1.0; });
  // Riemann sum h sum_{|x_i| <= 1} e^{-|x_i|} against 2 (1 - e^{-1}).
  CHECK(fam(1, g) == doctest::Approx(std::sqrt(2.0 * (1.0 - std::exp(-1.0)))).epsilon(2e-4));
  CHECK(fam(2, g) > fam(1, g));
}

TEST_CASE("invalid truncation is rejected") {
  CHECK_THROWS_AS(linear_family(0), Error);
}
