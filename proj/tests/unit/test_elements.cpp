#include <doctest.h>

#include <cmath>

#include "dchaos/elements.hpp"
#include "dchaos/errors.hpp"
#include "dchaos/weights.hpp"

using namespace dchaos;

TEST_CASE("spectral vectors add, scale and drop zero coefficients") {
  SpectralVector x = SpectralVector::eigenvector({1, 1}, 2.0);
  x.set(-1.0, {0, 3});
  const SpectralVector y = SpectralVector::eigenvector({1, 1}, 2.0);
  const SpectralVector d = x - y;
  CHECK(d.size() == 1);
  CHECK(d.coefficient(-1.0) == Complex(0, 3));
  CHECK(d.coefficient({1, 1}) == Complex{});
  CHECK((Complex(0, 1) * d).coefficient(-1.0) == Complex(-3, 0));
}

TEST_CASE("block functions evaluate and shift") {
  const BlockFunction f({{1, 2, 3}, {4, 6, -1}});
  CHECK(f.value_at(1.5) == 3);
  CHECK(f.value_at(2.0) == 0);
  CHECK(f.value_at(5) == -1);
  const BlockFunction g = f.shifted(1.0);
  CHECK(g.value_at(0.5) == 3);
  CHECK(g.value_at(3.5) == -1);
}

TEST_CASE("block input validation names the offending block") {
  CHECK_THROWS_WITH_AS(BlockFunction({{1, 2, 1}, {3, 3, 1}}).validate_input(), doctest::Contains("1"), Error);
  CHECK_THROWS_AS(BlockFunction({{1, 3, 1}, {2, 4, 1}}).validate_input(), Error);
  CHECK_NOTHROW(BlockFunction({{0, 1, 1}, {2, 4, 1}}).validate_input());
}

TEST_CASE("weighted block norm matches the closed form for exp weight") {
  const BlockFunction f({{1, 3, 2}});
  // int_1^3 4 e^{-x} dx.
  const double expected = std::sqrt(4.0 * (std::exp(-1.0) - std::exp(-3.0)));
  CHECK(f.weighted_norm(Weight::exp_decay(1.0), 2.0, HUGE_VAL) == doctest::Approx(expected).epsilon(1e-14));
  const double windowed = std::sqrt(4.0 * (std::exp(-1.0) - std::exp(-2.0)));
  CHECK(f.weighted_norm(Weight::exp_decay(1.0), 2.0, 2.0) == doctest::Approx(windowed).epsilon(1e-14));
}

TEST_CASE("rational weight integral against the arctangent") {
  const Weight w = Weight::rational(1);
  CHECK(w.integral(-1.0, 2.0) == doctest::Approx(std::atan(2.0) + std::atan(1.0)).epsilon(1e-12));
  CHECK(w.integral(-HUGE_VAL, HUGE_VAL) == doctest::Approx(M_PI).epsilon(1e-10));
}

TEST_CASE("mixed representations are rejected") {
  const Element a = SpectralVector::eigenvector(1.0);
  const Element b = BlockFunction({{0, 1, 1}});
  CHECK_THROWS_AS(subtract(a, b), Error);
  const Element g1 = GridFunction::zeros(1.0, 0.5);
  const Element g2 = GridFunction::zeros(1.0, 0.25);
  CHECK_THROWS_AS(subtract(g1, g2), Error);
  CHECK_THROWS_AS(scale(b, Complex(0, 1)), Error);
}
