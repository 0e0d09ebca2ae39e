#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "dchaos/errors.hpp"
#include "dchaos/kernels.hpp"

using namespace dchaos;

namespace {

std::vector<double> random_vector(std::mt19937_64& rng, std::size_t n, double lo, double hi) {
  std::uniform_real_distribution<double> dist(lo, hi);
  std::vector<double> v(n);
  for (double& x : v) x = dist(rng);
  return v;
}

}  // namespace

TEST_CASE("scalar kernels match direct loops") {
  std::mt19937_64 rng(7);
  const auto& t = kernels::scalar::table();
  for (std::size_t n : {0u, 1u, 3u, 17u, 100u}) {
    const auto a = random_vector(rng, n, -1, 1);
    const auto b = random_vector(rng, n, 0, 2);
    double dot = 0.0, wss = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      dot += a[i] * b[i];
      wss += a[i] * a[i] * b[i];
    }
    CHECK(t.dot(a.data(), b.data(), n) == doctest::Approx(dot).epsilon(1e-14));
    CHECK(t.weighted_sum_squares(a.data(), b.data(), n) == doctest::Approx(wss).epsilon(1e-14));
    std::vector<double> y = b;
    t.axpy(0.5, a.data(), y.data(), n);
    std::vector<double> avg(n);
    t.average(a.data(), b.data(), avg.data(), n);
    for (std::size_t i = 0; i < n; ++i) {
      CHECK(y[i] == b[i] + 0.5 * a[i]);
      CHECK(avg[i] == 0.5 * (a[i] + b[i]));
    }
  }
}

#if defined(DCHAOS_HAVE_AVX2)
TEST_CASE("AVX2 kernels agree with the scalar reference") {
  if (kernels::best_available_isa() != kernels::Isa::Avx2) {
    MESSAGE("CPU lacks AVX2+FMA; equivalence test skipped");
    return;
  }
  std::mt19937_64 rng(11);
  const auto& s = kernels::scalar::table();
  const auto& v = kernels::avx2::table();
  for (std::size_t n = 0; n < 70; ++n) {
    const auto a = random_vector(rng, n, -3, 3);
    const auto b = random_vector(rng, n, 0, 5);
    double scale = 0.0;
    for (std::size_t i = 0; i < n; ++i) scale += std::abs(a[i] * b[i]) + a[i] * a[i] * b[i];
    const double tol = 1e-14 * (scale + 1.0);
    CHECK(std::abs(v.dot(a.data(), b.data(), n) - s.dot(a.data(), b.data(), n)) <= tol);
    CHECK(std::abs(v.weighted_sum_squares(a.data(), b.data(), n) - s.weighted_sum_squares(a.data(), b.data(), n)) <=
          tol);
    std::vector<double> ys = b, yv = b;
    s.axpy(-1.25, a.data(), ys.data(), n);
    v.axpy(-1.25, a.data(), yv.data(), n);
    std::vector<double> as(n), av(n);
    s.average(a.data(), b.data(), as.data(), n);
    v.average(a.data(), b.data(), av.data(), n);
    for (std::size_t i = 0; i < n; ++i) {
      CHECK(std::abs(ys[i] - yv[i]) <= 1e-15 * (std::abs(ys[i]) + 4.0));
      CHECK(as[i] == av[i]);
    }
  }
}

TEST_CASE("dispatch follows force_isa") {
  if (kernels::best_available_isa() != kernels::Isa::Avx2) return;
  const std::vector<double> a{1, 2, 3, 4, 5}, b{5, 4, 3, 2, 1};
  kernels::force_isa(kernels::Isa::Scalar);
  CHECK(kernels::active_isa() == kernels::Isa::Scalar);
  const double s = kernels::dot(a, b);
  kernels::force_isa(kernels::Isa::Avx2);
  CHECK(kernels::active_isa() == kernels::Isa::Avx2);
  CHECK(kernels::dot(a, b) == s);
  kernels::reset_isa();
  CHECK(kernels::active_isa() == kernels::best_available_isa());
}
#endif

TEST_CASE("span length mismatch is rejected") {
  const std::vector<double> a{1, 2}, b{1};
  CHECK_THROWS_AS(kernels::dot(a, b), Error);
}
