#include <doctest.h>

#include <cmath>
#include <vector>

#include "dchaos/density.hpp"
#include "dchaos/errors.hpp"

using namespace dchaos;

TEST_CASE("constant traces have density 1 and 0") {
  std::vector<double> t;
  for (int i = 1; i <= 100; ++i) t.push_back(i);
  CHECK(density_profile(IndicatorTrace::continuous(t, std::vector<bool>(100, true))).upper_estimate == 1.0);
  CHECK(density_profile(IndicatorTrace::continuous(t, std::vector<bool>(100, false))).upper_estimate == 0.0);
  CHECK(density_profile(IndicatorTrace::discrete(std::vector<bool>(50, true))).upper_estimate == 1.0);
}

TEST_CASE("continuous profile integrates left-constant membership") {
  // Member on [0, 2) and [3, 4): [0, 1) inherits the first sample.
  const auto trace = IndicatorTrace::continuous({1, 2, 3, 4}, {true, true, false, true});
  const DensityEstimate e = density_profile(trace, 1.0);
  REQUIRE(e.profile.size() == 4);
  CHECK(e.profile[0].ratio == doctest::Approx(1.0));
  CHECK(e.profile[1].ratio == doctest::Approx(1.0));
  CHECK(e.profile[2].ratio == doctest::Approx(1.0));
  CHECK(e.profile[3].ratio == doctest::Approx(0.75));
  CHECK(e.upper_estimate == doctest::Approx(1.0));
  CHECK(density_profile(trace, 0.25).upper_estimate == doctest::Approx(1.0));
  const auto late = IndicatorTrace::continuous({1, 2, 3, 4}, {false, false, true, false});
  // Member only on [3, 4).
  CHECK(density_profile(late, 0.25).upper_estimate == doctest::Approx(0.25));
}

TEST_CASE("discrete profile counts members") {
  const auto trace = IndicatorTrace::discrete({true, false, false, true});
  const DensityEstimate e = density_profile(trace, 0.5);
  CHECK(e.profile.back().ratio == doctest::Approx(0.5));
  CHECK(e.upper_estimate == doctest::Approx(0.5));
}

TEST_CASE("intersection requires identical sample times") {
  const std::vector<IndicatorTrace> same{IndicatorTrace::continuous({1, 2}, {true, true}),
                                         IndicatorTrace::continuous({1, 2}, {true, false})};
  const IndicatorTrace i = intersect_traces(same);
  CHECK(i.membership()[0]);
  CHECK(!i.membership()[1]);
  const std::vector<IndicatorTrace> different{IndicatorTrace::continuous({1, 2}, {true, true}),
                                              IndicatorTrace::continuous({1, 3}, {true, true})};
  CHECK_THROWS_AS(intersect_traces(different), Error);
}

TEST_CASE("malformed traces are rejected") {
  CHECK_THROWS_AS(IndicatorTrace::continuous({2, 1}, {true, true}), Error);
  CHECK_THROWS_AS(IndicatorTrace::continuous({1, 2}, {true}), Error);
  CHECK_THROWS_AS(density_profile(IndicatorTrace::continuous({0}, {true})), Error);
}
