#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>

#include "dchaos/chaos_detect.hpp"
#include "dchaos/errors.hpp"

using namespace dchaos;

namespace {

FamilySpec translation(double speed) {
  FamilySpec f;
  f.name = "T" + std::to_string(static_cast<int>(speed));
  f.kind = FamilyKind::Translation;
  f.speed = speed;
  return f;
}

BlockFunction desk_vector() {
  BlockPlan plan;
  plan.first_start = 400;
  plan.ratio_in = 20;
  plan.ratio_gap = 20;
  plan.K = 5;
  return build_block_vector(plan);
}

DetectionParams desk_params() {
  DetectionParams p;
  p.M_levels = {1.0};
  p.tail_window = 0.99;
  return p;
}

SamplePlan desk_plan(const BlockFunction& w, const std::vector<double>& speeds) {
  return SamplePlan::event_aware(1.0, w.blocks().back().end, block_events(w, speeds));
}

}  // namespace

TEST_CASE("sample plans") {
  const auto u = SamplePlan::uniform(0.0, 10.0, 11).times();
  CHECK(u.front() == 0.0);
  CHECK(u.back() == 10.0);
  const auto l = SamplePlan::log(1.0, 1000.0, 4).times();
  CHECK(l[1] == doctest::Approx(10.0));
  const auto e = SamplePlan::event_aware(1.0, 100.0, {50.0}).times();
  CHECK(std::is_sorted(e.begin(), e.end()));
  CHECK(std::adjacent_find(e.begin(), e.end()) == e.end());
  CHECK(std::find(e.begin(), e.end(), 50.0) != e.end());
  CHECK(e.back() == 100.0);
  CHECK_THROWS_AS(SamplePlan::log(0.0, 10.0, 5).times(), Error);
  CHECK_THROWS_AS(SamplePlan::uniform(0.0, -1.0, 5).times(), Error);
}

TEST_CASE("block plan geometry") {
  const BlockFunction w = desk_vector();
  REQUIRE(w.blocks().size() == 5);
  for (int k = 1; k <= 5; ++k) {
    const double a = std::pow(400.0, k);
    CHECK(w.blocks()[k - 1].start == doctest::Approx(a).epsilon(1e-15));
    CHECK(w.blocks()[k - 1].end == doctest::Approx(20 * a).epsilon(1e-15));
    CHECK(w.blocks()[k - 1].amplitude == k);
  }
  const auto events = block_events(w, {1.0, 2.0});
  CHECK(events.size() == 20);
  CHECK(events.front() == 200.0);
}

TEST_CASE("detection parameters are validated") {
  DetectionParams p;
  p.threshold = 1.5;
  CHECK_THROWS_AS(p.validate(), Error);
  p = DetectionParams{};
  p.M_levels.clear();
  CHECK_THROWS_AS(p.validate(), Error);
}

TEST_CASE("the two-speed desk experiment is a scrambled pair") {
  const BlockFunction w = desk_vector();
  const std::vector<FamilySpec> specs{translation(1.0), translation(2.0)};
  const Verdict v = scrambled_pair_test(specs, BlockFunction{}, w, desk_params(), desk_plan(w, {1.0, 2.0}));
  REQUIRE(!v.inconclusive);
  CHECK(v.scrambled_pair);
  CHECK(v.find("separation")->estimate.upper_estimate >= 0.85);
  CHECK(v.find("proximity")->estimate.upper_estimate >= 0.85);
}

TEST_CASE("a short tail window cannot see the proximity episodes") {
  const BlockFunction w = desk_vector();
  const std::vector<FamilySpec> specs{translation(1.0), translation(2.0)};
  DetectionParams p = desk_params();
  p.tail_window = 0.5;
  const Verdict v = scrambled_pair_test(specs, BlockFunction{}, w, p, desk_plan(w, {1.0, 2.0}));
  CHECK(!v.scrambled_pair);
}

TEST_CASE("classification of the desk vector") {
  const BlockFunction w = desk_vector();
  const std::vector<FamilySpec> specs{translation(1.0), translation(2.0)};
  const Verdict v = classify_vector(specs, w, desk_params(), desk_plan(w, {1.0, 2.0}));
  CHECK(v.near_zero);
  CHECK(v.m_unbounded);
  CHECK(v.irregular);
}

TEST_CASE("a decaying orbit is near zero but not unbounded") {
  FamilySpec f;
  f.name = "Q";
  const Verdict v = classify_vector({f}, SpectralVector::eigenvector(-1.0), DetectionParams{},
                                    SamplePlan::log(0.1, 100.0, 200));
  CHECK(v.near_zero);
  CHECK(!v.m_unbounded);
  CHECK(!v.irregular);
}

TEST_CASE("identical pair is a precondition error") {
  const BlockFunction w = desk_vector();
  CHECK_THROWS_AS(scrambled_pair_test({translation(1.0)}, w, w, desk_params(), desk_plan(w, {1.0})), Error);
}

TEST_CASE("orbit errors make the verdict inconclusive") {
  const GridFunction g = GridFunction::sample(5.0, 0.1, [](double x) { return std::exp(-x * x); });
  const Verdict v = classify_vector({translation(1.0)}, g, DetectionParams{}, SamplePlan::uniform(0.0, 20.0, 5));
  CHECK(v.inconclusive);
  CHECK(!v.cause.empty());
}

TEST_CASE("thread count does not change the traces") {
  const BlockFunction w = desk_vector();
  const std::vector<FamilySpec> specs{translation(1.0), translation(2.0)};
  DetectionParams p = desk_params();
  const auto times = desk_plan(w, {1.0, 2.0}).times();
  const auto one = trace_orbits(specs, w, times, p);
  p.threads = 3;
  const auto three = trace_orbits(specs, w, times, p);
  for (std::size_t j = 0; j < one.size(); ++j) CHECK(one[j].distance == three[j].distance);
}

TEST_CASE("discrete power trace samples multiples of the period") {
  FamilySpec f;
  f.name = "Q";
  f.period = 0.5;
  const OrbitTrace t = discrete_power_trace(f, SpectralVector::eigenvector(-1.0), 10, DetectionParams{});
  REQUIRE(t.times.size() == 10);
  CHECK(t.mode == TraceMode::Discrete);
  CHECK(t.distance[1] == doctest::Approx(std::exp(-1.0)).epsilon(1e-12));
}

TEST_CASE("sector conditions (A) and (B)") {
  const std::vector<Polynomial> polys{{{0.0, 1.0}}, {{0.0, 0.0, 0.0, 1.0}}};
  RegionPredicate r = RegionPredicate::disk(0.0, 2.0);
  r.cluster_point = -1.0;
  r.decay_samples = RegionPredicate::accumulating_samples(-1.0, 0.1, 32);
  r.witness_samples = {1.0};
  const HypothesisReport ok = sector_condition_check(polys, r, SectorVariant::ab());
  CHECK(ok.all_pass());
  r.witness_samples = {-1.0};
  const HypothesisReport flipped = sector_condition_check(polys, r, SectorVariant::ab());
  CHECK(flipped.find("A")->status == Status::Pass);
  CHECK(flipped.find("B")->status == Status::Fail);
  r.witness_samples = {};
  CHECK_THROWS_AS(sector_condition_check(polys, r, SectorVariant::ab()), Error);
}

TEST_CASE("primed conditions exclude the closed sector boundary") {
  const std::vector<Polynomial> polys{{{0.0, 1.0}}};
  RegionPredicate r = RegionPredicate::disk(0.0, 3.0);
  // lambda = -mu sits on the ray arg = 3 pi / 4.
  const Complex mu = -std::polar(1.0, 0.75 * std::numbers::pi);
  r.cluster_point = mu;
  r.decay_samples = {mu};
  r.witness_samples = {-1.0};
  const HypothesisReport rep = sector_condition_check(polys, r, SectorVariant::ab_prime(1.5, 0.0));
  CHECK(rep.find("A'")->status == Status::Fail);
  CHECK(rep.find("B'")->status == Status::Pass);
  CHECK_THROWS_AS(sector_condition_check(polys, r, SectorVariant::ab_prime(0.5, 0.0)), Error);
  CHECK_THROWS_AS(sector_condition_check(polys, r, SectorVariant::ab_prime(1.5, 1.0)), Error);
}

TEST_CASE("hypothesis check on spectral families") {
  FamilySpec q1;
  q1.name = "Q1";
  FamilySpec q2 = q1;
  q2.name = "Q2";
  q2.symbol = Polynomial{{0.0, 0.0, 0.0, 1.0}};
  std::vector<Element> x0;
  for (Complex z : RegionPredicate::accumulating_samples(-1.0, 0.1, 4)) x0.emplace_back(SpectralVector::eigenvector(z));
  const HypothesisReport rep = hypothesis_check_dense_chaos({q1, q2}, x0, SpectralVector::eigenvector(1.0),
                                                            DetectionParams{}, SamplePlan::log(0.01, 100.0, 300));
  CHECK(rep.all_pass());
  CHECK(rep.label.find("not verified") != std::string::npos);
  const HypothesisReport bad = hypothesis_check_dense_chaos({q1}, {SpectralVector::eigenvector(1.0)},
                                                            SpectralVector::eigenvector(-1.0), DetectionParams{},
                                                            SamplePlan::log(0.01, 100.0, 300));
  CHECK(bad.find("a")->status == Status::Fail);
  CHECK(bad.find("b")->status == Status::Fail);
}
