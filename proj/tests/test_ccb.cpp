#include "catch_amalgamated.hpp"

#include <algorithm>
#include <cmath>

#include "ccf/ccb.hpp"

using namespace ccf;
using Catch::Matchers::ContainsSubstring;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

const std::string kFixture = std::string(CCF_SOURCE_DIR) + "/data/northeast_htf_fixture.csv";

double npv_loop(double m, double d, int T) {
  double v = 0.0;
  for (int t = 1; t <= T; ++t) v += m / std::pow(1.0 + d, t);
  return v + 1.0 / std::pow(1.0 + d, T);
}

struct Fixture {
  ProjectionTable table = ingest_csv(kFixture);
  YearlySampler sampler = YearlySampler::uniform(table.scenarios("northeast"));
  CCBSpec spec{};
  OutcomeBins bins;

  explicit Fixture(std::size_t G = 15) {
    spec.granularity = G;
    auto rng = make_stream(20220101, StreamKind::pooled);
    const auto pooled = pooled_distribution(table, "northeast", year_range(2021, 2046), sampler, 10000, rng);
    bins = quantile_bins(pooled, G);
  }
};

}  // namespace

TEST_CASE("traditional NPV") {
  CHECK_THAT(npv_traditional(0.04, 0.01, 25), WithinAbs(1.6607, 1e-4));
  CHECK_THAT(npv_traditional(0.04, 0.01, 25), WithinRel(npv_loop(0.04, 0.01, 25), 1e-13));
  const double v25 = std::pow(1.01, -25);
  CHECK_THAT(npv_traditional(0.04, 0.01, 25), WithinRel(0.04 * (1.0 - v25) / 0.01 + v25, 1e-14));
  for (double r : {0.01, 0.04, 0.07})
    for (int T : {1, 25}) CHECK(npv_traditional(r, r, T) == 1.0);
  CHECK_THAT(npv_traditional(0.04, 0.0, 2), WithinAbs(1.08, 1e-15));
  CHECK_THROWS_AS(npv_traditional(0.04, -1.0, 2), DomainError);
}

TEST_CASE("realized coupon") {
  const auto bins = OutcomeBins::from_edges({1.0, 2.0, 4.0});
  const CouponSchedule s{{0.01, 0.03, 0.05, 0.07}};
  CCBSpec spec;
  spec.granularity = 4;
  CHECK(realized_coupon(3, 100.0, bins, s, spec) == 0.07);
  CHECK(realized_coupon(3, 0.5, bins, s, spec) == 0.01);
  spec.blend_lambda = 0.0;
  for (double v : {0.0, 1.5, 3.0, 99.0}) CHECK(realized_coupon(5, v, bins, s, spec) == spec.market_rate);
  spec.blend_lambda = 0.5;
  CHECK_THAT(realized_coupon(5, 100.0, bins, s, spec), WithinAbs(0.055, 1e-15));
  spec.blend_lambda = 1.0;
  spec.initial_fixed_years = 2;
  CHECK(realized_coupon(1, 100.0, bins, s, spec) == spec.market_rate);
  CHECK(realized_coupon(2, 0.0, bins, s, spec) == spec.market_rate);
  CHECK(realized_coupon(3, 100.0, bins, s, spec) == 0.07);
  CHECK_THROWS_AS(realized_coupon(0, 1.0, bins, s, spec), DomainError);
  CHECK_THROWS_AS(realized_coupon(26, 1.0, bins, s, spec), DomainError);
}

TEST_CASE("path NPV") {
  const auto bins = OutcomeBins::from_edges({1.0, 2.0, 4.0});
  CCBSpec spec;
  spec.granularity = 4;
  std::vector<double> path(25);
  for (std::size_t t = 0; t < path.size(); ++t) path[t] = 0.3 * static_cast<double>(t);

  CHECK(npv_path(CouponSchedule::flat(4, 0.04), path, spec, bins) == npv_traditional(0.04, 0.01, 25));
  const CouponSchedule ramp{{0.01, 0.03, 0.05, 0.07}};
  const std::vector<double> top(25, 50.0);
  CHECK_THAT(npv_path(ramp, top, spec, bins), WithinRel(npv_loop(0.07, 0.01, 25), 1e-13));

  auto higher = path;
  for (std::size_t t = 0; t < higher.size(); t += 3) higher[t] += 1.5;
  CHECK(npv_path(ramp, higher, spec, bins) >= npv_path(ramp, path, spec, bins));
  CHECK_THROWS_AS(npv_path(ramp, std::vector<double>(24, 1.0), spec, bins), DomainError);
}

TEST_CASE("expected NPV") {
  Fixture f;
  SECTION("degenerate sampler gives the single path's NPV") {
    const YearlySampler one({"int"}, {1.0});
    const CouponSchedule ramp = schedule_from_increments(std::vector<double>(15, 1.0 / 14.0), f.spec);
    const auto est = expected_npv(ramp, f.table, "northeast", one, f.spec, f.bins, 50, 9);
    std::vector<double> path;
    for (int y = 2022; y <= 2046; ++y) path.push_back(f.table.value("northeast", "int", y));
    CHECK(est.mean == npv_path(ramp, path, f.spec, f.bins));
    CHECK(est.standard_error == 0.0);
  }
  SECTION("market-rate schedule is climate independent") {
    const auto est = expected_npv(CouponSchedule::flat(15, 0.04), f.table, "northeast", f.sampler, f.spec, f.bins, 300, 1);
    CHECK_THAT(est.mean, WithinAbs(npv_traditional(0.04, 0.01, 25), 1e-12));
  }
  SECTION("standard error is reported and the fast model agrees") {
    const auto paths = simulate_climate_paths(f.table, "northeast", f.sampler, f.spec, 2000, 3);
    const CouponSchedule ramp = schedule_from_increments(std::vector<double>(15, 1.0 / 14.0), f.spec);
    const auto est = expected_npv(ramp, paths, f.spec, f.bins);
    CHECK(est.path_npv.size() == 2000);
    CHECK(est.standard_error > 0.0);
    CHECK_THAT(est.standard_error, WithinRel(standard_error(est.path_npv), 1e-15));
    CHECK_THAT(BinFrequencyModel(paths, f.bins, f.spec).expected(ramp), WithinAbs(est.mean, 1e-12));
  }
}

TEST_CASE("climate paths are deterministic and stratification keeps the marginal law") {
  Fixture f;
  const auto a = simulate_climate_paths(f.table, "northeast", f.sampler, f.spec, 500, 11);
  const auto b = simulate_climate_paths(f.table, "northeast", f.sampler, f.spec, 500, 11);
  CHECK(a.values == b.values);

  // Each year, every scenario appears n/6 times up to the two strata that
  // straddle its slice edges.
  for (std::size_t t = 0; t < a.n_years; ++t) {
    std::vector<int> counts(6, 0);
    for (std::size_t i = 0; i < a.n_paths; ++i) {
      const double v = a.path(i)[t];
      for (std::size_t s = 0; s < 6; ++s)
        if (v == f.table.value("northeast", f.sampler.scenarios()[s], 2022 + static_cast<int>(t))) {
          counts[s]++;
          break;
        }
    }
    for (int c : counts) CHECK(std::abs(c - 500.0 / 6.0) <= 2.0);
  }

  const auto plain = simulate_climate_paths(f.table, "northeast", f.sampler, f.spec, 20000, 12, {false, false});
  double m = 0.0, expect = 0.0;
  for (std::size_t i = 0; i < plain.n_paths; ++i) m += plain.path(i)[10];
  m /= static_cast<double>(plain.n_paths);
  for (const auto& s : f.sampler.scenarios()) expect += f.table.value("northeast", s, 2032) / 6.0;
  CHECK_THAT(m, WithinRel(expect, 0.03));

  const auto coherent = simulate_climate_paths(f.table, "northeast", f.sampler, f.spec, 60, 13, {true, true});
  for (std::size_t i = 0; i < coherent.n_paths; ++i) {
    const auto p = coherent.path(i);
    std::size_t which = 6;
    for (std::size_t s = 0; s < 6; ++s)
      if (p[0] == f.table.value("northeast", f.sampler.scenarios()[s], 2022)) which = s;
    REQUIRE(which < 6);
    for (std::size_t t = 0; t < p.size(); ++t)
      CHECK(p[t] == f.table.value("northeast", f.sampler.scenarios()[which], 2022 + static_cast<int>(t)));
  }
}

TEST_CASE("schedule parametrization is monotone and bounded") {
  CCBSpec spec;
  spec.granularity = 5;
  const auto s = schedule_from_increments(std::vector<double>{0.2, 0.0, 0.5, 0.6, 0.3}, spec);
  CHECK_NOTHROW(s.validate(spec));
  CHECK(s.rates.front() == spec.min_rate + 0.2 * (spec.max_rate - spec.min_rate));
  CHECK(s.rates.back() == spec.max_rate);
  CHECK_THROWS_AS((CouponSchedule{{0.02, 0.01, 0.03, 0.04, 0.05}}.validate(spec)), DomainError);
  CHECK_THROWS_AS((CouponSchedule{{0.0, 0.01, 0.03, 0.04, 0.05}}.validate(spec)), DomainError);
}

TEST_CASE("optimized schedule on the fixture") {
  Fixture f;
  const auto paths = simulate_climate_paths(f.table, "northeast", f.sampler, f.spec, 2000, 20220101);
  const auto rep = optimize_schedule(f.spec, f.bins, paths);
  REQUIRE(rep.schedule.rates.size() == 15);
  CHECK_NOTHROW(rep.schedule.validate(f.spec));
  CHECK(rep.within_tolerance);
  CHECK(std::abs(rep.expected - rep.target) <= rep.tolerance);
  CHECK_THAT(rep.tolerance, WithinRel(1e-3 * npv_traditional(0.04, 0.01, 25), 1e-12));
  CHECK(rep.schedule.rates.front() < 0.02);
  CHECK(rep.schedule.rates.back() > 0.06);

  const auto fresh = expected_npv(rep.schedule, f.table, "northeast", f.sampler, f.spec, f.bins, 2000, 20220102);
  CHECK(std::abs(fresh.mean - rep.target) <= rep.tolerance + 3.0 * fresh.standard_error);

  const auto est = expected_npv(rep.schedule, paths, f.spec, f.bins);
  const auto above = std::count_if(est.path_npv.begin(), est.path_npv.end(), [&](double v) { return v > rep.target; });
  CHECK(above > 0);
  CHECK(above < 2000);

  std::vector<double> path_means(paths.n_paths);
  for (std::size_t i = 0; i < paths.n_paths; ++i) path_means[i] = paths.path_mean(i);
  CHECK(spearman(path_means, est.path_npv) > 0.5);

  const auto again = optimize_schedule(f.spec, f.bins, paths);
  CHECK(again.schedule.rates == rep.schedule.rates);
}

TEST_CASE("flat market schedule is a feasible optimum when it matches the target") {
  Fixture f;
  f.spec.min_rate = 0.04;
  f.spec.max_rate = 0.04;
  const auto paths = simulate_climate_paths(f.table, "northeast", f.sampler, f.spec, 100, 1);
  const auto rep = optimize_schedule(f.spec, f.bins, paths);
  CHECK(rep.within_tolerance);
  for (double r : rep.schedule.rates) CHECK(r == 0.04);
}

TEST_CASE("zero blend reproduces the traditional bond on every path") {
  Fixture f;
  f.spec.blend_lambda = 0.0;
  const auto paths = simulate_climate_paths(f.table, "northeast", f.sampler, f.spec, 300, 5);
  const auto rep = optimize_schedule(f.spec, f.bins, paths);
  const auto est = expected_npv(rep.schedule, paths, f.spec, f.bins);
  for (double v : est.path_npv) CHECK(v == npv_traditional(0.04, 0.01, 25));
}

TEST_CASE("two bins still give a monotone bounded schedule") {
  Fixture f(2);
  const auto paths = simulate_climate_paths(f.table, "northeast", f.sampler, f.spec, 2000, 6);
  const auto rep = optimize_schedule(f.spec, f.bins, paths);
  REQUIRE(rep.schedule.rates.size() == 2);
  CHECK_NOTHROW(rep.schedule.validate(f.spec));
  CHECK(rep.within_tolerance);
}

TEST_CASE("infeasible rate bands report the achievable range") {
  Fixture f;
  const auto paths = simulate_climate_paths(f.table, "northeast", f.sampler, f.spec, 200, 7);
  f.spec.max_rate = 0.03;
  try {
    optimize_schedule(f.spec, f.bins, paths);
    FAIL("expected an infeasibility error");
  } catch (const InfeasibleError& e) {
    CHECK_THAT(e.what(), ContainsSubstring("achievable range"));
  }
  f.spec.max_rate = 0.005;
  CHECK_THROWS_AS(optimize_schedule(f.spec, f.bins, paths), InfeasibleError);
  f.spec.max_rate = 0.07;
  f.spec.min_rate = 0.05;
  CHECK_THROWS_AS(optimize_schedule(f.spec, f.bins, paths), InfeasibleError);
}
