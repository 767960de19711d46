#include "catch_amalgamated.hpp"

#include <array>
#include <cmath>

#include "ccf/scenario.hpp"

using namespace ccf;
using Catch::Matchers::WithinAbs;

TEST_CASE("cumulative trigger probabilities of the default ladder") {
  const auto ladder = default_ladder();
  CHECK_THAT(cumulative_trigger_prob(ladder, ladder.id("extreme")), WithinAbs(0.1, 1e-12));
  CHECK(cumulative_trigger_prob(ladder, ladder.id("low")) == 1.0);
  CHECK_THAT(cumulative_trigger_prob(ladder, ladder.id("int")), WithinAbs(0.5, 1e-12));

  const std::array<double, 6> expected{1.0, 0.7, 0.5, 0.3, 0.2, 0.1};
  for (std::size_t k = 0; k < ladder.size(); ++k) CHECK_THAT(ladder.cumulative(k), WithinAbs(expected[k], 1e-12));
}

TEST_CASE("adjacent cumulative differences recover the per-scenario probabilities") {
  const ScenarioLadder ladder({{"a", 0.05}, {"b", 0.45}, {"c", 0.25}, {"d", 0.25}});
  CHECK(ladder.cumulative(0) == 1.0);
  for (std::size_t k = 0; k + 1 < ladder.size(); ++k) {
    CHECK_THAT(ladder.cumulative(k) - ladder.cumulative(k + 1), WithinAbs(ladder.probability(k), 1e-12));
    CHECK(ladder.cumulative(k) > ladder.cumulative(k + 1));
  }
}

TEST_CASE("unknown or foreign scenario ids are rejected") {
  const auto ladder = default_ladder();
  CHECK_THROWS_AS(ladder.id("catastrophic"), DomainError);
  const ScenarioLadder other({{"low", 0.5}, {"extreme", 0.5}});
  CHECK_THROWS_AS(cumulative_trigger_prob(ladder, other.id("extreme")), DomainError);
  CHECK_THROWS_AS(severity_fraction(ladder, other.id("low")), DomainError);
}

TEST_CASE("ladder validation") {
  // The per-scenario column as printed sums to 0.9.
  CHECK_THROWS_AS(ScenarioLadder({{"low", 0.3}, {"int low", 0.2}, {"int", 0.1}, {"int high", 0.1}, {"high", 0.1},
                                  {"extreme", 0.1}}),
                  DomainError);
  CHECK_THROWS_AS(ScenarioLadder({}), DomainError);
  CHECK_THROWS_AS(ScenarioLadder({{"a", 0.5}, {"a", 0.5}}), DomainError);
  CHECK_THROWS_AS(ScenarioLadder({{"a", 1.0}, {"b", 0.0}}), DomainError);
  CHECK_THROWS_AS(ScenarioLadder({{"a", 0.5}, {"b", 0.5 + 1e-9}}), DomainError);
  CHECK_NOTHROW(ScenarioLadder({{"a", 0.1}, {"b", 0.2}, {"c", 0.7}}));
}

TEST_CASE("degenerate ladder always samples its only scenario") {
  const ScenarioLadder ladder({{"only", 1.0}});
  auto rng = make_stream(1, StreamKind::replication);
  for (int i = 0; i < 1000; ++i) CHECK(sample_scenario(ladder, rng).name == "only");
}

TEST_CASE("extreme frequency over 100k draws lies in its binomial 99% interval") {
  const auto ladder = default_ladder();
  auto rng = make_stream(42, StreamKind::replication);
  const int n = 100000;
  int hits = 0;
  for (int i = 0; i < n; ++i) hits += sample_scenario(ladder, rng).rank == 5;
  const double f = static_cast<double>(hits) / n;
  CHECK(f >= 0.094);
  CHECK(f <= 0.106);
}

TEST_CASE("sampling frequencies pass a chi-square goodness-of-fit test") {
  const auto ladder = default_ladder();
  const int n = 100000;
  for (std::uint64_t seed : {1ULL, 2ULL, 3ULL}) {
    auto rng = make_stream(seed, StreamKind::replication);
    std::array<int, 6> counts{};
    for (int i = 0; i < n; ++i) counts[ladder.sample_rank(rng)]++;
    double chi2 = 0.0;
    for (std::size_t k = 0; k < 6; ++k) {
      const double e = n * ladder.probability(k);
      chi2 += (counts[k] - e) * (counts[k] - e) / e;
    }
    // Upper 0.001 point of chi-square with 5 degrees of freedom.
    CHECK(chi2 < 20.515);
  }
}

TEST_CASE("same seed gives the same draw sequence") {
  const auto ladder = default_ladder();
  auto a = make_stream(7, StreamKind::replication, 3);
  auto b = make_stream(7, StreamKind::replication, 3);
  auto c = make_stream(7, StreamKind::replication, 4);
  bool differs = false;
  for (int i = 0; i < 500; ++i) {
    const auto x = ladder.sample_rank(a);
    CHECK(x == ladder.sample_rank(b));
    differs |= x != ladder.sample_rank(c);
  }
  CHECK(differs);
}

TEST_CASE("severity fraction") {
  const auto ladder = default_ladder();
  CHECK(severity_fraction(ladder, ladder.id("low")) == 0.0);
  CHECK(severity_fraction(ladder, ladder.id("extreme")) == 1.0);
  CHECK_THAT(severity_fraction(ladder, ladder.id("int")), WithinAbs(0.4, 1e-15));
  const ScenarioLadder single({{"only", 1.0}});
  CHECK(severity_fraction(single, single.id("only")) == 0.0);
}

TEST_CASE("uniforms are in [0, 1) and normals have unit moments") {
  auto rng = make_stream(9, StreamKind::bootstrap);
  double s = 0.0, s2 = 0.0;
  const int n = 200000;
  for (int i = 0; i < n; ++i) {
    const double u = uniform01(rng);
    REQUIRE(u >= 0.0);
    REQUIRE(u < 1.0);
    const double z = standard_normal(rng);
    s += z;
    s2 += z * z;
  }
  CHECK_THAT(s / n, WithinAbs(0.0, 0.01));
  CHECK_THAT(s2 / n, WithinAbs(1.0, 0.02));
}
