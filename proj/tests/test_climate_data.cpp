#include "catch_amalgamated.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "ccf/climate_data.hpp"
#include "ccf/stats.hpp"

using namespace ccf;
using Catch::Matchers::ContainsSubstring;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

const std::string kFixture = std::string(CCF_SOURCE_DIR) + "/data/northeast_htf_fixture.csv";

ProjectionTable parse(const std::string& text) {
  std::istringstream in(text);
  return read_projections(in);
}

std::string ingest_error(const std::string& text) {
  try {
    parse(text);
  } catch (const IngestError& e) {
    return e.what();
  }
  return {};
}

std::vector<double> uniform_samples(std::size_t n, std::uint64_t seed) {
  auto rng = make_stream(seed, StreamKind::pooled);
  std::vector<double> x(n);
  for (auto& v : x) v = uniform01(rng);
  return x;
}

}  // namespace

TEST_CASE("ingest a small valid file") {
  const auto t = parse("location,scenario,year,value\nne,low,2021,1.5\nne,high,2021,3\n");
  CHECK(t.size() == 2);
  CHECK(t.value("ne", "high", 2021) == 3.0);
  CHECK_FALSE(t.find("ne", "high", 2022));
  CHECK_THROWS_AS(t.value("ne", "high", 2022), CoverageError);
}

TEST_CASE("ingest rejects bad rows and names the line") {
  const std::string h = "location,scenario,year,value\n";
  auto dup = ingest_error(h + "ne,low,2021,1\nne,low,2022,1\nne,low,2021,2\n");
  CHECK_THAT(dup, ContainsSubstring("line 4"));
  CHECK_THAT(dup, ContainsSubstring("(ne, low, 2021)"));
  CHECK_THAT(ingest_error(h + "ne,low,2021,-1\n"), ContainsSubstring("line 2"));
  CHECK_THAT(ingest_error(h + "ne,low,2021\n"), ContainsSubstring("line 2"));
  CHECK_THAT(ingest_error(h + "ne,low,2021,1\nne,low,20x2,1\n"), ContainsSubstring("line 3"));
  CHECK_THAT(ingest_error(h + "ne,low,2021,abc\n"), ContainsSubstring("line 2"));
  CHECK_THAT(ingest_error(h + "ne,low,2021,nan\n"), ContainsSubstring("line 2"));
  CHECK_THAT(ingest_error("loc,scenario,year,value\n"), ContainsSubstring("line 1"));
  CHECK_THAT(ingest_error(""), ContainsSubstring("line 1"));
  std::istringstream neg(h + "ne,low,2021,-1\n");
  CHECK(read_projections(neg, {true}).size() == 1);
  CHECK_THROWS_AS(ingest_csv("/nonexistent/projections.csv"), DataError);
}

TEST_CASE("bundled fixture has six scenarios over 26 years") {
  const auto t = ingest_csv(kFixture);
  CHECK(t.size() == 156);
  CHECK(t.scenarios("northeast").size() == 6);
  const auto cov = coverage(t);
  REQUIRE(cov.size() == 6);
  for (const auto& c : cov) {
    CHECK(c.first_year == 2021);
    CHECK(c.last_year == 2046);
    CHECK(c.contiguous);
  }
}

TEST_CASE("coverage errors list the missing keys") {
  const auto t = parse("location,scenario,year,value\nne,a,2021,1\nne,b,2022,1\n");
  const std::vector<std::string> scen{"a", "b"};
  try {
    t.require_coverage("ne", scen, 2021, 2022);
    FAIL("expected a coverage error");
  } catch (const CoverageError& e) {
    CHECK_THAT(e.what(), ContainsSubstring("2 missing"));
    CHECK_THAT(e.what(), ContainsSubstring("(ne, a, 2022)"));
    CHECK_THAT(e.what(), ContainsSubstring("(ne, b, 2021)"));
  }
  auto rng = make_stream(1, StreamKind::pooled);
  const std::vector<int> years{2021, 2022};
  CHECK_THROWS_AS(pooled_distribution(t, "ne", years, YearlySampler::uniform(scen), 10, rng), CoverageError);
}

TEST_CASE("sample_year_value") {
  const auto t = ingest_csv(kFixture);
  SECTION("degenerate sampler returns the projection") {
    const YearlySampler s({"int"}, {1.0});
    auto rng = make_stream(3, StreamKind::pooled);
    for (int y = 2021; y <= 2046; ++y) CHECK(sample_year_value(t, "northeast", y, s, rng) == t.value("northeast", "int", y));
  }
  SECTION("uniform weights hit each scenario with frequency 1/6") {
    const auto scen = t.scenarios("northeast");
    const auto s = YearlySampler::uniform(scen);
    auto rng = make_stream(4, StreamKind::pooled);
    std::vector<int> counts(scen.size(), 0);
    const int n = 60000;
    for (int i = 0; i < n; ++i) {
      const double v = sample_year_value(t, "northeast", 2021, s, rng);
      for (std::size_t k = 0; k < scen.size(); ++k)
        if (v == t.value("northeast", scen[k], 2021)) counts[k]++;
    }
    for (int c : counts) CHECK_THAT(static_cast<double>(c) / n, WithinAbs(1.0 / 6.0, 0.01));
  }
  SECTION("lognormal noise matches the moment oracle") {
    const std::vector<std::string> scen{"int low", "high"};
    const YearlySampler s(scen, {0.25, 0.75}, 0.1);
    auto rng = make_stream(5, StreamKind::pooled);
    const int n = 100000;
    std::vector<double> draws(n);
    for (auto& d : draws) d = sample_year_value(t, "northeast", 2040, s, rng);
    const double projected = 0.25 * t.value("northeast", "int low", 2040) + 0.75 * t.value("northeast", "high", 2040);
    CHECK_THAT(mean(draws), WithinRel(projected * std::exp(0.1 * 0.1 / 2.0), 0.01));
  }
}

TEST_CASE("sampler validation") {
  CHECK_THROWS_AS(YearlySampler({"a", "b"}, {0.5, 0.6}), DomainError);
  CHECK_THROWS_AS(YearlySampler({"a"}, {1.0}, -0.1), DomainError);
  CHECK_THROWS_AS(YearlySampler({}, {}), DomainError);
}

TEST_CASE("pooled distribution") {
  const auto t = parse("location,scenario,year,value\nne,a,2021,0\nne,a,2022,10\n");
  const auto s = YearlySampler::uniform({"a"});
  auto rng = make_stream(6, StreamKind::pooled);
  const std::vector<int> one{2022};
  const auto constant = pooled_distribution(t, "ne", one, s, 100, rng);
  CHECK(std::all_of(constant.begin(), constant.end(), [](double v) { return v == 10.0; }));
  const std::vector<int> two{2021, 2022};
  CHECK_THAT(mean(pooled_distribution(t, "ne", two, s, 1000, rng)), WithinAbs(5.0, 1e-12));

  const auto fx = ingest_csv(kFixture);
  const auto pooled = pooled_distribution(fx, "northeast", year_range(2021, 2046),
                                          YearlySampler::uniform(fx.scenarios("northeast")), 10000, rng);
  CHECK(skewness(pooled) > 0.0);
}

TEST_CASE("quantile bins of uniform samples") {
  const auto x = uniform_samples(100000, 7);
  const auto bins = quantile_bins(x, 4);
  REQUIRE(bins.edges.size() == 3);
  CHECK_THAT(bins.edges[0], WithinAbs(0.25, 0.01));
  CHECK_THAT(bins.edges[1], WithinAbs(0.5, 0.01));
  CHECK_THAT(bins.edges[2], WithinAbs(0.75, 0.01));
  CHECK_FALSE(bins.degenerate);

  for (std::size_t G : {2, 4, 15, 37}) {
    const auto b = quantile_bins(x, G);
    std::vector<std::size_t> counts(G, 0);
    for (double v : x) counts[bin_of(v, b)]++;
    const double n = static_cast<double>(x.size());
    for (auto c : counts) {
      CHECK(std::abs(static_cast<double>(c) - n / static_cast<double>(G)) <= static_cast<double>(G));
      CHECK(std::abs(static_cast<double>(c) / n - 1.0 / static_cast<double>(G)) <= 1.0 / std::sqrt(n));
    }
    const auto again = quantile_bins(x, G);
    CHECK(again.edges == b.edges);
    CHECK(again.labels == b.labels);
  }
}

TEST_CASE("bottom labels are the lower edges") {
  const auto x = uniform_samples(5000, 8);
  const auto b = quantile_bins(x, 10);
  REQUIRE(b.labels.size() == 10);
  CHECK(b.labels[0] == *std::min_element(x.begin(), x.end()));
  for (std::size_t k = 1; k < 10; ++k) {
    CHECK(b.labels[k] == b.edges[k - 1]);
    CHECK(bin_of(b.labels[k], b) == k);
  }
}

TEST_CASE("constant samples give flagged, strictly increasing edges") {
  const std::vector<double> x(1000, 4.0);
  const auto b = quantile_bins(x, 5);
  CHECK(b.degenerate);
  REQUIRE(b.edges.size() == 4);
  for (std::size_t k = 1; k < b.edges.size(); ++k) CHECK(b.edges[k] > b.edges[k - 1]);
  CHECK_THROWS_AS(quantile_bins(x, 1), DomainError);
  CHECK_THROWS_AS(quantile_bins(std::vector<double>{}, 3), DomainError);
}

TEST_CASE("fifteen bins on the fixture") {
  const auto fx = ingest_csv(kFixture);
  auto rng = make_stream(20220101, StreamKind::pooled);
  const auto pooled = pooled_distribution(fx, "northeast", year_range(2021, 2046),
                                          YearlySampler::uniform(fx.scenarios("northeast")), 10000, rng);
  const auto b = quantile_bins(pooled, 15);
  REQUIRE(b.edges.size() == 14);
  for (std::size_t k = 1; k < 14; ++k) CHECK(b.edges[k] > b.edges[k - 1]);
  CHECK_FALSE(b.degenerate);
}

TEST_CASE("bin_of boundaries") {
  const auto b = OutcomeBins::from_edges({1.0, 3.0, 7.0, 12.0});
  CHECK(bin_of(-5.0, b) == 0);
  CHECK(bin_of(0.999, b) == 0);
  CHECK(bin_of(1.0, b) == 1);
  CHECK(bin_of(7.0, b) == 3);
  CHECK(bin_of(12.0, b) == 4);
  CHECK(bin_of(1e9, b) == 4);
  CHECK(b.labels[bin_of(2.0, b)] == 1.0);
  CHECK(b.labels[bin_of(10.0, b)] == 7.0);
  CHECK_THROWS_AS(OutcomeBins::from_edges({1.0, 1.0}), DomainError);
}
