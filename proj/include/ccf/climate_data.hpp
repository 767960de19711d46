#pragma once

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstddef>
#include <fstream>
#include <istream>
#include <limits>
#include <map>
#include <optional>
#include <ostream>
#include <set>
#include <span>
#include <sstream>
#include <string>
#include <string_view>
#include <tuple>
#include <vector>

#include "ccf/errors.hpp"
#include "ccf/random.hpp"

namespace ccf {

inline constexpr std::string_view kProjectionHeader = "location,scenario,year,value";

struct ProjectionRecord {
  std::string location;
  std::string scenario;
  int year = 0;
  double value = 0.0;
};

struct ProjectionKey {
  std::string location;
  std::string scenario;
  int year = 0;

  auto operator<=>(const ProjectionKey&) const = default;
};

inline std::string to_string(const ProjectionKey& k) {
  return "(" + k.location + ", " + k.scenario + ", " + std::to_string(k.year) + ")";
}

// Validated climate projections keyed by (location, scenario, year).
class ProjectionTable {
public:
  ProjectionTable() = default;

  // Throws DomainError on a duplicate key.
  void insert(ProjectionRecord rec) {
    ProjectionKey key{rec.location, rec.scenario, rec.year};
    if (!index_.emplace(key, records_.size()).second)
      throw DomainError("duplicate projection key " + to_string(key));
    records_.push_back(std::move(rec));
  }

  std::size_t size() const noexcept { return records_.size(); }
  const std::vector<ProjectionRecord>& records() const noexcept { return records_; }

  std::optional<double> find(const std::string& location, const std::string& scenario, int year) const {
    const auto it = index_.find(ProjectionKey{location, scenario, year});
    if (it == index_.end()) return std::nullopt;
    return records_[it->second].value;
  }

  double value(const std::string& location, const std::string& scenario, int year) const {
    if (auto v = find(location, scenario, year)) return *v;
    throw CoverageError("missing projection " + to_string(ProjectionKey{location, scenario, year}));
  }

  std::vector<std::string> locations() const {
    std::set<std::string> s;
    for (const auto& r : records_) s.insert(r.location);
    return {s.begin(), s.end()};
  }

  // Scenarios present for a location, in first-seen order.
  std::vector<std::string> scenarios(const std::string& location) const {
    std::vector<std::string> out;
    for (const auto& r : records_)
      if (r.location == location && std::find(out.begin(), out.end(), r.scenario) == out.end())
        out.push_back(r.scenario);
    return out;
  }

  std::vector<int> years(const std::string& location, const std::string& scenario) const {
    std::vector<int> out;
    for (const auto& r : records_)
      if (r.location == location && r.scenario == scenario) out.push_back(r.year);
    std::sort(out.begin(), out.end());
    return out;
  }

  std::vector<ProjectionKey> missing(const std::string& location, std::span<const std::string> scenarios,
                                     int first_year, int last_year) const {
    std::vector<ProjectionKey> out;
    for (const auto& s : scenarios)
      for (int y = first_year; y <= last_year; ++y)
        if (!find(location, s, y)) out.push_back({location, s, y});
    return out;
  }

  // Throws CoverageError listing every missing key (first 25 spelled out).
  void require_coverage(const std::string& location, std::span<const std::string> scenarios,
                        int first_year, int last_year) const {
    const auto gaps = missing(location, scenarios, first_year, last_year);
    if (gaps.empty()) return;
    std::string msg = std::to_string(gaps.size()) + " missing projection key(s):";
    for (std::size_t i = 0; i < gaps.size() && i < 25; ++i) msg += " " + to_string(gaps[i]);
    if (gaps.size() > 25) msg += " ...";
    throw CoverageError(msg);
  }

private:
  std::vector<ProjectionRecord> records_;
  std::map<ProjectionKey, std::size_t> index_;
};

struct IngestOptions {
  bool allow_negative = false;  // count-like variables must be >= 0
};

namespace detail {

inline std::vector<std::string_view> split_fields(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = line.find(',', start);
    out.push_back(line.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

template <class T>
bool parse_number(std::string_view s, T& out) {
  if (s.empty()) return false;
  if (s.front() == '+') s.remove_prefix(1);
  const auto res = std::from_chars(s.data(), s.data() + s.size(), out);
  return res.ec == std::errc() && res.ptr == s.data() + s.size();
}

}  // namespace detail

// Parses `location,scenario,year,value` rows. Line numbers in errors are
// 1-based and count the header.
inline ProjectionTable read_projections(std::istream& in, const IngestOptions& opts = {}) {
  ProjectionTable table;
  std::string line;
  std::size_t lineno = 0;
  if (!std::getline(in, line)) throw IngestError("empty input, expected header '" + std::string(kProjectionHeader) + "'", 1);
  ++lineno;
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line.size() >= 3 && line.compare(0, 3, "\xEF\xBB\xBF") == 0) line.erase(0, 3);
  if (line != kProjectionHeader)
    throw IngestError("header is '" + line + "', expected '" + std::string(kProjectionHeader) + "'", lineno);

  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto f = detail::split_fields(line);
    if (f.size() != 4)
      throw IngestError("expected 4 fields, found " + std::to_string(f.size()), lineno);
    ProjectionRecord rec;
    rec.location = std::string(f[0]);
    rec.scenario = std::string(f[1]);
    if (rec.location.empty() || rec.scenario.empty())
      throw IngestError("location and scenario must be non-empty", lineno);
    if (!detail::parse_number(f[2], rec.year))
      throw IngestError("year '" + std::string(f[2]) + "' is not an integer", lineno);
    if (!detail::parse_number(f[3], rec.value) || !std::isfinite(rec.value))
      throw IngestError("value '" + std::string(f[3]) + "' is not a finite number", lineno);
    if (!opts.allow_negative && rec.value < 0.0)
      throw IngestError("negative value " + std::string(f[3]) + " for a count-like variable", lineno);
    ProjectionKey key{rec.location, rec.scenario, rec.year};
    if (table.find(key.location, key.scenario, key.year))
      throw IngestError("duplicate key " + to_string(key), lineno);
    table.insert(std::move(rec));
  }
  return table;
}

inline ProjectionTable ingest_csv(const std::string& path, const IngestOptions& opts = {}) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open projection file '" + path + "'");
  return read_projections(in, opts);
}

struct CoverageSummary {
  std::string location;
  std::string scenario;
  int first_year = 0;
  int last_year = 0;
  std::size_t n_years = 0;
  bool contiguous = true;
};

inline std::vector<CoverageSummary> coverage(const ProjectionTable& table) {
  std::vector<CoverageSummary> out;
  for (const auto& loc : table.locations())
    for (const auto& scen : table.scenarios(loc)) {
      const auto ys = table.years(loc, scen);
      CoverageSummary c{loc, scen, ys.front(), ys.back(), ys.size(), true};
      c.contiguous = static_cast<std::size_t>(ys.back() - ys.front() + 1) == ys.size();
      out.push_back(c);
    }
  return out;
}

// Per-year climate outcome law: a categorical choice of projection scenario
// and optional multiplicative lognormal noise exp(sigma * Z).
class YearlySampler {
public:
  YearlySampler(std::vector<std::string> scenarios, std::vector<double> weights, double sigma = 0.0)
      : scenarios_(std::move(scenarios)), weights_(std::move(weights)), sigma_(sigma) {
    if (scenarios_.empty()) throw DomainError("sampler needs at least one scenario");
    if (scenarios_.size() != weights_.size()) throw DomainError("sampler scenario/weight size mismatch");
    if (!(sigma_ >= 0.0) || !std::isfinite(sigma_)) throw DomainError("noise sigma must be >= 0");
    double total = 0.0;
    for (double w : weights_) {
      if (!(w >= 0.0) || !std::isfinite(w)) throw DomainError("scenario weights must be >= 0");
      total += w;
    }
    if (std::abs(total - 1.0) > 1e-9) throw DomainError("scenario weights must sum to 1");
    cdf_.resize(weights_.size());
    double acc = 0.0;
    for (std::size_t i = 0; i < weights_.size(); ++i) cdf_[i] = (acc += weights_[i]);
    cdf_.back() = 1.0;
  }

  static YearlySampler uniform(std::vector<std::string> scenarios, double sigma = 0.0) {
    const auto n = scenarios.size();
    return YearlySampler(std::move(scenarios), std::vector<double>(n, 1.0 / static_cast<double>(n)), sigma);
  }

  const std::vector<std::string>& scenarios() const noexcept { return scenarios_; }
  const std::vector<double>& weights() const noexcept { return weights_; }
  double sigma() const noexcept { return sigma_; }

  // Scenario index for a uniform u in [0, 1).
  std::size_t pick(double u) const {
    for (std::size_t i = 0; i + 1 < cdf_.size(); ++i)
      if (u < cdf_[i]) return i;
    return cdf_.size() - 1;
  }

  // Projected value of scenario `idx` perturbed by the standard normal z.
  double perturb(double projected, double z) const {
    return sigma_ > 0.0 ? projected * std::exp(sigma_ * z) : projected;
  }

private:
  std::vector<std::string> scenarios_;
  std::vector<double> weights_;
  std::vector<double> cdf_;
  double sigma_ = 0.0;
};

// One draw of the climate variable for (location, year). Consumes one
// uniform, plus one normal when sigma > 0.
inline double sample_year_value(const ProjectionTable& table, const std::string& location, int year,
                                const YearlySampler& sampler, Rng& rng) {
  const auto idx = sampler.pick(uniform01(rng));
  const double v = table.value(location, sampler.scenarios()[idx], year);
  return sampler.sigma() > 0.0 ? sampler.perturb(v, standard_normal(rng)) : v;
}

// n_samples draws pooled evenly over `years`: draw i uses years[i % size].
inline std::vector<double> pooled_distribution(const ProjectionTable& table, const std::string& location,
                                               std::span<const int> years, const YearlySampler& sampler,
                                               std::size_t n_samples, Rng& rng) {
  if (years.empty()) throw DomainError("pooled distribution needs at least one year");
  std::vector<std::string> scen = sampler.scenarios();
  for (int y : years) table.require_coverage(location, scen, y, y);
  std::vector<double> out(n_samples);
  for (std::size_t i = 0; i < n_samples; ++i)
    out[i] = sample_year_value(table, location, years[i % years.size()], sampler, rng);
  return out;
}

inline std::vector<int> year_range(int first, int last) {
  if (last < first) throw DomainError("year range is empty");
  std::vector<int> ys;
  for (int y = first; y <= last; ++y) ys.push_back(y);
  return ys;
}

// G equally likely climate-outcome bins: (-inf, e1), [e1, e2), ..., [e_{G-1}, inf).
struct OutcomeBins {
  std::vector<double> edges;   // G-1 strictly increasing interior edges
  std::vector<double> labels;  // bottom value per bin, G entries
  bool degenerate = false;     // ties forced index tie-breaking

  std::size_t count() const noexcept { return edges.size() + 1; }

  static OutcomeBins from_edges(std::vector<double> edges, std::vector<double> labels = {}) {
    for (std::size_t i = 0; i < edges.size(); ++i) {
      if (!std::isfinite(edges[i])) throw DomainError("bin edges must be finite");
      if (i > 0 && !(edges[i] > edges[i - 1])) throw DomainError("bin edges must be strictly increasing");
    }
    if (labels.empty()) {
      labels.push_back(edges.empty() ? 0.0 : -std::numeric_limits<double>::infinity());
      labels.insert(labels.end(), edges.begin(), edges.end());
    }
    if (labels.size() != edges.size() + 1) throw DomainError("need one label per bin");
    return {std::move(edges), std::move(labels), false};
  }
};

inline constexpr double kBinJitter = 1e-9;
inline constexpr std::uint64_t kBinJitterSeed = 0x6a09e667f3bcc909ULL;

// Edges at the k/G empirical quantiles, k = 1..G-1. Samples are jittered by
// +U[0, 1e-9) from a fixed stream before sorting, which orders tied values.
// An edge is the raw sample value at its quantile position, so each bin's
// bottom label is also its lower edge. When ties make an edge coincide with
// the previous one, the jittered value (or, failing that, the next double)
// is used instead and `degenerate` is set.
inline OutcomeBins quantile_bins(std::span<const double> samples, std::size_t G) {
  if (G < 2) throw DomainError("granularity must be >= 2");
  if (samples.empty()) throw DomainError("cannot bin an empty sample");
  const std::size_t n = samples.size();

  auto rng = make_stream(kBinJitterSeed, StreamKind::jitter);
  std::vector<std::pair<double, double>> jittered(n);  // (jittered, raw)
  for (std::size_t i = 0; i < n; ++i) jittered[i] = {samples[i] + kBinJitter * uniform01(rng), samples[i]};
  std::sort(jittered.begin(), jittered.end());

  OutcomeBins bins;
  bins.labels.push_back(jittered.front().second);
  double prev_raw = jittered.front().second;
  for (std::size_t k = 1; k < G; ++k) {
    const auto pos = std::min(n - 1, (k * n) / G);
    const double raw = jittered[pos].second;
    double e = raw;
    if (raw == prev_raw) bins.degenerate = true;
    if (!bins.edges.empty() && !(e > bins.edges.back())) {
      e = jittered[pos].first;
      if (!(e > bins.edges.back())) e = std::nextafter(bins.edges.back(), std::numeric_limits<double>::infinity());
      bins.degenerate = true;
    }
    bins.edges.push_back(e);
    bins.labels.push_back(raw);
    prev_raw = raw;
  }
  return bins;
}

// Index of the half-open bin containing `value`; a value on an edge belongs
// to the upper bin.
inline std::size_t bin_of(double value, const OutcomeBins& bins) {
  return static_cast<std::size_t>(std::upper_bound(bins.edges.begin(), bins.edges.end(), value) -
                                  bins.edges.begin());
}

}  // namespace ccf
