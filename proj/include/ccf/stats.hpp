#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <span>
#include <vector>

#include "ccf/errors.hpp"
#include "ccf/random.hpp"

namespace ccf {

// Neumaier-compensated sum; fixed iteration order keeps it deterministic.
inline double stable_sum(std::span<const double> xs) noexcept {
  double sum = 0.0, c = 0.0;
  for (double x : xs) {
    const double t = sum + x;
    if (std::abs(sum) >= std::abs(x))
      c += (sum - t) + x;
    else
      c += (x - t) + sum;
    sum = t;
  }
  return sum + c;
}

inline double mean(std::span<const double> xs) {
  if (xs.empty()) throw DomainError("mean of an empty sample");
  return stable_sum(xs) / static_cast<double>(xs.size());
}

// Unbiased sample variance; 0 for a single observation.
inline double variance(std::span<const double> xs) {
  if (xs.size() < 2) return 0.0;
  const double m = mean(xs);
  double acc = 0.0;
  for (double x : xs) acc += (x - m) * (x - m);
  return acc / static_cast<double>(xs.size() - 1);
}

inline double standard_error(std::span<const double> xs) {
  if (xs.empty()) throw DomainError("standard error of an empty sample");
  return std::sqrt(variance(xs) / static_cast<double>(xs.size()));
}

// Sample skewness (moment estimator g1).
inline double skewness(std::span<const double> xs) {
  if (xs.size() < 3) throw DomainError("skewness needs at least 3 observations");
  const double m = mean(xs);
  double m2 = 0.0, m3 = 0.0;
  for (double x : xs) {
    const double d = x - m;
    m2 += d * d;
    m3 += d * d * d;
  }
  const double n = static_cast<double>(xs.size());
  m2 /= n;
  m3 /= n;
  if (m2 == 0.0) return 0.0;
  return m3 / std::pow(m2, 1.5);
}

// Type-7 (linear interpolation) quantile of an already sorted sample.
inline double sorted_quantile(std::span<const double> sorted, double p) {
  if (sorted.empty()) throw DomainError("quantile of an empty sample");
  p = std::clamp(p, 0.0, 1.0);
  const double h = p * static_cast<double>(sorted.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(h));
  const auto hi = std::min(lo + 1, sorted.size() - 1);
  return sorted[lo] + (h - static_cast<double>(lo)) * (sorted[hi] - sorted[lo]);
}

// Average ranks (1-based), ties share their mean rank.
inline std::vector<double> ranks(std::span<const double> xs) {
  std::vector<std::size_t> idx(xs.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::stable_sort(idx.begin(), idx.end(), [&](auto a, auto b) { return xs[a] < xs[b]; });
  std::vector<double> r(xs.size());
  for (std::size_t i = 0; i < idx.size();) {
    std::size_t j = i;
    while (j + 1 < idx.size() && xs[idx[j + 1]] == xs[idx[i]]) ++j;
    const double avg = 0.5 * static_cast<double>(i + j) + 1.0;
    for (std::size_t k = i; k <= j; ++k) r[idx[k]] = avg;
    i = j + 1;
  }
  return r;
}

inline double pearson(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size() || x.size() < 2) throw DomainError("pearson needs two equal samples of size >= 2");
  const double mx = mean(x), my = mean(y);
  double sxy = 0.0, sxx = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
    syy += (y[i] - my) * (y[i] - my);
  }
  if (sxx == 0.0 || syy == 0.0) return 0.0;
  return sxy / std::sqrt(sxx * syy);
}

inline double spearman(std::span<const double> x, std::span<const double> y) {
  const auto rx = ranks(x);
  const auto ry = ranks(y);
  return pearson(rx, ry);
}

struct ConfidenceInterval {
  double lower = 0.0;
  double upper = 0.0;
  double level = 0.95;
};

struct OutcomeStats {
  std::size_t n = 0;
  double mean = 0.0;
  double standard_error = 0.0;
  ConfidenceInterval ci{};
};

struct BootstrapOptions {
  std::size_t n_resamples = 1000;
  double level = 0.95;
  std::uint64_t seed = 0;
};

// Percentile bootstrap CI of the mean. The resampling stream is keyed by
// `opts.seed` only, so the same data and seed always give the same interval.
inline OutcomeStats bootstrap_ci(std::span<const double> values, const BootstrapOptions& opts = {}) {
  if (values.empty()) throw DomainError("bootstrap of an empty sample");
  if (opts.n_resamples < 1) throw DomainError("bootstrap needs at least one resample");
  if (!(opts.level > 0.0 && opts.level < 1.0)) throw DomainError("confidence level must be in (0, 1)");

  OutcomeStats out;
  out.n = values.size();
  out.mean = mean(values);
  out.standard_error = standard_error(values);
  out.ci.level = opts.level;

  const auto n = values.size();
  auto rng = make_stream(opts.seed, StreamKind::bootstrap);
  std::vector<double> means(opts.n_resamples);
  std::vector<double> resample(n);
  for (auto& m : means) {
    for (auto& v : resample) v = values[static_cast<std::size_t>(uniform01(rng) * static_cast<double>(n))];
    m = mean(resample);
  }
  std::sort(means.begin(), means.end());
  const double alpha = 1.0 - opts.level;
  out.ci.lower = sorted_quantile(means, alpha / 2.0);
  out.ci.upper = sorted_quantile(means, 1.0 - alpha / 2.0);
  // Resample means of a constant sample can differ from it in the last ulp.
  out.ci.lower = std::min(out.ci.lower, out.mean);
  out.ci.upper = std::max(out.ci.upper, out.mean);
  return out;
}

struct HistogramBin {
  double lower = 0.0;
  double upper = 0.0;
  std::size_t count = 0;
};

// Equal-width histogram over [min, max]; the last bin is closed.
inline std::vector<HistogramBin> histogram(std::span<const double> xs, std::size_t n_bins) {
  if (xs.empty() || n_bins == 0) return {};
  const auto [lo_it, hi_it] = std::minmax_element(xs.begin(), xs.end());
  double lo = *lo_it, hi = *hi_it;
  if (hi == lo) {
    lo -= 0.5;
    hi += 0.5;
  }
  const double width = (hi - lo) / static_cast<double>(n_bins);
  std::vector<HistogramBin> bins(n_bins);
  for (std::size_t b = 0; b < n_bins; ++b) {
    bins[b].lower = lo + width * static_cast<double>(b);
    bins[b].upper = b + 1 == n_bins ? hi : lo + width * static_cast<double>(b + 1);
  }
  for (double x : xs) {
    auto b = static_cast<std::size_t>((x - lo) / width);
    bins[std::min(b, n_bins - 1)].count++;
  }
  return bins;
}

}  // namespace ccf
