#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "ccf/climate_data.hpp"
#include "ccf/direct_search.hpp"
#include "ccf/errors.hpp"
#include "ccf/random.hpp"
#include "ccf/stats.hpp"

namespace ccf {

// Term sheet of a climate-contingent bond. Coupons are annual, in arrears,
// on unit principal; principal is repaid at maturity; discounting is annual.
struct CCBSpec {
  int lifetime_years = 25;
  int start_year = 2022;  // calendar year of the first coupon
  double discount_rate = 0.01;
  double market_rate = 0.04;
  double min_rate = 0.01;
  double max_rate = 0.07;
  std::size_t granularity = 15;
  int initial_fixed_years = 0;  // years paying market_rate before the climate link starts
  double blend_lambda = 1.0;    // 0 = traditional bond, 1 = fully climate-linked

  int last_year() const noexcept { return start_year + lifetime_years - 1; }

  void validate() const {
    if (lifetime_years < 1) throw DomainError("bond lifetime must be >= 1 year");
    if (!(discount_rate > -1.0)) throw DomainError("discount rate must be > -1");
    if (!(min_rate <= market_rate && market_rate <= max_rate))
      throw DomainError("rates must satisfy min_rate <= market_rate <= max_rate");
    if (granularity < 2) throw DomainError("granularity must be >= 2");
    if (initial_fixed_years < 0 || initial_fixed_years > lifetime_years)
      throw DomainError("initial_fixed_years must be in [0, lifetime_years]");
    if (!(blend_lambda >= 0.0 && blend_lambda <= 1.0)) throw DomainError("blend_lambda must be in [0, 1]");
  }
};

// Annual coupon rate per climate bin.
struct CouponSchedule {
  std::vector<double> rates;

  void validate(const CCBSpec& spec) const {
    if (rates.size() != spec.granularity)
      throw DomainError("schedule has " + std::to_string(rates.size()) + " rates, granularity is " +
                        std::to_string(spec.granularity));
    for (std::size_t k = 0; k < rates.size(); ++k) {
      if (!(rates[k] >= spec.min_rate && rates[k] <= spec.max_rate))
        throw DomainError("schedule rate outside [min_rate, max_rate]");
      if (k > 0 && rates[k] < rates[k - 1]) throw DomainError("schedule rates must be nondecreasing");
    }
  }

  static CouponSchedule flat(std::size_t bins, double rate) { return {std::vector<double>(bins, rate)}; }
};

// NPV per unit principal of annual coupons m for T years plus principal at
// maturity, discounted at d. Written as 1 + (m - d) * annuity(d, T) so that
// m == d gives 1 exactly.
inline double npv_traditional(double m, double d, int T) {
  if (!(d > -1.0)) throw DomainError("discount rate must be > -1");
  if (T < 1) throw DomainError("bond lifetime must be >= 1 year");
  if (d == 0.0) return 1.0 + m * static_cast<double>(T);
  const double annuity = (1.0 - std::pow(1.0 + d, -T)) / d;
  return 1.0 + (m - d) * annuity;
}

inline std::vector<double> discount_factors(double d, int T) {
  std::vector<double> v(static_cast<std::size_t>(T));
  for (int t = 1; t <= T; ++t) v[static_cast<std::size_t>(t - 1)] = std::pow(1.0 + d, -t);
  return v;
}

// Coupon for year `year_index` (1-based) when the climate lands in `bin`.
inline double coupon_for_bin(int year_index, std::size_t bin, const CouponSchedule& schedule,
                             const CCBSpec& spec) {
  if (year_index <= spec.initial_fixed_years) return spec.market_rate;
  const double blended = spec.blend_lambda * schedule.rates.at(bin) + (1.0 - spec.blend_lambda) * spec.market_rate;
  return std::clamp(blended, spec.min_rate, spec.max_rate);
}

inline double realized_coupon(int year_index, double climate_value, const OutcomeBins& bins,
                              const CouponSchedule& schedule, const CCBSpec& spec) {
  if (year_index < 1 || year_index > spec.lifetime_years) throw DomainError("year index out of range");
  return coupon_for_bin(year_index, bin_of(climate_value, bins), schedule, spec);
}

inline std::vector<double> coupon_path(const CouponSchedule& schedule, std::span<const double> climate_path,
                                       const CCBSpec& spec, const OutcomeBins& bins) {
  if (climate_path.size() != static_cast<std::size_t>(spec.lifetime_years))
    throw DomainError("climate path length must equal the bond lifetime");
  std::vector<double> c(climate_path.size());
  for (std::size_t t = 0; t < c.size(); ++t)
    c[t] = realized_coupon(static_cast<int>(t + 1), climate_path[t], bins, schedule, spec);
  return c;
}

// Path NPV written as the traditional NPV plus discounted coupon deviations
// from market, so a path paying market every year reproduces it exactly.
inline double npv_from_coupons(std::span<const double> coupons, std::span<const double> discount,
                               const CCBSpec& spec) {
  double dev = 0.0;
  for (std::size_t t = 0; t < coupons.size(); ++t) dev += discount[t] * (coupons[t] - spec.market_rate);
  return npv_traditional(spec.market_rate, spec.discount_rate, spec.lifetime_years) + dev;
}

inline double npv_path(const CouponSchedule& schedule, std::span<const double> climate_path,
                       const CCBSpec& spec, const OutcomeBins& bins) {
  const auto c = coupon_path(schedule, climate_path, spec, bins);
  const auto v = discount_factors(spec.discount_rate, spec.lifetime_years);
  return npv_from_coupons(c, v, spec);
}

struct PathSampling {
  bool stratified = true;  // Latin-hypercube scenario choice across paths, per year
  bool coherent = false;   // one scenario per path instead of one per year
};

// Simulated climate paths, row-major n_paths x lifetime.
struct ClimatePaths {
  std::size_t n_paths = 0;
  std::size_t n_years = 0;
  std::vector<double> values;

  std::span<const double> path(std::size_t i) const { return {values.data() + i * n_years, n_years}; }

  double path_mean(std::size_t i) const { return mean(path(i)); }
};

namespace detail {

// Fisher-Yates from our own uniform, so permutations are bit-identical
// across standard libraries.
inline std::vector<std::size_t> permutation(std::size_t n, Rng& rng) {
  std::vector<std::size_t> p(n);
  for (std::size_t i = 0; i < n; ++i) p[i] = i;
  for (std::size_t i = n; i > 1; --i) {
    const auto j = static_cast<std::size_t>(uniform01(rng) * static_cast<double>(i));
    std::swap(p[i - 1], p[std::min(j, i - 1)]);
  }
  return p;
}

}  // namespace detail

// Per-year climate paths for the bond lifetime. Path i draws from a stream
// keyed by (seed, i); with stratified sampling, year t additionally uses a
// permutation keyed by (seed, t) so that across paths every 1/n slice of the
// scenario law is hit exactly once per year. Each path's marginal law is the
// same as with plain sampling.
inline ClimatePaths simulate_climate_paths(const ProjectionTable& table, const std::string& location,
                                           const YearlySampler& sampler, const CCBSpec& spec,
                                           std::size_t n_paths, std::uint64_t seed,
                                           const PathSampling& how = {}) {
  if (n_paths < 1) throw DomainError("need at least one simulated path");
  table.require_coverage(location, sampler.scenarios(), spec.start_year, spec.last_year());
  const auto T = static_cast<std::size_t>(spec.lifetime_years);
  const auto& scen = sampler.scenarios();

  // projected[t][s]
  std::vector<std::vector<double>> projected(T, std::vector<double>(scen.size()));
  for (std::size_t t = 0; t < T; ++t)
    for (std::size_t s = 0; s < scen.size(); ++s)
      projected[t][s] = table.value(location, scen[s], spec.start_year + static_cast<int>(t));

  std::vector<std::vector<std::size_t>> perms;
  if (how.stratified) {
    const std::size_t n_strata_sets = how.coherent ? 1 : T;
    for (std::size_t t = 0; t < n_strata_sets; ++t) {
      auto rng = make_stream(seed, StreamKind::climate_year, t);
      perms.push_back(detail::permutation(n_paths, rng));
    }
  }
  auto uniform_for = [&](std::size_t path, std::size_t t, Rng& rng) {
    const double v = uniform01(rng);
    if (!how.stratified) return v;
    return (static_cast<double>(perms[t][path]) + v) / static_cast<double>(n_paths);
  };

  ClimatePaths out{n_paths, T, std::vector<double>(n_paths * T)};
  for (std::size_t i = 0; i < n_paths; ++i) {
    auto rng = make_stream(seed, StreamKind::climate_path, i);
    std::size_t fixed = 0;
    if (how.coherent) fixed = sampler.pick(uniform_for(i, 0, rng));
    for (std::size_t t = 0; t < T; ++t) {
      const std::size_t s = how.coherent ? fixed : sampler.pick(uniform_for(i, t, rng));
      const double z = sampler.sigma() > 0.0 ? standard_normal(rng) : 0.0;
      out.values[i * T + t] = sampler.perturb(projected[t][s], z);
    }
  }
  return out;
}

struct NpvEstimate {
  double mean = 0.0;
  double standard_error = 0.0;  // iid formula; conservative under stratified sampling
  std::vector<double> path_npv;
};

inline NpvEstimate expected_npv(const CouponSchedule& schedule, const ClimatePaths& paths,
                                const CCBSpec& spec, const OutcomeBins& bins) {
  if (paths.n_years != static_cast<std::size_t>(spec.lifetime_years))
    throw DomainError("paths do not match the bond lifetime");
  const auto v = discount_factors(spec.discount_rate, spec.lifetime_years);
  NpvEstimate est;
  est.path_npv.resize(paths.n_paths);
  std::vector<double> c(paths.n_years);
  for (std::size_t i = 0; i < paths.n_paths; ++i) {
    const auto p = paths.path(i);
    for (std::size_t t = 0; t < c.size(); ++t)
      c[t] = coupon_for_bin(static_cast<int>(t + 1), bin_of(p[t], bins), schedule, spec);
    est.path_npv[i] = npv_from_coupons(c, v, spec);
  }
  est.mean = mean(est.path_npv);
  est.standard_error = standard_error(est.path_npv);
  return est;
}

inline NpvEstimate expected_npv(const CouponSchedule& schedule, const ProjectionTable& table,
                                const std::string& location, const YearlySampler& sampler,
                                const CCBSpec& spec, const OutcomeBins& bins, std::size_t n_sims,
                                std::uint64_t seed, const PathSampling& how = {}) {
  const auto paths = simulate_climate_paths(table, location, sampler, spec, n_sims, seed, how);
  return expected_npv(schedule, paths, spec, bins);
}

// Fast expected NPV over fixed paths: only the per-year bin frequencies matter.
class BinFrequencyModel {
public:
  BinFrequencyModel(const ClimatePaths& paths, const OutcomeBins& bins, const CCBSpec& spec)
      : spec_(spec), G_(bins.count()), T_(paths.n_years),
        freq_(paths.n_years * bins.count(), 0.0),
        discount_(discount_factors(spec.discount_rate, spec.lifetime_years)),
        base_(npv_traditional(spec.market_rate, spec.discount_rate, spec.lifetime_years)) {
    for (std::size_t i = 0; i < paths.n_paths; ++i) {
      const auto p = paths.path(i);
      for (std::size_t t = 0; t < T_; ++t) freq_[t * G_ + bin_of(p[t], bins)] += 1.0;
    }
    for (auto& f : freq_) f /= static_cast<double>(paths.n_paths);
  }

  double expected(const CouponSchedule& s) const {
    double dev = 0.0;
    for (std::size_t t = 0; t < T_; ++t) {
      double ec = 0.0;
      for (std::size_t k = 0; k < G_; ++k) {
        const double f = freq_[t * G_ + k];
        if (f != 0.0) ec += f * (coupon_for_bin(static_cast<int>(t + 1), k, s, spec_) - spec_.market_rate);
      }
      dev += discount_[t] * ec;
    }
    return base_ + dev;
  }

  double frequency(std::size_t year, std::size_t bin) const { return freq_.at(year * G_ + bin); }

private:
  CCBSpec spec_;
  std::size_t G_, T_;
  std::vector<double> freq_;
  std::vector<double> discount_;
  double base_;
};

struct ScheduleOptions {
  double tolerance_rel = 1e-3;  // |E[npv] - target| <= tolerance_rel * target
  std::size_t budget = 20000;   // objective evaluations
  double refine = 1e-3;         // keep searching until the gap is refine * tolerance
};

struct ScheduleReport {
  CouponSchedule schedule;
  std::vector<double> increments;  // search coordinates
  double target = 0.0;
  double expected = 0.0;  // mean NPV over the optimizer's paths
  double standard_error = 0.0;
  double objective = 0.0;
  double tolerance = 0.0;
  double achievable_low = 0.0;
  double achievable_high = 0.0;
  std::size_t evaluations = 0;
  bool within_tolerance = false;
};

// Monotone schedule from increments u in [0,1]^G:
//   rate_k = min + (max - min) * min(1, u_0 + ... + u_k)
inline CouponSchedule schedule_from_increments(std::span<const double> u, const CCBSpec& spec) {
  CouponSchedule s;
  s.rates.resize(u.size());
  double acc = 0.0;
  for (std::size_t k = 0; k < u.size(); ++k) {
    acc += u[k];
    s.rates[k] = spec.min_rate + (spec.max_rate - spec.min_rate) * std::min(1.0, acc);
  }
  return s;
}

// Solves the per-bin coupon rates so the bond's expected NPV over `paths`
// matches the traditional bond at market_rate. The search starts from a
// linear ramp from min_rate to max_rate.
inline ScheduleReport optimize_schedule(const CCBSpec& spec, const OutcomeBins& bins, const ClimatePaths& paths,
                                        const ScheduleOptions& opt = {}) {
  if (!(spec.min_rate <= spec.max_rate))
    throw InfeasibleError("min_rate " + std::to_string(spec.min_rate) + " exceeds max_rate " +
                          std::to_string(spec.max_rate) + "; no schedule exists");
  {
    // Rate ordering against market_rate is a feasibility question, checked below.
    CCBSpec probe = spec;
    probe.min_rate = std::min(spec.min_rate, spec.market_rate);
    probe.max_rate = std::max(spec.max_rate, spec.market_rate);
    probe.validate();
  }
  if (bins.count() != spec.granularity)
    throw DomainError("bins have " + std::to_string(bins.count()) + " entries, granularity is " +
                      std::to_string(spec.granularity));
  if (opt.budget < 1) throw DomainError("schedule budget must be >= 1 evaluation");
  const std::size_t G = spec.granularity;
  const BinFrequencyModel model(paths, bins, spec);

  ScheduleReport rep;
  rep.target = npv_traditional(spec.market_rate, spec.discount_rate, spec.lifetime_years);
  rep.tolerance = opt.tolerance_rel * std::abs(rep.target);
  rep.achievable_low = model.expected(CouponSchedule::flat(G, spec.min_rate));
  rep.achievable_high = model.expected(CouponSchedule::flat(G, spec.max_rate));
  if (rep.target < rep.achievable_low - rep.tolerance || rep.target > rep.achievable_high + rep.tolerance)
    throw InfeasibleError("target NPV " + std::to_string(rep.target) + " is outside the achievable range [" +
                          std::to_string(rep.achievable_low) + ", " + std::to_string(rep.achievable_high) + "]");

  std::vector<double> u0(G, 1.0 / static_cast<double>(G - 1));
  u0[0] = 0.0;
  const std::vector<double> lo(G, 0.0), hi(G, 1.0);
  auto objective = [&](std::span<const double> u) {
    return std::abs(model.expected(schedule_from_increments(u, spec)) - rep.target);
  };
  SearchOptions so;
  so.initial_step = 0.05;
  so.min_step = 1e-9;
  so.max_evaluations = opt.budget;
  so.target = rep.tolerance * opt.refine;
  const auto res = compass_search(objective, u0, lo, hi, so);

  rep.increments = res.x;
  rep.schedule = schedule_from_increments(res.x, spec);
  rep.evaluations = res.evaluations;
  const auto est = expected_npv(rep.schedule, paths, spec, bins);
  rep.expected = est.mean;
  rep.standard_error = est.standard_error;
  rep.objective = std::abs(rep.expected - rep.target);
  rep.within_tolerance = rep.objective <= rep.tolerance;
  return rep;
}

}  // namespace ccf
