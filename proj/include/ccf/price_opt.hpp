#pragma once

#include <cmath>
#include <cstddef>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include "ccf/contracts.hpp"
#include "ccf/direct_search.hpp"
#include "ccf/errors.hpp"
#include "ccf/simulation.hpp"
#include "ccf/stats.hpp"

namespace ccf {

struct PriceEvaluation {
  double mean_A = 0.0;
  double mean_B = 0.0;
  double se_A = 0.0;
  double se_B = 0.0;

  double gap() const { return std::abs(mean_A - mean_B); }
};

// Evaluates price vectors against one fixed set of climate histories, so
// repeated calls differ only through the prices.
class PriceEvaluator {
public:
  explicit PriceEvaluator(SimulationConfig cfg) : cfg_(std::move(cfg)) {
    cfg_.validate();
    draws_.reserve(cfg_.n_replications);
    for (std::size_t r = 0; r < cfg_.n_replications; ++r) draws_.push_back(draw_scenarios(cfg_, r));
    outcomes_A_.resize(cfg_.n_replications);
    outcomes_B_.resize(cfg_.n_replications);
  }

  const SimulationConfig& config() const noexcept { return cfg_; }

  PriceEvaluation operator()(std::span<const double> prices) {
    require_scenario_vector(cfg_.ladder, prices, "prices");
    cfg_.prices.assign(prices.begin(), prices.end());
    for (std::size_t k = 0; k < prices.size(); ++k) {
      const bool allocated = cfg_.allocation_A[k] > 0.0 || cfg_.allocation_B[k] > 0.0;
      if (allocated && !(prices[k] > 0.0 && std::isfinite(prices[k])))
        throw DomainError("price for allocated scenario '" + cfg_.ladder.name(k) + "' must be finite and > 0");
    }
    for (std::size_t r = 0; r < draws_.size(); ++r) {
      AdapterState a{cfg_.initial_assets, {}};
      BackerState b{cfg_.initial_assets, cfg_.initial_assets};
      for (std::size_t t = 0; t < draws_[r].size(); ++t)
        run_period(a, b, static_cast<int>(t), draws_[r][t], cfg_);
      outcomes_A_[r] = a.wealth - cfg_.initial_assets;
      outcomes_B_[r] = b.wealth_contracts - b.wealth_risk_free;
    }
    return {mean(outcomes_A_), mean(outcomes_B_), standard_error(outcomes_A_),
            standard_error(outcomes_B_)};
  }

private:
  SimulationConfig cfg_;
  std::vector<std::vector<std::size_t>> draws_;
  std::vector<double> outcomes_A_;
  std::vector<double> outcomes_B_;
};

// Mean outcomes of A and B over cfg.n_replications at the given prices.
inline PriceEvaluation evaluate_prices(std::span<const double> prices, const SimulationConfig& cfg) {
  PriceEvaluator eval(cfg);
  return eval(prices);
}

// Geometric per-year rate at which the Backer's risk-free end wealth would
// have to grow to reach its expected end wealth with contracts:
//   ((W0 + G + E_B) / (W0 + G))^(1/T) - 1
// where G is the simple-accumulation risk-free gain over T years made of
// T/period_years periods. period_years <= 0 means a single period of T years.
inline double annualized_outperformance(double expected_B, double w0, double total_years, double s,
                                        double period_years = 0.0) {
  if (!(w0 > 0.0)) throw DomainError("initial assets must be > 0");
  if (!(total_years > 0.0)) throw DomainError("total years must be > 0");
  if (period_years <= 0.0) period_years = total_years;
  const double gain = (total_years / period_years) * w0 * (std::pow(1.0 + s, period_years) - 1.0);
  const double base = w0 + gain;
  return std::pow((base + expected_B) / base, 1.0 / total_years) - 1.0;
}

// Geometric per-year total return on W0 for the Backer holding contracts.
inline double annualized_total_return(double expected_B, double w0, double total_years, double s,
                                      double period_years = 0.0) {
  if (!(w0 > 0.0)) throw DomainError("initial assets must be > 0");
  if (!(total_years > 0.0)) throw DomainError("total years must be > 0");
  if (period_years <= 0.0) period_years = total_years;
  const double gain = (total_years / period_years) * w0 * (std::pow(1.0 + s, period_years) - 1.0);
  return std::pow((w0 + gain + expected_B) / w0, 1.0 / total_years) - 1.0;
}

struct PriceBounds {
  ScenarioVector lower;  // empty = per-scenario minimum price
  ScenarioVector upper;  // empty = upper_multiple x minimum price
  double upper_multiple = 10.0;
};

struct PriceOptimizerOptions {
  PriceBounds bounds{};
  std::size_t budget = 2000;  // objective evaluations
  double tolerance = -1.0;    // absolute gap; < 0 means 1e-3 x W0 x n_periods
  double initial_step = 0.25;
};

struct OptimizerReport {
  ScenarioVector prices;               // full per-rank vector
  ScenarioVector floors;               // minimum prices
  std::vector<std::size_t> optimized;  // ranks that were searched
  PriceEvaluation start;               // at minimum prices
  PriceEvaluation best;
  double objective = 0.0;              // |E_A - E_B| at best
  double tolerance = 0.0;
  std::size_t evaluations = 0;
  bool within_tolerance = false;
  double annualized_outperformance = 0.0;
  double annualized_total_return = 0.0;
};

// Searches prices of every allocated scenario, bounded below by the minimum
// price, to equalize the two parties' expected outcomes. A common markup over
// the floors is solved first, then each price is refined separately if the
// markup alone misses the tolerance.
inline OptimizerReport optimize_prices(const SimulationConfig& cfg, const PriceOptimizerOptions& opt = {}) {
  if (opt.budget < 1) throw DomainError("optimizer budget must be >= 1 evaluation");
  const auto& ladder = cfg.ladder;
  const std::size_t K = ladder.size();

  OptimizerReport rep;
  rep.floors = minimum_prices(ladder, cfg.risk_free_rate, cfg.period_years);

  ScenarioVector lower = opt.bounds.lower.empty() ? rep.floors : opt.bounds.lower;
  ScenarioVector upper = opt.bounds.upper;
  if (upper.empty()) {
    upper.resize(K);
    for (std::size_t k = 0; k < K; ++k) upper[k] = rep.floors[k] * opt.bounds.upper_multiple;
  }
  require_scenario_vector(ladder, lower, "price lower bounds");
  require_scenario_vector(ladder, upper, "price upper bounds");
  for (std::size_t k = 0; k < K; ++k) {
    lower[k] = std::max(lower[k], rep.floors[k]);
    if (!(upper[k] >= lower[k]) || !std::isfinite(upper[k]))
      throw InfeasibleError("price bounds for '" + ladder.name(k) + "' exclude the minimum price " +
                            std::to_string(rep.floors[k]));
  }

  for (std::size_t k = 0; k < K; ++k)
    if (cfg.allocation_A[k] > 0.0 || cfg.allocation_B[k] > 0.0) rep.optimized.push_back(k);

  SimulationConfig base = cfg;
  base.prices = lower;
  PriceEvaluator eval(base);
  rep.tolerance = opt.tolerance >= 0.0
                      ? opt.tolerance
                      : 1e-3 * cfg.initial_assets * static_cast<double>(cfg.n_periods);

  ScenarioVector full = lower;
  rep.start = eval(full);
  rep.best = rep.start;
  rep.prices = full;
  rep.objective = rep.start.gap();
  rep.evaluations = 1;

  if (!rep.optimized.empty() && opt.budget > 1) {
    // Stage 1: one common markup mu over the lower bounds, capped so every
    // price stays inside its box.
    double mu_max = std::numeric_limits<double>::infinity();
    for (auto k : rep.optimized) mu_max = std::min(mu_max, upper[k] / lower[k]);
    auto at_markup = [&](double mu) {
      for (auto k : rep.optimized) full[k] = lower[k] * mu;
    };
    SearchOptions so;
    so.target = rep.tolerance;
    so.initial_step = opt.initial_step;
    so.min_step = 1e-12;  // the gap is steep in price; the budget bounds the work
    so.max_evaluations = opt.budget - 1;
    const std::vector<double> m0{1.0}, mlo{1.0}, mhi{mu_max};
    const auto markup = compass_search(
        [&](std::span<const double> mu) {
          at_markup(mu[0]);
          return eval(full).gap();
        },
        m0, mlo, mhi, so);
    rep.evaluations += markup.evaluations;
    at_markup(markup.x[0]);

    // Stage 2: per-scenario refinement from the markup solution.
    if (markup.value > rep.tolerance && rep.evaluations < opt.budget) {
      std::vector<double> x0, lo, hi;
      for (auto k : rep.optimized) {
        x0.push_back(full[k]);
        lo.push_back(lower[k]);
        hi.push_back(upper[k]);
      }
      auto objective = [&](std::span<const double> x) {
        for (std::size_t i = 0; i < x.size(); ++i) full[rep.optimized[i]] = x[i];
        return eval(full).gap();
      };
      so.max_evaluations = opt.budget - rep.evaluations;
      const auto res = compass_search(objective, x0, lo, hi, so);
      rep.evaluations += res.evaluations;
      for (std::size_t i = 0; i < res.x.size(); ++i) full[rep.optimized[i]] = res.x[i];
    }
    rep.prices = full;
    rep.best = eval(full);
    ++rep.evaluations;
    rep.objective = rep.best.gap();
  }
  rep.within_tolerance = rep.objective <= rep.tolerance;

  const double total_years = static_cast<double>(cfg.n_periods) * cfg.period_years;
  rep.annualized_outperformance = annualized_outperformance(
      rep.best.mean_B, cfg.initial_assets, total_years, cfg.risk_free_rate, cfg.period_years);
  rep.annualized_total_return = annualized_total_return(
      rep.best.mean_B, cfg.initial_assets, total_years, cfg.risk_free_rate, cfg.period_years);
  return rep;
}

}  // namespace ccf
