#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "ccf/adaptation.hpp"
#include "ccf/contracts.hpp"
#include "ccf/errors.hpp"
#include "ccf/random.hpp"
#include "ccf/scenario.hpp"
#include "ccf/stats.hpp"

namespace ccf {

// Full parameterization of an Adapter/Backer experiment.
//
// Each period both parties re-enter contracts on a constant notional of
// `initial_assets` split by the allocation vectors; gains and losses accrue
// additively without compounding, and the risk-free benchmark earns the same
// simple per-period gain initial_assets * ((1+s)^y - 1).
struct SimulationConfig {
  double initial_assets = 1e8;
  double risk_free_rate = 0.01;
  int period_years = 10;
  int n_periods = 5;
  std::size_t n_replications = 500;
  ScenarioLadder ladder = default_ladder();
  ScenarioVector prices;        // payout multiple per trigger rank
  ScenarioVector allocation_A;  // fraction of notional sold per trigger rank
  ScenarioVector allocation_B;  // fraction of notional bought per trigger rank
  AdaptationParams adaptation{};
  std::uint64_t master_seed = 20220101;

  double period_risk_free_gain() const {
    return initial_assets * risk_free_growth(risk_free_rate, period_years);
  }

  void validate() const {
    if (!(initial_assets > 0.0) || !std::isfinite(initial_assets))
      throw DomainError("initial_assets must be finite and > 0");
    if (risk_free_rate < 0.0) throw DomainError("risk_free_rate must be >= 0");
    if (period_years < 1) throw DomainError("period_years must be >= 1");
    if (n_periods < 1) throw DomainError("n_periods must be >= 1");
    if (n_replications < 1) throw DomainError("n_replications must be >= 1");
    require_scenario_vector(ladder, prices, "prices");
    require_scenario_vector(ladder, allocation_A, "allocation_A");
    require_scenario_vector(ladder, allocation_B, "allocation_B");
    require_scenario_vector(ladder, adaptation.table.values(), "adaptation return table");
    for (const auto* alloc : {&allocation_A, &allocation_B}) {
      double total = 0.0;
      for (double a : *alloc) {
        if (!(a >= 0.0 && a <= 1.0)) throw DomainError("allocation fractions must be in [0, 1]");
        total += a;
      }
      if (total > 1.0 + 1e-12) throw DomainError("allocation fractions must sum to at most 1");
    }
    for (std::size_t k = 0; k < ladder.size(); ++k) {
      const bool allocated = allocation_A[k] > 0.0 || allocation_B[k] > 0.0;
      if (allocated && !(prices[k] > 0.0 && std::isfinite(prices[k])))
        throw DomainError("price for allocated scenario '" + ladder.name(k) + "' must be finite and > 0");
    }
    adaptation.discounts.validate();
    if (adaptation.flags.historical_on) adaptation.decay.validate();
  }
};

// Allocation putting everything on one trigger scenario.
inline ScenarioVector single_allocation(const ScenarioLadder& ladder, std::size_t rank) {
  ScenarioVector a(ladder.size(), 0.0);
  a.at(rank) = 1.0;
  return a;
}

// Equal split over every scenario above the least extreme.
inline ScenarioVector spread_allocation(const ScenarioLadder& ladder) {
  ScenarioVector a(ladder.size(), 0.0);
  if (ladder.size() == 1) {
    a[0] = 1.0;
    return a;
  }
  const double share = 1.0 / static_cast<double>(ladder.size() - 1);
  for (std::size_t k = 1; k < ladder.size(); ++k) a[k] = share;
  return a;
}

// Experiment defaults: six-scenario ladder at minimum prices, 20% on each
// scenario above "low", discounts 0.5/0.75 and historical value on.
inline SimulationConfig default_simulation_config() {
  SimulationConfig cfg;
  cfg.prices = minimum_prices(cfg.ladder, cfg.risk_free_rate, cfg.period_years);
  cfg.allocation_A = spread_allocation(cfg.ladder);
  cfg.allocation_B = cfg.allocation_A;
  cfg.adaptation.discounts = {0.5, 0.75};
  cfg.adaptation.flags = {true, true};
  return cfg;
}

struct AdapterState {
  double wealth = 0.0;
  VintageLedger ledger;
};

struct BackerState {
  double wealth_contracts = 0.0;
  double wealth_risk_free = 0.0;
};

struct PeriodCashflows {
  double adaptation_income = 0.0;
  double notional_sold = 0.0;    // raised by A, spent on adaptation
  double notional_bought = 0.0;  // paid in by B
  double payouts_due = 0.0;      // owed by A on its triggered contracts
  double payouts_received = 0.0; // received by B on its triggered contracts
  double delta_A = 0.0;
  double delta_B = 0.0;
  double delta_B_risk_free = 0.0;
};

// Advance both parties by one period in which `realized_rank` occurs.
// Proceeds are spent on adaptation in the period raised, so they only touch
// A's wealth through adaptation income.
inline PeriodCashflows run_period(AdapterState& a, BackerState& b, int period,
                                  std::size_t realized_rank, const SimulationConfig& cfg) {
  const double w0 = cfg.initial_assets;
  PeriodCashflows cf;
  for (std::size_t k = 0; k < cfg.ladder.size(); ++k) {
    const bool hit = is_triggered(k, realized_rank);
    if (cfg.allocation_A[k] > 0.0) {
      const double notional = w0 * cfg.allocation_A[k];
      a.ledger.add(period, k, notional);
      cf.notional_sold += notional;
      if (hit) cf.payouts_due += cfg.prices[k] * notional;
    }
    if (cfg.allocation_B[k] > 0.0) {
      const double notional = w0 * cfg.allocation_B[k];
      cf.notional_bought += notional;
      if (hit) cf.payouts_received += cfg.prices[k] * notional;
    }
  }
  cf.adaptation_income = adaptation_income(a.ledger, realized_rank, cfg.adaptation, period,
                                           static_cast<double>(cfg.period_years));
  cf.delta_A = cf.adaptation_income - cf.payouts_due;
  cf.delta_B = cf.payouts_received - cf.notional_bought;
  cf.delta_B_risk_free = cfg.period_risk_free_gain();
  a.wealth += cf.delta_A;
  b.wealth_contracts += cf.delta_B;
  b.wealth_risk_free += cf.delta_B_risk_free;
  return cf;
}

struct ReplicationResult {
  std::size_t replication = 0;
  std::vector<std::size_t> realized;  // scenario rank per period
  std::vector<double> wealth_A;
  std::vector<double> wealth_B;
  std::vector<double> wealth_B_risk_free;
  std::vector<int> triggers;  // periods in which each trigger rank paid out
  double outcome_A = 0.0;
  double outcome_B = 0.0;
};

// A: end wealth minus starting wealth.
inline double outcome_A(const ReplicationResult& r) { return r.wealth_A.back() - r.wealth_A.front(); }

// B: end wealth with contracts minus end wealth had it invested risk-free.
inline double outcome_B(const ReplicationResult& r) {
  return r.wealth_B.back() - r.wealth_B_risk_free.back();
}

// Scenario draws for replication `index`. The stream is keyed by
// (master_seed, index) only, so sweeps over any other parameter see the same
// climate history (common random numbers).
inline std::vector<std::size_t> draw_scenarios(const SimulationConfig& cfg, std::size_t index) {
  auto rng = make_stream(cfg.master_seed, StreamKind::replication, index);
  std::vector<std::size_t> out(static_cast<std::size_t>(cfg.n_periods));
  for (auto& s : out) s = cfg.ladder.sample_rank(rng);
  return out;
}

inline ReplicationResult run_replication(const SimulationConfig& cfg, std::size_t index) {
  ReplicationResult r;
  r.replication = index;
  r.realized = draw_scenarios(cfg, index);
  r.triggers.assign(cfg.ladder.size(), 0);

  AdapterState a{cfg.initial_assets, {}};
  BackerState b{cfg.initial_assets, cfg.initial_assets};
  const auto n = static_cast<std::size_t>(cfg.n_periods);
  r.wealth_A.reserve(n + 1);
  r.wealth_B.reserve(n + 1);
  r.wealth_B_risk_free.reserve(n + 1);
  r.wealth_A.push_back(a.wealth);
  r.wealth_B.push_back(b.wealth_contracts);
  r.wealth_B_risk_free.push_back(b.wealth_risk_free);

  for (std::size_t t = 0; t < n; ++t) {
    run_period(a, b, static_cast<int>(t), r.realized[t], cfg);
    for (std::size_t k = 0; k <= r.realized[t]; ++k) r.triggers[k]++;
    r.wealth_A.push_back(a.wealth);
    r.wealth_B.push_back(b.wealth_contracts);
    r.wealth_B_risk_free.push_back(b.wealth_risk_free);
  }
  r.outcome_A = outcome_A(r);
  r.outcome_B = outcome_B(r);
  return r;
}

struct BatchResult {
  std::vector<ReplicationResult> replications;
  std::vector<double> outcomes_A;
  std::vector<double> outcomes_B;

  double mean_A() const { return mean(outcomes_A); }
  double mean_B() const { return mean(outcomes_B); }
};

// Runs replications 0..n_replications-1. Results are stored by index, so the
// aggregate does not depend on execution order.
inline BatchResult run_batch(const SimulationConfig& cfg, bool keep_paths = true) {
  cfg.validate();
  BatchResult out;
  out.outcomes_A.resize(cfg.n_replications);
  out.outcomes_B.resize(cfg.n_replications);
  if (keep_paths) out.replications.resize(cfg.n_replications);
  for (std::size_t r = 0; r < cfg.n_replications; ++r) {
    auto rep = run_replication(cfg, r);
    out.outcomes_A[r] = rep.outcome_A;
    out.outcomes_B[r] = rep.outcome_B;
    if (keep_paths) out.replications[r] = std::move(rep);
  }
  return out;
}

}  // namespace ccf
