#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

#include "ccf/errors.hpp"
#include "ccf/scenario.hpp"

namespace ccf {

// Return multiple on one unit of effective adaptation capital, per realized
// scenario rank. Must be nondecreasing in severity.
class AdaptationReturnTable {
public:
  explicit AdaptationReturnTable(ScenarioVector returns) : returns_(std::move(returns)) {
    for (std::size_t k = 0; k < returns_.size(); ++k) {
      if (!(returns_[k] >= 0.0) || !std::isfinite(returns_[k]))
        throw DomainError("adaptation return must be finite and >= 0");
      if (k > 0 && returns_[k] < returns_[k - 1])
        throw DomainError("adaptation returns must be nondecreasing in severity");
    }
  }

  double operator[](std::size_t rank) const { return returns_.at(rank); }
  std::size_t size() const noexcept { return returns_.size(); }
  const ScenarioVector& values() const noexcept { return returns_; }

  double expected(const ScenarioLadder& ladder) const {
    require_scenario_vector(ladder, returns_, "adaptation return table");
    double e = 0.0;
    for (std::size_t k = 0; k < returns_.size(); ++k) e += ladder.probability(k) * returns_[k];
    return e;
  }

private:
  ScenarioVector returns_;
};

inline AdaptationReturnTable default_return_table() {
  return AdaptationReturnTable({0.0, 1.5, 2.25, 3.75, 5.5, 7.0});
}

// Flat devaluation of earmarked capital when the realized scenario misses the
// earmark: `upper` when the realized scenario is milder (over-preparation),
// `lower` when it is more severe (under-preparation).
struct MismatchDiscounts {
  double upper = 0.5;
  double lower = 0.75;

  void validate() const {
    if (!(upper >= 0.0 && upper <= 1.0)) throw DomainError("upper scenario discount must be in [0, 1]");
    if (!(lower >= 0.0 && lower <= 1.0)) throw DomainError("lower scenario discount must be in [0, 1]");
  }
};

// Logistic decay of past adaptation value with project age.
struct DecayCurve {
  double midpoint_years = 20.0;
  double steepness = 0.15;  // per year
  double horizon_years = 40.0;

  double operator()(double age_years) const {
    return 1.0 / (1.0 + std::exp(steepness * (age_years - midpoint_years)));
  }

  void validate() const {
    if (!(steepness > 0.0)) throw DomainError("decay steepness must be > 0");
    if (!(horizon_years > 0.0)) throw DomainError("decay horizon must be > 0");
    if ((*this)(0.0) < 0.95) throw DomainError("decay factor at age 0 must be >= 0.95");
    if ((*this)(horizon_years) > 0.05) throw DomainError("decay factor at the horizon must be <= 0.05");
  }
};

struct AdaptationFlags {
  bool discounts_on = false;
  bool historical_on = false;
};

inline double mismatch_factor(std::size_t earmark_rank, std::size_t realized_rank,
                              const MismatchDiscounts& d, bool discounts_on) noexcept {
  if (!discounts_on || earmark_rank == realized_rank) return 1.0;
  return realized_rank < earmark_rank ? d.upper : d.lower;
}

inline double mismatch_factor(const ScenarioId& earmark, const ScenarioId& realized,
                              const MismatchDiscounts& d, bool discounts_on) {
  if (earmark.ladder != realized.ladder)
    throw DomainError("earmark and realized scenarios come from different ladders");
  return mismatch_factor(earmark.rank, realized.rank, d, discounts_on);
}

// Share of a vintage's capital still earning returns after `age_years`.
// With historical value off, only the current period's capital counts.
inline double historical_factor(double age_years, const DecayCurve& curve, bool historical_on) {
  if (age_years < 0.0) throw DomainError("capital age must be >= 0");
  if (!historical_on) return age_years == 0.0 ? 1.0 : 0.0;
  return curve(age_years);
}

struct VintageEntry {
  int raised_period = 0;
  std::size_t earmark_rank = 0;
  double amount = 0.0;
};

// Adapter's adaptation capital by (period raised, earmark scenario).
class VintageLedger {
public:
  void add(int raised_period, std::size_t earmark_rank, double amount) {
    if (!(amount >= 0.0)) throw DomainError("ledger amount must be >= 0");
    if (!entries_.empty() && raised_period < entries_.back().raised_period)
      throw DomainError("ledger entries must be added in period order");
    entries_.push_back({raised_period, earmark_rank, amount});
  }

  void add(int raised_period, const ScenarioId& earmark, double amount) {
    add(raised_period, earmark.rank, amount);
  }

  const std::vector<VintageEntry>& entries() const noexcept { return entries_; }
  bool empty() const noexcept { return entries_.empty(); }
  void clear() noexcept { entries_.clear(); }

private:
  std::vector<VintageEntry> entries_;
};

struct AdaptationParams {
  AdaptationReturnTable table = default_return_table();
  MismatchDiscounts discounts{};
  DecayCurve decay{};
  AdaptationFlags flags{};
};

// Sum over vintages of amount x mismatch x age decay x return[realized].
inline double adaptation_income(const VintageLedger& ledger, std::size_t realized_rank,
                                const AdaptationParams& p, int current_period,
                                double period_years) {
  const double ret = p.table[realized_rank];
  if (ret == 0.0) return 0.0;
  double income = 0.0;
  for (const auto& e : ledger.entries()) {
    if (e.raised_period > current_period)
      throw DomainError("ledger entry raised after the current period");
    const double age = static_cast<double>(current_period - e.raised_period) * period_years;
    const double h = historical_factor(age, p.decay, p.flags.historical_on);
    if (h == 0.0) continue;
    income += e.amount * mismatch_factor(e.earmark_rank, realized_rank, p.discounts,
                                         p.flags.discounts_on) * h * ret;
  }
  return income;
}

inline double adaptation_income(const VintageLedger& ledger, const ScenarioId& realized,
                                const AdaptationParams& p, int current_period,
                                double period_years) {
  return adaptation_income(ledger, realized.rank, p, current_period, period_years);
}

}  // namespace ccf
