#pragma once

#include <cmath>
#include <string>

#include "ccf/errors.hpp"
#include "ccf/scenario.hpp"

namespace ccf {

// Single-trigger climate contract. The Backer pays `principal` up front; if
// the realized scenario is at or above `trigger` within the term, the Adapter
// pays back `price * principal` as one lump sum. Otherwise nothing is repaid.
struct ClimateContract {
  double principal = 0.0;
  double price = 0.0;  // payout multiple of principal
  ScenarioId trigger;
  int term_years = 1;

  void validate() const {
    if (!(principal > 0.0)) throw DomainError("contract principal must be > 0");
    if (!(price > 0.0)) throw DomainError("contract price must be > 0");
    if (term_years < 1) throw DomainError("contract term must be >= 1 year");
  }
};

struct RiskFreeSpec {
  double annual_rate = 0.01;
  int term_years = 10;
};

// Total growth fraction of a risk-free position over y years, (1+s)^y - 1.
inline double risk_free_growth(double s, int y) {
  if (s < 0.0) throw DomainError("risk-free rate must be >= 0");
  if (y < 1) throw DomainError("risk-free term must be >= 1 year");
  return std::pow(1.0 + s, y) - 1.0;
}

// Payout multiple at which the Backer's expected dollar outcome equals the
// risk-free alternative: (1+s)^y / P(trigger).
inline double minimum_price(double s, int y, double cum_p) {
  if (!(cum_p > 0.0) || cum_p > 1.0)
    throw DomainError("cumulative trigger probability must be in (0, 1]");
  if (s < 0.0) throw DomainError("risk-free rate must be >= 0");
  if (y < 1) throw DomainError("risk-free term must be >= 1 year");
  return std::pow(1.0 + s, y) / cum_p;
}

// Minimum prices for every rung of the ladder.
inline ScenarioVector minimum_prices(const ScenarioLadder& ladder, double s, int y) {
  ScenarioVector out(ladder.size());
  for (std::size_t k = 0; k < ladder.size(); ++k) out[k] = minimum_price(s, y, ladder.cumulative(k));
  return out;
}

// Rank-level trigger rule shared by payout() and the simulation engine.
constexpr bool is_triggered(std::size_t trigger_rank, std::size_t realized_rank) noexcept {
  return realized_rank >= trigger_rank;
}

inline double payout(const ClimateContract& contract, const ScenarioId& realized) {
  if (realized.ladder != contract.trigger.ladder)
    throw DomainError("realized scenario '" + realized.name +
                      "' is from a different ladder than the contract trigger");
  return is_triggered(contract.trigger.rank, realized.rank) ? contract.price * contract.principal
                                                            : 0.0;
}

}  // namespace ccf
