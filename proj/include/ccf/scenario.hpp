#pragma once

#include <bit>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "ccf/errors.hpp"
#include "ccf/random.hpp"

namespace ccf {

// Handle for one scenario of a specific ladder. `rank` orders by severity
// (0 = least extreme); `ladder` fingerprints the owning ladder so ids from
// different ladders cannot be mixed silently.
struct ScenarioId {
  std::size_t rank = 0;
  std::string name;
  std::uint64_t ladder = 0;

  friend bool operator==(const ScenarioId&, const ScenarioId&) = default;
};

struct ScenarioSpec {
  std::string name;
  double probability = 0.0;
};

// Ordered discrete climate scenarios with per-period probabilities.
class ScenarioLadder {
public:
  static constexpr double kSumTolerance = 1e-12;

  explicit ScenarioLadder(std::vector<ScenarioSpec> specs) : specs_(std::move(specs)) {
    if (specs_.empty()) throw DomainError("scenario ladder must contain at least one scenario");
    double total = 0.0;
    for (std::size_t k = 0; k < specs_.size(); ++k) {
      const auto& s = specs_[k];
      if (s.name.empty()) throw DomainError("scenario " + std::to_string(k) + " has an empty name");
      if (!(s.probability > 0.0) || s.probability > 1.0)
        throw DomainError("scenario '" + s.name + "' probability must be in (0, 1]");
      for (std::size_t j = 0; j < k; ++j)
        if (specs_[j].name == s.name) throw DomainError("duplicate scenario name '" + s.name + "'");
      total += s.probability;
    }
    if (std::abs(total - 1.0) > kSumTolerance)
      throw DomainError("scenario probabilities sum to " + std::to_string(total) + ", expected 1");

    // Suffix sums; the least extreme scenario is pinned to exactly 1.
    cumulative_.assign(specs_.size(), 0.0);
    double acc = 0.0;
    for (std::size_t k = specs_.size(); k-- > 0;) {
      acc += specs_[k].probability;
      cumulative_[k] = acc;
    }
    cumulative_[0] = 1.0;

    // CDF for sampling in rank order, last entry pinned to 1.
    cdf_.resize(specs_.size());
    acc = 0.0;
    for (std::size_t k = 0; k < specs_.size(); ++k) {
      acc += specs_[k].probability;
      cdf_[k] = acc;
    }
    cdf_.back() = 1.0;

    // FNV-1a over names and probabilities.
    std::uint64_t h = 0xcbf29ce484222325ULL;
    auto mix = [&h](unsigned char c) {
      h ^= c;
      h *= 0x100000001b3ULL;
    };
    for (const auto& s : specs_) {
      for (char c : s.name) mix(static_cast<unsigned char>(c));
      mix(0);
      const auto bits = std::bit_cast<std::uint64_t>(s.probability);
      for (int i = 0; i < 8; ++i) mix(static_cast<unsigned char>(bits >> (8 * i)));
    }
    fingerprint_ = h;
  }

  std::size_t size() const noexcept { return specs_.size(); }
  std::uint64_t fingerprint() const noexcept { return fingerprint_; }
  const std::vector<ScenarioSpec>& specs() const noexcept { return specs_; }
  double probability(std::size_t rank) const { return specs_.at(rank).probability; }
  const std::string& name(std::size_t rank) const { return specs_.at(rank).name; }

  ScenarioId id(std::size_t rank) const {
    if (rank >= specs_.size())
      throw DomainError("scenario rank " + std::to_string(rank) + " out of range");
    return {rank, specs_[rank].name, fingerprint_};
  }

  ScenarioId id(const std::string& name) const {
    for (std::size_t k = 0; k < specs_.size(); ++k)
      if (specs_[k].name == name) return id(k);
    throw DomainError("unknown scenario '" + name + "'");
  }

  bool contains(const ScenarioId& s) const noexcept {
    return s.ladder == fingerprint_ && s.rank < specs_.size() && specs_[s.rank].name == s.name;
  }

  void require(const ScenarioId& s) const {
    if (!contains(s)) throw DomainError("scenario '" + s.name + "' does not belong to this ladder");
  }

  // Probability that the realized scenario is at or above `rank`.
  double cumulative(std::size_t rank) const { return cumulative_.at(rank); }

  // Categorical draw by inverse CDF; consumes exactly one uniform.
  std::size_t sample_rank(Rng& rng) const {
    const double u = uniform01(rng);
    for (std::size_t k = 0; k + 1 < cdf_.size(); ++k)
      if (u < cdf_[k]) return k;
    return cdf_.size() - 1;
  }

private:
  std::vector<ScenarioSpec> specs_;
  std::vector<double> cumulative_;
  std::vector<double> cdf_;
  std::uint64_t fingerprint_ = 0;
};

// The six-scenario ladder used throughout the simulation experiments.
// Per-scenario probabilities are the differences of the cumulative
// column (1.0, 0.7, 0.5, 0.3, 0.2, 0.1).
inline ScenarioLadder default_ladder() {
  return ScenarioLadder({{"low", 0.3},
                         {"int low", 0.2},
                         {"int", 0.2},
                         {"int high", 0.1},
                         {"high", 0.1},
                         {"extreme", 0.1}});
}

inline double cumulative_trigger_prob(const ScenarioLadder& ladder, const ScenarioId& s) {
  ladder.require(s);
  return ladder.cumulative(s.rank);
}

inline ScenarioId sample_scenario(const ScenarioLadder& ladder, Rng& rng) {
  return ladder.id(ladder.sample_rank(rng));
}

inline double severity_fraction(const ScenarioLadder& ladder, const ScenarioId& s) {
  ladder.require(s);
  if (ladder.size() == 1) return 0.0;
  return static_cast<double>(s.rank) / static_cast<double>(ladder.size() - 1);
}

// Per-scenario values keyed by rank, e.g. prices or allocations.
using ScenarioVector = std::vector<double>;

inline void require_scenario_vector(const ScenarioLadder& ladder, std::span<const double> v,
                                    const char* what) {
  if (v.size() != ladder.size())
    throw DomainError(std::string(what) + " has " + std::to_string(v.size()) +
                      " entries, ladder has " + std::to_string(ladder.size()));
}

}  // namespace ccf
