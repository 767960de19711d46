#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include "ccf/errors.hpp"

namespace ccf {

struct SearchOptions {
  double initial_step = 0.25;  // fraction of each coordinate's box width
  double min_step = 1e-7;      // stop once the step fraction falls below this
  double expansion = 2.0;      // step growth after a successful poll
  double contraction = 0.5;    // step shrink after a failed poll
  std::size_t max_evaluations = 2000;
  double target = 0.0;         // stop as soon as f(x) <= target
};

struct SearchResult {
  std::vector<double> x;
  double value = std::numeric_limits<double>::infinity();
  double initial_value = std::numeric_limits<double>::infinity();
  std::size_t evaluations = 0;
  std::size_t iterations = 0;
  double final_step = 0.0;
  bool reached_target = false;
};

// Bounded compass (coordinate pattern) search. Each iteration polls
// x +/- step * width_i * e_i in coordinate order and moves to the first
// improving point; a full failed poll shrinks the step. The sequence of
// decisions is a deterministic function of the objective values, so a
// deterministic objective gives a reproducible result.
//
// The objective is called as f(std::span<const double>) -> double.
template <class Objective>
SearchResult compass_search(Objective&& f, std::vector<double> x0, std::span<const double> lower,
                            std::span<const double> upper, const SearchOptions& opt = {}) {
  const std::size_t n = x0.size();
  if (lower.size() != n || upper.size() != n)
    throw DomainError("search bounds must match the dimension of the start point");
  if (opt.max_evaluations < 1) throw DomainError("search budget must be >= 1 evaluation");
  std::vector<double> width(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (!(lower[i] <= upper[i]) || !std::isfinite(lower[i]) || !std::isfinite(upper[i]))
      throw InfeasibleError("search bound " + std::to_string(i) + " is empty or not finite");
    width[i] = upper[i] - lower[i];
    x0[i] = std::clamp(x0[i], lower[i], upper[i]);
  }

  SearchResult res;
  res.x = std::move(x0);
  res.value = f(std::span<const double>(res.x));
  res.initial_value = res.value;
  res.evaluations = 1;
  double step = opt.initial_step;

  std::vector<double> trial(n);
  while (res.value > opt.target && step >= opt.min_step && res.evaluations < opt.max_evaluations) {
    ++res.iterations;
    bool improved = false;
    for (std::size_t i = 0; i < n && !improved; ++i) {
      if (width[i] == 0.0) continue;
      for (double dir : {1.0, -1.0}) {
        if (res.evaluations >= opt.max_evaluations) break;
        trial = res.x;
        trial[i] = std::clamp(res.x[i] + dir * step * width[i], lower[i], upper[i]);
        if (trial[i] == res.x[i]) continue;
        const double v = f(std::span<const double>(trial));
        ++res.evaluations;
        if (v < res.value) {
          res.x = trial;
          res.value = v;
          improved = true;
          break;
        }
      }
    }
    step = improved ? std::min(step * opt.expansion, 1.0) : step * opt.contraction;
  }
  res.final_step = step;
  res.reached_target = res.value <= opt.target;
  return res;
}

}  // namespace ccf
