#pragma once

#include <cstdint>
#include <span>

#include "hiervote/core.hpp"

namespace hiervote {

/// Probability that strictly more than half of `n_voters` independent voters, each
/// correct with probability `epsilon`, are correct. `n_voters` must be odd.
///
/// Terms are scaled by the modal pmf term and accumulated outward with the ratio
/// recurrence, so no binomial coefficient is ever formed; cost is O(n).
Probability binomial_tail(std::int64_t n_voters, Probability epsilon);

/// Generic upper tail Pr(X >= threshold) for X ~ Binomial(n, p).
Probability binomial_upper_tail(std::int64_t n, std::int64_t threshold, Probability p);

/// Applies the k-voter majority map `spec.depth()` times. Requires a uniform spec.
Probability recursive_majority(const HierarchySpec& spec, Probability epsilon);

/// `l` groups of `k` voters each, group outcomes aggregated by a second majority.
Probability two_tier(std::int64_t k, std::int64_t l, Probability epsilon);

/// Folds the layer majorities bottom-up, starting from `epsilon`.
Probability multi_tier(const HierarchySpec& spec, Probability epsilon);

/// Natural logs of the winning and losing probabilities of a majority vote. Each side is
/// accumulated from its own largest term, so values far below the double range survive.
struct LogOutcome {
  double log_win = 0.0;
  double log_lose = 0.0;

  static LogOutcome from(Probability p);
};

/// binomial_tail in log space; `voter` carries log ε and log(1 - ε).
LogOutcome log_binomial_tail(std::int64_t n_voters, LogOutcome voter);

/// multi_tier in log space.
LogOutcome log_multi_tier(const HierarchySpec& spec, Probability epsilon);

/// Direct vote over spec.electorate_size() voters against the hierarchy, per grid point.
SweepResult sweep_compare(const HierarchySpec& spec, std::span<const Probability> epsilon_grid);

}  // namespace hiervote
