#include "hiervote/reliability.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace hiervote {

Probability binomial_upper_tail(std::int64_t n, std::int64_t threshold, Probability p) {
  if (n < 0) throw Error(Errc::NonPositive, "trial count must be nonnegative");
  if (threshold <= 0) return Probability::unchecked(1.0);
  if (threshold > n) return Probability::unchecked(0.0);
  const double e = p.value();
  if (e == 0.0) return Probability::unchecked(0.0);
  if (e == 1.0) return Probability::unchecked(1.0);

  const double odds = e / (1.0 - e);
  const auto mode = std::min<std::int64_t>(n, static_cast<std::int64_t>(std::floor((n + 1) * e)));

  // weights relative to the modal term; log-concavity makes both walks monotone
  double upper = 0.0;
  double lower = 0.0;
  auto add = [&](std::int64_t j, double w) { (j >= threshold ? upper : lower) += w; };

  add(mode, 1.0);
  double w = 1.0;
  for (std::int64_t j = mode; j < n; ++j) {
    w *= static_cast<double>(n - j) / static_cast<double>(j + 1) * odds;
    if (w < 1e-300) break;
    add(j + 1, w);
    if (w < 1e-30 * (upper + lower)) break;
  }
  w = 1.0;
  for (std::int64_t j = mode; j > 0; --j) {
    w *= static_cast<double>(j) / static_cast<double>(n - j + 1) / odds;
    if (w < 1e-300) break;
    add(j - 1, w);
    if (w < 1e-30 * (upper + lower)) break;
  }

  const double total = upper + lower;
  if (upper <= lower) return Probability::unchecked(upper / total);
  return Probability::unchecked(1.0 - lower / total);
}

Probability binomial_tail(std::int64_t n_voters, Probability epsilon) {
  require_odd_count(n_voters, "electorate size");
  return binomial_upper_tail(n_voters, (n_voters + 1) / 2, epsilon);
}

Probability recursive_majority(const HierarchySpec& spec, Probability epsilon) {
  if (!spec.is_uniform()) {
    throw Error(Errc::NonUniformHierarchy, "recursive majority needs equal layer sizes");
  }
  const auto k = spec.layers().front();
  Probability p = epsilon;
  for (std::size_t i = 0; i < spec.depth(); ++i) p = binomial_tail(k, p);
  return p;
}

Probability two_tier(std::int64_t k, std::int64_t l, Probability epsilon) {
  require_odd_count(k, "group size");
  require_odd_count(l, "group count");
  return binomial_tail(l, binomial_tail(k, epsilon));
}

Probability multi_tier(const HierarchySpec& spec, Probability epsilon) {
  Probability p = epsilon;
  for (auto k : spec.layers()) p = binomial_tail(k, p);
  return p;
}

SweepResult sweep_compare(const HierarchySpec& spec, std::span<const Probability> epsilon_grid) {
  SweepResult result;
  for (Probability eps : epsilon_grid) {
    SweepRow row;
    row.epsilon = eps;
    row.p_direct = binomial_tail(spec.electorate_size(), eps);
    row.p_hier = multi_tier(spec, eps);
    row.diff = row.p_direct - row.p_hier;
    result.append(row);
  }
  return result;
}

}  // namespace hiervote

namespace hiervote {

namespace {

double log_choose(std::int64_t n, std::int64_t k) {
  return std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0);
}

double log1mexp(double log_x) {
  // log(1 - e^x) for x <= 0
  return log_x > -0.6931471805599453 ? std::log(-std::expm1(log_x)) : std::log1p(-std::exp(log_x));
}

// log Σ_{j >= t} pmf(j) when t lies above the mode: start at the largest term and walk up.
double log_tail_above(std::int64_t n, std::int64_t t, double log_p, double log_q) {
  const double odds = std::exp(log_p - log_q);
  const double first = log_choose(n, t) + t * log_p + (n - t) * log_q;
  double rel = 1.0;
  double w = 1.0;
  for (std::int64_t j = t; j < n; ++j) {
    w *= static_cast<double>(n - j) / static_cast<double>(j + 1) * odds;
    rel += w;
    if (w < 1e-18 * rel) break;
  }
  return first + std::log(rel);
}

}  // namespace

LogOutcome LogOutcome::from(Probability p) {
  return LogOutcome{std::log(p.value()), std::log1p(-p.value())};
}

LogOutcome log_binomial_tail(std::int64_t n_voters, LogOutcome voter) {
  require_odd_count(n_voters, "electorate size");
  const double inf = std::numeric_limits<double>::infinity();
  if (voter.log_win == -inf) return LogOutcome{-inf, 0.0};
  if (voter.log_lose == -inf) return LogOutcome{0.0, -inf};
  const std::int64_t need = (n_voters + 1) / 2;
  // the smaller side never contains the mode; by symmetry the losing tail is the
  // winning tail with the roles of p and q swapped
  if (voter.log_win <= voter.log_lose) {
    const double log_win = log_tail_above(n_voters, need, voter.log_win, voter.log_lose);
    return LogOutcome{log_win, log1mexp(log_win)};
  }
  const double log_lose = log_tail_above(n_voters, need, voter.log_lose, voter.log_win);
  return LogOutcome{log1mexp(log_lose), log_lose};
}

LogOutcome log_multi_tier(const HierarchySpec& spec, Probability epsilon) {
  LogOutcome out = LogOutcome::from(epsilon);
  for (auto k : spec.layers()) out = log_binomial_tail(k, out);
  return out;
}

}  // namespace hiervote
