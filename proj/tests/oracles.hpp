#pragma once

// Independent reference computations for the tests. Nothing here calls into the
// library's probability code: every value comes from brute-force enumeration.

#include <cstdint>
#include <functional>
#include <random>
#include <vector>

namespace oracle {

/// Pr(pattern) = ∏ p_i^{x_i} (1-p_i)^{1-x_i}
inline double pattern_weight(const std::vector<double>& p, std::uint64_t mask) {
  double w = 1.0;
  for (std::size_t i = 0; i < p.size(); ++i) w *= (mask >> i) & 1U ? p[i] : 1.0 - p[i];
  return w;
}

inline int popcount(std::uint64_t x) { return __builtin_popcountll(x); }

/// Exact pmf of the number of successes by enumerating all 2^n outcomes.
inline std::vector<double> enumerate_pmf(const std::vector<double>& p) {
  std::vector<double> pmf(p.size() + 1, 0.0);
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << p.size()); ++mask) {
    pmf[static_cast<std::size_t>(popcount(mask))] += pattern_weight(p, mask);
  }
  return pmf;
}

/// Pr(strict majority correct) by enumeration.
inline double enumerate_majority(const std::vector<double>& p) {
  double total = 0.0;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << p.size()); ++mask) {
    if (2 * popcount(mask) > static_cast<int>(p.size())) total += pattern_weight(p, mask);
  }
  return total;
}

/// Evaluates the recursive majority of a leaf pattern on a tree with the given layer
/// sizes (bottom first). Leaves are consumed left to right.
inline bool tree_outcome(const std::vector<std::int64_t>& layers, std::size_t level, std::uint64_t mask,
                         std::size_t& cursor) {
  if (level == 0) return (mask >> cursor++) & 1U;
  const auto k = layers[level - 1];
  int yes = 0;
  for (std::int64_t i = 0; i < k; ++i) yes += tree_outcome(layers, level - 1, mask, cursor) ? 1 : 0;
  return 2 * yes > k;
}

/// Reliability of a majority tree by enumerating all 2^{N_d} leaf patterns.
inline double enumerate_tree(const std::vector<std::int64_t>& layers, double eps) {
  std::int64_t leaves = 1;
  for (auto k : layers) leaves *= k;
  const std::vector<double> p(static_cast<std::size_t>(leaves), eps);
  double total = 0.0;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << leaves); ++mask) {
    std::size_t cursor = 0;
    if (tree_outcome(layers, layers.size(), mask, cursor)) total += pattern_weight(p, mask);
  }
  return total;
}

/// Elementary symmetric polynomials as sums over subsets: coefficients of ∏(1 + x_i t).
inline std::vector<double> subset_expansion(const std::vector<double>& x) {
  std::vector<double> e(x.size() + 1, 0.0);
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << x.size()); ++mask) {
    double prod = 1.0;
    for (std::size_t i = 0; i < x.size(); ++i)
      if ((mask >> i) & 1U) prod *= x[i];
    e[static_cast<std::size_t>(popcount(mask))] += prod;
  }
  return e;
}

/// Trinomial majority by enumerating all 3^k seat states (0 correct, 1 abstain, 2 wrong).
inline double enumerate_trinomial(int k, double s, double a) {
  const double r = 1.0 - s - a;
  std::int64_t states = 1;
  for (int i = 0; i < k; ++i) states *= 3;
  double total = 0.0;
  for (std::int64_t code = 0; code < states; ++code) {
    std::int64_t c = code;
    int correct = 0;
    double w = 1.0;
    for (int i = 0; i < k; ++i) {
      const int state = static_cast<int>(c % 3);
      c /= 3;
      w *= state == 0 ? s : (state == 1 ? a : r);
      correct += state == 0;
    }
    if (2 * correct > k) total += w;
  }
  return total;
}

inline double central_difference(const std::function<double(double)>& f, double x, double h = 1e-6) {
  return (f(x + h) - f(x - h)) / (2 * h);
}

}  // namespace oracle
