#pragma once

#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "hiervote/core.hpp"

namespace hiervote {

// ---------------------------------------------------------------------------
// Slopes at the Condorcet threshold
// ---------------------------------------------------------------------------

/// d/dε of binomial_tail(n, ε): n · C(n-1, m-1) · ε^(m-1) (1-ε)^(n-m) with m = (n+1)/2.
/// Up to the factor n this is the probability that a single voter is pivotal.
double pivotal_derivative(std::int64_t n_voters, Probability epsilon);

/// Slope at ε = 1/2 of an n-layer tree of k-voter groups: pivotal_derivative(k, 1/2)^n.
double hier_slope_at_half(std::int64_t k, int n_layers);

double direct_slope_at_half(std::int64_t n_voters);

/// Large-group approximation 2(k'+3)/√(πk') of the slope at 1/2, k = 2k'+1.
double asymptotic_slope(double k_prime);

/// Slope at 1/2 of a two-tier system; the chain rule factorises it because the inner
/// majority maps 1/2 to 1/2. Symmetric in (k, l).
double two_tier_slope_product(std::int64_t k, std::int64_t l);

// ---------------------------------------------------------------------------
// Composition searches
// ---------------------------------------------------------------------------

enum class ScoreKind { ReliabilityAtEpsilon, SlopeAtHalf, FewestVoters };

std::string_view to_string(ScoreKind kind) noexcept;

struct CompositionCandidate {
  std::vector<std::int64_t> layers;  // bottom layer first
  double score = 0.0;
};

struct CompositionReport {
  std::int64_t electorate_size = 0;
  ScoreKind score_kind = ScoreKind::SlopeAtHalf;
  std::vector<CompositionCandidate> candidates;
  std::vector<std::int64_t> argmin;
  double min_score = 0.0;
  bool tie = false;  // another candidate scored within 1e-12 of the minimum
};

/// Largest electorate accepted by the factorisation searches.
inline constexpr std::int64_t kMaxSearchElectorate = 1'000'000'000;

/// Multisets of `n_factors` odd factors >= 3 with product `electorate`, each listed in
/// nondecreasing order.
std::vector<std::vector<std::int64_t>> odd_factorizations(std::int64_t electorate, int n_factors);

/// Every ordered split N_d = k·l (k voters per group, l groups), scored by two_tier(k, l, ε).
/// The report's argmin is [k, l].
CompositionReport find_worst_two_tier(std::int64_t electorate, Probability epsilon);

/// Ordered two-tier splits scored by two_tier_slope_product.
CompositionReport find_worst_two_tier_slope(std::int64_t electorate);

/// Unordered n-layer factorisations scored by the product of layer slopes at 1/2.
CompositionReport find_worst_multi_tier(std::int64_t electorate, int n_layers);

/// Fewest aligned voters that decide the outcome: ∏ (k_i + 1)/2.
std::int64_t fewest_voters(std::span<const std::int64_t> layer_sizes);

CompositionReport find_fewest_voters_layout(std::int64_t electorate, int n_layers);

// ---------------------------------------------------------------------------
// Theorem checks
// ---------------------------------------------------------------------------

struct Theorem1Report {
  std::int64_t k = 0;
  int n_layers = 0;
  int grid_points = 0;
  double max_equality_gap = 0.0;  // max |p_d - p_n| over ε ∈ {0, 1/2, 1}
  int sign_violations = 0;        // interior points where sign(p_d - p_n) != sign(ε - 1/2)
  double worst_violation_epsilon = -1.0;
  double slope_direct = 0.0;
  double slope_hier = 0.0;
  bool passed = false;
};

/// Direct vote over k^n voters against the n-layer tree on `grid_points` interior points
/// i/(grid_points+1). Signs are decided in log space so the extremes of the grid,
/// where both probabilities leave the double range, are still compared.
Theorem1Report theorem1_verify(std::int64_t k, int n_layers, int grid_points);

struct SquareLawCheck {
  std::int64_t root = 0;
  std::vector<std::int64_t> argmin_reliability;
  std::vector<std::int64_t> argmin_slope;
  bool passed = false;
};

/// For every odd m in [m_lo, m_hi], both two-tier searches on N_d = m² must select (m, m).
std::vector<SquareLawCheck> theorem2_verify(std::int64_t m_lo, std::int64_t m_hi, Probability epsilon);

struct FewestVotersCheck {
  std::int64_t electorate = 0;
  int n_layers = 0;
  std::int64_t root = 0;
  std::vector<std::int64_t> argmin;
  std::int64_t fewest = 0;
  bool passed = false;
};

/// For each electorate and every n with an odd integer n-th root r >= 3, the fewest-voters
/// layout must be (r, ..., r) with no tie.
std::vector<FewestVotersCheck> theorem3_verify(std::span<const std::int64_t> electorates);

}  // namespace hiervote
