#include "hiervote/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "hiervote/reliability.hpp"

namespace hiervote {

namespace {

constexpr double kTieTolerance = 1e-12;
constexpr double kEqualityTolerance = 1e-12;

void require_searchable(std::int64_t electorate) {
  if (electorate <= 0) throw Error(Errc::NonPositive, "electorate size must be positive");
  if (electorate > kMaxSearchElectorate) {
    throw Error(Errc::ElectorateTooLarge, "electorate " + std::to_string(electorate) + " exceeds 10^9");
  }
}

void collect_factorizations(std::int64_t rest, int slots, std::int64_t min_factor, std::vector<std::int64_t>& prefix,
                            std::vector<std::vector<std::int64_t>>& out) {
  if (slots == 1) {
    if (rest >= min_factor && rest % 2 == 1) {
      prefix.push_back(rest);
      out.push_back(prefix);
      prefix.pop_back();
    }
    return;
  }
  for (std::int64_t d = min_factor; d <= rest; d += 2) {
    // remaining slots all need factors >= d
    std::int64_t floor_product = 1;
    bool too_big = false;
    for (int i = 0; i < slots; ++i) {
      if (floor_product > rest / d) {
        too_big = true;
        break;
      }
      floor_product *= d;
    }
    if (too_big) break;
    if (rest % d != 0) continue;
    prefix.push_back(d);
    collect_factorizations(rest / d, slots - 1, d, prefix, out);
    prefix.pop_back();
  }
}

CompositionReport pick_argmin(std::int64_t electorate, ScoreKind kind, std::vector<CompositionCandidate> candidates) {
  if (candidates.empty()) {
    throw Error(Errc::NoValidFactorization,
                "no factorisation of " + std::to_string(electorate) + " into odd factors >= 3");
  }
  CompositionReport report;
  report.electorate_size = electorate;
  report.score_kind = kind;

  double best = candidates.front().score;
  for (const auto& c : candidates) best = std::min(best, c.score);

  auto sorted_layers = [](const std::vector<std::int64_t>& layers) {
    auto s = layers;
    std::sort(s.begin(), s.end());
    return s;
  };
  const CompositionCandidate* chosen = nullptr;
  int near_best = 0;
  for (const auto& c : candidates) {
    if (c.score - best > kTieTolerance) continue;
    ++near_best;
    if (chosen == nullptr) {
      chosen = &c;
      continue;
    }
    const auto a = sorted_layers(c.layers);
    const auto b = sorted_layers(chosen->layers);
    if (a < b || (a == b && c.layers < chosen->layers)) chosen = &c;
  }
  report.argmin = chosen->layers;
  report.min_score = chosen->score;
  report.tie = near_best > 1;
  report.candidates = std::move(candidates);
  return report;
}

std::vector<std::vector<std::int64_t>> ordered_two_tier_splits(std::int64_t electorate) {
  std::vector<std::vector<std::int64_t>> splits;
  for (const auto& f : odd_factorizations(electorate, 2)) {
    splits.push_back({f[0], f[1]});
    if (f[0] != f[1]) splits.push_back({f[1], f[0]});
  }
  std::sort(splits.begin(), splits.end(), [](const auto& a, const auto& b) { return a[1] < b[1]; });
  return splits;
}

int sign(double x) { return (x > 0) - (x < 0); }

// Odd integer r >= 3 with r^n == value, or 0.
std::int64_t odd_integer_root(std::int64_t value, int n) {
  const auto guess = static_cast<std::int64_t>(std::llround(std::pow(static_cast<double>(value), 1.0 / n)));
  for (std::int64_t r = std::max<std::int64_t>(guess - 1, 1); r <= guess + 1; ++r) {
    std::int64_t p = 1;
    for (int i = 0; i < n && p <= value; ++i) p *= r;
    if (p == value && r >= 3 && r % 2 == 1) return r;
  }
  return 0;
}

}  // namespace

double pivotal_derivative(std::int64_t n_voters, Probability epsilon) {
  require_odd_count(n_voters, "electorate size");
  if (n_voters == 1) return 1.0;
  const double e = epsilon.value();
  if (e == 0.0 || e == 1.0) return 0.0;
  // n C(2h, h) (ε(1-ε))^h with h = (n-1)/2, and C(2h, h) / 4^h = ∏_{i<=h} (2i-1)/(2i)
  const std::int64_t half = (n_voters - 1) / 2;
  double log_value = std::log(static_cast<double>(n_voters)) + half * std::log(4.0 * e * (1.0 - e));
  for (std::int64_t i = 1; i <= half; ++i) log_value += std::log1p(-0.5 / static_cast<double>(i));
  return std::exp(log_value);
}

double hier_slope_at_half(std::int64_t k, int n_layers) {
  if (n_layers < 1) throw Error(Errc::NonPositive, "layer count must be >= 1");
  return std::pow(pivotal_derivative(k, Probability(0.5)), n_layers);
}

double direct_slope_at_half(std::int64_t n_voters) {
  return pivotal_derivative(n_voters, Probability(0.5));
}

double asymptotic_slope(double k_prime) {
  if (!(k_prime > 0.0)) throw Error(Errc::NonPositive, "k' must be positive");
  return 2.0 * (k_prime + 3.0) / std::sqrt(std::numbers::pi * k_prime);
}

double two_tier_slope_product(std::int64_t k, std::int64_t l) {
  return direct_slope_at_half(k) * direct_slope_at_half(l);
}

std::string_view to_string(ScoreKind kind) noexcept {
  switch (kind) {
    case ScoreKind::ReliabilityAtEpsilon: return "reliability";
    case ScoreKind::SlopeAtHalf: return "slope";
    case ScoreKind::FewestVoters: return "fewest";
  }
  return "unknown";
}

std::vector<std::vector<std::int64_t>> odd_factorizations(std::int64_t electorate, int n_factors) {
  require_searchable(electorate);
  if (n_factors < 1) throw Error(Errc::NonPositive, "factor count must be >= 1");
  std::vector<std::vector<std::int64_t>> out;
  std::vector<std::int64_t> prefix;
  collect_factorizations(electorate, n_factors, 3, prefix, out);
  return out;
}

CompositionReport find_worst_two_tier(std::int64_t electorate, Probability epsilon) {
  require_searchable(electorate);
  std::vector<CompositionCandidate> candidates;
  for (auto& split : ordered_two_tier_splits(electorate)) {
    const double score = two_tier(split[0], split[1], epsilon);
    candidates.push_back({std::move(split), score});
  }
  return pick_argmin(electorate, ScoreKind::ReliabilityAtEpsilon, std::move(candidates));
}

CompositionReport find_worst_two_tier_slope(std::int64_t electorate) {
  require_searchable(electorate);
  std::vector<CompositionCandidate> candidates;
  for (auto& split : ordered_two_tier_splits(electorate)) {
    const double score = two_tier_slope_product(split[0], split[1]);
    candidates.push_back({std::move(split), score});
  }
  return pick_argmin(electorate, ScoreKind::SlopeAtHalf, std::move(candidates));
}

CompositionReport find_worst_multi_tier(std::int64_t electorate, int n_layers) {
  std::vector<CompositionCandidate> candidates;
  for (auto& layers : odd_factorizations(electorate, n_layers)) {
    double score = 1.0;
    for (auto k : layers) score *= direct_slope_at_half(k);
    candidates.push_back({std::move(layers), score});
  }
  return pick_argmin(electorate, ScoreKind::SlopeAtHalf, std::move(candidates));
}

std::int64_t fewest_voters(std::span<const std::int64_t> layer_sizes) {
  if (layer_sizes.empty()) throw Error(Errc::EmptySpec, "no layers");
  std::int64_t count = 1;
  for (auto k : layer_sizes) {
    require_odd_count(k, "layer size");
    count *= (k + 1) / 2;
  }
  return count;
}

CompositionReport find_fewest_voters_layout(std::int64_t electorate, int n_layers) {
  std::vector<CompositionCandidate> candidates;
  for (auto& layers : odd_factorizations(electorate, n_layers)) {
    const auto score = static_cast<double>(fewest_voters(layers));
    candidates.push_back({std::move(layers), score});
  }
  return pick_argmin(electorate, ScoreKind::FewestVoters, std::move(candidates));
}

Theorem1Report theorem1_verify(std::int64_t k, int n_layers, int grid_points) {
  require_odd_count(k, "group size");
  if (n_layers < 1) throw Error(Errc::NonPositive, "layer count must be >= 1");
  if (grid_points < 1) throw Error(Errc::InvalidGrid, "grid needs at least one point");

  const HierarchySpec spec(std::vector<std::int64_t>(static_cast<std::size_t>(n_layers), k));
  const std::int64_t electorate = spec.electorate_size();

  Theorem1Report report;
  report.k = k;
  report.n_layers = n_layers;
  report.grid_points = grid_points;

  for (double e : {0.0, 0.5, 1.0}) {
    const Probability eps(e);
    const double gap = std::abs(binomial_tail(electorate, eps) - multi_tier(spec, eps));
    report.max_equality_gap = std::max(report.max_equality_gap, gap);
  }

  for (int i = 1; i <= grid_points; ++i) {
    const double e = static_cast<double>(i) / (grid_points + 1);
    const Probability eps(e);
    int observed = 0;
    if (2 * i == grid_points + 1) {
      // ε = 1/2 exactly: equality is the expected outcome
      const double gap = binomial_tail(electorate, eps) - multi_tier(spec, eps);
      observed = std::abs(gap) <= kEqualityTolerance ? 0 : sign(gap);
    } else {
      const LogOutcome direct = log_binomial_tail(electorate, LogOutcome::from(eps));
      const LogOutcome hier = log_multi_tier(spec, eps);
      // below 1/2 compare the (small) winning sides, above it the (small) losing sides
      observed = e < 0.5 ? sign(direct.log_win - hier.log_win) : sign(hier.log_lose - direct.log_lose);
    }
    const int expected = n_layers == 1 ? 0 : sign(e - 0.5);
    if (observed != expected) {
      if (report.sign_violations == 0) report.worst_violation_epsilon = e;
      ++report.sign_violations;
    }
  }

  report.slope_direct = direct_slope_at_half(electorate);
  report.slope_hier = hier_slope_at_half(k, n_layers);
  const bool slopes_ok = n_layers == 1 ? std::abs(report.slope_direct - report.slope_hier) <= kEqualityTolerance
                                       : report.slope_direct > report.slope_hier;
  report.passed = report.max_equality_gap <= kEqualityTolerance && report.sign_violations == 0 && slopes_ok;
  return report;
}

std::vector<SquareLawCheck> theorem2_verify(std::int64_t m_lo, std::int64_t m_hi, Probability epsilon) {
  std::vector<SquareLawCheck> checks;
  for (std::int64_t m = std::max<std::int64_t>(3, m_lo | 1); m <= m_hi; m += 2) {
    const std::int64_t electorate = m * m;
    SquareLawCheck check;
    check.root = m;
    check.argmin_reliability = find_worst_two_tier(electorate, epsilon).argmin;
    check.argmin_slope = find_worst_two_tier_slope(electorate).argmin;
    const std::vector<std::int64_t> square{m, m};
    check.passed = check.argmin_reliability == square && check.argmin_slope == square;
    checks.push_back(std::move(check));
  }
  return checks;
}

std::vector<FewestVotersCheck> theorem3_verify(std::span<const std::int64_t> electorates) {
  std::vector<FewestVotersCheck> checks;
  for (auto electorate : electorates) {
    require_searchable(electorate);
    for (int n = 2; n <= 64; ++n) {
      const std::int64_t root = odd_integer_root(electorate, n);
      if (root == 0) continue;
      const auto report = find_fewest_voters_layout(electorate, n);
      FewestVotersCheck check;
      check.electorate = electorate;
      check.n_layers = n;
      check.root = root;
      check.argmin = report.argmin;
      check.fewest = static_cast<std::int64_t>(report.min_score);
      check.passed = !report.tie && report.argmin == std::vector<std::int64_t>(static_cast<std::size_t>(n), root);
      checks.push_back(std::move(check));
    }
  }
  return checks;
}

}  // namespace hiervote
