#include "hiervote/abstention.hpp"

#include <algorithm>
#include <cmath>

#include "hiervote/reliability.hpp"

namespace hiervote {

namespace {

constexpr double kAlphaSlack = 1e-12;

// n! / (a! b! c!) · s^a · α^b · r^c, with 0^0 = 1.
double trinomial_term(std::int64_t n, std::int64_t a, std::int64_t b, std::int64_t c, double s, double alpha,
                      double r) {
  if ((s == 0.0 && a > 0) || (alpha == 0.0 && b > 0) || (r == 0.0 && c > 0)) return 0.0;
  double log_term = std::lgamma(n + 1.0) - std::lgamma(a + 1.0) - std::lgamma(b + 1.0) - std::lgamma(c + 1.0);
  if (a > 0) log_term += a * std::log(s);
  if (b > 0) log_term += b * std::log(alpha);
  if (c > 0) log_term += c * std::log(r);
  return std::exp(log_term);
}

// Exact integer coefficients while they fit in a double mantissa.
double small_trinomial_term(std::int64_t n, std::int64_t a, std::int64_t b, std::int64_t c, double s, double alpha,
                            double r) {
  double coeff = 1.0;
  for (std::int64_t i = 1; i <= a; ++i) coeff = coeff * static_cast<double>(n - a + i) / static_cast<double>(i);
  for (std::int64_t i = 1; i <= b; ++i) coeff = coeff * static_cast<double>(c + i) / static_cast<double>(i);
  return coeff * std::pow(s, static_cast<double>(a)) * std::pow(alpha, static_cast<double>(b)) *
         std::pow(r, static_cast<double>(c));
}

Probability trinomial_majority(std::int64_t k, double success, double alpha) {
  const double rest = std::max(0.0, 1.0 - success - alpha);
  double total = 0.0;
  for (std::int64_t x1 = (k + 1) / 2; x1 <= k; ++x1) {
    for (std::int64_t x2 = 0; x2 <= k - x1; ++x2) {
      const std::int64_t x3 = k - x1 - x2;
      total += k <= 50 ? small_trinomial_term(k, x1, x2, x3, success, alpha, rest)
                       : trinomial_term(k, x1, x2, x3, success, alpha, rest);
    }
  }
  return Probability::unchecked(total);
}

void require_alpha_fits(Probability success, Probability alpha) {
  if (alpha.value() > 1.0 - success.value() + kAlphaSlack) {
    throw Error(Errc::AlphaOutOfRange, "abstention " + std::to_string(alpha.value()) + " exceeds 1 - " +
                                           std::to_string(success.value()));
  }
}

}  // namespace

Probability uniform_abstention_tier(std::int64_t k, Probability success, Probability alpha) {
  require_odd_count(k, "group size");
  require_alpha_fits(success, alpha);
  return trinomial_majority(k, success, alpha);
}

Probability uniform_abstention_two_tier(std::int64_t k, std::int64_t l, Probability epsilon, Probability alpha) {
  require_odd_count(l, "group count");
  const Probability group_win = uniform_abstention_tier(k, epsilon, alpha);
  require_alpha_fits(group_win, alpha);
  return trinomial_majority(l, group_win, alpha);
}

std::int64_t effective_group_size(std::int64_t base_size, Probability alpha) {
  if (base_size <= 0) throw Error(Errc::NonPositive, "base group size must be positive");
  const auto size = std::llround(static_cast<double>(base_size) * (1.0 - alpha.value()));
  if (size > 0 && size % 2 == 0) {
    throw Error(Errc::EffectiveSizeEven, "effective size " + std::to_string(size) + " from base " +
                                             std::to_string(base_size) + " is even");
  }
  if (size < 3) throw Error(Errc::EffectiveSizeTooSmall, "effective size " + std::to_string(size) + " < 3");
  return size;
}

HeteroSystem build_hetero_system(std::span<const std::int64_t> base_sizes, std::span<const Probability> alphas,
                                 std::span<const Probability> epsilons) {
  if (base_sizes.size() != alphas.size() || base_sizes.size() != epsilons.size()) {
    throw Error(Errc::LengthMismatch, "sizes, abstentions and competences must have equal length");
  }
  std::vector<GroupProfile> groups;
  groups.reserve(base_sizes.size());
  for (std::size_t j = 0; j < base_sizes.size(); ++j) {
    groups.emplace_back(effective_group_size(base_sizes[j], alphas[j]), epsilons[j], alphas[j]);
  }
  return HeteroSystem(std::move(groups));
}

}  // namespace hiervote
