#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "hiervote/core.hpp"

namespace hiervote {

/// Elementary symmetric polynomials C_0..C_n of nonnegative `x` via Newton's
/// identities, C_s = (1/s) Σ_{k<s} (-1)^k C_{s-1-k} σ_{k+1}.
///
/// The recursion alternates signs and cancels catastrophically for skewed inputs,
/// so it runs in 100-digit binary floating point and rounds the result to double.
std::vector<double> elementary_symmetric_newton(std::span<const double> x);

/// Same polynomials from the product ∏(1 + x_i t), one factor at a time.
std::vector<double> elementary_symmetric_convolution(std::span<const double> x);

struct SymmetricPolyTable {
  std::vector<double> ratios;      // x_i = p_i / q_i
  std::vector<double> elementary;  // C_0..C_n
  std::vector<double> power_sums;  // σ_1..σ_n
};

/// Builds the table for success probabilities that are all < 1.
SymmetricPolyTable symmetric_poly_table(std::span<const Probability> probs);

/// Distribution of the number of successes among independent, non-identical trials.
class PoissonBinomial {
 public:
  explicit PoissonBinomial(std::vector<Probability> success_probs);

  std::span<const Probability> success_probs() const noexcept { return probs_; }
  const std::vector<double>& pmf() const& noexcept { return pmf_; }
  std::vector<double> pmf() && noexcept { return std::move(pmf_); }
  std::size_t trials() const noexcept { return probs_.size(); }

  /// Pr(Σ >= threshold); sums the smaller side and complements when that is the lower tail.
  Probability upper_tail(std::int64_t threshold) const;

 private:
  std::vector<Probability> probs_;
  std::vector<double> pmf_;
};

PoissonBinomial poisson_binomial_pmf(std::span<const Probability> probs);

/// pmf[s] = ∏ q_i · C_s(p/q) with C_s from Newton's identities. Cross-check route.
std::vector<double> poisson_binomial_pmf_newton(std::span<const Probability> probs);

/// Pr(Σ >= n'+1) for an odd number n = 2n'+1 of trials.
Probability majority_prob(std::span<const Probability> probs);

/// Group j wins with p_{1,j} = binomial_tail(k̃_j, ε_j); the groups then vote by majority.
Probability hetero_two_tier(const HeteroSystem& system);

/// Per-group winning probabilities p_{1,j}.
std::vector<Probability> group_win_probs(const HeteroSystem& system);

/// Direct majority over an odd number of heterogeneous voters.
Probability hetero_direct(std::span<const Probability> voter_probs);

}  // namespace hiervote
