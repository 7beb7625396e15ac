#pragma once

#include <cstdint>
#include <span>

#include "hiervote/core.hpp"

namespace hiervote {

/// Probability that correct ballots fill strictly more than k/2 of a group's k seats when
/// each seat independently votes correctly (`success`), abstains (`alpha`) or votes
/// incorrectly (the remainder). Sums the trinomial over all (x1, x2, x3) with x1 > k/2.
/// Throws AlphaOutOfRange unless alpha <= 1 - success.
Probability uniform_abstention_tier(std::int64_t k, Probability success, Probability alpha);

/// Two tiers of the trinomial model: groups of k voters, then l groups that themselves
/// abstain with the same `alpha`.
Probability uniform_abstention_two_tier(std::int64_t k, std::int64_t l, Probability epsilon, Probability alpha);

/// Effective sizes round(k_j (1 - α_j)); each must come out odd and >= 3.
HeteroSystem build_hetero_system(std::span<const std::int64_t> base_sizes, std::span<const Probability> alphas,
                                 std::span<const Probability> epsilons);

/// round(base (1 - alpha)) validated as an admissible group size.
std::int64_t effective_group_size(std::int64_t base_size, Probability alpha);

}  // namespace hiervote
