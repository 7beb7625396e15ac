#include "hiervote/bounds.hpp"

#include <numeric>

#include "hiervote/poisson_binomial.hpp"
#include "hiervote/reliability.hpp"

namespace hiervote {

namespace {
// the condition is often met with equality (e.g. p̄ = 2/3 for l = 3)
constexpr double kValiditySlack = 1e-12;
}  // namespace

HoeffdingBound hoeffding_bound(std::span<const Probability> probs) {
  const auto n = static_cast<std::int64_t>(probs.size());
  require_odd_count(n, "voter count");
  const double sum = std::accumulate(probs.begin(), probs.end(), 0.0,
                                     [](double acc, Probability p) { return acc + p.value(); });
  const double mean = sum / static_cast<double>(n);
  HoeffdingBound out;
  out.mean = mean;
  out.bound = binomial_tail(n, Probability::unchecked(mean));
  out.valid = mean >= 0.5 + 0.5 / static_cast<double>(n) - kValiditySlack;
  return out;
}

HoeffdingBound hoeffding_hier_bound(const HeteroSystem& system) {
  return hoeffding_bound(group_win_probs(system));
}

HoeffdingBound hoeffding_direct_bound(std::span<const Probability> voter_probs) {
  return hoeffding_bound(voter_probs);
}

}  // namespace hiervote
