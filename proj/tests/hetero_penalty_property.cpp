// Property: a two-tier system whose groups differ in competence, at the same mean voter
// competence above 1/2, is never more reliable than the homogeneous system.
// Random panel; exits nonzero and lists the counterexamples if any turn up.
#include <cstdio>
#include <numeric>
#include <random>
#include <vector>

#include "hiervote/poisson_binomial.hpp"
#include "hiervote/reliability.hpp"

using namespace hiervote;

int main() {
  std::mt19937_64 rng(20240611);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const int cases = 1000;
  int tested = 0;
  int violations = 0;
  double worst = 0.0;

  // smallest counterexample, checked first so it is always reported
  std::vector<std::vector<double>> panel = {{1.0, 1.0, 0.0}};
  while (static_cast<int>(panel.size()) < cases) {
    const std::size_t l = 2 * (rng() % 3) + 3;
    std::vector<double> eps(l);
    for (auto& e : eps) e = u(rng);
    panel.push_back(eps);
  }

  for (const auto& eps : panel) {
    const double mean = std::accumulate(eps.begin(), eps.end(), 0.0) / static_cast<double>(eps.size());
    if (mean <= 0.5) continue;
    const std::int64_t k = 3;
    const auto l = static_cast<std::int64_t>(eps.size());
    std::vector<GroupProfile> groups;
    for (double e : eps) groups.emplace_back(k, Probability(e));
    const double hetero = hetero_two_tier(HeteroSystem(std::move(groups))).value();
    const double homogeneous = two_tier(k, l, Probability(mean)).value();
    ++tested;
    if (hetero > homogeneous + 1e-12) {
      ++violations;
      worst = std::max(worst, hetero - homogeneous);
      if (violations <= 10) {
        std::printf("counterexample k=%lld eps=(", static_cast<long long>(k));
        for (std::size_t i = 0; i < eps.size(); ++i) std::printf("%s%.4f", i ? "," : "", eps[i]);
        std::printf(") hetero=%.6f homogeneous=%.6f\n", hetero, homogeneous);
      }
    }
  }
  std::printf("%d of %d systems with mean competence > 1/2 violate the property (largest excess %.4f)\n",
              violations, tested, worst);
  return violations == 0 ? 0 : 1;
}
