#include <doctest.h>

#include <cmath>
#include <random>

#include "hiervote/abstention.hpp"
#include "hiervote/montecarlo.hpp"
#include "hiervote/poisson_binomial.hpp"
#include "hiervote/reliability.hpp"

using namespace hiervote;

namespace {

Probability P(double v) { return Probability(v); }

HeteroFamily abstaining_family() {
  using K = EpsilonMode::Kind;
  return HeteroFamily{{GroupTemplate{3, {K::Eps, 0.0}, 0.4}, GroupTemplate{3, {K::Eps, 0.0}, 0.4},
                       GroupTemplate{5, {K::OneMinusEps, 0.0}, 0.0}}};
}

// Standard error of a proportion, taken at the exact value so that p̂ = 0 or 1 cannot hide a miss.
double exact_stderr(double p, std::int64_t trials) { return std::sqrt(p * (1.0 - p) / static_cast<double>(trials)); }

bool within(double p_hat, double exact, std::int64_t trials, double z) {
  return std::abs(p_hat - exact) <= z * exact_stderr(exact, trials) + 1e-15;
}

}  // namespace

TEST_CASE("certain voters give certain outcomes") {
  const auto sure = simulate(SimConfig{1000, 1, TreeSystem{HierarchySpec({3, 3}), P(1.0)}, 1});
  CHECK(sure.p_hat.value() == 1.0);
  CHECK(sure.std_error == 0.0);
  CHECK(sure.successes == 1000);
  const auto never = simulate(SimConfig{1000, 1, DirectSystem{std::vector<Probability>(5, P(0.0))}, 1});
  CHECK(never.p_hat.value() == 0.0);
}

TEST_CASE("simulation input validation") {
  CHECK_THROWS_AS(simulate(SimConfig{0, 1, TreeSystem{HierarchySpec({3}), P(0.5)}, 1}), Error);
  CHECK_THROWS_AS(simulate(SimConfig{10, 1, DirectSystem{std::vector<Probability>(4, P(0.5))}, 1}), Error);
  CHECK_THROWS_AS(simulate(SimConfig{10, 1, UniformAbstentionSystem{3, 3, P(0.7), P(0.4)}, 1}), Error);
}

TEST_CASE("heterogeneous systems at 3e5 trials") {
  const auto system = abstaining_family().at(P(0.9));
  const std::int64_t n = 300000;
  const auto hier = simulate(SimConfig{n, 2024, system, 0});
  const double exact_hier = hetero_two_tier(system).value();
  CHECK(std::abs(hier.p_hat.value() - exact_hier) < 3 * hier.std_error);

  const auto voters = system.direct_voters();
  const auto direct = simulate(SimConfig{n, 2025, DirectSystem{voters}, 0});
  CHECK(std::abs(direct.p_hat.value() - hetero_direct(voters).value()) < 3 * direct.std_error);
}

TEST_CASE("tree and abstention systems agree with their exact values") {
  const std::int64_t n = 100000;
  const auto tree = simulate(SimConfig{n, 3, TreeSystem{HierarchySpec({5, 3}), P(0.6)}, 0});
  CHECK(within(tree.p_hat.value(), two_tier(5, 3, P(0.6)).value(), n, 4));
  const auto abst = simulate(SimConfig{n, 4, UniformAbstentionSystem{5, 3, P(0.6), P(0.1)}, 0});
  CHECK(within(abst.p_hat.value(), uniform_abstention_two_tier(5, 3, P(0.6), P(0.1)).value(), n, 4));
}

TEST_CASE("results do not depend on thread count") {
  const SimSystem system = abstaining_family().at(P(0.7));
  std::vector<std::int64_t> counts;
  for (unsigned threads : {1u, 2u, 4u, 7u}) {
    counts.push_back(simulate_point(SimConfig{20001, 99, system, threads}, 5).successes);
  }
  for (auto c : counts) CHECK(c == counts.front());
  // a different point index draws a different stream
  CHECK(simulate_point(SimConfig{20001, 99, system, 1}, 6).successes != counts.front());
}

TEST_CASE("sweep endpoints are exact") {
  const std::vector<Probability> grid = {P(0.0), P(1.0)};
  const auto sweep = simulate_sweep(SweepConfig{500, 8, HeteroSweep{abstaining_family(), HeteroTarget::TwoTier}, 1}, grid);
  REQUIRE(sweep.size() == 2);
  for (const auto& row : sweep.rows()) {
    CHECK(*row.mc_estimate == row.p_hier);
    CHECK(*row.mc_stderr == 0.0);
  }
}

TEST_CASE("21-point sweep of the heterogeneous family") {
  const auto grid = linspace_grid(0.0, 1.0, 21);
  const std::int64_t n = 10000;
  const auto hier = simulate_sweep(SweepConfig{n, 42, HeteroSweep{abstaining_family(), HeteroTarget::TwoTier}, 0}, grid);
  const auto direct = simulate_sweep(SweepConfig{n, 43, HeteroSweep{abstaining_family(), HeteroTarget::Direct}, 0}, grid);
  double best_gap = -1.0;
  double best_eps = 0.0;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const auto& h = hier[i];
    CHECK(within(*h.mc_estimate, h.p_hier, n, 4));
    CHECK(within(*direct[i].mc_estimate, direct[i].p_direct, n, 4));
    REQUIRE(h.bound_hier.has_value());
    if (h.p_hier - h.p_direct > best_gap) {
      best_gap = h.p_hier - h.p_direct;
      best_eps = h.epsilon;
    }
  }
  CHECK(std::abs(best_eps - 0.9) < 0.051);
}

TEST_CASE("randomised panel stays within four standard errors") {
  std::mt19937_64 rng(77);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const std::int64_t n = 20000;
  int inside = 0;
  int total = 0;
  for (int c = 0; c < 60; ++c) {
    std::vector<GroupProfile> groups;
    const std::size_t l = 2 * (rng() % 3) + 1;
    for (std::size_t j = 0; j < l; ++j) {
      groups.emplace_back(2 * static_cast<std::int64_t>(rng() % 4) + 3, P(0.2 + 0.6 * u(rng)));
    }
    const HeteroSystem system(std::move(groups));
    const auto est = simulate(SimConfig{n, 1000 + static_cast<std::uint64_t>(c), system, 0});
    ++total;
    if (within(est.p_hat.value(), hetero_two_tier(system).value(), n, 4)) ++inside;
  }
  CHECK(inside >= 0.99 * total);
}
