#include "hiervote/montecarlo.hpp"

#include <algorithm>
#include <cmath>
#include <thread>

#include "hiervote/abstention.hpp"
#include "hiervote/bounds.hpp"
#include "hiervote/poisson_binomial.hpp"
#include "hiervote/reliability.hpp"

namespace hiervote {

namespace {

constexpr double kAlphaSlack = 1e-12;

std::uint64_t mix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// SplitMix64 stream; one per (seed, point, trial).
class TrialStream {
 public:
  TrialStream(std::uint64_t seed, std::uint64_t point, std::uint64_t trial)
      : state_(mix64(mix64(mix64(seed) ^ point) ^ trial)) {}

  double uniform() {
    state_ += 0x9e3779b97f4a7c15ULL;
    std::uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    z ^= z >> 31;
    return static_cast<double>(z >> 11) * 0x1.0p-53;  // [0, 1)
  }

 private:
  std::uint64_t state_;
};

bool tree_vote(const HierarchySpec& spec, std::size_t level, double eps, TrialStream& rng) {
  if (level == 0) return rng.uniform() < eps;
  const auto k = spec.layers()[level - 1];
  std::int64_t correct = 0;
  for (std::int64_t i = 0; i < k; ++i) correct += tree_vote(spec, level - 1, eps, rng) ? 1 : 0;
  return 2 * correct > k;
}

bool group_vote(std::int64_t size, double eps, TrialStream& rng) {
  std::int64_t correct = 0;
  for (std::int64_t i = 0; i < size; ++i) correct += rng.uniform() < eps ? 1 : 0;
  return 2 * correct > size;
}

// Trinary seat: [0, ε) correct, [ε, ε+α) abstain, [ε+α, 1) incorrect. Only correct seats
// count toward the strict majority of k seats.
bool abstention_group_vote(std::int64_t k, double eps, TrialStream& rng) {
  std::int64_t correct = 0;
  for (std::int64_t i = 0; i < k; ++i) correct += rng.uniform() < eps ? 1 : 0;
  return 2 * correct > k;
}

struct TrialRunner {
  TrialStream& rng;

  bool operator()(const TreeSystem& s) const { return tree_vote(s.spec, s.spec.depth(), s.epsilon, rng); }

  bool operator()(const HeteroSystem& s) const {
    std::int64_t wins = 0;
    for (const auto& g : s.groups()) wins += group_vote(g.effective_size(), g.competence(), rng) ? 1 : 0;
    return 2 * wins > static_cast<std::int64_t>(s.group_count());
  }

  bool operator()(const DirectSystem& s) const {
    std::int64_t correct = 0;
    for (Probability p : s.voters) correct += rng.uniform() < p.value() ? 1 : 0;
    return 2 * correct > static_cast<std::int64_t>(s.voters.size());
  }

  bool operator()(const UniformAbstentionSystem& s) const {
    std::int64_t wins = 0;
    for (std::int64_t g = 0; g < s.l; ++g) wins += abstention_group_vote(s.k, s.epsilon, rng) ? 1 : 0;
    return 2 * wins > s.l;
  }
};

struct SystemValidator {
  void operator()(const TreeSystem&) const {}
  void operator()(const HeteroSystem&) const {}
  void operator()(const DirectSystem& s) const {
    require_odd_count(static_cast<std::int64_t>(s.voters.size()), "voter count");
  }
  void operator()(const UniformAbstentionSystem& s) const {
    require_odd_count(s.k, "group size");
    require_odd_count(s.l, "group count");
    if (s.alpha.value() > 1.0 - s.epsilon.value() + kAlphaSlack) {
      throw Error(Errc::AlphaOutOfRange, "abstention exceeds 1 - epsilon");
    }
  }
};

std::int64_t count_successes(const SimSystem& system, std::uint64_t seed, std::uint64_t point, std::int64_t begin,
                             std::int64_t end) {
  std::int64_t successes = 0;
  for (std::int64_t t = begin; t < end; ++t) {
    TrialStream rng(seed, point, static_cast<std::uint64_t>(t));
    successes += std::visit(TrialRunner{rng}, system) ? 1 : 0;
  }
  return successes;
}

}  // namespace

SimEstimate simulate_point(const SimConfig& config, std::uint64_t point_index) {
  if (config.trials < 1) throw Error(Errc::NonPositive, "trials must be >= 1");
  std::visit(SystemValidator{}, config.system);

  unsigned threads = config.threads == 0 ? std::max(1u, std::thread::hardware_concurrency()) : config.threads;
  threads = static_cast<unsigned>(std::min<std::int64_t>(threads, config.trials));

  std::vector<std::int64_t> partial(threads, 0);
  {
    std::vector<std::jthread> workers;
    const std::int64_t chunk = (config.trials + threads - 1) / threads;
    for (unsigned w = 0; w < threads; ++w) {
      const std::int64_t begin = w * chunk;
      const std::int64_t end = std::min(config.trials, begin + chunk);
      workers.emplace_back([&, w, begin, end] {
        partial[w] = count_successes(config.system, config.seed, point_index, begin, end);
      });
    }
  }
  std::int64_t successes = 0;
  for (auto s : partial) successes += s;

  SimEstimate est;
  const double p_hat = static_cast<double>(successes) / static_cast<double>(config.trials);
  est.p_hat = Probability::unchecked(p_hat);
  est.std_error = std::sqrt(p_hat * (1.0 - p_hat) / static_cast<double>(config.trials));
  est.trials = config.trials;
  est.seed = config.seed;
  est.successes = successes;
  return est;
}

SimEstimate simulate(const SimConfig& config) { return simulate_point(config, 0); }

Probability EpsilonMode::at(Probability eps) const {
  switch (kind) {
    case Kind::Eps: return eps;
    case Kind::OneMinusEps: return eps.complement();
    case Kind::Literal: return Probability(literal);
  }
  return eps;
}

HeteroSystem HeteroFamily::at(Probability eps) const {
  std::vector<GroupProfile> profiles;
  profiles.reserve(groups.size());
  for (const auto& g : groups) profiles.emplace_back(g.size, g.mode.at(eps), Probability(g.abstention));
  return HeteroSystem(std::move(profiles));
}

SimSystem realise(const SimFamily& family, Probability eps) {
  struct Visitor {
    Probability eps;
    SimSystem operator()(const TreeFamily& f) const { return TreeSystem{f.spec, eps}; }
    SimSystem operator()(const HeteroSweep& f) const {
      auto system = f.family.at(eps);
      if (f.target == HeteroTarget::Direct) return DirectSystem{system.direct_voters()};
      return system;
    }
    SimSystem operator()(const AbstentionFamily& f) const { return UniformAbstentionSystem{f.k, f.l, eps, f.alpha}; }
  };
  return std::visit(Visitor{eps}, family);
}

namespace {

void fill_exact(SweepRow& row, const SimFamily& family, Probability eps) {
  struct Visitor {
    SweepRow& row;
    Probability eps;
    void operator()(const TreeFamily& f) const {
      row.p_direct = binomial_tail(f.spec.electorate_size(), eps);
      row.p_hier = multi_tier(f.spec, eps);
    }
    void operator()(const HeteroSweep& f) const {
      const auto system = f.family.at(eps);
      const auto voters = system.direct_voters();
      row.p_hier = hetero_two_tier(system);
      row.p_direct = hetero_direct(voters);
      row.bound_hier = hoeffding_hier_bound(system).bound.value();
      row.bound_direct = hoeffding_direct_bound(voters).bound.value();
    }
    void operator()(const AbstentionFamily& f) const {
      row.p_hier = uniform_abstention_two_tier(f.k, f.l, eps, f.alpha);
      row.p_direct = uniform_abstention_tier(f.k * f.l, eps, f.alpha);
    }
  };
  std::visit(Visitor{row, eps}, family);
  row.diff = row.p_direct - row.p_hier;
}

}  // namespace

SweepResult simulate_sweep(const SweepConfig& config, std::span<const Probability> epsilon_grid) {
  SweepResult result;
  for (std::size_t i = 0; i < epsilon_grid.size(); ++i) {
    const Probability eps = epsilon_grid[i];
    SweepRow row;
    row.epsilon = eps;
    fill_exact(row, config.family, eps);
    const SimConfig point{config.trials, config.seed, realise(config.family, eps), config.threads};
    const auto est = simulate_point(point, i);
    row.mc_estimate = est.p_hat.value();
    row.mc_stderr = est.std_error;
    result.append(row);
  }
  return result;
}

}  // namespace hiervote
