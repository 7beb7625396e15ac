#pragma once

#include <cstdint>
#include <span>
#include <variant>
#include <vector>

#include "hiervote/core.hpp"

namespace hiervote {

/// Regular or per-layer-regular majority tree with one shared competence.
struct TreeSystem {
  HierarchySpec spec;
  Probability epsilon;
};

/// One direct majority over an explicit voter list (odd length).
struct DirectSystem {
  std::vector<Probability> voters;
};

/// Groups of k voters that vote correctly, abstain or vote incorrectly; l groups.
struct UniformAbstentionSystem {
  std::int64_t k = 3;
  std::int64_t l = 3;
  Probability epsilon;
  Probability alpha;
};

using SimSystem = std::variant<TreeSystem, HeteroSystem, DirectSystem, UniformAbstentionSystem>;

struct SimConfig {
  std::int64_t trials = 1;
  std::uint64_t seed = 0;
  SimSystem system;
  unsigned threads = 0;  // 0: hardware concurrency; never changes the result
};

struct SimEstimate {
  Probability p_hat;
  double std_error = 0.0;  // √(p̂(1-p̂)/trials)
  std::int64_t trials = 0;
  std::uint64_t seed = 0;
  std::int64_t successes = 0;
};

/// Fraction of trials whose top-level outcome is correct. Every trial draws from its own
/// stream keyed by (seed, point, trial), so the result does not depend on thread count.
SimEstimate simulate(const SimConfig& config);

/// A family of systems indexed by ε, swept by simulate_sweep.
struct TreeFamily {
  HierarchySpec spec;
};

/// Group competence as a function of the swept ε.
struct EpsilonMode {
  enum class Kind { Eps, OneMinusEps, Literal } kind = Kind::Eps;
  double literal = 0.0;

  Probability at(Probability eps) const;
  friend bool operator==(const EpsilonMode&, const EpsilonMode&) = default;
};

struct GroupTemplate {
  std::int64_t size = 3;  // effective size
  EpsilonMode mode;
  double abstention = 0.0;
  friend bool operator==(const GroupTemplate&, const GroupTemplate&) = default;
};

/// Heterogeneous two-tier family, e.g. competences (ε, ε, 1-ε).
struct HeteroFamily {
  std::vector<GroupTemplate> groups;

  HeteroSystem at(Probability eps) const;
  friend bool operator==(const HeteroFamily&, const HeteroFamily&) = default;
};

enum class HeteroTarget { TwoTier, Direct };

struct HeteroSweep {
  HeteroFamily family;
  HeteroTarget target = HeteroTarget::TwoTier;
};

struct AbstentionFamily {
  std::int64_t k = 3;
  std::int64_t l = 3;
  Probability alpha;
};

using SimFamily = std::variant<TreeFamily, HeteroSweep, AbstentionFamily>;

struct SweepConfig {
  std::int64_t trials = 1;
  std::uint64_t seed = 0;
  SimFamily family;
  unsigned threads = 0;
};

/// Realises the family at ε (used by simulate_sweep for each grid point).
SimSystem realise(const SimFamily& family, Probability eps);

/// One estimate per grid point with sub-seed derived from (seed, point index). Rows carry
/// the exact direct and hierarchical values of the family alongside the estimate of the
/// simulated target.
SweepResult simulate_sweep(const SweepConfig& config, std::span<const Probability> epsilon_grid);

/// Estimates for a single point index of a sweep; exposed for determinism tests.
SimEstimate simulate_point(const SimConfig& config, std::uint64_t point_index);

}  // namespace hiervote
