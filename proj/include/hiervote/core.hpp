#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace hiervote {

enum class Errc {
  EmptySpec,
  EvenGroupSize,
  GroupTooSmall,
  NonUniformHierarchy,
  ProbabilityOutOfRange,
  AlphaOutOfRange,
  EffectiveSizeEven,
  EffectiveSizeTooSmall,
  LengthMismatch,
  NonFiniteInput,
  NonPositive,
  NoValidFactorization,
  ElectorateTooLarge,
  InvalidGrid,
  InvalidConfig,
};

std::string_view to_string(Errc code) noexcept;

/// Raised for every rejected input. `code()` identifies the violated rule.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what);
  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

/// A real number in [0, 1]. Out-of-range or NaN values are rejected.
class Probability {
 public:
  constexpr Probability() = default;
  explicit Probability(double value);

  constexpr double value() const noexcept { return value_; }
  constexpr operator double() const noexcept { return value_; }

  Probability complement() const noexcept { return Probability::unchecked(1.0 - value_); }

  /// For values produced by this library's own arithmetic, already known to lie in [0,1].
  /// Rounding excursions of a few ulps outside the interval are pulled back.
  static Probability unchecked(double value) noexcept;

 private:
  double value_ = 0.0;
};

std::vector<Probability> to_probabilities(std::span<const double> values);

/// Layer sizes of a majority tree, bottom layer first.
class HierarchySpec {
 public:
  /// Throws EmptySpec, EvenGroupSize or GroupTooSmall. A lone layer of size 1
  /// (one voter deciding directly) is the only admitted size below 3.
  explicit HierarchySpec(std::vector<std::int64_t> layer_sizes);

  std::span<const std::int64_t> layers() const noexcept { return layers_; }
  std::size_t depth() const noexcept { return layers_.size(); }
  std::int64_t electorate_size() const noexcept { return electorate_; }
  bool is_uniform() const noexcept;

  friend bool operator==(const HierarchySpec&, const HierarchySpec&) = default;

 private:
  std::vector<std::int64_t> layers_;
  std::int64_t electorate_ = 1;
};

HierarchySpec validate_hierarchy(std::vector<std::int64_t> layer_sizes);

/// One bottom-layer group. `effective_size` counts the voters that actually cast a
/// ballot; `abstention` is kept for reporting only.
class GroupProfile {
 public:
  GroupProfile(std::int64_t effective_size, Probability competence, Probability abstention = Probability{});

  std::int64_t effective_size() const noexcept { return size_; }
  Probability competence() const noexcept { return competence_; }
  Probability abstention() const noexcept { return abstention_; }

 private:
  std::int64_t size_;
  Probability competence_;
  Probability abstention_;
};

/// Two-tier system of heterogeneous groups; the group count is odd.
class HeteroSystem {
 public:
  explicit HeteroSystem(std::vector<GroupProfile> groups);

  std::span<const GroupProfile> groups() const noexcept { return groups_; }
  std::size_t group_count() const noexcept { return groups_.size(); }
  std::int64_t electorate_size() const noexcept;

  /// The equivalent direct electorate: k̃_j copies of ε_j for each group j.
  std::vector<Probability> direct_voters() const;

 private:
  std::vector<GroupProfile> groups_;
};

struct SweepRow {
  double epsilon = 0.0;
  double p_direct = 0.0;
  double p_hier = 0.0;
  double diff = 0.0;
  std::optional<double> bound_direct;
  std::optional<double> bound_hier;
  std::optional<double> mc_estimate;
  std::optional<double> mc_stderr;
};

/// Rows ordered by strictly increasing epsilon.
class SweepResult {
 public:
  void append(SweepRow row);
  std::span<const SweepRow> rows() const noexcept { return rows_; }
  std::size_t size() const noexcept { return rows_.size(); }
  const SweepRow& operator[](std::size_t i) const { return rows_[i]; }

 private:
  std::vector<SweepRow> rows_;
};

/// `steps` evenly spaced points from start to stop inclusive.
std::vector<Probability> linspace_grid(double start, double stop, int steps);

void require_odd_count(std::int64_t n, std::string_view what);

}  // namespace hiervote
