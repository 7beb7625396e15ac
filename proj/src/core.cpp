#include "hiervote/core.hpp"

#include <cmath>
#include <limits>
#include <numeric>

namespace hiervote {

std::string_view to_string(Errc code) noexcept {
  switch (code) {
    case Errc::EmptySpec: return "EmptySpec";
    case Errc::EvenGroupSize: return "EvenGroupSize";
    case Errc::GroupTooSmall: return "GroupTooSmall";
    case Errc::NonUniformHierarchy: return "NonUniformHierarchy";
    case Errc::ProbabilityOutOfRange: return "ProbabilityOutOfRange";
    case Errc::AlphaOutOfRange: return "AlphaOutOfRange";
    case Errc::EffectiveSizeEven: return "EffectiveSizeEven";
    case Errc::EffectiveSizeTooSmall: return "EffectiveSizeTooSmall";
    case Errc::LengthMismatch: return "LengthMismatch";
    case Errc::NonFiniteInput: return "NonFiniteInput";
    case Errc::NonPositive: return "NonPositive";
    case Errc::NoValidFactorization: return "NoValidFactorization";
    case Errc::ElectorateTooLarge: return "ElectorateTooLarge";
    case Errc::InvalidGrid: return "InvalidGrid";
    case Errc::InvalidConfig: return "InvalidConfig";
  }
  return "Unknown";
}

Error::Error(Errc code, const std::string& what)
    : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

Probability::Probability(double value) : value_(value) {
  if (!(value >= 0.0 && value <= 1.0)) {
    throw Error(Errc::ProbabilityOutOfRange, "probability " + std::to_string(value) + " outside [0,1]");
  }
}

Probability Probability::unchecked(double value) noexcept {
  Probability p;
  p.value_ = value < 0.0 ? 0.0 : (value > 1.0 ? 1.0 : value);
  return p;
}

std::vector<Probability> to_probabilities(std::span<const double> values) {
  std::vector<Probability> out;
  out.reserve(values.size());
  for (double v : values) out.emplace_back(v);
  return out;
}

void require_odd_count(std::int64_t n, std::string_view what) {
  if (n <= 0 || n % 2 == 0) {
    throw Error(Errc::EvenGroupSize, std::string(what) + " must be a positive odd number, got " + std::to_string(n));
  }
}

HierarchySpec::HierarchySpec(std::vector<std::int64_t> layer_sizes) : layers_(std::move(layer_sizes)) {
  if (layers_.empty()) throw Error(Errc::EmptySpec, "hierarchy needs at least one layer");
  const bool lone_voter = layers_.size() == 1 && layers_[0] == 1;
  for (std::size_t i = 0; i < layers_.size(); ++i) {
    const auto k = layers_[i];
    if (k > 0 && k % 2 == 0) {
      throw Error(Errc::EvenGroupSize, "layer " + std::to_string(i) + " has even size " + std::to_string(k));
    }
    if (k < 3 && !lone_voter) {
      throw Error(Errc::GroupTooSmall, "layer " + std::to_string(i) + " has size " + std::to_string(k) + " < 3");
    }
  }
  for (auto k : layers_) {
    if (electorate_ > std::numeric_limits<std::int64_t>::max() / k) {
      throw Error(Errc::ElectorateTooLarge, "product of layer sizes overflows");
    }
    electorate_ *= k;
  }
}

bool HierarchySpec::is_uniform() const noexcept {
  for (auto k : layers_)
    if (k != layers_.front()) return false;
  return true;
}

HierarchySpec validate_hierarchy(std::vector<std::int64_t> layer_sizes) {
  return HierarchySpec(std::move(layer_sizes));
}

GroupProfile::GroupProfile(std::int64_t effective_size, Probability competence, Probability abstention)
    : size_(effective_size), competence_(competence), abstention_(abstention) {
  if (size_ > 0 && size_ % 2 == 0) {
    throw Error(Errc::EffectiveSizeEven, "group size " + std::to_string(size_) + " is even");
  }
  if (size_ < 3) throw Error(Errc::EffectiveSizeTooSmall, "group size " + std::to_string(size_) + " < 3");
}

HeteroSystem::HeteroSystem(std::vector<GroupProfile> groups) : groups_(std::move(groups)) {
  if (groups_.empty()) throw Error(Errc::EmptySpec, "system needs at least one group");
  if (groups_.size() % 2 == 0) {
    throw Error(Errc::EvenGroupSize, "group count " + std::to_string(groups_.size()) + " is even");
  }
}

std::int64_t HeteroSystem::electorate_size() const noexcept {
  return std::accumulate(groups_.begin(), groups_.end(), std::int64_t{0},
                         [](std::int64_t acc, const GroupProfile& g) { return acc + g.effective_size(); });
}

std::vector<Probability> HeteroSystem::direct_voters() const {
  std::vector<Probability> voters;
  voters.reserve(static_cast<std::size_t>(electorate_size()));
  for (const auto& g : groups_) voters.insert(voters.end(), static_cast<std::size_t>(g.effective_size()), g.competence());
  return voters;
}

void SweepResult::append(SweepRow row) {
  if (!rows_.empty() && !(row.epsilon > rows_.back().epsilon)) {
    throw Error(Errc::InvalidGrid, "sweep epsilon values must be strictly increasing");
  }
  rows_.push_back(row);
}

std::vector<Probability> linspace_grid(double start, double stop, int steps) {
  if (steps < 1) throw Error(Errc::InvalidGrid, "grid needs at least one point");
  if (steps == 1) return {Probability(start)};
  if (!(stop > start)) throw Error(Errc::InvalidGrid, "grid stop must exceed start");
  std::vector<Probability> grid;
  grid.reserve(static_cast<std::size_t>(steps));
  const double width = stop - start;
  for (int i = 0; i < steps; ++i) {
    grid.emplace_back(start + width * i / (steps - 1));
  }
  return grid;
}

}  // namespace hiervote
