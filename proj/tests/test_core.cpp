#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "hiervote/core.hpp"

using namespace hiervote;

namespace {
template <class F>
Errc error_code(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected hiervote::Error");
  return Errc::InvalidConfig;
}
}  // namespace

TEST_CASE("validate_hierarchy derives depth and electorate") {
  const auto a = validate_hierarchy({3, 3});
  CHECK(a.depth() == 2);
  CHECK(a.electorate_size() == 9);
  CHECK(a.is_uniform());

  const auto b = validate_hierarchy({5, 3});
  CHECK(b.depth() == 2);
  CHECK(b.electorate_size() == 15);
  CHECK_FALSE(b.is_uniform());

  CHECK(validate_hierarchy({1}).electorate_size() == 1);
}

TEST_CASE("validate_hierarchy rejects invalid layer lists") {
  CHECK(error_code([] { validate_hierarchy({4, 3}); }) == Errc::EvenGroupSize);
  CHECK(error_code([] { validate_hierarchy({}); }) == Errc::EmptySpec);
  CHECK(error_code([] { validate_hierarchy({3, 1}); }) == Errc::GroupTooSmall);
  CHECK(error_code([] { validate_hierarchy({1, 1}); }) == Errc::GroupTooSmall);
  CHECK(error_code([] { validate_hierarchy({-3}); }) == Errc::GroupTooSmall);
}

TEST_CASE("probabilities outside [0,1] are rejected, not clamped") {
  CHECK(error_code([] { Probability(1.0000001); }) == Errc::ProbabilityOutOfRange);
  CHECK(error_code([] { Probability(-0.1); }) == Errc::ProbabilityOutOfRange);
  CHECK(error_code([] { Probability(std::nan("")); }) == Errc::ProbabilityOutOfRange);
  CHECK(Probability(0.0).value() == 0.0);
  CHECK(Probability(1.0).value() == 1.0);
  CHECK(Probability(0.3).complement().value() == doctest::Approx(0.7));
}

TEST_CASE("group profiles and heterogeneous systems") {
  CHECK(error_code([] { GroupProfile(4, Probability(0.5)); }) == Errc::EffectiveSizeEven);
  CHECK(error_code([] { GroupProfile(1, Probability(0.5)); }) == Errc::EffectiveSizeTooSmall);

  const HeteroSystem mixed({GroupProfile(3, Probability(0.9), Probability(0.4)),
                           GroupProfile(3, Probability(0.9), Probability(0.4)),
                           GroupProfile(5, Probability(0.1), Probability(0.0))});
  CHECK(mixed.electorate_size() == 11);
  const auto voters = mixed.direct_voters();
  REQUIRE(voters.size() == 11);
  CHECK(std::count_if(voters.begin(), voters.end(), [](Probability p) { return p.value() == 0.9; }) == 6);

  CHECK(error_code([] {
          HeteroSystem({GroupProfile(3, Probability(0.5)), GroupProfile(3, Probability(0.5))});
        }) == Errc::EvenGroupSize);
  CHECK(error_code([] { HeteroSystem(std::vector<GroupProfile>{}); }) == Errc::EmptySpec);
}

TEST_CASE("sweep rows must have increasing epsilon") {
  SweepResult r;
  r.append(SweepRow{.epsilon = 0.1});
  r.append(SweepRow{.epsilon = 0.2});
  CHECK(error_code([&] { r.append(SweepRow{.epsilon = 0.2}); }) == Errc::InvalidGrid);
  CHECK(r.size() == 2);
}

TEST_CASE("linspace grid hits both endpoints exactly") {
  const auto g = linspace_grid(0.0, 1.0, 101);
  REQUIRE(g.size() == 101);
  CHECK(g.front().value() == 0.0);
  CHECK(g[50].value() == 0.5);
  CHECK(g.back().value() == 1.0);
  CHECK(error_code([] { linspace_grid(0.0, 1.0, 0); }) == Errc::InvalidGrid);
  CHECK(error_code([] { linspace_grid(0.0, 1.5, 3); }) == Errc::ProbabilityOutOfRange);
}
