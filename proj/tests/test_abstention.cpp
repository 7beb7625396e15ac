#include <doctest.h>

#include <cmath>
#include <random>

#include "hiervote/abstention.hpp"
#include "hiervote/reliability.hpp"
#include "oracles.hpp"

using namespace hiervote;

namespace {
Probability P(double v) { return Probability(v); }
}  // namespace

TEST_CASE("uniform_abstention_tier examples") {
  // 3 correct: 0.125; 2 correct + 1 abstain: 3·0.25·0.2; 2 correct + 1 wrong: 3·0.25·0.3
  CHECK(uniform_abstention_tier(3, P(0.5), P(0.2)).value() == doctest::Approx(0.125 + 0.15 + 0.225).epsilon(1e-15));
  CHECK(uniform_abstention_tier(3, P(0.5), P(0.2)).value() == doctest::Approx(0.5).epsilon(1e-15));
  for (int k : {1, 3, 7, 21}) {
    for (double e : {0.1, 0.5, 0.8}) {
      CHECK(std::abs(uniform_abstention_tier(k, P(e), P(0.0)).value() - binomial_tail(k, P(e)).value()) < 1e-12);
    }
  }
  CHECK_THROWS_AS(uniform_abstention_tier(3, P(0.7), P(0.4)), Error);
  try {
    uniform_abstention_tier(3, P(0.7), P(0.4));
  } catch (const Error& e) {
    CHECK(e.code() == Errc::AlphaOutOfRange);
  }
  CHECK_THROWS_AS(uniform_abstention_tier(4, P(0.5), P(0.1)), Error);
}

TEST_CASE("uniform_abstention_tier against 3^k enumeration") {
  for (int k : {1, 3, 5, 7, 9}) {
    for (auto [s, a] : {std::pair{0.5, 0.2}, {0.3, 0.6}, {0.75, 0.25}, {0.05, 0.0}, {0.6, 0.1}}) {
      CHECK(std::abs(uniform_abstention_tier(k, P(s), P(a)).value() - oracle::enumerate_trinomial(k, s, a)) < 1e-13);
    }
  }
}

TEST_CASE("uniform_abstention_two_tier") {
  CHECK(std::abs(uniform_abstention_two_tier(3, 3, P(0.6), P(0.0)).value() - two_tier(3, 3, P(0.6)).value()) <
        1e-14);
  CHECK(uniform_abstention_two_tier(3, 3, P(0.5), P(0.2)).value() == doctest::Approx(0.5).epsilon(1e-14));

  const double with_abstention = uniform_abstention_two_tier(5, 3, P(0.6), P(0.1)).value();
  // each tier marginalises to a binomial in its success probability
  const double p1 = uniform_abstention_tier(5, P(0.6), P(0.1)).value();
  CHECK(std::abs(p1 - binomial_tail(5, P(0.6)).value()) < 1e-14);
  CHECK(std::abs(with_abstention - oracle::enumerate_trinomial(3, p1, 0.1)) < 1e-14);
  CHECK(with_abstention == doctest::Approx(0.761671224557568).epsilon(1e-12));

  // second tier reuses α, which must also fit under 1 - p1
  CHECK_THROWS_AS(uniform_abstention_two_tier(3, 3, P(0.6), P(0.4)), Error);
}

TEST_CASE("marginalisation identity over a randomised panel") {
  std::mt19937_64 rng(314);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  double worst = 0.0;
  for (int t = 0; t < 1000; ++t) {
    const std::int64_t k = 2 * static_cast<std::int64_t>(rng() % 11) + 1;  // 1..21
    const double e = u(rng);
    const double a = u(rng) * (1.0 - e);
    worst = std::max(worst, std::abs(uniform_abstention_tier(k, P(e), P(a)).value() - binomial_tail(k, P(e)).value()));
  }
  CHECK(worst < 1e-12);
}

TEST_CASE("large groups use the log-gamma trinomial path") {
  for (double a : {0.0, 0.1, 0.3}) {
    CHECK(uniform_abstention_tier(101, P(0.55), P(a)).value() ==
          doctest::Approx(binomial_tail(101, P(0.55)).value()).epsilon(1e-10));
  }
}

TEST_CASE("build_hetero_system effective sizes") {
  const std::vector<std::int64_t> sizes = {5, 5, 5};
  const auto eps = to_probabilities(std::vector<double>{0.9, 0.9, 0.1});

  const auto mixed = build_hetero_system(sizes, to_probabilities(std::vector<double>{0.4, 0.4, 0.0}), eps);
  CHECK(mixed.groups()[0].effective_size() == 3);
  CHECK(mixed.groups()[1].effective_size() == 3);
  CHECK(mixed.groups()[2].effective_size() == 5);
  CHECK(mixed.groups()[0].abstention().value() == 0.4);

  const auto none = build_hetero_system(sizes, to_probabilities(std::vector<double>{0, 0, 0}), eps);
  for (const auto& g : none.groups()) CHECK(g.effective_size() == 5);

  try {
    build_hetero_system(sizes, to_probabilities(std::vector<double>{0.2, 0, 0}), eps);
    FAIL("expected EffectiveSizeEven");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::EffectiveSizeEven);
  }
  try {
    build_hetero_system(sizes, to_probabilities(std::vector<double>{0.8, 0, 0}), eps);
    FAIL("expected EffectiveSizeTooSmall");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::EffectiveSizeTooSmall);
  }
  // α = 0.6 leaves 2 voters
  CHECK_THROWS_AS(build_hetero_system(sizes, to_probabilities(std::vector<double>{0.6, 0.6, 0.0}), eps), Error);
  CHECK_THROWS_AS(build_hetero_system(sizes, to_probabilities(std::vector<double>{0, 0}), eps), Error);
}
