#include "hiervote/poisson_binomial.hpp"

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <cmath>

#include "hiervote/reliability.hpp"

namespace hiervote {

namespace {

using WideFloat = boost::multiprecision::cpp_bin_float_100;

void require_finite_nonnegative(std::span<const double> x) {
  for (double v : x) {
    if (!std::isfinite(v) || v < 0.0) {
      throw Error(Errc::NonFiniteInput, "symmetric polynomial input must be finite and >= 0");
    }
  }
}

// Voters with p = 1 always succeed; dropping them shifts every count by one.
struct Reduced {
  std::vector<Probability> uncertain;
  std::size_t certain = 0;
};

Reduced split_certain(std::span<const Probability> probs) {
  Reduced r;
  for (Probability p : probs) {
    if (p.value() == 1.0) {
      ++r.certain;
    } else {
      r.uncertain.push_back(p);
    }
  }
  return r;
}

std::vector<double> shifted(std::vector<double> pmf, std::size_t shift) {
  pmf.insert(pmf.begin(), shift, 0.0);
  return pmf;
}

}  // namespace

std::vector<double> elementary_symmetric_newton(std::span<const double> x) {
  require_finite_nonnegative(x);
  const std::size_t n = x.size();
  std::vector<WideFloat> sigma(n + 1, WideFloat(0));
  for (double v : x) {
    WideFloat term(v);
    const WideFloat base(v);
    for (std::size_t s = 1; s <= n; ++s) {
      sigma[s] += term;
      term *= base;
    }
  }
  std::vector<WideFloat> c(n + 1, WideFloat(0));
  c[0] = 1;
  for (std::size_t s = 1; s <= n; ++s) {
    WideFloat acc(0);
    for (std::size_t k = 0; k < s; ++k) {
      const WideFloat t = c[s - 1 - k] * sigma[k + 1];
      if (k % 2 == 0) {
        acc += t;
      } else {
        acc -= t;
      }
    }
    c[s] = acc / s;
  }
  std::vector<double> out(n + 1);
  for (std::size_t s = 0; s <= n; ++s) out[s] = c[s].convert_to<double>();
  return out;
}

std::vector<double> elementary_symmetric_convolution(std::span<const double> x) {
  require_finite_nonnegative(x);
  std::vector<double> e(x.size() + 1, 0.0);
  e[0] = 1.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    for (std::size_t j = i + 1; j >= 1; --j) e[j] += x[i] * e[j - 1];
  }
  return e;
}

SymmetricPolyTable symmetric_poly_table(std::span<const Probability> probs) {
  SymmetricPolyTable table;
  for (Probability p : probs) {
    if (p.value() == 1.0) throw Error(Errc::NonFiniteInput, "ratio p/q diverges at p = 1");
    table.ratios.push_back(p.value() / (1.0 - p.value()));
  }
  table.elementary = elementary_symmetric_convolution(table.ratios);
  const std::size_t n = table.ratios.size();
  table.power_sums.assign(n, 0.0);
  for (double v : table.ratios) {
    double term = v;
    for (std::size_t s = 0; s < n; ++s) {
      table.power_sums[s] += term;
      term *= v;
    }
  }
  return table;
}

PoissonBinomial::PoissonBinomial(std::vector<Probability> success_probs) : probs_(std::move(success_probs)) {
  // e'_j = e_j + x e_{j-1}, rescaled by q at every step, i.e. pmf'[s] = q pmf[s] + p pmf[s-1].
  // Same recurrence as the elementary-polynomial convolution with ∏q folded in;
  // keeps every intermediate in [0,1] so nothing overflows.
  const auto reduced = split_certain(probs_);
  std::vector<double> pmf(reduced.uncertain.size() + 1, 0.0);
  pmf[0] = 1.0;
  for (std::size_t i = 0; i < reduced.uncertain.size(); ++i) {
    const double p = reduced.uncertain[i].value();
    const double q = 1.0 - p;
    for (std::size_t s = i + 1; s >= 1; --s) pmf[s] = q * pmf[s] + p * pmf[s - 1];
    pmf[0] *= q;
  }
  pmf_ = shifted(std::move(pmf), reduced.certain);
}

Probability PoissonBinomial::upper_tail(std::int64_t threshold) const {
  const auto n = static_cast<std::int64_t>(pmf_.size()) - 1;
  if (threshold <= 0) return Probability::unchecked(1.0);
  if (threshold > n) return Probability::unchecked(0.0);
  double upper = 0.0;
  double lower = 0.0;
  for (std::int64_t s = 0; s <= n; ++s) (s >= threshold ? upper : lower) += pmf_[static_cast<std::size_t>(s)];
  if (upper <= lower) return Probability::unchecked(upper);
  return Probability::unchecked(1.0 - lower);
}

PoissonBinomial poisson_binomial_pmf(std::span<const Probability> probs) {
  return PoissonBinomial(std::vector<Probability>(probs.begin(), probs.end()));
}

std::vector<double> poisson_binomial_pmf_newton(std::span<const Probability> probs) {
  const auto reduced = split_certain(probs);
  std::vector<double> ratios;
  double scale = 1.0;
  for (Probability p : reduced.uncertain) {
    ratios.push_back(p.value() / (1.0 - p.value()));
    scale *= 1.0 - p.value();
  }
  auto c = elementary_symmetric_newton(ratios);
  for (double& v : c) v *= scale;
  return shifted(std::move(c), reduced.certain);
}

Probability majority_prob(std::span<const Probability> probs) {
  const auto n = static_cast<std::int64_t>(probs.size());
  require_odd_count(n, "voter count");
  return poisson_binomial_pmf(probs).upper_tail((n + 1) / 2);
}

std::vector<Probability> group_win_probs(const HeteroSystem& system) {
  std::vector<Probability> wins;
  wins.reserve(system.group_count());
  for (const auto& g : system.groups()) wins.push_back(binomial_tail(g.effective_size(), g.competence()));
  return wins;
}

Probability hetero_two_tier(const HeteroSystem& system) {
  return majority_prob(group_win_probs(system));
}

Probability hetero_direct(std::span<const Probability> voter_probs) {
  return majority_prob(voter_probs);
}

}  // namespace hiervote
