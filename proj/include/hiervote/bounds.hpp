#pragma once

#include <span>

#include "hiervote/core.hpp"

namespace hiervote {

// Hoeffding lower bounds: a heterogeneous system against the homogeneous one at the
// mean competence. The bound is returned even when its validity condition fails.
struct HoeffdingBound {
  Probability bound;
  bool valid = false;
  double mean = 0.0;
};

/// Mean group-win probability p̄₁ over l groups; valid iff p̄₁ >= 1/2 + 1/(2l).
HoeffdingBound hoeffding_hier_bound(const HeteroSystem& system);

/// Mean voter competence over N_d voters; valid iff ε̄ >= 1/2 + 1/(2 N_d).
HoeffdingBound hoeffding_direct_bound(std::span<const Probability> voter_probs);

/// Shared core: binomial tail of the mean over an odd-sized collection.
HoeffdingBound hoeffding_bound(std::span<const Probability> probs);

}  // namespace hiervote
