#pragma once

#include "cbome/ensemble.hpp"
#include "cbome/rng.hpp"

namespace cbome {

// Variance-triggered population shrinking. mu = 0 disables discarding.
struct SelectionParams {
  double mu = 0.0;
  int n_min = 1;
  VarianceSource variance_source = VarianceSource::kPositions;
};

struct ReductionDecision {
  int n_keep = 0;
  // Set when var_before <= 0; the reduction formula divides by it, so the
  // step is skipped and the population kept.
  bool degenerate_variance = false;
};

// N_keep = clamp(floor(n * (1 + mu * (var_after - var_before)/var_before)),
//                n_min, n).
ReductionDecision reduction_count(int n_current, double var_before,
                                  double var_after,
                                  const SelectionParams& params);

// Keeps a uniformly random n_keep-subset of the active particles; survivors
// are untouched. Every subset is equally likely.
void random_discard(ParticleEnsemble& ensemble, int n_keep, Stream& stream);

}  // namespace cbome
