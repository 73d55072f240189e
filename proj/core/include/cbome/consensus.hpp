#pragma once

#include <span>
#include <vector>

#include "cbome/ensemble.hpp"

namespace cbome {

// Gibbs-weighted average of personal bests: weight_i proportional to
// exp(-alpha * F(y_i)).
struct ConsensusPoint {
  Vec point;
  double effective_alpha = 0.0;
  std::vector<int> participant_ids;
};

// Weights are computed as exp(-alpha * (F_i - min F)) / sum(...). The shift
// by min F leaves the weights unchanged mathematically and keeps the
// exponentials bounded for large alpha. Summation is plain left-to-right in
// input order.
ConsensusPoint consensus_point(std::span<const Vec> personal_bests,
                               std::span<const double> values, double alpha);

// Consensus restricted to a subset of active particles (mini-batch use).
ConsensusPoint consensus_subset(const ParticleEnsemble& ensemble,
                                std::span<const int> ids, double alpha);

}  // namespace cbome
