#include "cbome/selection.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace cbome {

ReductionDecision reduction_count(int n_current, double var_before,
                                  double var_after,
                                  const SelectionParams& params) {
  if (n_current < 1)
    throw std::invalid_argument("reduction_count: n_current must be >= 1");
  if (params.mu < 0.0 || params.mu > 1.0)
    throw std::invalid_argument("reduction_count: mu must lie in [0,1]");
  if (var_before <= 0.0) return {n_current, true};

  const double scaled =
      n_current * (1.0 + params.mu * (var_after - var_before) / var_before);
  // floor with a small tolerance so that values that are integers in exact
  // arithmetic (e.g. 200 * 0.95) do not land one below.
  const int raw = static_cast<int>(std::floor(scaled + 1e-9));
  const int n_keep = std::min(std::max(raw, params.n_min), n_current);
  return {n_keep, false};
}

void random_discard(ParticleEnsemble& ensemble, int n_keep, Stream& stream) {
  const auto active = ensemble.active_ids();
  const int n = static_cast<int>(active.size());
  if (n_keep < 1) throw std::invalid_argument("random_discard: n_keep < 1");
  if (n_keep > n)
    throw std::invalid_argument("random_discard: n_keep exceeds active count");
  if (n_keep == n) return;

  // Partial Fisher-Yates: the first n_keep slots end up a uniform subset.
  std::vector<int> pool(active.begin(), active.end());
  for (int i = 0; i < n_keep; ++i) {
    const int j = i + static_cast<int>(stream.below(n - i));
    std::swap(pool[i], pool[j]);
  }
  pool.resize(n_keep);
  ensemble.retain(pool);
}

}  // namespace cbome
