#include "cbome/consensus.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace cbome {

namespace {

ConsensusPoint weighted_point(std::span<const Vec> points,
                              std::span<const double> values, double alpha,
                              std::vector<int> ids) {
  if (points.empty()) throw std::invalid_argument("empty ensemble");
  if (points.size() != values.size())
    throw std::invalid_argument("consensus_point: size mismatch");
  if (!std::isfinite(alpha) || alpha < 0.0)
    throw std::invalid_argument("consensus_point: alpha must be finite, >= 0");

  double min_value = std::numeric_limits<double>::infinity();
  for (double v : values) {
    if (!std::isfinite(v)) throw std::invalid_argument("non-finite objective");
    min_value = std::min(min_value, v);
  }

  const size_t dim = points.front().size();
  ConsensusPoint result;
  result.effective_alpha = alpha;
  result.participant_ids = std::move(ids);
  result.point.assign(dim, 0.0);

  double total_weight = 0.0;
  for (size_t i = 0; i < points.size(); ++i) {
    if (points[i].size() != dim)
      throw std::invalid_argument("consensus_point: dimension mismatch");
    const double w = std::exp(-alpha * (values[i] - min_value));
    total_weight += w;
    for (size_t c = 0; c < dim; ++c) result.point[c] += w * points[i][c];
  }
  const double inv = 1.0 / total_weight;
  for (double& c : result.point) c *= inv;
  return result;
}

}  // namespace

ConsensusPoint consensus_point(std::span<const Vec> personal_bests,
                               std::span<const double> values, double alpha) {
  std::vector<int> ids(personal_bests.size());
  std::iota(ids.begin(), ids.end(), 0);
  return weighted_point(personal_bests, values, alpha, std::move(ids));
}

ConsensusPoint consensus_subset(const ParticleEnsemble& ensemble,
                                std::span<const int> ids, double alpha) {
  if (ids.empty()) throw std::invalid_argument("empty ensemble");
  const auto active = ensemble.active_ids();
  std::vector<Vec> points;
  std::vector<double> values;
  points.reserve(ids.size());
  values.reserve(ids.size());
  for (int id : ids) {
    if (!std::binary_search(active.begin(), active.end(), id))
      throw std::invalid_argument("consensus_subset: id not active");
    points.push_back(ensemble.personal_best(id));
    values.push_back(ensemble.pb_value(id));
  }
  return weighted_point(points, values, alpha,
                        std::vector<int>(ids.begin(), ids.end()));
}

}  // namespace cbome
