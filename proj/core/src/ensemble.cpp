#include "cbome/ensemble.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <unordered_set>

namespace cbome {

Vec ensemble_mean(std::span<const Vec> points) {
  if (points.empty()) throw std::invalid_argument("empty ensemble");
  const size_t dim = points.front().size();
  Vec mean(dim, 0.0);
  for (const Vec& p : points) {
    if (p.size() != dim)
      throw std::invalid_argument("ensemble_mean: dimension mismatch");
    for (size_t c = 0; c < dim; ++c) mean[c] += p[c];
  }
  const double inv = 1.0 / static_cast<double>(points.size());
  for (double& c : mean) c *= inv;
  return mean;
}

double ensemble_variance(std::span<const Vec> points) {
  const Vec mean = ensemble_mean(points);
  double acc = 0.0;
  for (const Vec& p : points) {
    for (size_t c = 0; c < mean.size(); ++c) {
      const double diff = p[c] - mean[c];
      acc += diff * diff;
    }
  }
  return acc / static_cast<double>(points.size());
}

ParticleEnsemble::ParticleEnsemble(int dim) : dim_(dim) {
  if (dim < 1) throw std::invalid_argument("ensemble dimension must be >= 1");
}

void ParticleEnsemble::set_personal_best(int id, Vec best, double value) {
  personal_bests_[id] = std::move(best);
  pb_values_[id] = value;
}

int ParticleEnsemble::add_particle(Vec position, Vec personal_best,
                                   double pb_value) {
  if (static_cast<int>(position.size()) != dim_ ||
      static_cast<int>(personal_best.size()) != dim_)
    throw std::invalid_argument("add_particle: dimension mismatch");
  const int id = static_cast<int>(positions_.size());
  positions_.push_back(std::move(position));
  personal_bests_.push_back(std::move(personal_best));
  pb_values_.push_back(pb_value);
  active_.push_back(id);
  return id;
}

void ParticleEnsemble::retain(std::span<const int> ids) {
  std::unordered_set<int> current(active_.begin(), active_.end());
  for (int id : ids) {
    if (!current.count(id))
      throw std::invalid_argument("retain: id not in active set");
  }
  active_.assign(ids.begin(), ids.end());
  std::sort(active_.begin(), active_.end());
}

EnsembleStats compute_stats(const ParticleEnsemble& ensemble,
                            VarianceSource source) {
  const auto ids = ensemble.active_ids();
  if (ids.empty()) throw std::invalid_argument("empty ensemble");
  const int dim = ensemble.dim();
  const auto& point = [&](int id) -> const Vec& {
    return source == VarianceSource::kPositions ? ensemble.position(id)
                                                : ensemble.personal_best(id);
  };

  EnsembleStats stats;
  stats.mean.assign(dim, 0.0);
  for (int id : ids)
    for (int c = 0; c < dim; ++c) stats.mean[c] += point(id)[c];
  const double inv = 1.0 / static_cast<double>(ids.size());
  for (double& c : stats.mean) c *= inv;

  double var = 0.0;
  double msn = 0.0;
  for (int id : ids) {
    const Vec& p = point(id);
    for (int c = 0; c < dim; ++c) {
      const double diff = p[c] - stats.mean[c];
      var += diff * diff;
      msn += p[c] * p[c];
    }
  }
  stats.variance = var * inv;
  stats.mean_sq_norm = msn * inv;
  return stats;
}

ParticleEnsemble init_ensemble(const Objective& objective, int n,
                               InitSampler sampler, const RngStream& rng) {
  if (n < 1) throw std::invalid_argument("init_ensemble: n must be >= 1");
  if (objective.dim < 1)
    throw std::invalid_argument("init_ensemble: objective dimension");
  if (sampler == InitSampler::kUniformBox &&
      (static_cast<int>(objective.box_lo.size()) != objective.dim ||
       static_cast<int>(objective.box_hi.size()) != objective.dim))
    throw std::invalid_argument("init_ensemble: search box missing");

  ParticleEnsemble ensemble(objective.dim);
  Vec x(objective.dim);
  for (int i = 0; i < n; ++i) {
    Stream s = rng.stream(Draw::kInitPosition, static_cast<uint32_t>(i));
    if (sampler == InitSampler::kUniformBox) {
      for (int c = 0; c < objective.dim; ++c) {
        const double u = s.uniform();
        x[c] = objective.box_lo[c] + u * (objective.box_hi[c] - objective.box_lo[c]);
      }
    } else {
      s.fill_normal(x);
    }
    const double value = objective.eval(x);
    if (!std::isfinite(value))
      throw std::runtime_error("init_ensemble: non-finite objective at sample");
    ensemble.add_particle(x, x, value);
  }
  return ensemble;
}

}  // namespace cbome
