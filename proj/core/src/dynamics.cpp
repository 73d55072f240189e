#include "cbome/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <numeric>
#include <stdexcept>
#include <vector>

namespace cbome {

NoiseFn make_step_noise(const RngStream& rng, uint32_t iteration,
                        const StepParams& params, int dim) {
  if (params.shared_noise) {
    auto shared = std::make_shared<Vec>(dim);
    Stream s = rng.stream(Draw::kSharedStepNoise, 0, iteration);
    s.fill_normal(*shared);
    return [shared](int, std::span<double> out) {
      std::copy(shared->begin(), shared->end(), out.begin());
    };
  }
  return [rng, iteration](int particle_id, std::span<double> out) {
    Stream s = rng.stream(Draw::kStepNoise, static_cast<uint32_t>(particle_id),
                          iteration);
    s.fill_normal(out);
  };
}

namespace {

void displace_particle(Vec& x, const Vec& target, const StepParams& params,
                       const Vec& theta) {
  const int dim = static_cast<int>(x.size());
  const double drift = params.lambda * params.dt;
  const double diffusion = params.sigma * std::sqrt(params.dt);
  if (params.noise_mode == NoiseMode::kAnisotropic) {
    for (int c = 0; c < dim; ++c) {
      const double gap = target[c] - x[c];
      x[c] += drift * gap + diffusion * gap * theta[c];
    }
  } else {
    double norm_sq = 0.0;
    for (int c = 0; c < dim; ++c) {
      const double gap = target[c] - x[c];
      norm_sq += gap * gap;
    }
    const double scale = diffusion * std::sqrt(norm_sq);
    for (int c = 0; c < dim; ++c)
      x[c] += drift * (target[c] - x[c]) + scale * theta[c];
  }
}

void check_finite_target(const Vec& target) {
  for (double c : target) {
    if (!std::isfinite(c))
      throw std::invalid_argument("position step: non-finite consensus");
  }
}

}  // namespace

void cbo_me_position_step(ParticleEnsemble& ensemble,
                          const ConsensusPoint& consensus,
                          const StepParams& params, const NoiseFn& noise) {
  if (static_cast<int>(consensus.point.size()) != ensemble.dim())
    throw std::invalid_argument("position step: dimension mismatch");
  check_finite_target(consensus.point);
  Vec theta(ensemble.dim());
  for (int id : ensemble.active_ids()) {
    noise(id, theta);
    displace_particle(ensemble.position(id), consensus.point, params, theta);
  }
}

int update_personal_bests_exact(ParticleEnsemble& ensemble,
                                const Objective& objective) {
  int evaluations = 0;
  for (int id : ensemble.active_ids()) {
    const Vec& x = ensemble.position(id);
    const double value = objective.eval(x);
    ++evaluations;
    if (!std::isfinite(value))
      throw std::runtime_error("non-finite objective at particle " +
                               std::to_string(id));
    if (value < ensemble.pb_value(id)) ensemble.set_personal_best(id, x, value);
  }
  return evaluations;
}

double smooth_switch(double s) {
  if (s <= 0.0) return 0.0;
  return s * s / (1.0 + s * s);
}

int update_personal_bests_smooth(ParticleEnsemble& ensemble,
                                 const Objective& objective,
                                 const SmoothBestParams& params, double dt) {
  const int dim = ensemble.dim();
  int evaluations = 0;
  for (int id : ensemble.active_ids()) {
    const Vec& x = ensemble.position(id);
    const Vec& y = ensemble.personal_best(id);
    const double fx = objective.eval(x);
    ++evaluations;
    if (!std::isfinite(fx))
      throw std::runtime_error("non-finite objective at particle " +
                               std::to_string(id));
    const double s_beta =
        2.0 * smooth_switch(params.beta * (ensemble.pb_value(id) - fx));
    const double fraction = 0.5 * params.nu * dt * s_beta;
    if (fraction > 1.0 + 1e-12)
      throw std::invalid_argument("overshoot: reduce nu*dt");
    if (fraction == 0.0) continue;
    Vec moved(dim);
    for (int c = 0; c < dim; ++c) moved[c] = y[c] + fraction * (x[c] - y[c]);
    const double value = objective.eval(moved);
    ++evaluations;
    ensemble.set_personal_best(id, std::move(moved), value);
  }
  return evaluations;
}

ConsensusPoint cbo_plain_position_step(ParticleEnsemble& ensemble,
                                       std::span<const double> position_values,
                                       const StepParams& params, double alpha,
                                       const NoiseFn& noise) {
  const auto ids = ensemble.active_ids();
  if (position_values.size() != ids.size())
    throw std::invalid_argument("plain step: value count mismatch");
  std::vector<Vec> positions;
  positions.reserve(ids.size());
  for (int id : ids) positions.push_back(ensemble.position(id));
  ConsensusPoint consensus = consensus_point(positions, position_values, alpha);
  consensus.participant_ids.assign(ids.begin(), ids.end());
  check_finite_target(consensus.point);
  Vec theta(ensemble.dim());
  for (int id : ids) {
    noise(id, theta);
    displace_particle(ensemble.position(id), consensus.point, params, theta);
  }
  return consensus;
}

ConsensusPoint cbo_plain_position_step(ParticleEnsemble& ensemble,
                                       const Objective& objective,
                                       const StepParams& params, double alpha,
                                       const NoiseFn& noise) {
  std::vector<double> values;
  values.reserve(ensemble.active_count());
  for (int id : ensemble.active_ids())
    values.push_back(objective.eval(ensemble.position(id)));
  return cbo_plain_position_step(ensemble, values, params, alpha, noise);
}

void perturb_restart(ParticleEnsemble& ensemble, double sigma,
                     const NoiseFn& noise) {
  const int dim = ensemble.dim();
  Vec theta(dim);
  for (int id : ensemble.active_ids()) {
    noise(id, theta);
    Vec& x = ensemble.position(id);
    for (int c = 0; c < dim; ++c) x[c] += sigma * theta[c];
  }
}

int minibatch_step(ParticleEnsemble& ensemble, const Objective& objective,
                   const StepParams& params, double alpha, int batch_size,
                   const RngStream& rng, uint32_t iteration) {
  if (batch_size < 1)
    throw std::invalid_argument("minibatch_step: batch_size must be >= 1");
  const auto active = ensemble.active_ids();
  std::vector<int> order(active.begin(), active.end());
  Stream shuffle = rng.stream(Draw::kBatchShuffle, 0, iteration);
  for (size_t i = order.size(); i > 1; --i) {
    const size_t j = shuffle.below(i);
    std::swap(order[i - 1], order[j]);
  }

  const NoiseFn noise = make_step_noise(rng, iteration, params, ensemble.dim());
  Vec theta(ensemble.dim());
  for (size_t start = 0; start < order.size();
       start += static_cast<size_t>(batch_size)) {
    const size_t stop =
        std::min(order.size(), start + static_cast<size_t>(batch_size));
    const std::span<const int> batch(order.data() + start, stop - start);
    const ConsensusPoint consensus = consensus_subset(ensemble, batch, alpha);
    for (int id : batch) {
      noise(id, theta);
      displace_particle(ensemble.position(id), consensus.point, params, theta);
    }
  }
  return update_personal_bests_exact(ensemble, objective);
}

}  // namespace cbome
