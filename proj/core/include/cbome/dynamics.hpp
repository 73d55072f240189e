#pragma once

#include <functional>
#include <span>

#include "cbome/consensus.hpp"
#include "cbome/ensemble.hpp"
#include "cbome/rng.hpp"

namespace cbome {

enum class NoiseMode { kAnisotropic, kIsotropic };

// Parameters of one position update:
//   x' = x + lambda*dt*(c - x) + sigma*sqrt(dt)*(c - x) (x) theta
// with theta ~ N(0, I_d) and (x) the component-wise product. dt defaults to
// 1 so lambda and sigma act directly as the drift and noise strengths.
// Isotropic mode uses sigma*sqrt(dt)*||c - x||_2 * theta instead.
struct StepParams {
  double lambda = 0.01;
  double sigma = 0.8;
  double dt = 1.0;
  NoiseMode noise_mode = NoiseMode::kAnisotropic;
  // One theta draw shared by every particle in the step; used by the
  // selection stability analysis.
  bool shared_noise = false;
};

// Supplies the normal draw for a given particle id. Production code wires
// this to the counter-based RNG; tests can pin or record draws.
using NoiseFn = std::function<void(int particle_id, std::span<double> out)>;

// Standard noise source for iteration k: independent per-particle streams,
// or a single shared draw per step when params.shared_noise is set.
NoiseFn make_step_noise(const RngStream& rng, uint32_t iteration,
                        const StepParams& params, int dim);

// Moves every active position toward/around the consensus point. Personal
// bests are left untouched.
void cbo_me_position_step(ParticleEnsemble& ensemble,
                          const ConsensusPoint& consensus,
                          const StepParams& params, const NoiseFn& noise);

// Strict-improvement personal best update: y_i <- x_i iff F(x_i) < F(y_i).
// Exactly one fresh objective evaluation per active particle; returns the
// evaluation count.
int update_personal_bests_exact(ParticleEnsemble& ensemble,
                                const Objective& objective);

// Smooth personal-best update used in analysis mode:
//   y' = y + (nu*dt/2) * (x - y) * S_beta(x, y)
//   S_beta(x, y) = 2 * psi(beta * (F(y) - F(x)))
// with psi(s) = 0 for s <= 0 and s^2/(1+s^2) for s > 0.
struct SmoothBestParams {
  double nu = 1.0;
  double beta = 30.0;
};

// The transition profile psi: non-decreasing, C^1, range [0,1), zero on
// s <= 0, Lipschitz constant < 1.
double smooth_switch(double s);

// Throws "overshoot: reduce nu*dt" if the interpolation fraction
// (nu*dt/2)*S_beta would exceed 1 for some particle. Fresh objective
// evaluations: one per active particle for S_beta plus one at each moved
// personal best. Returns the evaluation count.
int update_personal_bests_smooth(ParticleEnsemble& ensemble,
                                 const Objective& objective,
                                 const SmoothBestParams& params, double dt);

// Classical CBO step without memory: the consensus is computed over the
// current positions. `position_values` must hold F at the active positions
// in active-id order. Returns the consensus point used.
ConsensusPoint cbo_plain_position_step(ParticleEnsemble& ensemble,
                                       std::span<const double> position_values,
                                       const StepParams& params, double alpha,
                                       const NoiseFn& noise);

// Convenience overload that evaluates the objective internally.
ConsensusPoint cbo_plain_position_step(ParticleEnsemble& ensemble,
                                       const Objective& objective,
                                       const StepParams& params, double alpha,
                                       const NoiseFn& noise);

// Gaussian kick x_i <- x_i + sigma * theta_i applied to all active
// positions (restart heuristic for plain CBO).
void perturb_restart(ParticleEnsemble& ensemble, double sigma,
                     const NoiseFn& noise);

// One mini-batched CBO-ME iteration: active ids are shuffled, partitioned
// into consecutive batches of batch_size (last one possibly smaller), each
// batch is driven by the consensus of its own members' personal bests, and
// personal bests are refreshed afterwards. Returns the number of fresh
// objective evaluations.
int minibatch_step(ParticleEnsemble& ensemble, const Objective& objective,
                   const StepParams& params, double alpha, int batch_size,
                   const RngStream& rng, uint32_t iteration);

}  // namespace cbome
