#pragma once

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "cbome/rng.hpp"

namespace cbome {

using Vec = std::vector<double>;

// A named objective with its search box and, when known, the global optimum.
// eval must be pure and safe to call from several threads at once.
struct Objective {
  std::string name;
  int dim = 0;
  std::function<double(const Vec&)> eval;
  Vec box_lo;
  Vec box_hi;
  std::optional<Vec> known_argmin;
  std::optional<double> known_min;

  double operator()(const Vec& x) const { return eval(x); }
};

// Coordinate-wise arithmetic mean. Throws on an empty list.
Vec ensemble_mean(std::span<const Vec> points);

// var(z) = (1/|J|) sum_j ||z_j - m(z)||_2^2
double ensemble_variance(std::span<const Vec> points);

enum class InitSampler { kUniformBox, kStandardNormal };

// Positions, personal bests and cached best values for the active particles.
// Storage is indexed by particle id; the active set only ever shrinks.
class ParticleEnsemble {
 public:
  explicit ParticleEnsemble(int dim);

  int dim() const { return dim_; }
  std::span<const int> active_ids() const { return active_; }
  int active_count() const { return static_cast<int>(active_.size()); }

  Vec& position(int id) { return positions_[id]; }
  const Vec& position(int id) const { return positions_[id]; }
  const Vec& personal_best(int id) const { return personal_bests_[id]; }
  double pb_value(int id) const { return pb_values_[id]; }

  // Replaces particle id's personal best and its cached objective value.
  void set_personal_best(int id, Vec best, double value);

  // Appends a particle and returns its id. Used by init_ensemble and by
  // tests that need hand-built states.
  int add_particle(Vec position, Vec personal_best, double pb_value);

  // Shrinks the active set to `ids` (must be a subset of the current one).
  void retain(std::span<const int> ids);

 private:
  int dim_;
  std::vector<int> active_;
  std::vector<Vec> positions_;
  std::vector<Vec> personal_bests_;
  std::vector<double> pb_values_;
};

enum class VarianceSource { kPositions, kPersonalBests };

struct EnsembleStats {
  Vec mean;
  double variance = 0.0;
  double mean_sq_norm = 0.0;  // (1/N) sum ||z_i||_2^2
};

EnsembleStats compute_stats(const ParticleEnsemble& ensemble,
                            VarianceSource source);

// Samples n particles i.i.d. (uniform over the objective's box or standard
// normal), sets personal bests to the sampled positions and caches their
// objective values.
ParticleEnsemble init_ensemble(const Objective& objective, int n,
                               InitSampler sampler, const RngStream& rng);

}  // namespace cbome
