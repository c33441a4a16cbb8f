#pragma once

#include <cstdint>
#include <vector>

#include "landscape/descent.hpp"
#include "landscape/objective.hpp"
#include "landscape/types.hpp"

namespace landscape {

struct RhcConfig {
  int population = 1000;  // K
  std::uint64_t seed = 0;
  DescentConfig descent{};
  // clustering thresholds, relative to bound width / value spread
  double cluster_radius_rel = 1e-3;
  double cluster_value_tol_rel = 1e-6;

  void validate() const;
};

struct BasinRecord {
  Model representative;  // lowest-value member of the cluster
  double value = 0.0;    // y_i
  int count = 0;         // k_i
};

// Distinct minima found by a multistart run, sorted by ascending value.
// population = K; failures counts descents that did not converge and are
// therefore excluded from the cluster counts: sum(count) + failures == K.
struct BasinTable {
  std::vector<BasinRecord> minima;
  int population = 0;
  int failures = 0;

  int converged() const { return population - failures; }
  int n_hat() const { return static_cast<int>(minima.size()); }
};

// `count` models with each coordinate i.i.d. uniform on its bound
// interval.  Model j is drawn from counter substream j of `seed`, so the
// sequence is identical no matter how work is scheduled.
std::vector<Model> sample_uniform(const Bounds& bounds, int count,
                                  std::uint64_t seed);

// Greedy clustering of the converged endpoints in ascending order of
// value: an endpoint joins the first cluster whose representative is
// within cluster_radius_rel * width(d) in every dimension d and within
// the value tolerance; otherwise it founds a new cluster.  Endpoints are
// canonicalized through the spec before comparison.
BasinTable cluster_minima(const std::vector<DescentResult>& results,
                          const ObjectiveSpec& spec, const RhcConfig& config);

// Algorithm: sample K uniform starts, descend each (in parallel),
// cluster the converged endpoints.  workers = 0 picks the hardware
// concurrency; the result does not depend on it.
BasinTable run_rhc(const ObjectiveSpec& spec, const RhcConfig& config,
                   int workers = 0);

// Same pipeline from an explicit list of starts (used by the
// multi-resolution driver to chain populations between levels).
BasinTable run_rhc_from(const ObjectiveSpec& spec,
                        const std::vector<Model>& starts,
                        const RhcConfig& config, int workers = 0);

// Descents for an explicit start list, in start order.
std::vector<DescentResult> run_descents(const ObjectiveSpec& spec,
                                        const std::vector<Model>& starts,
                                        const DescentConfig& config,
                                        int workers = 0);

}  // namespace landscape
