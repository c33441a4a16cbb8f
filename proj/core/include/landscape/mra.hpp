#pragma once

#include <vector>

#include "landscape/entropy.hpp"
#include "landscape/rhc.hpp"
#include "landscape/statics.hpp"

namespace landscape {

// Smoothing strengths per level; index 0 is the identity (sigma 0) and
// strengths strictly increase with the level.
struct SmoothingSchedule {
  std::vector<double> sigmas;

  int levels() const { return static_cast<int>(sigmas.size()) - 1; }
  void validate() const;
};

// sigma(level) = 2^(level-1) samples, mirroring dyadic decomposition
// levels; level 0 is the identity.
SmoothingSchedule dyadic_schedule(int levels);

// Stacking-power objective on traces low-passed for the given level.
// Level 0 returns the original objective.
ObjectiveSpec smooth_objective(const StaticsProblem& problem, int level,
                               const SmoothingSchedule& schedule);
ObjectiveSpec smooth_objective(const StaticsProblem& problem, int level);

struct MrhcLevelResult {
  int level = 0;
  BasinTable table;
  EntropyReport report;
};

// Coarse-to-fine driver: a fresh uniform population of size K at the
// smoothest level, then each level's RHC is seeded with the previous
// level's distinct converged models.  Results are ordered from level L
// down to 0; the level-0 models are the solution set.
std::vector<MrhcLevelResult> run_mrhc(const StaticsProblem& problem,
                                      const SmoothingSchedule& schedule,
                                      const RhcConfig& config, int workers = 0);

struct LevelComplexity {
  int level = 0;
  double mean_ce = 0.0;
  double std_ce = 0.0;
  int repeats = 0;
  double mean_failures = 0.0;  // numerical-failure rate, reported separately
};

// Per-level mean/std of the entropy estimate over `repeats` independent
// fresh-population RHC analyses (levels analyzed independently, not
// chained).  Repeat r uses seed config.seed + r.
std::vector<LevelComplexity> level_complexity_experiment(
    const StaticsProblem& problem, const SmoothingSchedule& schedule,
    const RhcConfig& config, int repeats, int workers = 0);

}  // namespace landscape
