#include "landscape/mra.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace landscape {

void SmoothingSchedule::validate() const {
  if (sigmas.empty()) throw std::invalid_argument("schedule: needs at least level 0");
  if (sigmas[0] != 0.0) throw std::invalid_argument("schedule: level 0 must be the identity");
  for (std::size_t i = 1; i < sigmas.size(); ++i) {
    if (!(sigmas[i] > sigmas[i - 1])) {
      throw std::invalid_argument("schedule: smoothing must strictly increase with level");
    }
  }
}

SmoothingSchedule dyadic_schedule(int levels) {
  if (levels < 0) throw std::invalid_argument("schedule: levels must be >= 0");
  SmoothingSchedule s;
  s.sigmas.resize(levels + 1);
  s.sigmas[0] = 0.0;
  for (int i = 1; i <= levels; ++i) {
    s.sigmas[i] = std::pow(2.0, i - 1);
  }
  return s;
}

ObjectiveSpec smooth_objective(const StaticsProblem& problem, int level,
                               const SmoothingSchedule& schedule) {
  schedule.validate();
  if (level < 0 || level > schedule.levels()) {
    throw std::invalid_argument("smooth_objective: level out of range");
  }
  if (level == 0) return objective_spec(problem);
  const double sigma = schedule.sigmas[level];
  auto smoothed = std::make_shared<const StaticsProblem>(smooth_problem(problem, sigma));
  return objective_spec(std::move(smoothed), ObjectiveKind::smoothed_statics,
                        {{"level", static_cast<double>(level)},
                         {"smoothing_sigma", sigma}});
}

ObjectiveSpec smooth_objective(const StaticsProblem& problem, int level) {
  const int levels = std::max(level, 1);
  return smooth_objective(problem, level, dyadic_schedule(levels));
}

std::vector<MrhcLevelResult> run_mrhc(const StaticsProblem& problem,
                                      const SmoothingSchedule& schedule,
                                      const RhcConfig& config, int workers) {
  schedule.validate();
  config.validate();
  const int L = schedule.levels();

  std::vector<MrhcLevelResult> out;
  out.reserve(L + 1);
  std::vector<Model> population =
      sample_uniform(objective_spec(problem).bounds(), config.population, config.seed);

  for (int level = L; level >= 0; --level) {
    const ObjectiveSpec spec = smooth_objective(problem, level, schedule);
    BasinTable table;
    try {
      table = run_rhc_from(spec, population, config, workers);
    } catch (const std::runtime_error&) {
      throw std::runtime_error("mrhc: no converged models at level " +
                               std::to_string(level));
    }
    MrhcLevelResult res;
    res.level = level;
    res.table = table;
    res.report = estimate_entropy(table);
    out.push_back(std::move(res));

    if (level > 0) {
      // chain: next level starts from this level's distinct models
      population.clear();
      population.reserve(table.minima.size());
      for (const auto& rec : table.minima) population.push_back(rec.representative);
    }
  }
  return out;
}

std::vector<LevelComplexity> level_complexity_experiment(
    const StaticsProblem& problem, const SmoothingSchedule& schedule,
    const RhcConfig& config, int repeats, int workers) {
  schedule.validate();
  config.validate();
  if (repeats < 2) throw std::invalid_argument("experiment: repeats must be >= 2");

  std::vector<LevelComplexity> out;
  for (int level = 0; level <= schedule.levels(); ++level) {
    const ObjectiveSpec spec = smooth_objective(problem, level, schedule);
    double sum = 0.0, sum_sq = 0.0, fail_sum = 0.0;
    for (int r = 0; r < repeats; ++r) {
      RhcConfig run_cfg = config;
      run_cfg.seed = config.seed + static_cast<std::uint64_t>(r);
      const BasinTable table = run_rhc(spec, run_cfg, workers);
      const double ce = estimate_entropy(table).ce_hat;
      sum += ce;
      sum_sq += ce * ce;
      fail_sum += table.failures;
    }
    LevelComplexity lc;
    lc.level = level;
    lc.repeats = repeats;
    lc.mean_ce = sum / repeats;
    const double var = (sum_sq - repeats * lc.mean_ce * lc.mean_ce) /
                       std::max(1, repeats - 1);
    lc.std_ce = std::sqrt(std::max(0.0, var));
    lc.mean_failures = fail_sum / repeats;
    out.push_back(lc);
  }
  return out;
}

}  // namespace landscape
