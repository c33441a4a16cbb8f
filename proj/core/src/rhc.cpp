#include "landscape/rhc.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <thread>

#include "landscape/rng.hpp"

namespace landscape {

void RhcConfig::validate() const {
  if (population < 1) throw std::invalid_argument("rhc: population must be >= 1");
  if (!(cluster_radius_rel > 0.0)) {
    throw std::invalid_argument("rhc: cluster_radius_rel must be > 0");
  }
  if (cluster_value_tol_rel < 0.0) {
    throw std::invalid_argument("rhc: cluster_value_tol_rel must be >= 0");
  }
  descent.validate();
}

std::vector<Model> sample_uniform(const Bounds& bounds, int count,
                                  std::uint64_t seed) {
  if (count < 1) throw std::invalid_argument("sample_uniform: count must be >= 1");
  bounds.validate();
  const std::size_t dim = bounds.dim();
  std::vector<Model> models(count);
  for (int j = 0; j < count; ++j) {
    SubstreamRng rng(seed, static_cast<std::uint64_t>(j));
    Model m(dim);
    for (std::size_t d = 0; d < dim; ++d) {
      m[d] = rng.uniform(bounds.lower[d], bounds.upper[d]);
    }
    models[j] = std::move(m);
  }
  return models;
}

std::vector<DescentResult> run_descents(const ObjectiveSpec& spec,
                                        const std::vector<Model>& starts,
                                        const DescentConfig& config,
                                        int workers) {
  if (workers <= 0) {
    workers = static_cast<int>(std::thread::hardware_concurrency());
    if (workers <= 0) workers = 1;
  }
  workers = std::min<int>(workers, static_cast<int>(starts.size()));

  std::vector<DescentResult> results(starts.size());
  if (workers <= 1) {
    for (std::size_t j = 0; j < starts.size(); ++j) {
      results[j] = descend(spec, starts[j], config);
    }
    return results;
  }

  std::atomic<std::size_t> next{0};
  auto work = [&]() {
    for (;;) {
      const std::size_t j = next.fetch_add(1, std::memory_order_relaxed);
      if (j >= starts.size()) return;
      results[j] = descend(spec, starts[j], config);
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (int w = 0; w < workers; ++w) pool.emplace_back(work);
  for (auto& t : pool) t.join();
  return results;
}

BasinTable cluster_minima(const std::vector<DescentResult>& results,
                          const ObjectiveSpec& spec, const RhcConfig& config) {
  config.validate();
  const auto& bounds = spec.bounds();
  const std::size_t dim = bounds.dim();

  struct Endpoint {
    Model point;
    double value;
  };
  std::vector<Endpoint> converged;
  converged.reserve(results.size());
  int failures = 0;
  for (const auto& r : results) {
    if (r.status == DescentStatus::converged) {
      Endpoint e{r.end, r.value};
      spec.canonicalize(e.point);
      converged.push_back(std::move(e));
    } else {
      ++failures;
    }
  }
  if (converged.empty()) {
    throw std::runtime_error(
        "cluster_minima: no converged descents (unusable landscape or configuration)");
  }

  // ascending value; ties broken by lexicographic coordinates for
  // deterministic ordering
  std::vector<std::size_t> order(converged.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (converged[a].value != converged[b].value) {
      return converged[a].value < converged[b].value;
    }
    return converged[a].point < converged[b].point;
  });

  double y_lo = converged[order.front()].value;
  double y_hi = converged[order.back()].value;
  const double value_tol =
      std::max(config.cluster_value_tol_rel * (y_hi - y_lo), 1e-12);

  std::vector<double> radius(dim);
  for (std::size_t d = 0; d < dim; ++d) {
    radius[d] = config.cluster_radius_rel * bounds.width(d);
  }

  BasinTable table;
  table.population = static_cast<int>(results.size());
  table.failures = failures;
  for (std::size_t idx : order) {
    const Endpoint& e = converged[idx];
    bool placed = false;
    for (auto& rec : table.minima) {
      if (std::abs(e.value - rec.value) > value_tol) continue;
      bool close = true;
      for (std::size_t d = 0; d < dim; ++d) {
        if (std::abs(e.point[d] - rec.representative[d]) > radius[d]) {
          close = false;
          break;
        }
      }
      if (close) {
        ++rec.count;
        placed = true;
        break;
      }
    }
    if (!placed) {
      table.minima.push_back(BasinRecord{e.point, e.value, 1});
    }
  }
  // ascending insertion order already sorts minima by value
  return table;
}

BasinTable run_rhc_from(const ObjectiveSpec& spec,
                        const std::vector<Model>& starts,
                        const RhcConfig& config, int workers) {
  const auto results = run_descents(spec, starts, config.descent, workers);
  return cluster_minima(results, spec, config);
}

BasinTable run_rhc(const ObjectiveSpec& spec, const RhcConfig& config,
                   int workers) {
  config.validate();
  const auto starts = sample_uniform(spec.bounds(), config.population, config.seed);
  return run_rhc_from(spec, starts, config, workers);
}

}  // namespace landscape
