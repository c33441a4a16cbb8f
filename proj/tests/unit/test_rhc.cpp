#include <doctest.h>

#include <cmath>
#include <numbers>

#include "landscape/rhc.hpp"
#include "landscape/rng.hpp"

using namespace landscape;

TEST_CASE("sample_uniform: determinism, bounds, moments") {
  const Bounds b = Bounds::cube(2, 0.0, 1.0);
  const auto models = sample_uniform(b, 100000, 31);
  double mean0 = 0.0, mean1 = 0.0;
  for (const auto& m : models) {
    CHECK(b.contains(m));
    mean0 += m[0];
    mean1 += m[1];
  }
  mean0 /= models.size();
  mean1 /= models.size();
  // 3-sigma CLT band for the mean of 1e5 uniforms
  CHECK(mean0 > 0.497);
  CHECK(mean0 < 0.503);
  CHECK(mean1 > 0.497);
  CHECK(mean1 < 0.503);

  const auto again = sample_uniform(b, 100000, 31);
  CHECK(models == again);

  const auto one = sample_uniform(b, 1, 7);
  REQUIRE(one.size() == 1);
  CHECK(b.contains(one[0]));
}

TEST_CASE("sample_uniform: model j does not depend on the count requested") {
  const Bounds b = Bounds::cube(3, -5.0, 5.0);
  const auto few = sample_uniform(b, 10, 77);
  const auto many = sample_uniform(b, 1000, 77);
  for (int j = 0; j < 10; ++j) CHECK(few[j] == many[j]);
}

TEST_CASE("unimodal quadratic: one cluster holding the whole population") {
  auto spec = ObjectiveSpec::quadratic(3, Bounds::cube(3, -10, 10));
  RhcConfig cfg;
  cfg.population = 100;
  cfg.seed = 5;
  const BasinTable t = run_rhc(spec, cfg);
  CHECK(t.n_hat() == 1);
  CHECK(t.minima[0].count == 100);
  CHECK(t.failures == 0);
  CHECK(t.population == 100);
}

TEST_CASE("cosine-equal 9 basins: counts follow the uniform multinomial") {
  auto spec = make_cosine_family(9, true, Bounds::cube(1, 0.0, 9.0));
  RhcConfig cfg;
  cfg.population = 900;
  cfg.seed = 12;
  const BasinTable t = run_rhc(spec, cfg);
  CHECK(t.failures == 0);
  // nine dominant basins with counts in the 99.9% multinomial band;
  // rare boundary overshoots may add stray singleton wells
  int dominant = 0, stray = 0;
  for (const auto& rec : t.minima) {
    if (rec.count >= 60) {
      ++dominant;
      CHECK(rec.count <= 140);
    } else {
      stray += rec.count;
    }
  }
  CHECK(dominant == 9);
  CHECK(stray <= 3);
}

TEST_CASE("griewank-9 is detected as multimodal") {
  auto spec = ObjectiveSpec::griewank(9);
  RhcConfig cfg;
  cfg.population = 200;  // plenty to hit two basins
  cfg.seed = 3;
  const BasinTable t = run_rhc(spec, cfg);
  CHECK(t.n_hat() >= 2);
}

TEST_CASE("cluster_minima: synthetic endpoints") {
  auto spec = ObjectiveSpec::quadratic(1, Bounds::cube(1, 0.0, 1.0));
  RhcConfig cfg;
  cfg.cluster_radius_rel = 0.01;

  auto mk = [](Model end, double value) {
    DescentResult r;
    r.start = end;
    r.end = std::move(end);
    r.value = value;
    r.status = DescentStatus::converged;
    return r;
  };

  SUBCASE("coincident endpoints merge") {
    std::vector<DescentResult> rs{mk({0.3}, 1.0), mk({0.3}, 1.0)};
    const BasinTable t = cluster_minima(rs, spec, cfg);
    CHECK(t.n_hat() == 1);
    CHECK(t.minima[0].count == 2);
  }
  SUBCASE("separated endpoints stay distinct") {
    std::vector<DescentResult> rs{mk({0.0}, 1.0), mk({0.5}, 1.0)};
    const BasinTable t = cluster_minima(rs, spec, cfg);
    CHECK(t.n_hat() == 2);
  }
  SUBCASE("9 noisy copies of 9 minima recover exactly 9 clusters") {
    std::vector<DescentResult> rs;
    SubstreamRng rng(4, 0);
    for (int basin = 0; basin < 9; ++basin) {
      const double center = 0.05 + 0.11 * basin;
      for (int i = 0; i < 9; ++i) {
        const double noise = 1e-5 * (2.0 * rng.next_double() - 1.0);
        rs.push_back(mk({center + noise}, static_cast<double>(basin)));
      }
    }
    const BasinTable t = cluster_minima(rs, spec, cfg);
    CHECK(t.n_hat() == 9);
    for (const auto& rec : t.minima) CHECK(rec.count == 9);
    // sorted ascending by value, representative attains the table minimum
    CHECK(t.minima.front().value == 0.0);
    for (int i = 1; i < t.n_hat(); ++i) {
      CHECK(t.minima[i].value >= t.minima[i - 1].value);
    }
  }
  SUBCASE("non-converged results are counted as failures, not clustered") {
    std::vector<DescentResult> rs{mk({0.5}, 1.0)};
    DescentResult bad = mk({0.9}, 0.5);
    bad.status = DescentStatus::max_iters;
    rs.push_back(bad);
    const BasinTable t = cluster_minima(rs, spec, cfg);
    CHECK(t.n_hat() == 1);
    CHECK(t.failures == 1);
    CHECK(t.population == 2);
    CHECK(t.converged() == 1);
  }
  SUBCASE("all failed: empty-table error") {
    DescentResult bad = mk({0.9}, 0.5);
    bad.status = DescentStatus::line_search_failed;
    std::vector<DescentResult> rs{bad};
    CHECK_THROWS_AS(cluster_minima(rs, spec, cfg), std::runtime_error);
  }
}

TEST_CASE("clustering idempotence: re-clustering representatives is stable") {
  auto spec = ObjectiveSpec::griewank(2);
  RhcConfig cfg;
  cfg.population = 300;
  cfg.seed = 9;
  const BasinTable t = run_rhc(spec, cfg);

  std::vector<DescentResult> reps;
  for (const auto& rec : t.minima) {
    DescentResult r;
    r.start = rec.representative;
    r.end = rec.representative;
    r.value = rec.value;
    r.status = DescentStatus::converged;
    reps.push_back(std::move(r));
  }
  const BasinTable t2 = cluster_minima(reps, spec, cfg);
  REQUIRE(t2.n_hat() == t.n_hat());
  for (int i = 0; i < t.n_hat(); ++i) {
    CHECK(t2.minima[i].value == t.minima[i].value);
    CHECK(t2.minima[i].representative == t.minima[i].representative);
    CHECK(t2.minima[i].count == 1);
  }
}

TEST_CASE("parallel invariance: worker count does not change the table") {
  auto spec = ObjectiveSpec::griewank(3);
  RhcConfig cfg;
  cfg.population = 120;
  cfg.seed = 21;
  const BasinTable a = run_rhc(spec, cfg, 1);
  const BasinTable b = run_rhc(spec, cfg, 4);
  REQUIRE(a.n_hat() == b.n_hat());
  CHECK(a.failures == b.failures);
  for (int i = 0; i < a.n_hat(); ++i) {
    CHECK(a.minima[i].value == b.minima[i].value);
    CHECK(a.minima[i].count == b.minima[i].count);
    CHECK(a.minima[i].representative == b.minima[i].representative);
  }
}

TEST_CASE("multinomial consistency on basins with known probabilities") {
  // piecewise cosine wells over [0,1] with widths = p; each cell is one
  // basin of attraction, all minima at value 0
  const std::vector<double> p{0.2, 0.3, 0.5};
  std::vector<double> edges{0.0, 0.2, 0.5, 1.0};
  auto well = [edges](const Model& m) {
    const double x = m[0];
    for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
      if (x >= edges[i] && x <= edges[i + 1]) {
        const double w = edges[i + 1] - edges[i];
        return 1.0 + std::cos(2.0 * std::numbers::pi * (x - edges[i]) / w);
      }
    }
    return 2.0 + x * x;  // outside [0,1]
  };
  auto spec = ObjectiveSpec::user(1, Bounds::cube(1, 0.0, 1.0), well);

  const int K = 400;
  const int repeats = 20;
  std::vector<double> x_mean(3, 0.0);
  for (int r = 0; r < repeats; ++r) {
    RhcConfig cfg;
    cfg.population = K;
    cfg.seed = 1000 + r;
    cfg.cluster_radius_rel = 0.05;
    const BasinTable t = run_rhc(spec, cfg);
    REQUIRE(t.failures == 0);
    for (const auto& rec : t.minima) {
      // identify the basin by the representative position
      for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
        if (rec.representative[0] > edges[i] && rec.representative[0] < edges[i + 1]) {
          x_mean[i] += static_cast<double>(rec.count) / K;
        }
      }
    }
  }
  for (auto& v : x_mean) v /= repeats;
  for (std::size_t i = 0; i < p.size(); ++i) {
    CHECK(std::abs(x_mean[i] - p[i]) <= 3.0 * std::sqrt(p[i] * (1.0 - p[i]) / K));
  }
}

TEST_CASE("config validation") {
  RhcConfig cfg;
  cfg.population = 0;
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
  RhcConfig cfg2;
  cfg2.cluster_radius_rel = 0.0;
  CHECK_THROWS_AS(cfg2.validate(), std::invalid_argument);
}
