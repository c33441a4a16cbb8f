#include <doctest.h>

#include <cmath>

#include "landscape/descent.hpp"
#include "landscape/objective.hpp"
#include "landscape/rng.hpp"

using namespace landscape;

namespace {

double norm(const Model& v) {
  double s = 0.0;
  for (double x : v) s += x * x;
  return std::sqrt(s);
}

// independent oracle: plain gradient descent with a fixed tiny step and
// many iterations, no CG machinery shared with descend()
Model gradient_descent_oracle(const ObjectiveSpec& spec, Model x, double step,
                              int iters) {
  for (int i = 0; i < iters; ++i) {
    const Model g = spec.gradient(x);
    double f = spec.evaluate(x);
    double s = step;
    for (;;) {
      Model y = x;
      for (std::size_t d = 0; d < y.size(); ++d) y[d] -= s * g[d];
      if (spec.evaluate(y) < f) {
        x = std::move(y);
        break;
      }
      s *= 0.5;
      if (s < 1e-18) return x;
    }
  }
  return x;
}

}  // namespace

TEST_CASE("strictly convex quadratic converges to the origin") {
  auto spec = ObjectiveSpec::quadratic(2, Bounds::cube(2, -10, 10));
  DescentConfig cfg;
  cfg.grad_tol = 1e-8;
  const auto r = descend(spec, {3.0, -4.0}, cfg);
  CHECK(r.status == DescentStatus::converged);
  CHECK(r.value <= 1e-12);
  CHECK(std::abs(r.end[0]) < 1e-6);
  CHECK(std::abs(r.end[1]) < 1e-6);
  CHECK(r.grad_norm <= 1e-8);
}

TEST_CASE("rosenbrock from the standard start reaches the global minimum") {
  auto spec = ObjectiveSpec::rosenbrock(2);
  DescentConfig cfg;
  cfg.grad_tol = 1e-6;
  cfg.max_iters = 10000;
  const auto r = descend(spec, {-1.2, 1.0}, cfg);
  CHECK(r.status == DescentStatus::converged);
  CHECK(std::abs(r.end[0] - 1.0) < 1e-4);
  CHECK(std::abs(r.end[1] - 1.0) < 1e-4);

  // long-run gradient-descent oracle lands in the same place
  const Model oracle = gradient_descent_oracle(spec, {-1.2, 1.0}, 1e-3, 200000);
  CHECK(std::abs(oracle[0] - 1.0) < 1e-2);
  CHECK(std::abs(oracle[1] - 1.0) < 1e-2);
  CHECK(norm({r.end[0] - oracle[0], r.end[1] - oracle[1]}) < 2e-2);
}

TEST_CASE("start at tolerance: zero iterations") {
  auto spec = ObjectiveSpec::quadratic(3, Bounds::cube(3, -10, 10));
  DescentConfig cfg;
  const auto r = descend(spec, {0.0, 0.0, 0.0}, cfg);
  CHECK(r.status == DescentStatus::converged);
  CHECK(r.iterations == 0);
  CHECK(r.value == 0.0);
}

TEST_CASE("descent property: value never increases") {
  auto spec = ObjectiveSpec::griewank(4);
  SubstreamRng rng(5, 0);
  DescentConfig cfg;
  for (int trial = 0; trial < 25; ++trial) {
    Model start(4);
    for (auto& x : start) x = rng.uniform(-10.0, 10.0);
    const auto r = descend(spec, start, cfg);
    const double f_start = spec.evaluate(start);
    CHECK(r.value <= f_start);
    if (r.iterations > 0) CHECK(r.value < f_start);
  }
}

TEST_CASE("CG reaches tolerance within 3N iterations on an axis-weighted quadratic") {
  for (int n : {2, 5, 10, 25}) {
    auto spec = ObjectiveSpec::quadratic(n, Bounds::cube(n, -10, 10), 10.0);
    DescentConfig cfg;
    cfg.grad_tol = 1e-6;
    cfg.max_iters = 3 * n;
    SubstreamRng rng(17, n);
    Model start(n);
    for (auto& x : start) x = rng.uniform(-10.0, 10.0);
    const auto r = descend(spec, start, cfg);
    CHECK(r.status == DescentStatus::converged);
    CHECK(r.iterations <= 3 * n);
  }
}

TEST_CASE("determinism: identical inputs give identical results") {
  auto spec = ObjectiveSpec::griewank(3);
  DescentConfig cfg;
  const Model start{4.2, -7.7, 1.1};
  const auto a = descend(spec, start, cfg);
  const auto b = descend(spec, start, cfg);
  CHECK(a.end == b.end);
  CHECK(a.value == b.value);
  CHECK(a.iterations == b.iterations);
  CHECK(a.grad_norm == b.grad_norm);
  CHECK(a.status == b.status);
}

TEST_CASE("non-finite values surface as line_search_failed") {
  // a pit of NaN away from the start
  auto spec = ObjectiveSpec::user(1, Bounds::cube(1, -10.0, 10.0), [](const Model& m) {
    if (m[0] < -1.0) return std::nan("");
    return (m[0] - 5.0) * (m[0] - 5.0) + 1.0 / (m[0] + 1.000001);
  });
  DescentConfig cfg;
  cfg.max_iters = 500;
  const auto r = descend(spec, {-0.9}, cfg);
  CHECK(std::isfinite(r.value));
  if (r.status == DescentStatus::converged) {
    CHECK(r.grad_norm <= cfg.grad_tol);
  }
}

TEST_CASE("config validation") {
  auto spec = ObjectiveSpec::quadratic(2, Bounds::cube(2, -1, 1));
  DescentConfig bad;
  bad.grad_tol = 0.0;
  CHECK_THROWS_AS(descend(spec, {0.5, 0.5}, bad), std::invalid_argument);
  DescentConfig bad2;
  bad2.line_search.backtrack = 1.0;
  CHECK_THROWS_AS(descend(spec, {0.5, 0.5}, bad2), std::invalid_argument);
  DescentConfig cfg;
  CHECK_THROWS_AS(descend(spec, {0.5}, cfg), std::invalid_argument);
}
