#pragma once

#include "landscape/objective.hpp"
#include "landscape/types.hpp"

namespace landscape {

struct LineSearchParams {
  double initial_step = 1.0;
  double sufficient_decrease = 1e-4;  // Armijo constant
  double backtrack = 0.5;
  int max_backtracks = 40;
  // step-length cap as a multiple of the smallest bound width; keeps
  // iterates from vaulting across the whole model space in one move
  double max_step_rel = 1.0;
};

// Stopping and restart policy for one local descent.  Zero means
// "derive from the dimension": max_iters = 200*N, restart_interval = N.
struct DescentConfig {
  double grad_tol = 1e-6;
  int max_iters = 0;
  LineSearchParams line_search{};
  int restart_interval = 0;

  void validate() const;
  int effective_max_iters(int dim) const;
  int effective_restart(int dim) const;
};

enum class DescentStatus { converged, max_iters, line_search_failed };

std::string to_string(DescentStatus s);

struct DescentResult {
  Model start;
  Model end;
  double value = 0.0;
  double grad_norm = 0.0;
  int iterations = 0;
  DescentStatus status = DescentStatus::converged;
};

// Polak-Ribiere nonlinear conjugate gradient with a beta >= 0 clamp,
// periodic restarts, and a backtracking Armijo line search refined by
// quadratic interpolation.  Deterministic: identical inputs give
// bit-identical results.  Iterates are free to leave the bounds; only
// the initial sampling is box-constrained.
DescentResult descend(const ObjectiveSpec& spec, const Model& start,
                      const DescentConfig& config);

}  // namespace landscape
