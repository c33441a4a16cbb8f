#pragma once

#include <map>
#include <span>
#include <string>
#include <vector>

#include "landscape/rhc.hpp"

namespace landscape {

struct DepthWeights {
  std::vector<double> v;  // in (0, 1], 1 at the global minimum value
  double sigma = 0.0;     // mean absolute deviation from the minimum
  double y_min = 0.0;
};

// v_i = exp(-|y_i - y_min| / sigma), or all ones when sigma == 0.
DepthWeights depth_weights(std::span<const double> values);

// Entropy of the depth-weighted basin distribution for known basin
// probabilities p: q_i proportional to p_i * v_i, C_e = -sum q ln q.
double exact_entropy(std::span<const double> p, std::span<const double> values);

// Everything the estimator produces for one basin table.  delta and
// intervals are attached by the confidence module.
struct EntropyReport {
  int n_hat = 0;
  int population = 0;  // converged sample size K used for x_i
  int failures = 0;
  std::vector<double> values;  // y_i, ascending
  std::vector<int> counts;     // k_i
  std::vector<double> x;       // k_i / K
  std::vector<double> v;
  std::vector<double> q_hat;
  double sigma = 0.0;
  double c = 0.0;  // normalization scale: q_i = c * v_i * x_i
  double y_min = 0.0;
  double ce_hat = 0.0;
  double delta = 0.0;
  bool delta_valid = false;
  std::map<std::string, double> intervals;  // "0.90" -> beta * delta
};

// Plug-in estimate of C_e from clustered RHC output.  x_i is based on
// the converged population (failures are excluded from the multinomial
// sample by construction of BasinTable).
EntropyReport estimate_entropy(const BasinTable& table);

// Entropy of counts alone (helper shared with the Monte Carlo oracle):
// cells with zero count drop out, sigma is recomputed over the observed
// values, exactly as the estimator sees a finite sample.
double entropy_from_counts(std::span<const int> counts,
                           std::span<const double> values);

}  // namespace landscape
