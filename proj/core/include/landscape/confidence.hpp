#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "landscape/entropy.hpp"

namespace landscape {

// beta with Pr(|z| <= beta) = 1 - alpha for standard-normal z,
// i.e. the inverse normal CDF at 1 - alpha/2.  Absolute error < 1e-8.
double normal_quantile(double alpha);

// Inverse standard-normal CDF (Wichura's AS 241, PPND16).
double inverse_normal_cdf(double p);

struct BasinInterval {
  double x = 0.0;           // k / K
  double half_width = 0.0;  // beta * sqrt(x(1-x)/K)
  bool normal_ok = false;   // K*x >= 5 proxy for the K*p >= 5 condition
};

BasinInterval basin_probability_interval(int k, int K, double alpha);

// Smallest K with K*p >= 5.
int min_population_for(double p);

// Variance formula for the estimated entropy:
// var = sum_i c v_i (1 + ln q_i)^2 q_i / K - (1 - C_e)^2 / K.
// Callers may pass exact q (theory mode) or the plug-in q_hat.
double entropy_variance(std::span<const double> q, std::span<const double> v,
                        double c, int K);

struct ErrorBound {
  double delta = 0.0;
  double delta_sq = 0.0;
  bool valid = false;  // false when the plug-in delta^2 came out negative
};

// delta^2 = (c/K)(1 - (2 + ln q_min) C_e) - (1 - C_e)^2 / K evaluated on
// the report's plug-in quantities.  A negative value is surfaced via
// valid = false rather than clamped silently.
ErrorBound entropy_error_bound(const EntropyReport& report, int K);

// Fills report.delta / report.delta_valid / report.intervals for the
// given alphas (keys are the confidence levels "0.90", "0.95", ...).
void attach_confidence(EntropyReport& report, std::span<const double> alphas);

// Empirical moments of x_i and of the entropy estimate over repeated
// multinomial draws.  ce_* uses the plug-in estimator exactly as
// estimate_entropy computes it (per-draw renormalized q_hat);
// ce_lin_* uses the linearized form q_i = c v_i x_i with the
// theoretical normalization held fixed, which is the quantity whose
// moments the variance formula above describes.
struct OracleSummary {
  std::vector<double> x_mean;
  std::vector<double> x_var;
  double ce_mean = 0.0;
  double ce_var = 0.0;
  double ce_lin_mean = 0.0;
  double ce_lin_var = 0.0;
  double exact_ce = 0.0;
  int replicates = 0;
};

OracleSummary multinomial_oracle(std::span<const double> p,
                                 std::span<const double> values, int K,
                                 int replicates, std::uint64_t seed);

}  // namespace landscape
