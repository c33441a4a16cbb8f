#include "landscape/confidence.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>

#include "landscape/rng.hpp"

namespace landscape {

// Wichura (1988), algorithm AS 241, routine PPND16.
double inverse_normal_cdf(double p) {
  if (!(p > 0.0 && p < 1.0)) {
    throw std::invalid_argument("inverse_normal_cdf: p must be in (0,1)");
  }
  const double q = p - 0.5;
  if (std::abs(q) <= 0.425) {
    const double r = 0.180625 - q * q;
    const double num =
        q * (((((((2.5090809287301226727e3 * r + 3.3430575583588128105e4) * r +
                  6.7265770927008700853e4) * r + 4.5921953931549871457e4) * r +
                1.3731693765509461125e4) * r + 1.9715909503065514427e3) * r +
              1.3314166789178437745e2) * r + 3.3871328727963666080e0);
    const double den =
        (((((((5.2264952788528545610e3 * r + 2.8729085735721942674e4) * r +
              3.9307895800092710610e4) * r + 2.1213794301586595867e4) * r +
            5.3941960214247511077e3) * r + 6.8718700749205790830e2) * r +
          4.2313330701600911252e1) * r + 1.0);
    return num / den;
  }
  double r = q < 0.0 ? p : 1.0 - p;
  r = std::sqrt(-std::log(r));
  double x;
  if (r <= 5.0) {
    r -= 1.6;
    const double num =
        (((((((7.74545014278341407640e-4 * r + 2.27238449892691845833e-2) * r +
              2.41780725177450611770e-1) * r + 1.27045825245236838258e0) * r +
            3.64784832476320460504e0) * r + 5.76949722146069140550e0) * r +
          4.63033784615654529590e0) * r + 1.42343711074968357734e0);
    const double den =
        (((((((1.05075007164441684324e-9 * r + 5.47593808499534494600e-4) * r +
              1.51986665636164571966e-2) * r + 1.48103976427480074590e-1) * r +
            6.89767334985100004550e-1) * r + 1.67638483018380384940e0) * r +
          2.05319162663775882187e0) * r + 1.0);
    x = num / den;
  } else {
    r -= 5.0;
    const double num =
        (((((((2.01033439929228813265e-7 * r + 2.71155556874348757815e-5) * r +
              1.24266094738807843860e-3) * r + 2.65321895265761230930e-2) * r +
            2.96560571828504891230e-1) * r + 1.78482653991729133580e0) * r +
          5.46378491116411436990e0) * r + 6.65790464350110377720e0);
    const double den =
        (((((((2.04426310338993978564e-15 * r + 1.42151175831644588870e-7) * r +
              1.84631831751005468180e-5) * r + 7.86869131145613259100e-4) * r +
            1.48753612908506148525e-2) * r + 1.36929880922735805310e-1) * r +
          5.99832206555887937690e-1) * r + 1.0);
    x = num / den;
  }
  return q < 0.0 ? -x : x;
}

double normal_quantile(double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0)) {
    throw std::invalid_argument("normal_quantile: alpha must be in (0,1)");
  }
  return inverse_normal_cdf(1.0 - 0.5 * alpha);
}

BasinInterval basin_probability_interval(int k, int K, double alpha) {
  if (K < 1) throw std::invalid_argument("basin_probability_interval: K must be >= 1");
  if (k < 0 || k > K) {
    throw std::invalid_argument("basin_probability_interval: k must be in [0, K]");
  }
  BasinInterval out;
  out.x = static_cast<double>(k) / static_cast<double>(K);
  const double beta = normal_quantile(alpha);
  out.half_width = beta * std::sqrt(out.x * (1.0 - out.x) / K);
  out.normal_ok = static_cast<double>(K) * out.x >= 5.0 &&
                  static_cast<double>(K) * (1.0 - out.x) >= 5.0;
  return out;
}

int min_population_for(double p) {
  if (!(p > 0.0 && p < 1.0)) {
    throw std::invalid_argument("min_population_for: p must be in (0,1)");
  }
  return static_cast<int>(std::ceil(5.0 / p));
}

double entropy_variance(std::span<const double> q, std::span<const double> v,
                        double c, int K) {
  if (q.size() != v.size() || q.empty()) {
    throw std::invalid_argument("entropy_variance: q and v must have equal, non-zero length");
  }
  if (!(c > 0.0) || K < 1) {
    throw std::invalid_argument("entropy_variance: c must be > 0 and K >= 1");
  }
  double ce = 0.0;
  double lead = 0.0;
  for (std::size_t i = 0; i < q.size(); ++i) {
    if (q[i] < 1e-300) continue;
    const double lq = std::log(q[i]);
    ce -= q[i] * lq;
    lead += c * v[i] * (1.0 + lq) * (1.0 + lq) * q[i];
  }
  return lead / K - (1.0 - ce) * (1.0 - ce) / K;
}

ErrorBound entropy_error_bound(const EntropyReport& report, int K) {
  if (K < 1) throw std::invalid_argument("entropy_error_bound: K must be >= 1");
  if (report.q_hat.empty()) {
    throw std::invalid_argument("entropy_error_bound: report has no q_hat");
  }
  const double q_min = *std::min_element(report.q_hat.begin(), report.q_hat.end());
  ErrorBound out;
  out.delta_sq = (report.c / K) * (1.0 - (2.0 + std::log(q_min)) * report.ce_hat) -
                 (1.0 - report.ce_hat) * (1.0 - report.ce_hat) / K;
  if (out.delta_sq >= 0.0) {
    out.delta = std::sqrt(out.delta_sq);
    out.valid = true;
  }
  return out;
}

void attach_confidence(EntropyReport& report, std::span<const double> alphas) {
  const ErrorBound eb = entropy_error_bound(report, report.population);
  report.delta = eb.valid ? eb.delta : 0.0;
  report.delta_valid = eb.valid;
  report.intervals.clear();
  if (!eb.valid) return;
  for (double alpha : alphas) {
    char key[16];
    std::snprintf(key, sizeof key, "%.2f", 1.0 - alpha);
    report.intervals[key] = normal_quantile(alpha) * eb.delta;
  }
}

OracleSummary multinomial_oracle(std::span<const double> p,
                                 std::span<const double> values, int K,
                                 int replicates, std::uint64_t seed) {
  const std::size_t n = p.size();
  if (n == 0 || values.size() != n) {
    throw std::invalid_argument("multinomial_oracle: p and values must have equal, non-zero length");
  }
  if (replicates < 100) {
    throw std::invalid_argument("multinomial_oracle: replicates must be >= 100");
  }
  double sum = 0.0;
  for (double pi : p) sum += pi;
  if (std::abs(sum - 1.0) > 1e-9) {
    throw std::invalid_argument("multinomial_oracle: p must sum to 1");
  }

  std::vector<double> cdf(n);
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    acc += p[i];
    cdf[i] = acc;
  }
  cdf[n - 1] = 1.0;

  // theory-mode normalization for the linearized estimator
  const DepthWeights dw = depth_weights(values);
  double norm = 0.0;
  for (std::size_t i = 0; i < n; ++i) norm += p[i] * dw.v[i];
  const double c_theory = 1.0 / norm;

  OracleSummary out;
  out.replicates = replicates;
  out.exact_ce = exact_entropy(p, values);

  std::vector<double> x_sum(n, 0.0), x_sq(n, 0.0);
  double ce_sum = 0.0, ce_sq = 0.0, lin_sum = 0.0, lin_sq = 0.0;
  std::vector<int> counts(n);
  for (int r = 0; r < replicates; ++r) {
    SubstreamRng rng(seed, static_cast<std::uint64_t>(r));
    std::fill(counts.begin(), counts.end(), 0);
    for (int k = 0; k < K; ++k) {
      const double u = rng.next_double();
      const auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
      ++counts[std::min<std::size_t>(n - 1, it - cdf.begin())];
    }
    double ce_lin = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double xi = static_cast<double>(counts[i]) / K;
      x_sum[i] += xi;
      x_sq[i] += xi * xi;
      const double qi = c_theory * dw.v[i] * xi;
      if (qi > 1e-300) ce_lin -= qi * std::log(qi);
    }
    const double ce = entropy_from_counts(counts, values);
    ce_sum += ce;
    ce_sq += ce * ce;
    lin_sum += ce_lin;
    lin_sq += ce_lin * ce_lin;
  }

  const double R = replicates;
  out.x_mean.resize(n);
  out.x_var.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    out.x_mean[i] = x_sum[i] / R;
    out.x_var[i] = (x_sq[i] - R * out.x_mean[i] * out.x_mean[i]) / (R - 1.0);
  }
  out.ce_mean = ce_sum / R;
  out.ce_var = (ce_sq - R * out.ce_mean * out.ce_mean) / (R - 1.0);
  out.ce_lin_mean = lin_sum / R;
  out.ce_lin_var = (lin_sq - R * out.ce_lin_mean * out.ce_lin_mean) / (R - 1.0);
  return out;
}

}  // namespace landscape
