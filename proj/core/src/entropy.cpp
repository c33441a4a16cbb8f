#include "landscape/entropy.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace landscape {

namespace {

// q ln q with the q -> 0 limit; entries this small contribute nothing.
double q_ln_q(double q) {
  if (q < 1e-300) return 0.0;
  return q * std::log(q);
}

}  // namespace

DepthWeights depth_weights(std::span<const double> values) {
  if (values.empty()) throw std::invalid_argument("depth_weights: values must be non-empty");
  DepthWeights out;
  out.y_min = *std::min_element(values.begin(), values.end());
  double acc = 0.0;
  for (double y : values) {
    if (!std::isfinite(y)) throw std::invalid_argument("depth_weights: values must be finite");
    acc += std::abs(y - out.y_min);
  }
  out.sigma = acc / static_cast<double>(values.size());
  out.v.resize(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) {
    out.v[i] = out.sigma == 0.0
                   ? 1.0
                   : std::exp(-std::abs(values[i] - out.y_min) / out.sigma);
  }
  return out;
}

double exact_entropy(std::span<const double> p, std::span<const double> values) {
  if (p.size() != values.size() || p.empty()) {
    throw std::invalid_argument("exact_entropy: p and values must have equal, non-zero length");
  }
  double sum = 0.0;
  for (double pi : p) {
    if (!(pi > 0.0)) throw std::invalid_argument("exact_entropy: probabilities must be > 0");
    sum += pi;
  }
  if (std::abs(sum - 1.0) > 1e-9) {
    throw std::invalid_argument("exact_entropy: p must sum to 1 within 1e-9");
  }
  const DepthWeights dw = depth_weights(values);
  double norm = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) norm += p[i] * dw.v[i];
  double ce = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    ce -= q_ln_q(p[i] * dw.v[i] / norm);
  }
  return ce;
}

EntropyReport estimate_entropy(const BasinTable& table) {
  if (table.minima.empty()) throw std::invalid_argument("estimate_entropy: empty basin table");
  const int k_sum = table.converged();
  if (k_sum < 1) throw std::invalid_argument("estimate_entropy: no converged population");

  EntropyReport rep;
  rep.n_hat = table.n_hat();
  rep.population = k_sum;
  rep.failures = table.failures;
  rep.values.reserve(table.minima.size());
  rep.counts.reserve(table.minima.size());
  for (const auto& rec : table.minima) {
    rep.values.push_back(rec.value);
    rep.counts.push_back(rec.count);
  }

  const DepthWeights dw = depth_weights(rep.values);
  rep.v = dw.v;
  rep.sigma = dw.sigma;
  rep.y_min = dw.y_min;

  rep.x.resize(rep.n_hat);
  double norm = 0.0;
  for (int i = 0; i < rep.n_hat; ++i) {
    rep.x[i] = static_cast<double>(rep.counts[i]) / static_cast<double>(k_sum);
    norm += rep.v[i] * rep.x[i];
  }
  rep.c = 1.0 / norm;
  rep.q_hat.resize(rep.n_hat);
  rep.ce_hat = 0.0;
  for (int i = 0; i < rep.n_hat; ++i) {
    rep.q_hat[i] = rep.c * rep.v[i] * rep.x[i];
    rep.ce_hat -= q_ln_q(rep.q_hat[i]);
  }
  return rep;
}

double entropy_from_counts(std::span<const int> counts,
                           std::span<const double> values) {
  if (counts.size() != values.size()) {
    throw std::invalid_argument("entropy_from_counts: size mismatch");
  }
  std::vector<double> y_obs;
  std::vector<int> k_obs;
  int k_sum = 0;
  for (std::size_t i = 0; i < counts.size(); ++i) {
    if (counts[i] > 0) {
      y_obs.push_back(values[i]);
      k_obs.push_back(counts[i]);
      k_sum += counts[i];
    }
  }
  if (k_sum == 0) throw std::invalid_argument("entropy_from_counts: all counts zero");
  const DepthWeights dw = depth_weights(y_obs);
  double norm = 0.0;
  for (std::size_t i = 0; i < k_obs.size(); ++i) {
    norm += dw.v[i] * static_cast<double>(k_obs[i]) / k_sum;
  }
  double ce = 0.0;
  for (std::size_t i = 0; i < k_obs.size(); ++i) {
    ce -= q_ln_q(dw.v[i] * (static_cast<double>(k_obs[i]) / k_sum) / norm);
  }
  return ce;
}

}  // namespace landscape
