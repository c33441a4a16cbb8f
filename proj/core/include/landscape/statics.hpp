#pragma once

#include <array>
#include <atomic>
#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "landscape/objective.hpp"
#include "landscape/types.hpp"

namespace landscape {

// Split-spread marine-style layout: source i records channels
// c = 0..n_channels-1 into receiver j = i + c, so receivers are shared
// between neighbouring sources and the statics couple.
struct StaticsGeometry {
  int n_sources = 20;
  int n_channels = 16;

  int n_receivers() const { return n_sources + n_channels - 1; }
  int n_traces() const { return n_sources * n_channels; }
  int n_unknowns() const { return n_sources + n_receivers(); }
  int receiver_of(int source, int channel) const { return source + channel; }
  // integer midpoint key: twice the midpoint in station units
  int midpoint_key(int source, int channel) const { return 2 * source + channel; }
  // trace lookup for a (midpoint key, offset) pair; offset = channel
  int source_of(int midpoint2, int offset) const { return (midpoint2 - offset) / 2; }

  void validate() const;
};

struct WaveletParams {
  double peak_frequency_hz = 25.0;  // Ricker peak frequency
  int n_spikes = 12;                // reflectivity spikes in the base trace
};

struct TraceSet {
  double sample_rate = 0.004;  // seconds per sample
  int n_samples = 512;
  std::vector<std::vector<double>> traces;  // source-major, then channel
  std::vector<double> true_source_statics;  // seconds
  std::vector<double> true_receiver_statics;
  double max_static = 0.040;  // bound on |shift|, seconds
};

// Synthetic residual-statics problem: geometry, shifted traces, and the
// precomputed cross-correlation tables behind the stacking-power
// objective.  `trace_alignment` marks the toy variant where all traces
// share one gather and the unknowns are per-trace shifts with the first
// trace pinned at zero.
class StaticsProblem {
 public:
  StaticsGeometry geometry;
  TraceSet traces;
  int correlation_window = 32;  // lags (samples)
  bool trace_alignment = false;

  struct Pair {
    int trace_a = 0;
    int trace_b = 0;
    // model dims entering tau with +/- sign; -1 = absent
    std::array<int, 2> plus{-1, -1};
    std::array<int, 2> minus{-1, -1};
    std::vector<double> corr;  // lags -W-2 .. W+2
  };

  int dimension() const;
  const std::vector<Pair>& pairs() const { return pairs_; }
  std::uint64_t clamped_lag_count() const { return clamped_->load(); }

  // pairs whose tau depends on a model dimension, with d(tau)/d(m_d)
  struct Incidence {
    int pair = 0;
    double sign = 0.0;
  };
  const std::vector<std::vector<Incidence>>& incidence() const { return incidence_; }

  // rebuilds the correlation tables from the current traces
  void precompute();

  // correlation of pair p at real-valued lag tau (seconds), Catmull-Rom
  // interpolated; lags beyond the window are clamped and counted.
  double correlation_at(const Pair& p, double tau_seconds) const;

 private:
  std::vector<Pair> pairs_;
  std::vector<std::vector<Incidence>> incidence_;
  std::shared_ptr<std::atomic<std::uint64_t>> clamped_ =
      std::make_shared<std::atomic<std::uint64_t>>(0);
};

// Builds the synthetic problem: one Ricker-convolved sparse reflectivity
// base trace (unit energy, plus white noise at noise_level relative
// RMS), true statics uniform on [-max_static, max_static], each trace a
// band-limited (frequency-domain) shift of the base by s_i + r_j.
StaticsProblem generate_problem(const StaticsGeometry& geometry,
                                std::uint64_t seed,
                                const WaveletParams& wavelet = {},
                                double noise_level = 0.0,
                                double max_static = 0.040,
                                double sample_rate = 0.004, int n_samples = 512,
                                int correlation_window = 32);

// Toy gather of n_traces copies of one base trace, per-trace true shifts
// uniform on [-max_static/2, max_static/2] with the first trace unshifted.
// Unknowns: shifts of traces 1..n-1 (2-D for three traces).
StaticsProblem generate_alignment_problem(int n_traces, std::uint64_t seed,
                                          const WaveletParams& wavelet = {},
                                          double noise_level = 0.0,
                                          double max_static = 0.040,
                                          double sample_rate = 0.004,
                                          int n_samples = 512,
                                          int correlation_window = 32);

// Stacking power: sum over midpoints and ordered offset pairs of the
// pair cross-correlations evaluated at tau(s, r).  For trace-alignment
// problems `s` holds the per-trace shifts (n_traces entries, first one
// conventionally 0) and `r` is empty.
double stacking_power(const StaticsProblem& problem,
                      std::span<const double> s, std::span<const double> r);

// RMS error (in samples) between recovered and true statics after
// removing the gauge mode.
double score_recovery(const StaticsProblem& problem,
                      std::span<const double> s, std::span<const double> r);

// Negated, scaled stacking power as a descent objective.  Bounds are
// [-max_static, max_static] per unknown; endpoints are canonicalized by
// projecting out the gauge mode before clustering.
ObjectiveSpec objective_spec(std::shared_ptr<const StaticsProblem> problem,
                             ObjectiveKind kind = ObjectiveKind::statics,
                             std::map<std::string, double> extra_params = {});
ObjectiveSpec objective_spec(const StaticsProblem& problem);

// Flat binary trace file ("STAT1\0" header) plus a JSON sidecar with the
// seed and generation parameters at <path>.json.
void save_traces(const StaticsProblem& problem, const std::string& path,
                 const std::string& sidecar_json);
StaticsProblem load_traces(const std::string& path);

// Zero-phase Gaussian low-pass of all traces (sigma in samples);
// correlation tables are rebuilt.  sigma <= 0 returns the problem as is.
StaticsProblem smooth_problem(const StaticsProblem& problem, double sigma_samples);

}  // namespace landscape
