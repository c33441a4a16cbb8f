#include "landscape/statics.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstring>
#include <fstream>
#include <map>
#include <numbers>
#include <stdexcept>

#include "landscape/rng.hpp"

namespace landscape {

namespace {

constexpr char kMagic[6] = {'S', 'T', 'A', 'T', '1', '\0'};

bool is_pow2(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

// iterative radix-2 Cooley-Tukey; inverse = conjugate trick
void fft_pow2(std::vector<std::complex<double>>& a, bool inverse) {
  const std::size_t n = a.size();
  for (std::size_t i = 1, j = 0; i < n; ++i) {
    std::size_t bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(a[i], a[j]);
  }
  for (std::size_t len = 2; len <= n; len <<= 1) {
    const double ang = (inverse ? 2.0 : -2.0) * std::numbers::pi / len;
    const std::complex<double> wl(std::cos(ang), std::sin(ang));
    for (std::size_t i = 0; i < n; i += len) {
      std::complex<double> w(1.0, 0.0);
      for (std::size_t k = 0; k < len / 2; ++k) {
        const auto u = a[i + k];
        const auto v = a[i + k + len / 2] * w;
        a[i + k] = u + v;
        a[i + k + len / 2] = u - v;
        w *= wl;
      }
    }
  }
  if (inverse) {
    for (auto& x : a) x /= static_cast<double>(n);
  }
}

// O(n^2) fallback for non-power-of-two lengths
void dft_naive(std::vector<std::complex<double>>& a, bool inverse) {
  const std::size_t n = a.size();
  std::vector<std::complex<double>> out(n);
  const double sign = inverse ? 2.0 : -2.0;
  for (std::size_t k = 0; k < n; ++k) {
    std::complex<double> acc(0.0, 0.0);
    for (std::size_t t = 0; t < n; ++t) {
      const double ang = sign * std::numbers::pi * static_cast<double>(k * t) / n;
      acc += a[t] * std::complex<double>(std::cos(ang), std::sin(ang));
    }
    out[k] = inverse ? acc / static_cast<double>(n) : acc;
  }
  a = std::move(out);
}

void fft(std::vector<std::complex<double>>& a, bool inverse) {
  if (is_pow2(a.size())) {
    fft_pow2(a, inverse);
  } else {
    dft_naive(a, inverse);
  }
}

// circular band-limited shift by a (possibly fractional) sample count
std::vector<double> shift_trace(const std::vector<double>& trace,
                                double shift_samples) {
  const std::size_t n = trace.size();
  std::vector<std::complex<double>> spec(n);
  for (std::size_t t = 0; t < n; ++t) spec[t] = trace[t];
  fft(spec, false);
  for (std::size_t k = 0; k < n; ++k) {
    const double m = (k <= n / 2) ? static_cast<double>(k)
                                  : static_cast<double>(k) - static_cast<double>(n);
    const double ang = -2.0 * std::numbers::pi * m * shift_samples / n;
    spec[k] *= std::complex<double>(std::cos(ang), std::sin(ang));
  }
  fft(spec, true);
  std::vector<double> out(n);
  for (std::size_t t = 0; t < n; ++t) out[t] = spec[t].real();
  return out;
}

std::vector<double> ricker_kernel(double peak_hz, double dt) {
  const int half = static_cast<int>(std::ceil(1.5 / (peak_hz * dt)));
  std::vector<double> w(2 * half + 1);
  const double a = std::numbers::pi * std::numbers::pi * peak_hz * peak_hz;
  for (int i = -half; i <= half; ++i) {
    const double t = i * dt;
    w[i + half] = (1.0 - 2.0 * a * t * t) * std::exp(-a * t * t);
  }
  return w;
}

std::vector<double> convolve_same(const std::vector<double>& x,
                                  const std::vector<double>& kernel) {
  const int n = static_cast<int>(x.size());
  const int m = static_cast<int>(kernel.size());
  const int half = m / 2;
  std::vector<double> out(n, 0.0);
  for (int t = 0; t < n; ++t) {
    double acc = 0.0;
    const int k_lo = std::max(0, t + half - (n - 1));
    const int k_hi = std::min(m - 1, t + half);
    for (int k = k_lo; k <= k_hi; ++k) acc += kernel[k] * x[t + half - k];
    out[t] = acc;
  }
  return out;
}

double gauss_from(SubstreamRng& rng) {
  // Box-Muller; next_double() is in [0,1), shift away from 0
  const double u1 = 1.0 - rng.next_double();
  const double u2 = rng.next_double();
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

std::vector<double> make_base_trace(std::uint64_t seed,
                                    const WaveletParams& wavelet,
                                    double noise_level, double dt,
                                    int n_samples) {
  SubstreamRng spike_rng(seed, 0);
  std::vector<double> refl(n_samples, 0.0);
  const int lo = static_cast<int>(0.2 * n_samples);
  const int hi = static_cast<int>(0.8 * n_samples);
  for (int s = 0; s < wavelet.n_spikes; ++s) {
    const int pos = lo + static_cast<int>(spike_rng.next_double() * (hi - lo));
    const double amp = (0.5 + 0.5 * spike_rng.next_double()) *
                       (spike_rng.next_double() < 0.5 ? -1.0 : 1.0);
    refl[pos] += amp;
  }
  std::vector<double> base = convolve_same(refl, ricker_kernel(wavelet.peak_frequency_hz, dt));
  double energy = 0.0;
  for (double v : base) energy += v * v;
  if (energy <= 0.0) throw std::runtime_error("statics: degenerate base trace");
  const double inv = 1.0 / std::sqrt(energy);
  for (double& v : base) v *= inv;

  if (noise_level > 0.0) {
    SubstreamRng noise_rng(seed, 1);
    const double signal_rms = std::sqrt(1.0 / n_samples);  // unit energy
    for (double& v : base) v += noise_level * signal_rms * gauss_from(noise_rng);
    energy = 0.0;
    for (double v : base) energy += v * v;
    const double renorm = 1.0 / std::sqrt(energy);
    for (double& v : base) v *= renorm;
  }
  return base;
}

void check_window(double max_static, int window, double dt) {
  if (2.0 * max_static > window * dt) {
    throw std::invalid_argument(
        "statics: correlation window (" + std::to_string(window * dt) +
        " s) does not cover shifts up to 2*max_static (" +
        std::to_string(2.0 * max_static) + " s)");
  }
}

}  // namespace

void StaticsGeometry::validate() const {
  if (n_sources < 1 || n_channels < 1) {
    throw std::invalid_argument("statics: geometry must have >= 1 source and channel");
  }
}

int StaticsProblem::dimension() const {
  return trace_alignment ? geometry.n_sources - 1 : geometry.n_unknowns();
}

void StaticsProblem::precompute() {
  const int w2 = correlation_window + 2;
  const int n_lags = 2 * w2 + 1;
  pairs_.clear();

  // group traces by midpoint; alignment problems are one big gather
  std::map<int, std::vector<std::pair<int, int>>> gathers;  // key -> (source, channel)
  for (int i = 0; i < geometry.n_sources; ++i) {
    for (int c = 0; c < geometry.n_channels; ++c) {
      const int key = trace_alignment ? 0 : geometry.midpoint_key(i, c);
      gathers[key].emplace_back(i, c);
    }
  }

  for (const auto& [key, members] : gathers) {
    for (std::size_t a = 0; a < members.size(); ++a) {
      for (std::size_t b = a + 1; b < members.size(); ++b) {
        Pair p;
        const auto [ia, ca] = members[a];
        const auto [ib, cb] = members[b];
        p.trace_a = ia * geometry.n_channels + ca;
        p.trace_b = ib * geometry.n_channels + cb;
        if (trace_alignment) {
          // unknowns are shifts of traces 1..n-1; trace 0 pinned
          p.plus = {ia > 0 ? ia - 1 : -1, -1};
          p.minus = {ib > 0 ? ib - 1 : -1, -1};
        } else {
          p.plus = {ia, geometry.n_sources + geometry.receiver_of(ia, ca)};
          p.minus = {ib, geometry.n_sources + geometry.receiver_of(ib, cb)};
        }
        const auto& ta = traces.traces[p.trace_a];
        const auto& tb = traces.traces[p.trace_b];
        const int n = traces.n_samples;
        p.corr.assign(n_lags, 0.0);
        for (int lag = -w2; lag <= w2; ++lag) {
          double acc = 0.0;
          const int t_lo = std::max(0, lag);
          const int t_hi = std::min(n, n + lag);
          for (int t = t_lo; t < t_hi; ++t) acc += ta[t] * tb[t - lag];
          p.corr[lag + w2] = acc;
        }
        pairs_.push_back(std::move(p));
      }
    }
  }

  incidence_.assign(dimension(), {});
  for (std::size_t pi = 0; pi < pairs_.size(); ++pi) {
    for (int d : pairs_[pi].plus) {
      if (d >= 0) incidence_[d].push_back({static_cast<int>(pi), 1.0});
    }
    for (int d : pairs_[pi].minus) {
      if (d >= 0) incidence_[d].push_back({static_cast<int>(pi), -1.0});
    }
  }
}

double StaticsProblem::correlation_at(const Pair& p, double tau_seconds) const {
  const int w = correlation_window;
  const int w2 = w + 2;
  double u = tau_seconds / traces.sample_rate;
  if (u < -w || u > w) {
    clamped_->fetch_add(1, std::memory_order_relaxed);
    u = std::clamp(u, static_cast<double>(-w), static_cast<double>(w));
  }
  const double fl = std::floor(u);
  int i0 = static_cast<int>(fl);
  double frac = u - fl;
  if (i0 == w) {  // right edge: step back one cell so y2 stays in range
    i0 -= 1;
    frac = 1.0;
  }
  const double* y = p.corr.data() + (i0 + w2);
  const double ym1 = y[-1], y0 = y[0], y1 = y[1], y2 = y[2];
  // Catmull-Rom spline, C^1 across cells
  const double a0 = 2.0 * y0;
  const double a1 = y1 - ym1;
  const double a2 = 2.0 * ym1 - 5.0 * y0 + 4.0 * y1 - y2;
  const double a3 = -ym1 + 3.0 * y0 - 3.0 * y1 + y2;
  return 0.5 * (a0 + frac * (a1 + frac * (a2 + frac * a3)));
}

StaticsProblem generate_problem(const StaticsGeometry& geometry,
                                std::uint64_t seed, const WaveletParams& wavelet,
                                double noise_level, double max_static,
                                double sample_rate, int n_samples,
                                int correlation_window) {
  geometry.validate();
  if (n_samples < 8) throw std::invalid_argument("statics: n_samples too small");
  check_window(max_static, correlation_window, sample_rate);

  StaticsProblem prob;
  prob.geometry = geometry;
  prob.correlation_window = correlation_window;
  prob.traces.sample_rate = sample_rate;
  prob.traces.n_samples = n_samples;
  prob.traces.max_static = max_static;

  const auto base = make_base_trace(seed, wavelet, noise_level, sample_rate, n_samples);

  SubstreamRng statics_rng(seed, 2);
  prob.traces.true_source_statics.resize(geometry.n_sources);
  for (double& s : prob.traces.true_source_statics) {
    s = statics_rng.uniform(-max_static, max_static);
  }
  SubstreamRng recv_rng(seed, 3);
  prob.traces.true_receiver_statics.resize(geometry.n_receivers());
  for (double& r : prob.traces.true_receiver_statics) {
    r = recv_rng.uniform(-max_static, max_static);
  }

  prob.traces.traces.resize(geometry.n_traces());
  for (int i = 0; i < geometry.n_sources; ++i) {
    for (int c = 0; c < geometry.n_channels; ++c) {
      const int j = geometry.receiver_of(i, c);
      const double shift = prob.traces.true_source_statics[i] +
                           prob.traces.true_receiver_statics[j];
      prob.traces.traces[i * geometry.n_channels + c] =
          shift_trace(base, shift / sample_rate);
    }
  }
  prob.precompute();
  return prob;
}

StaticsProblem generate_alignment_problem(int n_traces, std::uint64_t seed,
                                          const WaveletParams& wavelet,
                                          double noise_level, double max_static,
                                          double sample_rate, int n_samples,
                                          int correlation_window) {
  if (n_traces < 2) throw std::invalid_argument("statics: alignment needs >= 2 traces");
  check_window(max_static, correlation_window, sample_rate);

  StaticsProblem prob;
  prob.geometry.n_sources = n_traces;
  prob.geometry.n_channels = 1;
  prob.trace_alignment = true;
  prob.correlation_window = correlation_window;
  prob.traces.sample_rate = sample_rate;
  prob.traces.n_samples = n_samples;
  prob.traces.max_static = max_static;

  const auto base = make_base_trace(seed, wavelet, noise_level, sample_rate, n_samples);

  SubstreamRng statics_rng(seed, 2);
  prob.traces.true_source_statics.assign(n_traces, 0.0);
  for (int k = 1; k < n_traces; ++k) {
    prob.traces.true_source_statics[k] =
        statics_rng.uniform(-0.5 * max_static, 0.5 * max_static);
  }
  prob.traces.traces.resize(n_traces);
  for (int k = 0; k < n_traces; ++k) {
    prob.traces.traces[k] =
        shift_trace(base, prob.traces.true_source_statics[k] / sample_rate);
  }
  prob.precompute();
  return prob;
}

namespace {

double tau_of(const StaticsProblem::Pair& p, std::span<const double> m) {
  double tau = 0.0;
  for (int d : p.plus) {
    if (d >= 0) tau += m[d];
  }
  for (int d : p.minus) {
    if (d >= 0) tau -= m[d];
  }
  return tau;
}

}  // namespace

double stacking_power(const StaticsProblem& problem, std::span<const double> s,
                      std::span<const double> r) {
  std::vector<double> m;
  if (problem.trace_alignment) {
    if (static_cast<int>(s.size()) != problem.geometry.n_sources || !r.empty()) {
      throw std::invalid_argument("stacking_power: alignment problems take per-trace shifts in s");
    }
    m.assign(s.begin() + 1, s.end());  // trace 0 pinned at its given shift
    for (double& v : m) v -= s[0];
  } else {
    if (static_cast<int>(s.size()) != problem.geometry.n_sources ||
        static_cast<int>(r.size()) != problem.geometry.n_receivers()) {
      throw std::invalid_argument("stacking_power: statics dimension mismatch");
    }
    m.reserve(s.size() + r.size());
    m.insert(m.end(), s.begin(), s.end());
    m.insert(m.end(), r.begin(), r.end());
  }
  double total = 0.0;
  for (const auto& p : problem.pairs()) {
    total += problem.correlation_at(p, tau_of(p, m));
  }
  // ordered offset pairs: each unordered pair counted in both directions
  return 2.0 * total;
}

double score_recovery(const StaticsProblem& problem, std::span<const double> s,
                      std::span<const double> r) {
  const auto& truth_s = problem.traces.true_source_statics;
  const auto& truth_r = problem.traces.true_receiver_statics;
  if (s.size() != truth_s.size() || r.size() != truth_r.size()) {
    throw std::invalid_argument("score_recovery: dimension mismatch");
  }
  std::vector<double> ds(s.size()), dr(r.size());
  for (std::size_t i = 0; i < s.size(); ++i) ds[i] = s[i] - truth_s[i];
  for (std::size_t j = 0; j < r.size(); ++j) dr[j] = r[j] - truth_r[j];

  double t = 0.0;
  const double total = static_cast<double>(ds.size() + dr.size());
  for (double d : ds) t += d;
  for (double d : dr) t -= d;
  t /= total;

  double sq = 0.0;
  for (double d : ds) sq += (d - t) * (d - t);
  for (double d : dr) sq += (d + t) * (d + t);
  const double rms_seconds = std::sqrt(sq / total);
  return rms_seconds / problem.traces.sample_rate;
}

ObjectiveSpec objective_spec(std::shared_ptr<const StaticsProblem> problem,
                             ObjectiveKind kind,
                             std::map<std::string, double> extra_params) {
  const int dim = problem->dimension();
  const double b = problem->traces.max_static;
  const bool alignment = problem->trace_alignment;
  // scale so values and finite-difference gradients are O(1)
  const double scale =
      2.0 * static_cast<double>(std::max<std::size_t>(1, problem->pairs().size()));

  auto eval = [problem, scale](const Model& m) {
    double total = 0.0;
    for (const auto& p : problem->pairs()) {
      total += problem->correlation_at(p, tau_of(p, m));
    }
    return -2.0 * total / scale;
  };
  extra_params["power_scale"] = scale;
  ObjectiveSpec spec = ObjectiveSpec::user(dim, Bounds::cube(dim, -b, b),
                                           std::move(eval), kind,
                                           std::move(extra_params));
  {
    // central differences computed pair-sparsely: F(m + h e_d) and
    // F(m - h e_d) share every term whose tau does not involve d, so
    // only incident pairs enter the difference quotient
    auto counter = spec.counter();
    const double h = spec.fd_epsilon() * 2.0 * b;
    spec.set_gradient([problem, scale, counter, h, dim](const Model& m) {
      std::vector<double> tau(problem->pairs().size());
      for (std::size_t pi = 0; pi < tau.size(); ++pi) {
        tau[pi] = tau_of(problem->pairs()[pi], m);
      }
      Model g(m.size(), 0.0);
      for (std::size_t d = 0; d < m.size(); ++d) {
        double diff = 0.0;
        for (const auto& inc : problem->incidence()[d]) {
          const auto& p = problem->pairs()[inc.pair];
          diff += problem->correlation_at(p, tau[inc.pair] + inc.sign * h) -
                  problem->correlation_at(p, tau[inc.pair] - inc.sign * h);
        }
        g[d] = -2.0 * diff / scale / (2.0 * h);
      }
      // account the work in evaluation units of the generic FD path
      counter->evaluations.fetch_add(2 * static_cast<std::uint64_t>(dim),
                                     std::memory_order_relaxed);
      return g;
    });
  }
  if (!alignment) {
    const int ns = problem->geometry.n_sources;
    const int nr = problem->geometry.n_receivers();
    spec.set_canonicalize([ns, nr](Model& m) {
      double t = 0.0;
      for (int i = 0; i < ns; ++i) t += m[i];
      for (int j = 0; j < nr; ++j) t -= m[ns + j];
      t /= static_cast<double>(ns + nr);
      for (int i = 0; i < ns; ++i) m[i] -= t;
      for (int j = 0; j < nr; ++j) m[ns + j] += t;
    });
  }
  return spec;
}

ObjectiveSpec objective_spec(const StaticsProblem& problem) {
  return objective_spec(std::make_shared<const StaticsProblem>(problem));
}

StaticsProblem smooth_problem(const StaticsProblem& problem, double sigma_samples) {
  if (sigma_samples <= 0.0) return problem;
  StaticsProblem out = problem;
  const int half = static_cast<int>(std::ceil(4.0 * sigma_samples));
  std::vector<double> kernel(2 * half + 1);
  double sum = 0.0;
  for (int i = -half; i <= half; ++i) {
    kernel[i + half] = std::exp(-0.5 * (i / sigma_samples) * (i / sigma_samples));
    sum += kernel[i + half];
  }
  for (double& k : kernel) k /= sum;
  for (auto& tr : out.traces.traces) tr = convolve_same(tr, kernel);

  // low-passing a zero-mean wavelet drains the trace energy; rescale by a
  // common factor (mean energy back to the unsmoothed level) so descent
  // tolerances mean the same thing at every level
  double energy = 0.0, energy_ref = 0.0;
  for (const auto& tr : out.traces.traces) {
    for (double v : tr) energy += v * v;
  }
  for (const auto& tr : problem.traces.traces) {
    for (double v : tr) energy_ref += v * v;
  }
  if (energy > 0.0) {
    const double gain = std::sqrt(energy_ref / energy);
    for (auto& tr : out.traces.traces) {
      for (double& v : tr) v *= gain;
    }
  }
  out.precompute();
  return out;
}

void save_traces(const StaticsProblem& problem, const std::string& path,
                 const std::string& sidecar_json) {
  if (problem.trace_alignment) {
    throw std::invalid_argument("save_traces: alignment toys are not persisted");
  }
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw std::runtime_error("save_traces: cannot open " + path);

  unsigned char header[64] = {0};
  std::memcpy(header, kMagic, 6);
  auto put_u32 = [&](int off, std::uint32_t v) {
    for (int b = 0; b < 4; ++b) header[off + b] = static_cast<unsigned char>(v >> (8 * b));
  };
  auto put_f64 = [&](int off, double v) {
    std::uint64_t bits;
    std::memcpy(&bits, &v, 8);
    for (int b = 0; b < 8; ++b) header[off + b] = static_cast<unsigned char>(bits >> (8 * b));
  };
  put_u32(8, static_cast<std::uint32_t>(problem.geometry.n_sources));
  put_u32(12, static_cast<std::uint32_t>(problem.geometry.n_channels));
  put_u32(16, static_cast<std::uint32_t>(problem.traces.n_samples));
  put_f64(24, problem.traces.sample_rate);
  put_f64(32, problem.traces.max_static);
  put_u32(40, static_cast<std::uint32_t>(problem.correlation_window));
  f.write(reinterpret_cast<const char*>(header), 64);

  auto write_f64s = [&](const std::vector<double>& v) {
    f.write(reinterpret_cast<const char*>(v.data()),
            static_cast<std::streamsize>(v.size() * sizeof(double)));
  };
  write_f64s(problem.traces.true_source_statics);
  write_f64s(problem.traces.true_receiver_statics);
  for (const auto& tr : problem.traces.traces) write_f64s(tr);
  if (!f) throw std::runtime_error("save_traces: write failed for " + path);
  f.close();

  std::ofstream sc(path + ".json", std::ios::trunc);
  if (!sc) throw std::runtime_error("save_traces: cannot open sidecar for " + path);
  sc << sidecar_json;
}

StaticsProblem load_traces(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("load_traces: cannot open " + path);
  unsigned char header[64];
  f.read(reinterpret_cast<char*>(header), 64);
  if (!f || std::memcmp(header, kMagic, 6) != 0) {
    throw std::runtime_error("load_traces: bad magic in " + path);
  }
  auto get_u32 = [&](int off) {
    std::uint32_t v = 0;
    for (int b = 3; b >= 0; --b) v = (v << 8) | header[off + b];
    return v;
  };
  auto get_f64 = [&](int off) {
    std::uint64_t bits = 0;
    for (int b = 7; b >= 0; --b) bits = (bits << 8) | header[off + b];
    double v;
    std::memcpy(&v, &bits, 8);
    return v;
  };
  StaticsProblem prob;
  prob.geometry.n_sources = static_cast<int>(get_u32(8));
  prob.geometry.n_channels = static_cast<int>(get_u32(12));
  prob.traces.n_samples = static_cast<int>(get_u32(16));
  prob.traces.sample_rate = get_f64(24);
  prob.traces.max_static = get_f64(32);
  const std::uint32_t window = get_u32(40);
  prob.correlation_window = window > 0 ? static_cast<int>(window) : 32;
  prob.geometry.validate();

  auto read_f64s = [&](std::size_t count) {
    std::vector<double> v(count);
    f.read(reinterpret_cast<char*>(v.data()),
           static_cast<std::streamsize>(count * sizeof(double)));
    if (!f) throw std::runtime_error("load_traces: truncated file " + path);
    return v;
  };
  prob.traces.true_source_statics = read_f64s(prob.geometry.n_sources);
  prob.traces.true_receiver_statics = read_f64s(prob.geometry.n_receivers());
  prob.traces.traces.resize(prob.geometry.n_traces());
  for (auto& tr : prob.traces.traces) {
    tr = read_f64s(prob.traces.n_samples);
  }
  prob.precompute();
  return prob;
}

}  // namespace landscape
