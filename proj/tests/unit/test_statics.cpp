#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <filesystem>

#include "landscape/rhc.hpp"
#include "landscape/rng.hpp"
#include "landscape/statics.hpp"

using namespace landscape;

namespace {

StaticsProblem default_problem(std::uint64_t seed = 7, double noise = 0.0) {
  return generate_problem(StaticsGeometry{}, seed, WaveletParams{}, noise);
}

double norm(std::span<const double> v) {
  double s = 0.0;
  for (double x : v) s += x * x;
  return std::sqrt(s);
}

}  // namespace

TEST_CASE("default geometry: published counts") {
  StaticsGeometry g;
  CHECK(g.n_sources == 20);
  CHECK(g.n_channels == 16);
  CHECK(g.n_receivers() == 35);
  CHECK(g.n_traces() == 320);
  CHECK(g.n_unknowns() == 55);
  // trace lookup round-trips through (midpoint, offset)
  for (int i = 0; i < g.n_sources; ++i) {
    for (int c = 0; c < g.n_channels; ++c) {
      CHECK(g.source_of(g.midpoint_key(i, c), c) == i);
      CHECK(g.receiver_of(i, c) == i + c);
    }
  }
}

TEST_CASE("generation is deterministic per seed") {
  const auto a = default_problem(123);
  const auto b = default_problem(123);
  CHECK(a.traces.traces == b.traces.traces);
  CHECK(a.traces.true_source_statics == b.traces.true_source_statics);
  const auto c = default_problem(124);
  CHECK(a.traces.traces != c.traces.traces);
}

TEST_CASE("zero statics and zero noise give identical traces") {
  StaticsGeometry geom;
  geom.n_sources = 3;
  geom.n_channels = 2;
  const auto prob = generate_problem(geom, 5, WaveletParams{}, 0.0, /*max_static=*/0.0);
  for (double s : prob.traces.true_source_statics) CHECK(s == 0.0);
  for (const auto& tr : prob.traces.traces) CHECK(tr == prob.traces.traces[0]);

  // the alignment toy pins its first trace at zero shift
  auto toy = generate_alignment_problem(2, 9);
  CHECK(toy.traces.true_source_statics[0] == 0.0);
}

TEST_CASE("integer spike shift moves the argmax accordingly") {
  // a single spike handled through the same band-limited shift machinery:
  // use one-spike wavelet params and compare argmax of two traces whose
  // true shifts differ by an integral number of samples
  WaveletParams w;
  w.n_spikes = 1;
  auto toy = generate_alignment_problem(3, 4, w, 0.0, 0.040);
  const auto& tr = toy.traces;
  auto argmax = [](const std::vector<double>& v) {
    int best = 0;
    for (int i = 1; i < static_cast<int>(v.size()); ++i) {
      if (std::abs(v[i]) > std::abs(v[best])) best = i;
    }
    return best;
  };
  for (int k = 1; k < 3; ++k) {
    const double shift_samples = tr.true_source_statics[k] / tr.sample_rate;
    const int expected = argmax(tr.traces[0]) + static_cast<int>(std::lround(shift_samples));
    CHECK(std::abs(argmax(tr.traces[k]) - expected) <= 1);
  }
}

TEST_CASE("autocorrelation peak equals the trace energy at zero lag") {
  auto toy = generate_alignment_problem(2, 11, WaveletParams{}, 0.0, 0.02);
  // pair (0,1) of identical traces when both true shifts are zero is not
  // guaranteed; instead correlate trace 0 with itself through the table
  // of a toy whose two traces carry zero shift
  StaticsProblem self = toy;
  self.traces.traces[1] = self.traces.traces[0];
  self.precompute();
  double energy = 0.0;
  for (double v : self.traces.traces[0]) energy += v * v;
  const auto& p = self.pairs().front();
  const double at_zero = self.correlation_at(p, 0.0);
  CHECK(at_zero == doctest::Approx(energy).epsilon(1e-12));
  // zero lag is the maximum over the window
  for (double tau = -0.12; tau <= 0.12; tau += 0.004) {
    CHECK(self.correlation_at(p, tau) <= at_zero + 1e-12);
  }
}

TEST_CASE("stacking power: gauge invariance") {
  const auto prob = default_problem(42);
  SubstreamRng rng(1, 0);
  std::vector<double> s(prob.geometry.n_sources), r(prob.geometry.n_receivers());
  for (int trial = 0; trial < 10; ++trial) {
    for (auto& v : s) v = rng.uniform(-0.03, 0.03);
    for (auto& v : r) v = rng.uniform(-0.03, 0.03);
    const double t = rng.uniform(-0.02, 0.02);
    const double f0 = stacking_power(prob, s, r);
    std::vector<double> s2 = s, r2 = r;
    for (auto& v : s2) v += t;
    for (auto& v : r2) v -= t;
    const double f1 = stacking_power(prob, s2, r2);
    CHECK(std::abs(f1 - f0) <= 1e-10 * std::max(1.0, std::abs(f0)));
  }
}

TEST_CASE("ground truth beats random perturbations (noiseless)") {
  const auto prob = default_problem(3);
  const auto& s_true = prob.traces.true_source_statics;
  const auto& r_true = prob.traces.true_receiver_statics;
  const double f_truth = stacking_power(prob, s_true, r_true);
  SubstreamRng rng(2, 0);
  std::vector<double> s(s_true.size()), r(r_true.size());
  for (int trial = 0; trial < 1000; ++trial) {
    for (std::size_t i = 0; i < s.size(); ++i) {
      s[i] = s_true[i] + rng.uniform(-0.01, 0.01);
    }
    for (std::size_t j = 0; j < r.size(); ++j) {
      r[j] = r_true[j] + rng.uniform(-0.01, 0.01);
    }
    CHECK(stacking_power(prob, s, r) <= f_truth);
  }
}

TEST_CASE("objective spec: negation, scaling, finite-difference sanity") {
  const auto prob = default_problem(6);
  auto shared = std::make_shared<const StaticsProblem>(prob);
  ObjectiveSpec spec = objective_spec(shared);
  CHECK(spec.dimension() == 55);
  CHECK(spec.kind() == ObjectiveKind::statics);

  // objective = -power / scale
  const auto& s_true = prob.traces.true_source_statics;
  const auto& r_true = prob.traces.true_receiver_statics;
  Model m;
  m.insert(m.end(), s_true.begin(), s_true.end());
  m.insert(m.end(), r_true.begin(), r_true.end());
  const double scale = spec.parameter("power_scale", 0.0);
  CHECK(scale > 0.0);
  CHECK(spec.evaluate(m) ==
        doctest::Approx(-stacking_power(prob, s_true, r_true) / scale).epsilon(1e-12));

  // sparse central differences match the generic path
  SubstreamRng rng(8, 0);
  Model x(55);
  for (auto& v : x) v = rng.uniform(-0.03, 0.03);
  const Model g_sparse = spec.gradient(x);
  ObjectiveSpec generic = objective_spec(shared);
  generic.set_gradient(nullptr);
  const Model g_generic = generic.gradient(x);
  const double gn = norm(g_generic);
  for (int d = 0; d < 55; ++d) {
    CHECK(std::abs(g_sparse[d] - g_generic[d]) <= 1e-8 * std::max(1.0, gn));
  }

  // half-step re-evaluation: the FD derivative is stable under h -> h/2
  generic.set_fd_epsilon(0.5e-7);
  const Model g_half = generic.gradient(x);
  for (int d = 0; d < 55; ++d) {
    CHECK(std::abs(g_sparse[d] - g_half[d]) <= 1e-3 * std::max(1.0, gn));
  }
}

TEST_CASE("gauge canonicalization for clustering") {
  const auto prob = default_problem(6);
  ObjectiveSpec spec = objective_spec(prob);
  Model m(55, 0.0);
  for (int i = 0; i < 20; ++i) m[i] = 0.01;   // s = 0.01
  for (int j = 20; j < 55; ++j) m[j] = -0.01; // r = -0.01 (pure gauge)
  spec.canonicalize(m);
  for (double v : m) CHECK(std::abs(v) < 1e-15);
}

TEST_CASE("score recovery") {
  const auto prob = default_problem(9);
  const auto& s_true = prob.traces.true_source_statics;
  const auto& r_true = prob.traces.true_receiver_statics;
  CHECK(score_recovery(prob, s_true, r_true) == doctest::Approx(0.0));

  std::vector<double> s_shift = s_true, r_shift = r_true;
  for (auto& v : s_shift) v += 0.013;
  for (auto& v : r_shift) v -= 0.013;
  CHECK(score_recovery(prob, s_shift, r_shift) == doctest::Approx(0.0).epsilon(1e-9));

  // zero guess: gauge-centered truth RMS, in samples
  const std::vector<double> s0(s_true.size(), 0.0), r0(r_true.size(), 0.0);
  double t = 0.0;
  for (double v : s_true) t -= v;
  for (double v : r_true) t += v;
  t /= static_cast<double>(s_true.size() + r_true.size());
  double sq = 0.0;
  for (double v : s_true) sq += (v + t) * (v + t);
  for (double v : r_true) sq += (v - t) * (v - t);
  const double expected =
      std::sqrt(sq / (s_true.size() + r_true.size())) / prob.traces.sample_rate;
  CHECK(score_recovery(prob, s0, r0) == doctest::Approx(expected).epsilon(1e-12));
}

TEST_CASE("the 2-D three-trace restriction is multimodal") {
  auto toy = generate_alignment_problem(3, 1);
  ObjectiveSpec spec = objective_spec(toy);
  CHECK(spec.dimension() == 2);
  RhcConfig cfg;
  cfg.population = 200;
  cfg.seed = 10;
  const BasinTable t = run_rhc(spec, cfg);
  CHECK(t.n_hat() >= 3);
}

TEST_CASE("window coverage validation") {
  // 2 * max_static beyond the window is rejected
  CHECK_THROWS_AS(generate_problem(StaticsGeometry{}, 1, WaveletParams{}, 0.0,
                                   /*max_static=*/0.100, 0.004, 512, /*window=*/32),
                  std::invalid_argument);
}

TEST_CASE("trace file round-trip is bit-exact") {
  namespace fs = std::filesystem;
  const auto prob = default_problem(31);
  const std::string path = (fs::temp_directory_path() / "landscape_test_traces.bin").string();
  save_traces(prob, path, "{\"seed\": 31}\n");
  const auto loaded = load_traces(path);
  CHECK(loaded.geometry.n_sources == prob.geometry.n_sources);
  CHECK(loaded.geometry.n_channels == prob.geometry.n_channels);
  CHECK(loaded.traces.n_samples == prob.traces.n_samples);
  CHECK(loaded.traces.sample_rate == prob.traces.sample_rate);
  CHECK(loaded.traces.max_static == prob.traces.max_static);
  CHECK(loaded.correlation_window == prob.correlation_window);
  CHECK(loaded.traces.true_source_statics == prob.traces.true_source_statics);
  CHECK(loaded.traces.true_receiver_statics == prob.traces.true_receiver_statics);
  CHECK(loaded.traces.traces == prob.traces.traces);
  CHECK(fs::exists(path + ".json"));

  // corrupt magic is rejected
  {
    std::FILE* f = std::fopen(path.c_str(), "r+b");
    REQUIRE(f);
    std::fputc('X', f);
    std::fclose(f);
  }
  CHECK_THROWS_AS(load_traces(path), std::runtime_error);
  fs::remove(path);
  fs::remove(path + ".json");
}

TEST_CASE("clamped lags are counted in diagnostics") {
  const auto prob = default_problem(2);
  const auto before = prob.clamped_lag_count();
  std::vector<double> s(prob.geometry.n_sources, 0.2);   // far out of range
  std::vector<double> r(prob.geometry.n_receivers(), -0.2);
  (void)stacking_power(prob, s, r);
  CHECK(prob.clamped_lag_count() > before);
}
