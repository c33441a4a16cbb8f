// landscape: topography analysis of objective-function landscapes by
// multistart descent, with entropy-based complexity and confidence bounds.

#include <chrono>
#include <cstdio>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "landscape/confidence.hpp"
#include "landscape/entropy.hpp"
#include "landscape/mra.hpp"
#include "landscape/objective.hpp"
#include "landscape/report_io.hpp"
#include "landscape/rhc.hpp"
#include "landscape/statics.hpp"
#include "landscape/tridiag.hpp"

namespace {

using namespace landscape;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, sep)) parts.push_back(item);
  return parts;
}

double parse_num(const std::string& s, const std::string& what) {
  try {
    std::size_t pos = 0;
    const double v = std::stod(s, &pos);
    if (pos != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw UsageError("malformed " + what + ": '" + s + "'");
  }
}

// "lo:hi" for every dimension, or a per-dimension comma list
// "lo1:hi1,lo2:hi2,...".
Bounds parse_bounds(const std::string& text, int dim) {
  const auto entries = split(text, ',');
  std::vector<double> lo, hi;
  auto push_pair = [&](const std::string& pair) {
    const auto lh = split(pair, ':');
    if (lh.size() != 2) throw UsageError("malformed bounds entry: '" + pair + "'");
    lo.push_back(parse_num(lh[0], "bounds"));
    hi.push_back(parse_num(lh[1], "bounds"));
  };
  if (entries.size() == 1) {
    push_pair(entries[0]);
    lo.assign(dim, lo[0]);
    hi.assign(dim, hi[0]);
  } else {
    if (static_cast<int>(entries.size()) != dim) {
      throw UsageError("bounds list has " + std::to_string(entries.size()) +
                       " entries for dimension " + std::to_string(dim));
    }
    for (const auto& e : entries) push_pair(e);
  }
  try {
    return Bounds(std::move(lo), std::move(hi));
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
}

std::pair<int, int> parse_range(const std::string& text) {
  const auto lh = split(text, ':');
  if (lh.size() != 2) throw UsageError("malformed range: '" + text + "'");
  const int lo = static_cast<int>(parse_num(lh[0], "range"));
  const int hi = static_cast<int>(parse_num(lh[1], "range"));
  if (lo > hi) throw UsageError("range is empty: '" + text + "'");
  return {lo, hi};
}

std::vector<double> parse_list(const std::string& text, const std::string& what) {
  std::vector<double> out;
  for (const auto& e : split(text, ',')) out.push_back(parse_num(e, what));
  if (out.empty()) throw UsageError("empty " + what + " list");
  return out;
}

// shared analysis knobs
struct RunFlags {
  int pop = 1000;
  std::uint64_t seed = 0;
  int workers = 0;
  std::string alpha_list = "0.05,0.10";
  double grad_tol = 1e-6;
  int max_iters = 0;
  double cluster_radius = 1e-3;
  double cluster_value_tol = 1e-6;
  std::string out;
};

void add_run_flags(CLI::App* cmd, RunFlags& f) {
  cmd->add_option("--pop", f.pop, "population size K");
  cmd->add_option("--seed", f.seed, "RNG seed");
  cmd->add_option("--workers", f.workers, "worker threads (0 = auto; never affects results)");
  cmd->add_option("--alpha-list", f.alpha_list, "comma list of alphas for intervals");
  cmd->add_option("--grad-tol", f.grad_tol, "descent gradient-norm tolerance");
  cmd->add_option("--max-iters", f.max_iters, "descent iteration cap (0 = 200*dim)");
  cmd->add_option("--cluster-radius", f.cluster_radius, "cluster radius, relative to bound width");
  cmd->add_option("--cluster-value-tol", f.cluster_value_tol, "cluster value tolerance, relative to spread");
  cmd->add_option("--out", f.out, "output file (default: stdout)");
}

RhcConfig to_rhc_config(const RunFlags& f) {
  RhcConfig cfg;
  cfg.population = f.pop;
  cfg.seed = f.seed;
  cfg.descent.grad_tol = f.grad_tol;
  cfg.descent.max_iters = f.max_iters;
  cfg.cluster_radius_rel = f.cluster_radius;
  cfg.cluster_value_tol_rel = f.cluster_value_tol;
  return cfg;
}

struct FunctionFlags {
  std::string function;
  int dim = 0;
  std::string bounds;
  int basins = 0;
  double steepness = 0.5;
  double cond = 1.0;
};

void add_function_flags(CLI::App* cmd, FunctionFlags& f, bool need_function = true) {
  auto* opt = cmd->add_option("--function", f.function,
                              "rosenbrock | griewank | cosine-equal | cosine-weighted | quadratic");
  if (need_function) opt->required();
  cmd->add_option("--dim", f.dim, "dimension N");
  cmd->add_option("--bounds", f.bounds, "lo:hi for all dims, or comma list per dim (use --bounds=-10:10)");
  cmd->add_option("--basins", f.basins, "basin count for the cosine family");
  cmd->add_option("--steepness", f.steepness, "cosine-weighted bowl steepness");
  cmd->add_option("--cond", f.cond, "quadratic axis-weight spread");
}

ObjectiveSpec make_builtin_spec(const FunctionFlags& f) {
  const std::string& fn = f.function;
  const bool cosine = fn == "cosine-equal" || fn == "cosine-weighted";
  int dim = f.dim;
  if (dim == 0) {
    if (cosine) {
      dim = 1;
    } else {
      throw UsageError("--dim is required for function '" + fn + "'");
    }
  }
  if (cosine && dim != 1) throw UsageError("cosine family is 1-D");

  if (cosine) {
    if (f.basins < 1) throw UsageError("--basins is required for the cosine family");
    Bounds b = f.bounds.empty() ? Bounds::cube(1, 0.0, static_cast<double>(f.basins))
                                : parse_bounds(f.bounds, 1);
    return make_cosine_family(f.basins, fn == "cosine-equal", b, f.steepness);
  }
  if (fn == "rosenbrock") {
    return f.bounds.empty() ? ObjectiveSpec::rosenbrock(dim)
                            : ObjectiveSpec::rosenbrock(dim, parse_bounds(f.bounds, dim));
  }
  if (fn == "griewank") {
    return f.bounds.empty() ? ObjectiveSpec::griewank(dim)
                            : ObjectiveSpec::griewank(dim, parse_bounds(f.bounds, dim));
  }
  if (fn == "quadratic") {
    Bounds b = f.bounds.empty() ? Bounds::cube(dim, -10.0, 10.0)
                                : parse_bounds(f.bounds, dim);
    return ObjectiveSpec::quadratic(dim, std::move(b), f.cond);
  }
  throw UsageError("unknown function '" + fn + "'");
}

void emit(const std::string& out_path, const std::string& contents) {
  if (out_path.empty()) {
    std::cout << contents;
  } else {
    write_file(out_path, contents);
  }
}

void emit_manifest_sidecar(const std::string& out_path, const RunManifest& m) {
  if (!out_path.empty()) write_file(out_path + ".manifest.json", manifest_json(m));
}

class Stopwatch {
 public:
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0_).count();
  }

 private:
  std::chrono::steady_clock::time_point t0_ = std::chrono::steady_clock::now();
};

// analysis pipeline shared by `analyze` and `statics-analyze`
int run_analysis(const ObjectiveSpec& spec, const RunFlags& flags,
                 RunManifest manifest) {
  Stopwatch watch;
  const RhcConfig cfg = to_rhc_config(flags);
  cfg.validate();
  const auto alphas = parse_list(flags.alpha_list, "alpha");

  const auto starts = sample_uniform(spec.bounds(), cfg.population, cfg.seed);
  const auto results = run_descents(spec, starts, cfg.descent, flags.workers);
  const BasinTable table = cluster_minima(results, spec, cfg);
  EntropyReport report = estimate_entropy(table);
  attach_confidence(report, alphas);

  if (table.failures > 0) {
    // diagnostic: entropy with non-converged endpoints clustered as well,
    // the convention that inflates the estimate under ill-conditioning
    auto forced = results;
    for (auto& r : forced) r.status = DescentStatus::converged;
    const BasinTable all_table = cluster_minima(forced, spec, cfg);
    const EntropyReport all_report = estimate_entropy(all_table);
    std::fprintf(stderr,
                 "warning: %d of %d descents did not converge\n"
                 "  ce_hat (converged only)       = %s over %d minima\n"
                 "  ce_hat (all endpoints folded) = %s over %d minima\n",
                 table.failures, table.population,
                 format_double(report.ce_hat).c_str(), report.n_hat,
                 format_double(all_report.ce_hat).c_str(), all_report.n_hat);
  }

  manifest.evaluations = spec.evaluations();
  manifest.wall_time_s = watch.seconds();
  emit(flags.out, entropy_report_json(report, manifest));
  emit_manifest_sidecar(flags.out, manifest);
  return 0;
}

std::string u64s(std::uint64_t v) { return std::to_string(v); }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"objective-landscape topography: multistart descent, basin statistics,\n"
               "depth-weighted entropy and confidence intervals"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(kVersion));

  // ---------------- analyze ----------------
  auto* analyze = app.add_subcommand("analyze", "RHC + entropy report for a built-in function");
  FunctionFlags afn;
  RunFlags arun;
  add_function_flags(analyze, afn);
  add_run_flags(analyze, arun);

  // ---------------- sweep ----------------
  auto* sweep = app.add_subcommand("sweep", "entropy across a dimension range and population list");
  FunctionFlags sfn;
  RunFlags srun;
  std::string sweep_dims = "1:20";
  std::string sweep_pops = "500,1000";
  add_function_flags(sweep, sfn);
  add_run_flags(sweep, srun);
  sweep->add_option("--dims", sweep_dims, "dimension range lo:hi");
  sweep->add_option("--pops", sweep_pops, "comma list of population sizes");

  // ---------------- condition ----------------
  auto* condition = app.add_subcommand("condition", "Rosenbrock Hessian condition number vs dimension");
  std::string cond_dims = "2:100";
  std::string cond_out;
  condition->add_option("--dims", cond_dims, "dimension range lo:hi");
  condition->add_option("--out", cond_out, "output CSV (default: stdout)");

  // ---------------- slice ----------------
  auto* slice_cmd = app.add_subcommand("slice", "1-D slice of a function (CSV t,f)");
  FunctionFlags slfn;
  std::string slice_mode = "diagonal";
  int slice_axis = 0;
  int slice_samples = 1001;
  std::string slice_out;
  add_function_flags(slice_cmd, slfn);
  slice_cmd->add_option("--mode", slice_mode, "diagonal | axis");
  slice_cmd->add_option("--axis", slice_axis, "axis index for mode=axis");
  slice_cmd->add_option("--samples", slice_samples, "sample count");
  slice_cmd->add_option("--out", slice_out, "output CSV (default: stdout)");

  // ---------------- statics-gen ----------------
  auto* sgen = app.add_subcommand("statics-gen", "generate a synthetic residual-statics problem");
  std::string sgen_out;
  std::uint64_t sgen_seed = 0;
  int sgen_sources = 20, sgen_channels = 16, sgen_samples = 512, sgen_window = 32;
  double sgen_rate = 0.004, sgen_max_static = 0.040, sgen_noise = 0.0;
  double sgen_freq = 25.0;
  int sgen_spikes = 12;
  sgen->add_option("--out", sgen_out, "output trace file")->required();
  sgen->add_option("--seed", sgen_seed, "RNG seed");
  sgen->add_option("--sources", sgen_sources, "number of sources");
  sgen->add_option("--channels", sgen_channels, "channels per source");
  sgen->add_option("--samples", sgen_samples, "samples per trace");
  sgen->add_option("--sample-rate", sgen_rate, "seconds per sample");
  sgen->add_option("--max-static", sgen_max_static, "|shift| bound in seconds");
  sgen->add_option("--window", sgen_window, "correlation window in samples");
  sgen->add_option("--noise", sgen_noise, "white-noise level relative to signal RMS");
  sgen->add_option("--wavelet-freq", sgen_freq, "Ricker peak frequency (Hz)");
  sgen->add_option("--spikes", sgen_spikes, "reflectivity spike count");

  // ---------------- statics-analyze ----------------
  auto* sana = app.add_subcommand("statics-analyze", "RHC + entropy report for a stored statics problem");
  std::string sana_traces;
  RunFlags sana_run;
  sana->add_option("--traces", sana_traces, "trace file from statics-gen")->required();
  add_run_flags(sana, sana_run);

  // ---------------- mrhc ----------------
  auto* mrhc = app.add_subcommand("mrhc", "multi-resolution analysis of a statics problem");
  std::string mrhc_traces, mrhc_mode = "experiment", mrhc_out;
  int mrhc_levels = 5, mrhc_repeats = 8;
  RunFlags mrhc_run;
  mrhc->add_option("--traces", mrhc_traces, "trace file from statics-gen")->required();
  mrhc->add_option("--levels", mrhc_levels, "smoothing levels L (levels 0..L)");
  mrhc->add_option("--repeats", mrhc_repeats, "independent repeats (experiment mode)");
  mrhc->add_option("--mode", mrhc_mode, "experiment (per-level CSV) | chained (algorithm run, JSON)");
  add_run_flags(mrhc, mrhc_run);

  try {
    try {
      app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
      return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
      return app.exit(e);
    } catch (const CLI::ParseError& e) {
      app.exit(e);
      return 2;
    }

    if (*analyze) {
      ObjectiveSpec spec = make_builtin_spec(afn);
      RunManifest m;
      m.command = "analyze";
      m.seed = arun.seed;
      m.config = {{"function", afn.function},
                  {"dim", std::to_string(spec.dimension())},
                  {"bounds", afn.bounds.empty() ? "(default)" : afn.bounds},
                  {"basins", std::to_string(afn.basins)},
                  {"pop", std::to_string(arun.pop)},
                  {"seed", u64s(arun.seed)},
                  {"alpha-list", arun.alpha_list},
                  {"grad-tol", format_double(arun.grad_tol)},
                  {"max-iters", std::to_string(arun.max_iters)},
                  {"cluster-radius", format_double(arun.cluster_radius)},
                  {"cluster-value-tol", format_double(arun.cluster_value_tol)}};
      return run_analysis(spec, arun, std::move(m));
    }

    if (*sweep) {
      Stopwatch watch;
      const auto [dim_lo, dim_hi] = parse_range(sweep_dims);
      const auto pops = parse_list(sweep_pops, "pops");
      std::vector<std::vector<std::string>> rows;
      std::uint64_t evals = 0;
      for (int dim = std::max(1, dim_lo); dim <= dim_hi; ++dim) {
        FunctionFlags cell = sfn;
        cell.dim = dim;
        if (sfn.function == "rosenbrock" && dim < 2) continue;
        for (double popf : pops) {
          RunFlags cell_run = srun;
          cell_run.pop = static_cast<int>(popf);
          ObjectiveSpec spec = make_builtin_spec(cell);
          const RhcConfig cfg = to_rhc_config(cell_run);
          const BasinTable table = run_rhc(spec, cfg, cell_run.workers);
          EntropyReport rep = estimate_entropy(table);
          const ErrorBound eb = entropy_error_bound(rep, rep.population);
          rows.push_back({std::to_string(dim), std::to_string(cell_run.pop),
                          format_double(rep.ce_hat),
                          eb.valid ? format_double(eb.delta) : "nan",
                          std::to_string(table.failures)});
          evals += spec.evaluations();
        }
      }
      RunManifest m;
      m.command = "sweep";
      m.seed = srun.seed;
      m.config = {{"function", sfn.function},
                  {"dims", sweep_dims},
                  {"pops", sweep_pops},
                  {"bounds", sfn.bounds.empty() ? "(default)" : sfn.bounds},
                  {"seed", u64s(srun.seed)}};
      m.evaluations = evals;
      m.wall_time_s = watch.seconds();
      emit(srun.out, csv_table("n_dims,pop,ce_hat,delta,failures", rows));
      emit_manifest_sidecar(srun.out, m);
      return 0;
    }

    if (*condition) {
      Stopwatch watch;
      const auto [lo, hi] = parse_range(cond_dims);
      if (lo < 2) throw UsageError("condition: dims must start at >= 2");
      std::vector<std::vector<std::string>> rows;
      for (int n = lo; n <= hi; ++n) {
        rows.push_back({std::to_string(n), format_double(hessian_condition_number(n))});
      }
      RunManifest m;
      m.command = "condition";
      m.config = {{"dims", cond_dims}};
      m.wall_time_s = watch.seconds();
      emit(cond_out, csv_table("n_dims,condition_number", rows));
      emit_manifest_sidecar(cond_out, m);
      return 0;
    }

    if (*slice_cmd) {
      Stopwatch watch;
      ObjectiveSpec spec = make_builtin_spec(slfn);
      SliceMode mode;
      if (slice_mode == "diagonal") {
        mode = SliceMode::diagonal;
      } else if (slice_mode == "axis") {
        mode = SliceMode::axis;
      } else {
        throw UsageError("slice: mode must be diagonal or axis");
      }
      const auto pts = landscape::slice(spec, mode, slice_axis, slice_samples);
      std::vector<std::vector<std::string>> rows;
      rows.reserve(pts.size());
      for (const auto& [t, fval] : pts) {
        rows.push_back({format_double(t), format_double(fval)});
      }
      RunManifest m;
      m.command = "slice";
      m.config = {{"function", slfn.function},
                  {"dim", std::to_string(spec.dimension())},
                  {"mode", slice_mode},
                  {"axis", std::to_string(slice_axis)},
                  {"samples", std::to_string(slice_samples)}};
      m.evaluations = spec.evaluations();
      m.wall_time_s = watch.seconds();
      emit(slice_out, csv_table("t,f", rows));
      emit_manifest_sidecar(slice_out, m);
      return 0;
    }

    if (*sgen) {
      Stopwatch watch;
      StaticsGeometry geom;
      geom.n_sources = sgen_sources;
      geom.n_channels = sgen_channels;
      WaveletParams wavelet;
      wavelet.peak_frequency_hz = sgen_freq;
      wavelet.n_spikes = sgen_spikes;
      const StaticsProblem prob =
          generate_problem(geom, sgen_seed, wavelet, sgen_noise, sgen_max_static,
                           sgen_rate, sgen_samples, sgen_window);
      std::ostringstream sidecar;
      sidecar << "{\"seed\": " << sgen_seed
              << ", \"n_sources\": " << sgen_sources
              << ", \"n_channels\": " << sgen_channels
              << ", \"n_samples\": " << sgen_samples
              << ", \"sample_rate\": " << format_double(sgen_rate)
              << ", \"max_static\": " << format_double(sgen_max_static)
              << ", \"correlation_window\": " << sgen_window
              << ", \"noise_level\": " << format_double(sgen_noise)
              << ", \"wavelet_peak_hz\": " << format_double(sgen_freq)
              << ", \"n_spikes\": " << sgen_spikes
              << ", \"version\": \"" << kVersion << "\"}\n";
      save_traces(prob, sgen_out, sidecar.str());
      RunManifest m;
      m.command = "statics-gen";
      m.seed = sgen_seed;
      m.config = {{"sources", std::to_string(sgen_sources)},
                  {"channels", std::to_string(sgen_channels)},
                  {"samples", std::to_string(sgen_samples)},
                  {"sample-rate", format_double(sgen_rate)},
                  {"max-static", format_double(sgen_max_static)},
                  {"window", std::to_string(sgen_window)},
                  {"noise", format_double(sgen_noise)},
                  {"wavelet-freq", format_double(sgen_freq)},
                  {"spikes", std::to_string(sgen_spikes)}};
      m.wall_time_s = watch.seconds();
      emit_manifest_sidecar(sgen_out, m);
      std::fprintf(stderr, "wrote %s (%d traces, %d receivers, %d unknowns)\n",
                   sgen_out.c_str(), prob.geometry.n_traces(),
                   prob.geometry.n_receivers(), prob.geometry.n_unknowns());
      return 0;
    }

    if (*sana) {
      const StaticsProblem prob = load_traces(sana_traces);
      ObjectiveSpec spec = objective_spec(prob);
      RunManifest m;
      m.command = "statics-analyze";
      m.seed = sana_run.seed;
      m.config = {{"traces", sana_traces},
                  {"pop", std::to_string(sana_run.pop)},
                  {"seed", u64s(sana_run.seed)},
                  {"grad-tol", format_double(sana_run.grad_tol)},
                  {"cluster-radius", format_double(sana_run.cluster_radius)}};
      return run_analysis(spec, sana_run, std::move(m));
    }

    if (*mrhc) {
      Stopwatch watch;
      const StaticsProblem prob = load_traces(mrhc_traces);
      const SmoothingSchedule schedule = dyadic_schedule(mrhc_levels);
      const RhcConfig cfg = to_rhc_config(mrhc_run);
      RunManifest m;
      m.command = "mrhc";
      m.seed = mrhc_run.seed;
      m.config = {{"traces", mrhc_traces},
                  {"levels", std::to_string(mrhc_levels)},
                  {"repeats", std::to_string(mrhc_repeats)},
                  {"mode", mrhc_mode},
                  {"pop", std::to_string(mrhc_run.pop)},
                  {"seed", u64s(mrhc_run.seed)}};
      if (mrhc_mode == "experiment") {
        const auto stats =
            level_complexity_experiment(prob, schedule, cfg, mrhc_repeats, mrhc_run.workers);
        std::vector<std::vector<std::string>> rows;
        for (const auto& s : stats) {
          rows.push_back({std::to_string(s.level), format_double(s.mean_ce),
                          format_double(s.std_ce), std::to_string(s.repeats)});
        }
        m.wall_time_s = watch.seconds();
        emit(mrhc_run.out, csv_table("level,mean_ce,std_ce,n_repeats", rows));
        emit_manifest_sidecar(mrhc_run.out, m);
        return 0;
      }
      if (mrhc_mode != "chained") throw UsageError("mrhc: mode must be experiment or chained");
      const auto levels = run_mrhc(prob, schedule, cfg, mrhc_run.workers);
      std::ostringstream os;
      os << "{\n  \"levels\": [\n";
      for (std::size_t i = 0; i < levels.size(); ++i) {
        const auto& lr = levels[i];
        os << "    {\"level\": " << lr.level << ", \"n_hat\": " << lr.report.n_hat
           << ", \"K\": " << lr.report.population
           << ", \"failures\": " << lr.report.failures
           << ", \"ce_hat\": " << format_double(lr.report.ce_hat)
           << ", \"y_min\": " << format_double(lr.report.y_min) << "}"
           << (i + 1 < levels.size() ? "," : "") << "\n";
      }
      os << "  ],\n  \"solution\": {\"value\": "
         << format_double(levels.back().report.y_min) << ", \"model\": [";
      const auto& best = levels.back().table.minima.front().representative;
      for (std::size_t d = 0; d < best.size(); ++d) {
        os << (d ? ", " : "") << format_double(best[d]);
      }
      os << "]},\n  \"manifest\": ";
      m.wall_time_s = watch.seconds();
      os << manifest_json_embedded(m) << "\n}\n";
      emit(mrhc_run.out, os.str());
      emit_manifest_sidecar(mrhc_run.out, m);
      return 0;
    }

    throw UsageError("no subcommand selected");
  } catch (const UsageError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const std::invalid_argument& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "failure: %s\n", e.what());
    return 3;
  }
}
