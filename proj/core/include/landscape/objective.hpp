#pragma once

#include <atomic>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "landscape/types.hpp"

namespace landscape {

enum class ObjectiveKind {
  rosenbrock,
  griewank,
  cosine_equal,
  cosine_weighted,
  quadratic,
  statics,
  smoothed_statics,
  user,
};

std::string to_string(ObjectiveKind kind);

// Tallies shared by all copies of a spec; one analysis run = one counter.
struct EvalCounter {
  std::atomic<std::uint64_t> evaluations{0};
  std::atomic<std::uint64_t> faults{0};
};

// An objective function over a bounded model space.  Built-in kinds carry
// analytic gradients; statics and user-registered kinds are differentiated
// by central finite differences with a step proportional to the bound
// width of each dimension.
class ObjectiveSpec {
 public:
  using EvalFn = std::function<double(const Model&)>;
  using GradFn = std::function<Model(const Model&)>;
  using CanonFn = std::function<void(Model&)>;

  static ObjectiveSpec rosenbrock(int dim, Bounds bounds);
  static ObjectiveSpec rosenbrock(int dim);  // default bounds [-2.048, 2.048]^N
  static ObjectiveSpec griewank(int dim, Bounds bounds);
  static ObjectiveSpec griewank(int dim);    // default bounds [-10, 10]^N
  // F(x) = sum_d w_d x_d^2 with w_d = cond^(d/(N-1)); cond = 1 gives the
  // plain sphere.
  static ObjectiveSpec quadratic(int dim, Bounds bounds, double cond = 1.0);
  static ObjectiveSpec quadratic(int dim);   // default bounds [-10, 10]^N

  // Registered evaluators (library embedding API).  `kind` distinguishes
  // statics / smoothed-statics wrappers from plain user functions.
  static ObjectiveSpec user(int dim, Bounds bounds, EvalFn fn,
                            ObjectiveKind kind = ObjectiveKind::user,
                            std::map<std::string, double> params = {});

  ObjectiveKind kind() const { return kind_; }
  int dimension() const { return dim_; }
  const Bounds& bounds() const { return bounds_; }
  const std::map<std::string, double>& parameters() const { return params_; }
  double parameter(const std::string& name, double fallback) const;

  double evaluate(const Model& m) const;
  Model gradient(const Model& m) const;

  // Registered gradient for custom kinds.  The statics objective uses
  // this to evaluate its central differences sparsely (only correlation
  // pairs incident to the perturbed coordinate change); the formula and
  // step are the same as the generic path.
  void set_gradient(GradFn fn) { custom_grad_ = std::move(fn); }

  // Maps descent endpoints to a canonical representative before basin
  // clustering (used by the statics objective to quotient out its gauge
  // mode).  Identity when unset.
  void set_canonicalize(CanonFn fn) { canonicalize_ = std::move(fn); }
  void canonicalize(Model& m) const {
    if (canonicalize_) canonicalize_(m);
  }

  const std::shared_ptr<EvalCounter>& counter() const { return counter_; }
  std::uint64_t evaluations() const { return counter_->evaluations.load(); }
  std::uint64_t faults() const { return counter_->faults.load(); }

  // Relative finite-difference step (fraction of bound width per dim).
  double fd_epsilon() const { return fd_epsilon_; }
  void set_fd_epsilon(double eps) { fd_epsilon_ = eps; }

 private:
  ObjectiveSpec(ObjectiveKind kind, int dim, Bounds bounds);

  void check_dimension(const Model& m) const;
  double evaluate_raw(const Model& m) const;
  Model analytic_gradient(const Model& m) const;
  Model fd_gradient(const Model& m) const;

  ObjectiveKind kind_;
  int dim_;
  Bounds bounds_;
  std::map<std::string, double> params_;
  EvalFn custom_;
  GradFn custom_grad_;
  CanonFn canonicalize_;
  double fd_epsilon_ = 1e-7;
  std::shared_ptr<EvalCounter> counter_;
};

// One-dimensional family used to exercise the entropy measure: n_basins
// identical cosine wells, optionally with a quadratic bowl that deepens
// the central well relative to the flanks.
ObjectiveSpec make_cosine_family(int n_basins, bool equal_weights,
                                 const Bounds& bounds, double steepness = 0.5);

// 1-D restriction of an objective.  diagonal: F(t, t, ..., t);
// axis: all coordinates zero except `axis_index` = t.  t sweeps the
// bounds uniformly with `samples` points.
enum class SliceMode { diagonal, axis };
std::vector<std::pair<double, double>> slice(const ObjectiveSpec& spec,
                                             SliceMode mode, int axis_index,
                                             int samples);

}  // namespace landscape
