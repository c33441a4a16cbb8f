#include "landscape/objective.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace landscape {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double rosenbrock_value(const Model& x) {
  double f = 0.0;
  for (std::size_t i = 0; i + 1 < x.size(); ++i) {
    const double t = x[i + 1] - x[i] * x[i];
    const double u = 1.0 - x[i];
    f += 100.0 * t * t + u * u;
  }
  return f;
}

double griewank_value(const Model& x) {
  double quad = 0.0;
  double prod = 1.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    quad += x[i] * x[i];
    prod *= std::cos(x[i] / std::sqrt(static_cast<double>(i + 1)));
  }
  return 1.0 + quad / 4000.0 - prod;
}

}  // namespace

std::string to_string(ObjectiveKind kind) {
  switch (kind) {
    case ObjectiveKind::rosenbrock: return "rosenbrock";
    case ObjectiveKind::griewank: return "griewank";
    case ObjectiveKind::cosine_equal: return "cosine-equal";
    case ObjectiveKind::cosine_weighted: return "cosine-weighted";
    case ObjectiveKind::quadratic: return "quadratic";
    case ObjectiveKind::statics: return "statics";
    case ObjectiveKind::smoothed_statics: return "smoothed-statics";
    case ObjectiveKind::user: return "user-registered";
  }
  return "unknown";
}

ObjectiveSpec::ObjectiveSpec(ObjectiveKind kind, int dim, Bounds bounds)
    : kind_(kind), dim_(dim), bounds_(std::move(bounds)),
      counter_(std::make_shared<EvalCounter>()) {
  if (dim_ < 1) throw std::invalid_argument("objective: dimension must be >= 1");
  if (static_cast<std::size_t>(dim_) != bounds_.dim()) {
    throw std::invalid_argument("objective: dimension does not match bounds length");
  }
}

ObjectiveSpec ObjectiveSpec::rosenbrock(int dim, Bounds bounds) {
  if (dim < 2) throw std::invalid_argument("rosenbrock: dimension must be >= 2");
  return ObjectiveSpec(ObjectiveKind::rosenbrock, dim, std::move(bounds));
}

ObjectiveSpec ObjectiveSpec::rosenbrock(int dim) {
  return rosenbrock(dim, Bounds::cube(dim, -2.048, 2.048));
}

ObjectiveSpec ObjectiveSpec::griewank(int dim, Bounds bounds) {
  return ObjectiveSpec(ObjectiveKind::griewank, dim, std::move(bounds));
}

ObjectiveSpec ObjectiveSpec::griewank(int dim) {
  return griewank(dim, Bounds::cube(dim, -10.0, 10.0));
}

ObjectiveSpec ObjectiveSpec::quadratic(int dim, Bounds bounds, double cond) {
  if (cond < 1.0) throw std::invalid_argument("quadratic: cond must be >= 1");
  ObjectiveSpec spec(ObjectiveKind::quadratic, dim, std::move(bounds));
  spec.params_["cond"] = cond;
  return spec;
}

ObjectiveSpec ObjectiveSpec::quadratic(int dim) {
  return quadratic(dim, Bounds::cube(dim, -10.0, 10.0));
}

ObjectiveSpec ObjectiveSpec::user(int dim, Bounds bounds, EvalFn fn,
                                  ObjectiveKind kind,
                                  std::map<std::string, double> params) {
  ObjectiveSpec spec(kind, dim, std::move(bounds));
  spec.custom_ = std::move(fn);
  spec.params_ = std::move(params);
  return spec;
}

double ObjectiveSpec::parameter(const std::string& name, double fallback) const {
  auto it = params_.find(name);
  return it == params_.end() ? fallback : it->second;
}

void ObjectiveSpec::check_dimension(const Model& m) const {
  if (static_cast<int>(m.size()) != dim_) {
    throw std::invalid_argument("objective: model has " + std::to_string(m.size()) +
                                " coordinates, expected " + std::to_string(dim_));
  }
}

double ObjectiveSpec::evaluate_raw(const Model& m) const {
  switch (kind_) {
    case ObjectiveKind::rosenbrock:
      return rosenbrock_value(m);
    case ObjectiveKind::griewank:
      return griewank_value(m);
    case ObjectiveKind::quadratic: {
      const double cond = parameter("cond", 1.0);
      double f = 0.0;
      for (int d = 0; d < dim_; ++d) {
        const double w = dim_ == 1 ? 1.0
                                   : std::pow(cond, static_cast<double>(d) /
                                                        static_cast<double>(dim_ - 1));
        f += w * m[d] * m[d];
      }
      return f;
    }
    case ObjectiveKind::cosine_equal:
    case ObjectiveKind::cosine_weighted: {
      const double lo = bounds_.lower[0];
      const double hi = bounds_.upper[0];
      const double n = parameter("basins", 1.0);
      // Half-period phase puts all n minima strictly inside [lo, hi],
      // each with basin fraction exactly 1/n.
      const double phase = kTwoPi * n * (m[0] - lo) / (hi - lo);
      double f = 1.0 + std::cos(phase);
      if (kind_ == ObjectiveKind::cosine_weighted) {
        const double s = parameter("steepness", 0.5);
        const double xc = 0.5 * (lo + hi);
        f += s * (m[0] - xc) * (m[0] - xc);
      }
      return f;
    }
    case ObjectiveKind::statics:
    case ObjectiveKind::smoothed_statics:
    case ObjectiveKind::user:
      return custom_(m);
  }
  throw std::logic_error("objective: unreachable kind");
}

double ObjectiveSpec::evaluate(const Model& m) const {
  check_dimension(m);
  const double f = evaluate_raw(m);
  counter_->evaluations.fetch_add(1, std::memory_order_relaxed);
  if (!std::isfinite(f)) {
    counter_->faults.fetch_add(1, std::memory_order_relaxed);
  }
  return f;
}

Model ObjectiveSpec::analytic_gradient(const Model& x) const {
  Model g(dim_, 0.0);
  switch (kind_) {
    case ObjectiveKind::rosenbrock: {
      for (int i = 0; i + 1 < dim_; ++i) {
        const double t = x[i + 1] - x[i] * x[i];
        g[i] += -400.0 * x[i] * t - 2.0 * (1.0 - x[i]);
        g[i + 1] += 200.0 * t;
      }
      return g;
    }
    case ObjectiveKind::griewank: {
      // prefix/suffix products avoid division near cosine zeros
      std::vector<double> c(dim_), s(dim_), scale(dim_);
      for (int i = 0; i < dim_; ++i) {
        scale[i] = 1.0 / std::sqrt(static_cast<double>(i + 1));
        c[i] = std::cos(x[i] * scale[i]);
        s[i] = std::sin(x[i] * scale[i]);
      }
      std::vector<double> prefix(dim_ + 1, 1.0), suffix(dim_ + 1, 1.0);
      for (int i = 0; i < dim_; ++i) prefix[i + 1] = prefix[i] * c[i];
      for (int i = dim_ - 1; i >= 0; --i) suffix[i] = suffix[i + 1] * c[i];
      for (int i = 0; i < dim_; ++i) {
        g[i] = x[i] / 2000.0 + scale[i] * s[i] * prefix[i] * suffix[i + 1];
      }
      return g;
    }
    case ObjectiveKind::quadratic: {
      const double cond = parameter("cond", 1.0);
      for (int d = 0; d < dim_; ++d) {
        const double w = dim_ == 1 ? 1.0
                                   : std::pow(cond, static_cast<double>(d) /
                                                        static_cast<double>(dim_ - 1));
        g[d] = 2.0 * w * x[d];
      }
      return g;
    }
    case ObjectiveKind::cosine_equal:
    case ObjectiveKind::cosine_weighted: {
      const double lo = bounds_.lower[0];
      const double hi = bounds_.upper[0];
      const double n = parameter("basins", 1.0);
      const double omega = kTwoPi * n / (hi - lo);
      g[0] = -omega * std::sin(omega * (x[0] - lo));
      if (kind_ == ObjectiveKind::cosine_weighted) {
        const double s = parameter("steepness", 0.5);
        const double xc = 0.5 * (lo + hi);
        g[0] += 2.0 * s * (x[0] - xc);
      }
      return g;
    }
    default:
      throw std::logic_error("objective: no analytic gradient for this kind");
  }
}

Model ObjectiveSpec::fd_gradient(const Model& m) const {
  Model g(dim_, 0.0);
  Model probe = m;
  for (int d = 0; d < dim_; ++d) {
    const double h = fd_epsilon_ * bounds_.width(d);
    const double saved = probe[d];
    probe[d] = saved + h;
    const double fp = evaluate(probe);
    probe[d] = saved - h;
    const double fm = evaluate(probe);
    probe[d] = saved;
    g[d] = (fp - fm) / (2.0 * h);
  }
  return g;
}

Model ObjectiveSpec::gradient(const Model& m) const {
  check_dimension(m);
  Model g;
  switch (kind_) {
    case ObjectiveKind::statics:
    case ObjectiveKind::smoothed_statics:
    case ObjectiveKind::user:
      g = custom_grad_ ? custom_grad_(m) : fd_gradient(m);
      break;
    default:
      g = analytic_gradient(m);
      break;
  }
  if (!all_finite(g)) {
    counter_->faults.fetch_add(1, std::memory_order_relaxed);
  }
  return g;
}

ObjectiveSpec make_cosine_family(int n_basins, bool equal_weights,
                                 const Bounds& bounds, double steepness) {
  if (n_basins < 1) throw std::invalid_argument("cosine family: n_basins must be >= 1");
  if (bounds.dim() != 1) throw std::invalid_argument("cosine family: bounds must be 1-D");
  std::map<std::string, double> params;
  params["basins"] = static_cast<double>(n_basins);
  if (!equal_weights) params["steepness"] = steepness;
  return ObjectiveSpec::user(1, bounds, nullptr,
                             equal_weights ? ObjectiveKind::cosine_equal
                                           : ObjectiveKind::cosine_weighted,
                             std::move(params));
}

std::vector<std::pair<double, double>> slice(const ObjectiveSpec& spec,
                                             SliceMode mode, int axis_index,
                                             int samples) {
  if (samples < 2) throw std::invalid_argument("slice: samples must be >= 2");
  if (mode == SliceMode::axis &&
      (axis_index < 0 || axis_index >= spec.dimension())) {
    throw std::invalid_argument("slice: axis_index out of range");
  }
  const auto& b = spec.bounds();
  // sweep the axis (or the common diagonal parameter) over its bound range
  const int d0 = mode == SliceMode::axis ? axis_index : 0;
  std::vector<std::pair<double, double>> out;
  out.reserve(samples);
  for (int k = 0; k < samples; ++k) {
    const double t = b.lower[d0] + b.width(d0) * static_cast<double>(k) /
                                       static_cast<double>(samples - 1);
    Model m(spec.dimension(), 0.0);
    if (mode == SliceMode::diagonal) {
      for (int d = 0; d < spec.dimension(); ++d) m[d] = t;
    } else {
      m[axis_index] = t;
    }
    out.emplace_back(t, spec.evaluate(m));
  }
  return out;
}

}  // namespace landscape
