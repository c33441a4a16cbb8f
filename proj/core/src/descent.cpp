#include "landscape/descent.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace landscape {

void DescentConfig::validate() const {
  if (!(grad_tol > 0.0)) throw std::invalid_argument("descent: grad_tol must be > 0");
  if (max_iters < 0) throw std::invalid_argument("descent: max_iters must be >= 1 (or 0 for auto)");
  if (!(line_search.backtrack > 0.0 && line_search.backtrack < 1.0)) {
    throw std::invalid_argument("descent: backtrack factor must be in (0,1)");
  }
  if (!(line_search.sufficient_decrease > 0.0 && line_search.sufficient_decrease < 1.0)) {
    throw std::invalid_argument("descent: sufficient-decrease constant must be in (0,1)");
  }
}

int DescentConfig::effective_max_iters(int dim) const {
  return max_iters > 0 ? max_iters : 200 * dim;
}

int DescentConfig::effective_restart(int dim) const {
  return restart_interval > 0 ? restart_interval : dim;
}

std::string to_string(DescentStatus s) {
  switch (s) {
    case DescentStatus::converged: return "converged";
    case DescentStatus::max_iters: return "max_iters";
    case DescentStatus::line_search_failed: return "line_search_failed";
  }
  return "unknown";
}

namespace {

double dot(const Model& a, const Model& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

double norm2(const Model& a) { return std::sqrt(dot(a, a)); }

struct LineSearchOutcome {
  bool ok = false;
  double alpha = 0.0;
  double value = 0.0;
};

// Armijo backtracking from alpha0.  Each round fits a quadratic through
// (phi(0), phi'(0), phi(alpha)) and prefers its minimizer when that step
// satisfies the decrease condition: on a quadratic objective this is the
// exact line minimum (keeping CG near its linear-case finite
// termination), and in a multi-well landscape it is the step that stays
// in the current basin rather than a lucky long hop.
LineSearchOutcome line_search(const ObjectiveSpec& spec, const Model& x,
                              const Model& dir, double f0, double slope,
                              double alpha0, double alpha_cap,
                              const LineSearchParams& p) {
  LineSearchOutcome out;
  Model trial(x.size());
  auto phi = [&](double a) {
    for (std::size_t i = 0; i < x.size(); ++i) trial[i] = x[i] + a * dir[i];
    return spec.evaluate(trial);
  };
  const double c1 = p.sufficient_decrease;
  auto acceptable = [&](double a, double fa) {
    return std::isfinite(fa) && fa <= f0 + c1 * a * slope;
  };
  double alpha = std::min(alpha0, alpha_cap);
  for (int k = 0; k < p.max_backtracks; ++k) {
    const double fa = phi(alpha);
    const double denom = fa - f0 - slope * alpha;
    if (std::isfinite(fa) && denom > 0.0) {
      const double aq =
          std::min(-0.5 * slope * alpha * alpha / denom, alpha_cap);
      if (aq > 1e-12 * alpha && aq < 16.0 * alpha && aq != alpha) {
        const double fq = phi(aq);
        if (acceptable(aq, fq)) {
          out.ok = true;
          out.alpha = aq;
          out.value = fq;
          return out;
        }
      }
    }
    if (acceptable(alpha, fa)) {
      out.ok = true;
      out.alpha = alpha;
      out.value = fa;
      return out;
    }
    alpha *= p.backtrack;
  }
  return out;
}

}  // namespace

DescentResult descend(const ObjectiveSpec& spec, const Model& start,
                      const DescentConfig& config) {
  config.validate();
  const int n = spec.dimension();
  if (static_cast<int>(start.size()) != n) {
    throw std::invalid_argument("descend: start dimension mismatch");
  }

  DescentResult res;
  res.start = start;

  Model x = start;
  double f = spec.evaluate(x);
  Model g = spec.gradient(x);
  double gnorm = norm2(g);

  const int max_iters = config.effective_max_iters(n);
  const int restart = config.effective_restart(n);

  if (!std::isfinite(f) || !all_finite(g)) {
    res.end = x;
    res.value = f;
    res.grad_norm = gnorm;
    res.status = DescentStatus::line_search_failed;
    return res;
  }

  Model dir(n);
  for (int i = 0; i < n; ++i) dir[i] = -g[i];
  int since_restart = 0;
  int iter = 0;
  DescentStatus status = DescentStatus::max_iters;

  double min_width = spec.bounds().width(0);
  for (int d = 1; d < n; ++d) min_width = std::min(min_width, spec.bounds().width(d));
  const double max_step = config.line_search.max_step_rel * min_width;
  // initial trial ~5% of the narrowest bound width, damped by the
  // gradient magnitude; the quadratic interpolation then grows or
  // shrinks it from local information
  const double step_scale = 0.05 * min_width * config.line_search.initial_step;

  if (gnorm <= config.grad_tol) {
    status = DescentStatus::converged;
  } else {
    for (iter = 0; iter < max_iters;) {
      double slope = dot(g, dir);
      if (slope >= 0.0) {  // not a descent direction: steepest-descent restart
        for (int i = 0; i < n; ++i) dir[i] = -g[i];
        slope = -gnorm * gnorm;
        since_restart = 0;
      }
      const double alpha0 = step_scale / (1.0 + gnorm);
      double dir_norm = std::sqrt(dot(dir, dir));
      double alpha_cap = max_step > 0.0 && dir_norm > 0.0
                             ? max_step / dir_norm
                             : std::numeric_limits<double>::infinity();
      LineSearchOutcome ls = line_search(spec, x, dir, f, slope, alpha0,
                                         alpha_cap, config.line_search);
      if (!ls.ok && since_restart != 0) {
        // retry once along steepest descent before giving up
        for (int i = 0; i < n; ++i) dir[i] = -g[i];
        slope = -gnorm * gnorm;
        since_restart = 0;
        alpha_cap = max_step > 0.0 ? max_step / gnorm
                                   : std::numeric_limits<double>::infinity();
        ls = line_search(spec, x, dir, f, slope, alpha0, alpha_cap,
                         config.line_search);
      }
      if (!ls.ok) {
        status = DescentStatus::line_search_failed;
        break;
      }

      for (int i = 0; i < n; ++i) x[i] += ls.alpha * dir[i];
      f = ls.value;
      ++iter;

      Model g_new = spec.gradient(x);
      if (!all_finite(g_new) || !std::isfinite(f)) {
        status = DescentStatus::line_search_failed;
        break;
      }
      const double gnorm_new = norm2(g_new);
      if (gnorm_new <= config.grad_tol) {
        g = std::move(g_new);
        gnorm = gnorm_new;
        status = DescentStatus::converged;
        break;
      }

      ++since_restart;
      double beta = 0.0;
      if (since_restart < restart) {
        // Polak-Ribiere with non-negativity clamp
        double num = 0.0;
        for (int i = 0; i < n; ++i) num += g_new[i] * (g_new[i] - g[i]);
        beta = std::max(0.0, num / (gnorm * gnorm));
      } else {
        since_restart = 0;
      }
      for (int i = 0; i < n; ++i) dir[i] = -g_new[i] + beta * dir[i];
      g = std::move(g_new);
      gnorm = gnorm_new;
    }
  }

  res.end = std::move(x);
  res.value = f;
  res.grad_norm = gnorm;
  res.iterations = iter;
  res.status = status;
  return res;
}

}  // namespace landscape
