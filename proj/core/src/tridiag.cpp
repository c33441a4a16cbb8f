#include "landscape/tridiag.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace landscape {

TridiagonalMatrix rosenbrock_hessian(const Model& x) {
  const int n = static_cast<int>(x.size());
  if (n < 2) throw std::invalid_argument("rosenbrock_hessian: dimension must be >= 2");
  TridiagonalMatrix h;
  h.diag.resize(n);
  h.sub.resize(n - 1);
  h.super.resize(n - 1);
  h.diag[0] = 2.0 + 1200.0 * x[0] * x[0] - 400.0 * x[1];
  for (int i = 1; i < n - 1; ++i) {
    h.diag[i] = 202.0 + 1200.0 * x[i - 1] * x[i - 1] - 400.0 * x[i];
  }
  h.diag[n - 1] = 200.0;
  for (int i = 1; i <= n - 1; ++i) h.sub[i - 1] = -400.0 * x[i - 1];
  for (int i = 0; i < n - 1; ++i) h.super[i] = -400.0 * x[i + 1];
  return h;
}

namespace {

// Number of eigenvalues strictly less than x (Sturm sequence count).
int count_below(const std::vector<double>& diag, const std::vector<double>& off,
                double x) {
  const double tiny = std::numeric_limits<double>::min();
  int count = 0;
  double d = diag[0] - x;
  if (d < 0.0) ++count;
  for (std::size_t i = 1; i < diag.size(); ++i) {
    if (std::abs(d) < tiny) d = -tiny;
    d = diag[i] - x - off[i - 1] * off[i - 1] / d;
    if (d < 0.0) ++count;
  }
  return count;
}

}  // namespace

double tridiag_extreme_eigenvalue(const std::vector<double>& diag,
                                  const std::vector<double>& off,
                                  bool largest) {
  const std::size_t n = diag.size();
  if (n == 0) throw std::invalid_argument("tridiag: empty matrix");
  if (off.size() + 1 != n) throw std::invalid_argument("tridiag: off size must be n-1");

  // Gershgorin enclosure of the whole spectrum
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  for (std::size_t i = 0; i < n; ++i) {
    double r = 0.0;
    if (i > 0) r += std::abs(off[i - 1]);
    if (i + 1 < n) r += std::abs(off[i]);
    lo = std::min(lo, diag[i] - r);
    hi = std::max(hi, diag[i] + r);
  }
  const int want = largest ? static_cast<int>(n) - 1 : 0;
  // bisect on the eigenvalue-count function until relative width 1e-10
  while (hi - lo > 1e-10 * std::max({std::abs(lo), std::abs(hi), 1e-300})) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;  // interval at rounding floor
    if (count_below(diag, off, mid) <= want) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

double hessian_condition_number(int n_dims) {
  if (n_dims < 2) {
    throw std::invalid_argument("hessian_condition_number: n_dims must be >= 2");
  }
  const Model ones(n_dims, 1.0);
  const TridiagonalMatrix h = rosenbrock_hessian(ones);
  const double lam_max = tridiag_extreme_eigenvalue(h.diag, h.sub, true);
  const double lam_min = tridiag_extreme_eigenvalue(h.diag, h.sub, false);
  return lam_max / lam_min;
}

}  // namespace landscape
