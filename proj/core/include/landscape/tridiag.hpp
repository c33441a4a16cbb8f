#pragma once

#include <vector>

#include "landscape/types.hpp"

namespace landscape {

// Tridiagonal matrix in the paper's (a, b, c) layout: diag[i] on the
// diagonal, sub[i] = b_{i+1} below it, super[i] = c_i above it.
struct TridiagonalMatrix {
  std::vector<double> diag;
  std::vector<double> sub;
  std::vector<double> super;
};

// Hessian of the N-dimensional Rosenbrock function, coefficient formulas
// taken literally: a_0 = 2 + 1200 x_0^2 - 400 x_1, interior
// a_i = 202 + 1200 x_{i-1}^2 - 400 x_i, a_{N-1} = 200,
// b_i = -400 x_{i-1}, c_i = -400 x_{i+1}.  Symmetric whenever all
// coordinates are equal (in particular at the global minimum).
TridiagonalMatrix rosenbrock_hessian(const Model& m);

// Extreme eigenvalues of a symmetric tridiagonal matrix by Sturm-sequence
// bisection, relative accuracy 1e-10.  off has size n-1.
double tridiag_extreme_eigenvalue(const std::vector<double>& diag,
                                  const std::vector<double>& off,
                                  bool largest);

// lambda_max / lambda_min of the Rosenbrock Hessian at (1, ..., 1).
double hessian_condition_number(int n_dims);

}  // namespace landscape
