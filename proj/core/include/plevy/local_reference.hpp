// Copyright (c) 2026 the plevy authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <functional>
#include <vector>

namespace plevy {

// Finite-difference solvers for the local 1D p-Laplace problems used as
// convergence references. Independent of the nonlocal machinery: flux-form
// discretization, damped Newton.

struct LocalGrid {
  double a = 0.0, b = 1.0;
  int n = 0;  // cells
  std::vector<double> x;
  double h = 0.0;
};

LocalGrid local_grid(double a, double b, int n);

// -( |u'|^{p-2} u' )' = f on (a,b), u(a) = ga, u(b) = gb.
std::vector<double> local_dirichlet_fd(const LocalGrid& g, double p,
                                       const std::function<double(double)>& f,
                                       double ga, double gb);

// -( |u'|^{p-2} u' )' = f with the p-normal derivative prescribed:
// del_{n,p} u(a) = flux_a, del_{n,p} u(b) = flux_b; the returned solution
// has zero mean. Data must be compatible.
std::vector<double> local_neumann_fd(const LocalGrid& g, double p,
                                     const std::function<double(double)>& f,
                                     double flux_a, double flux_b);

// Closed-form Dirichlet solution for constant right-hand side c > 0 and
// zero boundary values: u(x) = (p-1)/p c^{1/(p-1)} (R^{p/(p-1)} -
// |x-m|^{p/(p-1)}) with m the midpoint and R the half width.
double local_dirichlet_const_exact(double p, double c, double a, double b,
                                   double x);

}  // namespace plevy
