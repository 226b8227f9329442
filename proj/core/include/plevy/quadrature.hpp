// Copyright (c) 2026 the plevy authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <functional>
#include <vector>

namespace plevy {

// Nodes and weights of the n-point Gauss-Legendre rule on [-1,1].
// Computed once per n by Newton iteration on P_n and cached.
struct GaussRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};
const GaussRule& gauss_legendre(int n);

struct QuadResult {
  double value = 0.0;
  double error_estimate = 0.0;
  bool converged = true;
};

using Integrand = std::function<double(double)>;

// Adaptive Gauss-Legendre on [a,b]: interval bisection, error estimated by
// comparing the parent-panel rule against the sum of the two child panels.
QuadResult integrate(const Integrand& f, double a, double b,
                     double rel_tol = 1e-10, double abs_tol = 1e-14,
                     int max_depth = 48);

// Integral over [a, infinity), split into geometrically growing panels
// until a panel contributes less than the tolerance.
QuadResult integrate_to_inf(const Integrand& f, double a,
                            double rel_tol = 1e-10, double abs_tol = 1e-14);

// Integral of f over (0, b] where f(r) ~ c r^alpha as r -> 0 with
// alpha > -1. The substitution r = b t^{1/(1+alpha)} removes the endpoint
// singularity before the adaptive rule runs.
QuadResult integrate_power_singular(const Integrand& f, double b, double alpha,
                                    double rel_tol = 1e-10,
                                    double abs_tol = 1e-14);

}  // namespace plevy
