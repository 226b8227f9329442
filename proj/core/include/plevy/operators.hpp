// Copyright (c) 2026 the plevy authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <vector>

#include "plevy/kernels.hpp"

namespace plevy {

// Closed-form C^2 test functions with analytic derivatives.
struct SmoothFunction1D {
  enum class Kind { Gaussian, Polynomial, BumpCompact };
  Kind kind = Kind::Gaussian;
  double center = 0.0;
  double width = 1.0;   // Gaussian
  double radius = 1.0;  // BumpCompact
  std::vector<double> coeffs;  // Polynomial, ascending degree

  double value(double x) const;
  double d1(double x) const;
  double d2(double x) const;
  bool bounded() const;

  static SmoothFunction1D gaussian(double center, double width);
  static SmoothFunction1D polynomial(std::vector<double> coeffs);
  static SmoothFunction1D bump(double center, double radius);
};

struct PointwiseResult {
  double value = 0.0;
  double error_estimate = 0.0;
};

// L u(x) for the symmetric p-Levy operator, evaluated through the
// principal-value-free symmetrized form
//   L u(x) = - int [psi(u(x+h)-u(x)) + psi(u(x-h)-u(x))] nu(h) dh.
// Refuses p < 2 at a critical point of u. The far tail of full-support
// kernels is added analytically using the decay of u.
PointwiseResult pointwise_L(const SmoothFunction1D& u, const KernelSpec& k,
                            double p, double x);

// N u(y) = 2 int_Omega psi(u(y)-u(x)) nu(x-y) dx for y outside the closed
// interval [a,b].
double nonlocal_normal(const SmoothFunction1D& u, const KernelSpec& k,
                       double p, double y, double a, double b);

// (p-1)|u'(x)|^{p-2} u''(x); refuses p < 2 at critical points.
double local_plaplace_1d(const SmoothFunction1D& u, double p, double x);

struct SphericalMeanCheck {
  double lhs = 0.0;  // sphere average of |g.w|^{p-2} (H w . w)
  double rhs = 0.0;  // K_{d,p}/(p-1) Delta_p from the closed form
};

// Spherical-mean identity for Delta_p in d = 2 or 3: the sphere average of
// |grad.w|^{p-2} D2u w.w equals K_{d,p}/(p-1) Delta_p u.
SphericalMeanCheck spherical_mean_check(int d, double p,
                                        const std::array<double, 3>& grad,
                                        const std::array<std::array<double, 3>, 3>& hess);

}  // namespace plevy
