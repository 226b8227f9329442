// Copyright (c) 2026 the plevy authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

namespace plevy {

// Gamma function for real arguments. Positive arguments and negative
// non-integer arguments (via the implementation's reflection path) are
// supported; non-positive integers raise DomainError (pole).
double gamma_fn(double x);

// Surface measure |S^{d-1}| of the unit sphere in R^d, with |S^0| = 2.
double sphere_measure(int d);

// K_{d,p} = Gamma(d/2) Gamma((p+1)/2) / (Gamma((d+p)/2) Gamma(1/2)),
// the average of |w_d|^p over the unit sphere. Equals 1 for d = 1 and
// 1/d for p = 2.
double k_dp(int d, double p);

// Normalizing constant C_{d,p,s} of the fractional p-Laplacian,
//
//   C_{d,p,s} = s (1-2s) Gamma((d+sp)/2)
//               / ( pi^{(d-1)/2} Gamma((sp+1)/2) Gamma(p(1-s)) cos(s pi) ).
//
// The factor (1-2s)/cos(s pi) is a removable 0/0 at s = 1/2; it is
// evaluated in the stable form 2t/sin(pi t), t = s - 1/2, which is exact
// for all s in (0,1) and has limit 2/pi at s = 1/2.
double c_dps(int d, double p, double s);

// Piecewise constant C~_{d,p,s}: C_{d,p,s} when sp >= 1, C_{d,2,sp/2}
// when sp < 1.
double c_tilde(int d, double p, double s);

struct ConstantsReport {
  int d = 1;
  double p = 2.0;
  double s = 0.5;
  double sphere_measure = 0.0;
  double k_dp = 0.0;
  double c_dps = 0.0;
  double c_tilde = 0.0;
};

ConstantsReport constants_report(int d, double p, double s);

}  // namespace plevy
