// Copyright (c) 2026 the plevy authors.
// SPDX-License-Identifier: Apache-2.0

#include "plevy/special_functions.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "plevy/errors.hpp"

namespace plevy {

namespace {
constexpr double kPi = std::numbers::pi;
}

double gamma_fn(double x) {
  if (x <= 0.0 && x == std::floor(x)) {
    throw DomainError("gamma_fn: pole at non-positive integer x=" +
                      std::to_string(x));
  }
  // std::tgamma on glibc is accurate to a few ulp, well inside the 1e-12
  // relative target; it handles negative non-integer arguments internally
  // through reflection.
  return std::tgamma(x);
}

double sphere_measure(int d) {
  if (d < 1) throw DomainError("sphere_measure: d must be >= 1");
  if (d == 1) return 2.0;  // two-point sphere S^0
  return 2.0 * std::pow(kPi, 0.5 * d) / gamma_fn(0.5 * d);
}

double k_dp(int d, double p) {
  if (d < 1) throw DomainError("k_dp: d must be >= 1");
  if (p <= 1.0) throw DomainError("k_dp: p must be > 1");
  return gamma_fn(0.5 * d) * gamma_fn(0.5 * (p + 1.0)) /
         (gamma_fn(0.5 * (d + p)) * gamma_fn(0.5));
}

namespace {

// (1-2s)/cos(s pi) with the removable singularity at s = 1/2 evaluated
// stably: with t = s - 1/2 (exact in binary), the factor equals
// 2t/sin(pi t), which is well conditioned on all of (0,1).
double half_factor(double s) {
  const double t = s - 0.5;
  if (t == 0.0) return 2.0 / kPi;
  return 2.0 * t / std::sin(kPi * t);
}

}  // namespace

double c_dps(int d, double p, double s) {
  if (d < 1) throw DomainError("c_dps: d must be >= 1");
  if (p <= 1.0) throw DomainError("c_dps: p must be > 1");
  if (!(s > 0.0 && s < 1.0)) throw DomainError("c_dps: s must lie in (0,1)");
  const double num = s * gamma_fn(0.5 * (d + s * p));
  const double den = std::pow(kPi, 0.5 * (d - 1)) *
                     gamma_fn(0.5 * (s * p + 1.0)) * gamma_fn(p * (1.0 - s));
  return num / den * half_factor(s);
}

double c_tilde(int d, double p, double s) {
  if (!(s > 0.0 && s < 1.0)) throw DomainError("c_tilde: s must lie in (0,1)");
  if (s * p >= 1.0) return c_dps(d, p, s);
  return c_dps(d, 2.0, 0.5 * s * p);
}

ConstantsReport constants_report(int d, double p, double s) {
  ConstantsReport r;
  r.d = d;
  r.p = p;
  r.s = s;
  r.sphere_measure = sphere_measure(d);
  r.k_dp = k_dp(d, p);
  r.c_dps = c_dps(d, p, s);
  r.c_tilde = c_tilde(d, p, s);
  return r;
}

}  // namespace plevy
