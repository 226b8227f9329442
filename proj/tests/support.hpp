// Copyright (c) 2026 the plevy authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cmath>
#include <random>
#include <vector>

#include "plevy/forms.hpp"

namespace plevy::testing {

inline GridFunction random_grid(const MeshPtr& mesh, std::mt19937_64& rng,
                                double sigma = 1.0) {
  std::normal_distribution<double> gauss(0.0, sigma);
  GridFunction u(mesh);
  for (auto& v : u.values) v = gauss(rng);
  return u;
}

inline bool close_rel(double a, double b, double tol) {
  return std::abs(a - b) <= tol * (std::abs(a) + std::abs(b) + 1e-300);
}

// trapezoid average of |cos(theta)|^p over the circle: quadrature oracle
// for K_{2,p}
inline double circle_abs_cos_power(double p, int n = 1 << 17) {
  double s = 0.0;
  for (int i = 0; i < n; ++i) {
    const double th = 2.0 * M_PI * i / n;
    s += std::pow(std::abs(std::cos(th)), p);
  }
  return s / n;
}

// Gauss-type oracle for K_{3,p}: the average of |w_3|^p over S^2 reduces to
// (1/2) int_{-1}^1 |t|^p dt, evaluated by composite Simpson on each half.
inline double sphere3_abs_power(double p, int n = 1 << 15) {
  double s = 0.0;
  const double h = 1.0 / n;
  for (int i = 0; i < n; ++i) {
    const double a = i * h, b = a + h, m = 0.5 * (a + b);
    s += (std::pow(a, p) + 4.0 * std::pow(m, p) + std::pow(b, p)) * h / 6.0;
  }
  return s;  // = (1/2) * 2 * int_0^1 t^p dt
}

}  // namespace plevy::testing
