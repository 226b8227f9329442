// Copyright (c) 2026 the plevy authors.
// SPDX-License-Identifier: Apache-2.0

#include "plevy/quadrature.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <numbers>

#include "plevy/errors.hpp"

namespace plevy {

namespace {

GaussRule compute_gauss(int n) {
  GaussRule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  for (int i = 0; i < n; ++i) {
    // Chebyshev-based initial guess for the i-th root of P_n.
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double pp = 0.0;
    for (int it = 0; it < 100; ++it) {
      // Evaluate P_n and P_n' by the three-term recurrence.
      double p0 = 1.0, p1 = 0.0;
      for (int k = 0; k < n; ++k) {
        const double p2 = p1;
        p1 = p0;
        p0 = ((2.0 * k + 1.0) * x * p1 - k * p2) / (k + 1.0);
      }
      pp = n * (x * p0 - p1) / (x * x - 1.0);
      const double dx = p0 / pp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    rule.nodes[i] = x;
    rule.weights[i] = 2.0 / ((1.0 - x * x) * pp * pp);
  }
  return rule;
}

std::map<int, GaussRule> g_rules;
std::mutex g_rules_mutex;

double panel(const Integrand& f, double a, double b, const GaussRule& r) {
  const double c = 0.5 * (a + b), h = 0.5 * (b - a);
  double s = 0.0;
  for (size_t i = 0; i < r.nodes.size(); ++i)
    s += r.weights[i] * f(c + h * r.nodes[i]);
  return s * h;
}

struct Adaptive {
  const Integrand& f;
  const GaussRule& rule;
  double rel_tol, abs_tol;
  int max_depth;
  double err_accum = 0.0;
  bool converged = true;

  double recurse(double a, double b, double whole, int depth) {
    const double m = 0.5 * (a + b);
    const double left = panel(f, a, m, rule);
    const double right = panel(f, m, b, rule);
    const double err = std::abs(left + right - whole);
    if (err <= abs_tol + rel_tol * std::abs(left + right) || depth <= 0) {
      if (depth <= 0 && err > abs_tol + rel_tol * std::abs(left + right))
        converged = false;
      err_accum += err;
      return left + right;
    }
    return recurse(a, m, left, depth - 1) + recurse(m, b, right, depth - 1);
  }
};

}  // namespace

const GaussRule& gauss_legendre(int n) {
  std::lock_guard<std::mutex> lock(g_rules_mutex);
  auto it = g_rules.find(n);
  if (it == g_rules.end()) it = g_rules.emplace(n, compute_gauss(n)).first;
  return it->second;
}

QuadResult integrate(const Integrand& f, double a, double b, double rel_tol,
                     double abs_tol, int max_depth) {
  if (a == b) return {0.0, 0.0, true};
  const GaussRule& rule = gauss_legendre(10);
  Adaptive ad{f, rule, rel_tol, abs_tol, max_depth};
  const double whole = panel(f, a, b, rule);
  QuadResult res;
  res.value = ad.recurse(a, b, whole, max_depth);
  res.error_estimate = ad.err_accum;
  res.converged = ad.converged;
  return res;
}

QuadResult integrate_to_inf(const Integrand& f, double a, double rel_tol,
                            double abs_tol) {
  QuadResult total;
  double lo = a;
  double width = std::max(1.0, std::abs(a));
  for (int k = 0; k < 200; ++k) {
    const double hi = lo + width;
    QuadResult piece = integrate(f, lo, hi, rel_tol, abs_tol);
    total.value += piece.value;
    total.error_estimate += piece.error_estimate;
    total.converged = total.converged && piece.converged;
    if (std::abs(piece.value) <=
        abs_tol + 0.5 * rel_tol * std::abs(total.value))
      return total;
    lo = hi;
    width *= 2.0;
  }
  total.converged = false;
  return total;
}

QuadResult integrate_power_singular(const Integrand& f, double b, double alpha,
                                    double rel_tol, double abs_tol) {
  if (alpha <= -1.0)
    throw DomainError("integrate_power_singular: alpha must exceed -1");
  if (b <= 0.0) return {0.0, 0.0, true};
  if (alpha >= 0.0) return integrate(f, 0.0, b, rel_tol, abs_tol);
  const double q = 1.0 + alpha;  // in (0,1)
  // r = b t^{1/q}, dr = (b/q) t^{1/q - 1} dt turns c r^alpha into a
  // bounded integrand on (0,1].
  auto g = [&](double t) {
    const double r = b * std::pow(t, 1.0 / q);
    if (r <= 0.0) return 0.0;
    return f(r) * (b / q) * std::pow(t, 1.0 / q - 1.0);
  };
  return integrate(g, 0.0, 1.0, rel_tol, abs_tol);
}

}  // namespace plevy
