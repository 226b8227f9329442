// Copyright (c) 2026 the plevy authors.
// SPDX-License-Identifier: Apache-2.0

#include "plevy/local_reference.hpp"

#include <cmath>

#include "plevy/errors.hpp"

namespace plevy {

LocalGrid local_grid(double a, double b, int n) {
  if (!(a < b) || n < 2) throw ConfigError("local_grid: bad parameters");
  LocalGrid g;
  g.a = a;
  g.b = b;
  g.n = n;
  g.h = (b - a) / n;
  g.x.resize(n + 1);
  for (int i = 0; i <= n; ++i) g.x[i] = a + i * g.h;
  return g;
}

namespace {

inline double psi(double t, double p) {
  if (t == 0.0) return 0.0;
  return std::pow(std::abs(t), p - 2.0) * t;
}

inline double dpsi(double t, double p) {
  const double at = std::max(std::abs(t), 1e-10);
  return (p - 1.0) * std::pow(at, p - 2.0);
}

// Thomas algorithm for a tridiagonal system.
std::vector<double> thomas(std::vector<double> lo, std::vector<double> di,
                           std::vector<double> up, std::vector<double> rhs) {
  const int n = (int)di.size();
  for (int i = 1; i < n; ++i) {
    const double m = lo[i] / di[i - 1];
    di[i] -= m * up[i - 1];
    rhs[i] -= m * rhs[i - 1];
  }
  std::vector<double> x(n);
  x[n - 1] = rhs[n - 1] / di[n - 1];
  for (int i = n - 2; i >= 0; --i)
    x[i] = (rhs[i] - up[i] * x[i + 1]) / di[i];
  return x;
}

double norm2(const std::vector<double>& v) {
  double s = 0.0;
  for (double t : v) s += t * t;
  return std::sqrt(s);
}

}  // namespace

std::vector<double> local_dirichlet_fd(const LocalGrid& g, double p,
                                       const std::function<double(double)>& f,
                                       double ga, double gb) {
  const int n = g.n;
  const double h = g.h;
  std::vector<double> u(n + 1);
  for (int i = 0; i <= n; ++i) {
    const double t = (g.x[i] - g.a) / (g.b - g.a);
    u[i] = (1.0 - t) * ga + t * gb;
  }

  const int m = n - 1;  // interior unknowns
  std::vector<double> r(m), lo(m), di(m), up(m);
  auto residual = [&](const std::vector<double>& uu, std::vector<double>& rr) {
    for (int i = 1; i < n; ++i) {
      const double Fp = psi((uu[i + 1] - uu[i]) / h, p);
      const double Fm = psi((uu[i] - uu[i - 1]) / h, p);
      rr[i - 1] = -(Fp - Fm) / h - f(g.x[i]);
    }
  };

  residual(u, r);
  double rn = norm2(r);
  const double tol = 1e-12 * (1.0 + rn);
  for (int it = 0; it < 200 && rn > tol; ++it) {
    for (int i = 1; i < n; ++i) {
      const double cp = dpsi((u[i + 1] - u[i]) / h, p) / (h * h);
      const double cm = dpsi((u[i] - u[i - 1]) / h, p) / (h * h);
      di[i - 1] = cp + cm;
      up[i - 1] = -cp;
      lo[i - 1] = -cm;
    }
    std::vector<double> rhs(m);
    for (int i = 0; i < m; ++i) rhs[i] = -r[i];
    std::vector<double> du = thomas(lo, di, up, rhs);

    double step = 1.0;
    std::vector<double> u_try = u, r_try(m);
    for (int ls = 0; ls < 40; ++ls) {
      for (int i = 1; i < n; ++i) u_try[i] = u[i] + step * du[i - 1];
      residual(u_try, r_try);
      if (norm2(r_try) < (1.0 - 1e-4 * step) * rn) break;
      step *= 0.5;
    }
    u = u_try;
    r = r_try;
    rn = norm2(r);
  }
  return u;
}

std::vector<double> local_neumann_fd(const LocalGrid& g, double p,
                                     const std::function<double(double)>& f,
                                     double flux_a, double flux_b) {
  const int n = g.n;
  const double h = g.h;
  // psi(u')(a) = -flux_a (outward normal -1), psi(u')(b) = flux_b
  const double Fa = -flux_a;
  const double Fb = flux_b;

  std::vector<double> u(n + 1, 0.0);
  std::vector<double> w(n + 1, h);
  w[0] = w[n] = 0.5 * h;

  const int m = n + 1;
  std::vector<double> r(m), lo(m), di(m), up(m);
  auto residual = [&](const std::vector<double>& uu, std::vector<double>& rr) {
    for (int i = 0; i <= n; ++i) {
      const double Fp =
          (i == n) ? Fb : psi((uu[i + 1] - uu[i]) / h, p);
      const double Fm =
          (i == 0) ? Fa : psi((uu[i] - uu[i - 1]) / h, p);
      rr[i] = -(Fp - Fm) / w[i] - f(g.x[i]);
    }
  };

  residual(u, r);
  double rn = norm2(r);
  const double tol = 1e-12 * (1.0 + rn);
  for (int it = 0; it < 200 && rn > tol; ++it) {
    // Singular tridiagonal Jacobian (constants in the kernel); regularize
    // with the rank-one mean term via Sherman-Morrison.
    for (int i = 0; i <= n; ++i) {
      const double cp =
          (i == n) ? 0.0 : dpsi((u[i + 1] - u[i]) / h, p) / (h * w[i]);
      const double cm =
          (i == 0) ? 0.0 : dpsi((u[i] - u[i - 1]) / h, p) / (h * w[i]);
      di[i] = cp + cm;
      up[i] = -cp;
      lo[i] = -cm;
    }
    std::vector<double> rhs(m);
    for (int i = 0; i < m; ++i) rhs[i] = -r[i];
    // (J + q q^T) du = rhs with q_i = w_i
    std::vector<double> y = thomas(lo, di, up, rhs);
    std::vector<double> z = thomas(lo, di, up, w);
    double qy = 0.0, qz = 0.0;
    for (int i = 0; i < m; ++i) {
      qy += w[i] * y[i];
      qz += w[i] * z[i];
    }
    std::vector<double> du(m);
    for (int i = 0; i < m; ++i) du[i] = y[i] - qy / (1.0 + qz) * z[i];

    double step = 1.0;
    std::vector<double> u_try = u, r_try(m);
    for (int ls = 0; ls < 40; ++ls) {
      for (int i = 0; i < m; ++i) u_try[i] = u[i] + step * du[i];
      residual(u_try, r_try);
      if (norm2(r_try) < (1.0 - 1e-4 * step) * rn || norm2(r_try) < tol)
        break;
      step *= 0.5;
    }
    u = u_try;
    r = r_try;
    rn = norm2(r);
  }

  // zero-mean representative
  double mean = 0.0, vol = 0.0;
  for (int i = 0; i <= n; ++i) {
    mean += u[i] * w[i];
    vol += w[i];
  }
  mean /= vol;
  for (double& v : u) v -= mean;
  return u;
}

double local_dirichlet_const_exact(double p, double c, double a, double b,
                                   double x) {
  if (!(c > 0.0))
    throw DomainError("local_dirichlet_const_exact: needs c > 0");
  const double m = 0.5 * (a + b);
  const double R = 0.5 * (b - a);
  const double e = p / (p - 1.0);
  return (p - 1.0) / p * std::pow(c, 1.0 / (p - 1.0)) *
         (std::pow(R, e) - std::pow(std::abs(x - m), e));
}

}  // namespace plevy
