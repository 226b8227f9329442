// Copyright (c) 2026 the plevy authors.
// SPDX-License-Identifier: Apache-2.0

#include "plevy/inequalities.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <random>

#include "plevy/errors.hpp"

namespace plevy {

double simon_upper_constant(double p) {
  if (p < 1.0) throw DomainError("simon_upper_constant: p must be >= 1");
  if (p >= 2.0) return p - 1.0;
  return std::pow(2.0, 2.0 - p) * (3.0 - p);
}

double simon_lower_constant(double p) {
  if (p < 1.0) throw DomainError("simon_lower_constant: p must be >= 1");
  if (p >= 2.0) return std::min(0.5, std::pow(2.0, 2.0 - p));
  return p - 1.0;
}

namespace {

using Vec = std::array<double, 3>;

double norm(const Vec& v, int d) {
  double s = 0.0;
  for (int i = 0; i < d; ++i) s += v[i] * v[i];
  return std::sqrt(s);
}

double dot(const Vec& a, const Vec& b, int d) {
  double s = 0.0;
  for (int i = 0; i < d; ++i) s += a[i] * b[i];
  return s;
}

// |x|^{p-2} x, with the 0 convention at x = 0
Vec psi_vec(const Vec& x, double p, int d) {
  const double nx = norm(x, d);
  Vec out{0.0, 0.0, 0.0};
  if (nx == 0.0) return out;
  const double f = std::pow(nx, p - 2.0);
  for (int i = 0; i < d; ++i) out[i] = f * x[i];
  return out;
}

struct Acc {
  InequalityCheck* chk;
  double slack_scale;
  // verifies lhs <= rhs with relative slack
  void leq(double lhs, double rhs) {
    ++chk->trials;
    const double margin = rhs - lhs;
    const double floor_ = -1e-12 * (std::abs(lhs) + std::abs(rhs) + 1.0);
    if (margin < floor_) ++chk->violations;
    chk->worst_margin = std::min(chk->worst_margin, margin);
  }
};

}  // namespace

std::vector<InequalityCheck> inequality_suite(double p, long trials,
                                              std::uint64_t seed) {
  if (!(p > 1.0)) throw DomainError("inequality_suite: p must exceed 1");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unif(-10.0, 10.0);
  std::uniform_int_distribution<int> dim(1, 3);
  std::uniform_real_distribution<double> unif_beta(0.0, 2.0);

  const double Ap = simon_upper_constant(p);
  const double App = simon_lower_constant(p);

  std::vector<InequalityCheck> out;
  auto add = [&](const std::string& n) {
    out.push_back(InequalityCheck{n, 0, 0, 0.0});
    return &out.back();
  };
  InequalityCheck* two_sided_up = add("two_sided_upper");
  InequalityCheck* two_sided_lo = add("two_sided_lower");
  InequalityCheck* beta_up = add("beta_generalized_upper");
  InequalityCheck* beta_lo = add("beta_generalized_lower");
  InequalityCheck* simon_up = add("simon_upper");
  InequalityCheck* simon_lo = add("simon_lower");
  InequalityCheck* scalar_sing = add("scalar_upper_p_lt_2");
  InequalityCheck* taylor_up = add("taylor_upper");
  InequalityCheck* taylor_lo = add("taylor_lower");

  for (long t = 0; t < trials; ++t) {
    const int d = dim(rng);
    Vec x{0, 0, 0}, y{0, 0, 0};
    for (int i = 0; i < d; ++i) {
      x[i] = unif(rng);
      y[i] = unif(rng);
    }
    // sprinkle in near ties and exact zeros
    if (t % 97 == 0) {
      for (int i = 0; i < d; ++i) y[i] = x[i] + 1e-9 * unif(rng);
    } else if (t % 101 == 0) {
      for (int i = 0; i < d; ++i) y[i] = 0.0;
    }

    Vec dif{0, 0, 0};
    for (int i = 0; i < d; ++i) dif[i] = x[i] - y[i];
    const double nd = norm(dif, d);
    const double nx = norm(x, d), ny = norm(y, d);
    if (nx + ny == 0.0) continue;  // degenerate corner, all bounds are 0 <= 0
    const Vec px = psi_vec(x, p, d), py = psi_vec(y, p, d);
    Vec pd{0, 0, 0};
    for (int i = 0; i < d; ++i) pd[i] = px[i] - py[i];
    const double npd = norm(pd, d);
    const double inner = dot(pd, dif, d);

    Acc a_up{two_sided_up, 0}, a_lo{two_sided_lo, 0};
    a_up.leq(npd, Ap * nd * std::pow(nx + ny, p - 2.0));
    a_lo.leq(App * nd * nd * std::pow(nx + ny, p - 2.0), inner);

    const double beta = unif_beta(rng);
    Acc b_up{beta_up, 0}, b_lo{beta_lo, 0};
    b_up.leq(npd,
             Ap * std::pow(nd, 1.0 - beta) * std::pow(nx + ny, p - 2.0 + beta));
    b_lo.leq(App * std::pow(nd, 2.0 + beta) *
                 std::pow(nx + ny, p - 2.0 - beta),
             inner);

    Acc s_up{simon_up, 0}, s_lo{simon_lo, 0};
    if (p >= 2.0) {
      s_up.leq(npd, Ap * nd * std::pow(nx + ny, p - 2.0));
      s_lo.leq(App * std::pow(nd, p), inner);
    } else {
      s_up.leq(npd, Ap * std::pow(nd, p - 1.0));
      s_lo.leq(App * nd * nd * std::pow(nx + ny, p - 2.0), inner);
    }

    if (p < 2.0) {
      // scalar bound |psi(b)-psi(a)| <= 2^{2-p}|b-a|^{p-1}
      const double aa = x[0], bb = y[0];
      const double pa = (aa == 0.0) ? 0.0 : std::pow(std::abs(aa), p - 2.0) * aa;
      const double pb = (bb == 0.0) ? 0.0 : std::pow(std::abs(bb), p - 2.0) * bb;
      Acc sc{scalar_sing, 0};
      sc.leq(std::abs(pb - pa),
             std::pow(2.0, 2.0 - p) * std::pow(std::abs(bb - aa), p - 1.0));
    }

    // Taylor bounds: |x|^p - |y|^p - p psi_vec(y).(x-y)
    const double lhs_taylor =
        std::pow(nx, p) - std::pow(ny, p) - p * dot(py, dif, d);
    Acc t_up{taylor_up, 0}, t_lo{taylor_lo, 0};
    if (p >= 2.0) {
      t_up.leq(lhs_taylor, 0.5 * p * Ap * nd * nd *
                               std::pow(nd + 2.0 * ny, p - 2.0));
      t_lo.leq(App * std::pow(nd, p), lhs_taylor);
    } else {
      t_up.leq(lhs_taylor, Ap * std::pow(nd, p));
      t_lo.leq(0.5 * p * App * nd * nd * std::pow(nd + 2.0 * ny, p - 2.0),
               lhs_taylor);
    }
  }
  return out;
}

}  // namespace plevy
