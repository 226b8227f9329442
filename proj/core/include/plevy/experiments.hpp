// Copyright (c) 2026 the plevy authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <vector>

#include "plevy/forms.hpp"
#include "plevy/operators.hpp"
#include "plevy/solvers.hpp"

namespace plevy {

struct ConvergenceRow {
  double epsilon = 0.0;
  double quantity = 0.0;
  double reference = 0.0;
  double abs_error = 0.0;
  double rel_error = 0.0;
};

struct BbmOptions {
  int n_cells = 1024;
  double box_half_width = 8.0;
  bool tail_correction = true;  // analytic far field of the decaying u
};

// Full-space discrete energies against K_{1,p} int |u'|^p. Rows in
// eps-descending order.
std::vector<ConvergenceRow> bbm_convergence(const SmoothFunction1D& u,
                                            const KernelFamilyFn& family,
                                            double p,
                                            std::vector<double> eps_list,
                                            const BbmOptions& opt = {});

// Pointwise L_eps u(x) against -K_{1,p} Delta_p u(x).
std::vector<ConvergenceRow> pointwise_convergence(const SmoothFunction1D& u,
                                                  const KernelFamilyFn& family,
                                                  double p, double x,
                                                  std::vector<double> eps_list);

struct SolveSweepOptions {
  double a = -1.0, b = 1.0;
  int n_interior = 512;
  double collar_R = 2.0;
  int oracle_refine = 8;  // local FD oracle resolution multiplier
  SolverConfig solver;
};

// Dirichlet sweep with constant right-hand side f = c and zero complement
// data, mu = K_{1,p}^{-1}; quantity is the L^p(Omega) distance to the local
// solution (closed form for constant data), rel_error the relative one.
std::vector<ConvergenceRow> dirichlet_convergence(
    double p, double f_const, const KernelFamilyFn& family,
    std::vector<double> eps_list, const SolveSweepOptions& opt = {});

struct NeumannSweepResult {
  std::vector<ConvergenceRow> rows;
  std::vector<double> kappa_estimates;  // sup |L_eps phi| per row
  bool kappa_growth_warning = false;
};

// Neumann sweep with g_eps the discrete nonlocal normal derivative of phi
// on the collar and the interior load chosen uniform so the data are
// exactly compatible at every eps; quantity is the L^p(Omega) distance of
// the mean-zero solutions to the local limit computed by the FD oracle.
NeumannSweepResult neumann_convergence(double p, const SmoothFunction1D& phi,
                                       const KernelFamilyFn& family,
                                       std::vector<double> eps_list,
                                       const SolveSweepOptions& opt = {});

struct ShellRow {
  double R = 0.0;            // 2^k
  double partial_sum = 0.0;  // cumulative integral up to this shell level
};

struct NonexistenceResult {
  std::vector<ShellRow> pairing;  // int g_gamma g_beta nu~ partial sums
  std::vector<ShellRow> wnorm;    // W-seminorm^p partial sums of g_beta
  double norm_g_beta_p = 0.0;     // full |g_beta|_W^p
  double log_fit_r2 = 0.0;        // pairing against a + b log R
  double log_fit_slope = 0.0;
  bool wnorm_cauchy = false;      // trailing increments below 1e-3 relative
};

// Shell diagnostics for the non-existence mechanism: at gamma+beta = sp the
// pairing diverges at infinity, at gamma+beta = -1 (only reachable for
// sp < 1) it diverges at the boundary; either way the partial sums grow
// like log while |g_beta|_W stays finite. Parameter ranges are enforced:
// gamma in (-1,-1/p'] u [sp/p', sp), beta in ((sp-1)/p, s),
// gamma+beta in {-1, sp}.
NonexistenceResult nonexistence_demo(double s, double p, double gamma,
                                     double beta, int k_max = 20);

enum class PoincareMode { MeanZero, DirichletZero };

// Smallest Rayleigh ratio E(u,u)/||u||_{L^p(Omega)}^p found by projected
// normalized descent from seeded random and structured starts.
double poincare_estimate(const DiscreteForm& form, PoincareMode mode,
                         int trials, std::uint64_t seed = 7,
                         int iterations = 400);

}  // namespace plevy
