// Copyright (c) 2026 the plevy authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <functional>
#include <memory>
#include <vector>

#include "plevy/forms.hpp"

namespace plevy {

enum class ProblemKind { Dirichlet, Neumann, Robin };

struct ProblemSpec {
  ProblemKind kind = ProblemKind::Dirichlet;
  std::shared_ptr<const DiscreteForm> form;  // FullComplement region
  GridFunction f;     // right-hand side on interior nodes
  GridFunction g;     // complement data on exterior nodes
  GridFunction beta;  // Robin weight >= 0 on exterior nodes
  double mu_scaling = 1.0;
};

struct SolverConfig {
  int max_iter = 20000;
  double tol_grad = 1e-8;  // scaled by 1 + |J(init)|
  std::vector<double> delta_schedule = {1e-2, 1e-4, 1e-6};  // p < 2 smoothing
  int lbfgs_memory = 10;
  double tol_compat = 1e-8;
};

struct SolveReport {
  GridFunction u;
  int iterations = 0;
  double final_energy = 0.0;
  double variational_residual = 0.0;
  double residual_tol = 0.0;
  bool converged = false;
  std::vector<double> delta_schedule_used;
  double truncation_defect = 0.0;
  double compat_sum = 0.0;
  double energy_bound_ratio = 0.0;  // Dirichlet: ||u||_W / (|f|^p' + |g|^p)^{1/p}
};

// Discrete compatibility sum int_Omega f + int_{Omega^c} g and the verdict
// |sum| <= tol (|f|_1 + |g|_1 + 1).
std::pair<double, bool> check_compatibility(const GridFunction& f,
                                            const GridFunction& g,
                                            double tol = 1e-8);

SolveReport solve_dirichlet(const ProblemSpec& spec,
                            const SolverConfig& cfg = {});
SolveReport solve_neumann(const ProblemSpec& spec,
                          const SolverConfig& cfg = {});
SolveReport solve_robin(const ProblemSpec& spec, const SolverConfig& cfg = {});
SolveReport solve(const ProblemSpec& spec, const SolverConfig& cfg = {});

// Generic convex first-order driver: L-BFGS with Armijo backtracking and an
// optional affine projection applied after each accepted step.
struct MinimizeResult {
  std::vector<double> x;
  int iterations = 0;
  double value = 0.0;
  double grad_inf_norm = 0.0;
  bool converged = false;
};

using ValueGrad =
    std::function<double(const std::vector<double>&, std::vector<double>&)>;
using Projection = std::function<void(std::vector<double>&)>;

MinimizeResult minimize(const ValueGrad& objective, std::vector<double> init,
                        const SolverConfig& cfg,
                        const Projection& project = nullptr);

// Weak comparison: given two Dirichlet solves with ordered data (checked),
// true iff lo.u <= hi.u + tol at every node.
bool comparison_check(const SolveReport& hi, const SolveReport& lo,
                      const GridFunction& f_hi, const GridFunction& f_lo,
                      const GridFunction& g_hi, const GridFunction& g_lo,
                      double tol = 1e-8);

}  // namespace plevy
