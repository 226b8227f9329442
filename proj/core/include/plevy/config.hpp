// Copyright (c) 2026 the plevy authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "plevy/experiments.hpp"
#include "plevy/forms.hpp"
#include "plevy/operators.hpp"
#include "plevy/solvers.hpp"

namespace plevy {

// Closed-form function data (plus nodewise literal arrays) accepted by the
// run configuration for f, g, beta and test functions.
struct DataSpec {
  enum class Type { Zero, Constant, Gaussian, Polynomial, Bump, Values };
  Type type = Type::Zero;
  double value = 0.0;                // Constant
  SmoothFunction1D fn;               // Gaussian / Polynomial / Bump
  std::vector<double> values;        // Values (nodewise)

  double eval(double x) const;
  SmoothFunction1D smooth() const;   // throws unless analytic
};

struct RunConfig {
  // domain + mesh
  double a = -1.0, b = 1.0;
  int n_interior = 0;
  double collar_R = 1.0;
  // kernel
  KernelSpec kernel;
  bool has_kernel = false;
  double p = 2.0;
  // problem
  std::optional<ProblemKind> problem_kind;
  DataSpec f, g, beta;
  double mu_scaling = 1.0;
  // solver
  SolverConfig solver;
  // experiment
  std::vector<double> eps_list;
  std::string family_name;  // stable | rescaled_indicator | fractional_norm
  DataSpec test_function;
  double point_x = 0.5;
  double exp_s = 0.5, exp_gamma = 0.0, exp_beta_exp = 0.0;
  int trials = 8;
  std::string poincare_mode = "mean_zero";
  // check-kernel
  double check_delta = 1.0;
  // misc
  std::uint64_t seed = 1;
  bool deterministic = true;

  KernelFamilyFn family_fn() const;
  GridFunction realize(const DataSpec& d, const MeshPtr& mesh,
                       bool interior) const;
};

// Strict parser: unknown keys anywhere are errors, missing required fields
// are reported by name, numeric fields are validated against the module
// preconditions before any computation.
RunConfig parse_config(const std::string& path);
RunConfig parse_config_text(const std::string& json_text);

// 17-significant-digit CSV number formatting
std::string csv_number(double v);

}  // namespace plevy
