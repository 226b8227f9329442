// Copyright (c) 2026 the plevy authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <optional>
#include <vector>

#include "plevy/kernels.hpp"
#include "plevy/mesh.hpp"

namespace plevy {

// Nodal values over a Mesh1D; the discrete u.
struct GridFunction {
  MeshPtr mesh;
  std::vector<double> values;

  GridFunction() = default;
  explicit GridFunction(MeshPtr m, double fill = 0.0)
      : mesh(std::move(m)), values(mesh->nodes.size(), fill) {}

  double& operator[](int i) { return values[i]; }
  double operator[](int i) const { return values[i]; }
  int size() const { return static_cast<int>(values.size()); }
};

template <typename F>
GridFunction grid_sample(MeshPtr mesh, F&& f) {
  GridFunction u(mesh);
  for (int i = 0; i < u.size(); ++i) u.values[i] = f(mesh->nodes[i]);
  return u;
}

// mean of u over Omega (interior trapezoid average)
double mean_omega(const GridFunction& u);
// (sum_{i in Omega} |u_i|^p q_i)^{1/p}
double lp_norm_omega(const GridFunction& u, double p);
double sup_norm(const GridFunction& u);

enum class Region {
  FullComplement,  // pairs with at least one interior node: E
  Regional,        // both interior: E_Omega
  Plus,            // (1_Omega(x)+1_Omega(y))/2: E_+
};

enum class DiagonalRule { Skip, LocalExact };

// Pairwise quadrature weights realizing the energy forms on a uniform grid.
// The weights are Toeplitz: w_ij = W_{|i-j|} q_i q_j (+ the sub-cell band
// term on |i-j| = 1 under LocalExact), masked by the region coefficient at
// evaluation time.
//
// Under Skip, W_m = nu(m h) is the plain product-trapezoid profile. Under
// LocalExact, W_m is the moment-matched band average
//     W_m = (1/h) int_{(m-1/2)h}^{(m+1/2)h} t^p nu(t) dt / (m h)^p
// and the sub-cell strip |x-y| < h/2 is added exactly for piecewise-linear
// u through the band-1 extra weight. This keeps the pair sum meaningful
// when the kernel concentrates below the grid spacing.
struct DiscreteForm {
  MeshPtr mesh;
  KernelSpec kernel;
  double p = 2.0;
  Region region = Region::FullComplement;
  DiagonalRule diagonal_rule = DiagonalRule::Skip;

  std::vector<double> profile;  // W_m, m = 1..N-1
  double band1_extra = 0.0;     // strip weight, ordered-pair convention
  std::vector<char> interior;   // effective Omega membership per node
  int threads = 1;              // shell-parallel evaluation, ordered reduce
};

DiscreteForm assemble(MeshPtr mesh, const KernelSpec& kernel, double p,
                      Region region = Region::FullComplement,
                      DiagonalRule diag = DiagonalRule::Skip);

// Same, with an explicit Omega-membership mask replacing the mesh's
// interior set (used e.g. for disconnected-domain surrogates).
DiscreteForm assemble_masked(MeshPtr mesh, const KernelSpec& kernel, double p,
                             Region region, DiagonalRule diag,
                             std::vector<char> omega_mask);

// E(u,u) = sum over masked ordered pairs of w_ij |u_i-u_j|^p. A positive
// smoothing delta replaces |t|^p by (t^2+delta^2)^{p/2} - delta^p.
double energy(const DiscreteForm& form, const GridFunction& u,
              double smoothing = 0.0);

// E(u,v) with psi(t) = |t|^{p-2} t.
double form_apply(const DiscreteForm& form, const GridFunction& u,
                  const GridFunction& v);

// Exact gradient of the (possibly smoothed) discrete energy,
// grad_i = 2p sum_j w_ij psi(u_i - u_j) on the masked pairs.
GridFunction grad_energy(const DiscreteForm& form, const GridFunction& u,
                         double smoothing = 0.0);

// Fused evaluation used by the solvers.
double energy_and_grad(const DiscreteForm& form, const GridFunction& u,
                       GridFunction& grad, double smoothing = 0.0);

// Nodal operator values sharing the form's pairwise weights:
// (Lu)_i = (2/q_i) sum_{j != i} w_ij psi(u_i - u_j)  (all pairs), and
// (Nu)_k = (2/q_k) sum_{j interior} w_kj psi(u_k - u_j) at exterior k.
GridFunction discrete_L(const DiscreteForm& form, const GridFunction& u);
GridFunction discrete_normal(const DiscreteForm& form, const GridFunction& u);

// | int_Omega Lu v - ( E(u,v) - int_{Omega^c} Nu v ) | with all three terms
// built from the same weights; zero up to roundoff by construction.
double gauss_green_residual(const DiscreteForm& form, const GridFunction& u,
                            const GridFunction& v);

}  // namespace plevy
