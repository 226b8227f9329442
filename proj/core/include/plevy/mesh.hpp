// Copyright (c) 2026 the plevy authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <memory>
#include <vector>

#include "plevy/kernels.hpp"

namespace plevy {

// Uniform 1D grid over [a - collar_R, b + collar_R] with Omega = (a,b).
// Nodes strictly inside Omega are interior; everything else (including the
// endpoints a and b, which belong to the complement of the open interval)
// is exterior.
struct Mesh1D {
  double a = -1.0, b = 1.0;
  double collar_R = 1.0;
  int n_interior = 0;  // cells across Omega
  double spacing = 0.0;
  std::vector<double> nodes;
  std::vector<int> interior_idx, exterior_idx, hull_idx;
  std::vector<char> is_interior;  // per node
  std::vector<double> quad_w;     // trapezoid weights

  int num_nodes() const { return static_cast<int>(nodes.size()); }
  bool same_grid(const Mesh1D& o) const {
    return a == o.a && b == o.b && collar_R == o.collar_R &&
           n_interior == o.n_interior && nodes.size() == o.nodes.size();
  }
};

using MeshPtr = std::shared_ptr<const Mesh1D>;

// hull_kernel is optional; when given, hull_idx marks the nodes inside
// Omega + supp nu (intersected with the computational box).
MeshPtr build_mesh(double a, double b, int n_interior, double collar_R,
                   const KernelSpec* hull_kernel = nullptr);

// Grid over [-L, L] with every node treated as interior; used for
// full-space energies in the convergence experiments.
MeshPtr build_full_line(double L, int n_cells);

struct Hull {
  bool whole_line = false;
  double lo = 0.0, hi = 0.0;
  bool degenerate = false;  // supp nu = {0}: hull collapses to Omega itself
};

// Omega_nu = Omega + supp nu for Omega = (a,b).
Hull nonlocal_hull(double a, double b, const KernelSpec& k);

}  // namespace plevy
