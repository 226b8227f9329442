// Copyright (c) 2026 the plevy authors.
// SPDX-License-Identifier: Apache-2.0

#include "plevy/mesh.hpp"

#include <cmath>

#include "plevy/errors.hpp"

namespace plevy {

MeshPtr build_mesh(double a, double b, int n_interior, double collar_R,
                   const KernelSpec* hull_kernel) {
  if (!(a < b)) throw ConfigError("build_mesh: need a < b");
  if (n_interior < 4) throw ConfigError("build_mesh: n_interior must be >= 4");
  if (!(collar_R > 0.0)) throw ConfigError("build_mesh: collar_R must be > 0");

  auto mesh = std::make_shared<Mesh1D>();
  mesh->a = a;
  mesh->b = b;
  mesh->collar_R = collar_R;
  mesh->n_interior = n_interior;
  const double h = (b - a) / n_interior;
  mesh->spacing = h;
  const int n_col = std::max(1, (int)std::lround(collar_R / h));
  const int n_nodes = n_interior + 2 * n_col + 1;

  mesh->nodes.resize(n_nodes);
  mesh->is_interior.assign(n_nodes, 0);
  mesh->quad_w.assign(n_nodes, h);
  mesh->quad_w.front() = 0.5 * h;
  mesh->quad_w.back() = 0.5 * h;

  const double tol = 1e-12 * (b - a);
  for (int i = 0; i < n_nodes; ++i) {
    const double x = a + (i - n_col) * h;
    mesh->nodes[i] = x;
    if (x > a + tol && x < b - tol) {
      mesh->is_interior[i] = 1;
      mesh->interior_idx.push_back(i);
    } else {
      mesh->exterior_idx.push_back(i);
    }
  }

  if (hull_kernel != nullptr) {
    const Hull hull = nonlocal_hull(a, b, *hull_kernel);
    for (int i = 0; i < n_nodes; ++i) {
      const double x = mesh->nodes[i];
      const bool inside =
          hull.whole_line ||
          (hull.degenerate ? (x > a + tol && x < b - tol)
                           : (x > hull.lo - tol && x < hull.hi + tol));
      if (inside) mesh->hull_idx.push_back(i);
    }
  }
  return mesh;
}

MeshPtr build_full_line(double L, int n_cells) {
  if (!(L > 0.0)) throw ConfigError("build_full_line: L must be positive");
  if (n_cells < 4) throw ConfigError("build_full_line: too few cells");
  auto mesh = std::make_shared<Mesh1D>();
  mesh->a = -L;
  mesh->b = L;
  mesh->collar_R = 0.0;
  mesh->n_interior = n_cells;
  const double h = 2.0 * L / n_cells;
  mesh->spacing = h;
  const int n_nodes = n_cells + 1;
  mesh->nodes.resize(n_nodes);
  mesh->is_interior.assign(n_nodes, 1);
  mesh->quad_w.assign(n_nodes, h);
  mesh->quad_w.front() = 0.5 * h;
  mesh->quad_w.back() = 0.5 * h;
  for (int i = 0; i < n_nodes; ++i) {
    mesh->nodes[i] = -L + i * h;
    mesh->interior_idx.push_back(i);
  }
  return mesh;
}

Hull nonlocal_hull(double a, double b, const KernelSpec& k) {
  if (!(a < b)) throw DomainError("nonlocal_hull: need a < b");
  Hull hull;
  const double R = support_radius(k);
  if (std::isinf(R)) {
    hull.whole_line = true;
    return hull;
  }
  if (R <= 0.0) {
    // supp nu = {0}: Minkowski sum leaves Omega unchanged and the nonlocal
    // boundary is empty.
    hull.lo = a;
    hull.hi = b;
    hull.degenerate = true;
    return hull;
  }
  hull.lo = a - R;
  hull.hi = b + R;
  return hull;
}

}  // namespace plevy
