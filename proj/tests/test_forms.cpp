// Copyright (c) 2026 the plevy authors.
// SPDX-License-Identifier: Apache-2.0

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "plevy/errors.hpp"
#include "plevy/forms.hpp"
#include "support.hpp"

using namespace plevy;
namespace pt = plevy::testing;

namespace {

// independent oracle: brute-force enumeration of all node pairs with the
// same Toeplitz profile, trapezoid weights and region mask
double brute_force_energy(const DiscreteForm& form, const GridFunction& u) {
  const Mesh1D& mesh = *form.mesh;
  const int n = mesh.num_nodes();
  double acc = 0.0;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (i == j) continue;
      const int m = std::abs(i - j);
      const double bi = form.interior[i] ? 1.0 : 0.0;
      const double bj = form.interior[j] ? 1.0 : 0.0;
      double c = 0.0;
      switch (form.region) {
        case Region::FullComplement: c = std::max(bi, bj); break;
        case Region::Regional: c = std::min(bi, bj); break;
        case Region::Plus: c = 0.5 * (bi + bj); break;
      }
      const double w = form.profile[m - 1] * mesh.quad_w[i] * mesh.quad_w[j] +
                       (m == 1 ? form.band1_extra : 0.0);
      acc += c * w * std::pow(std::abs(u.values[i] - u.values[j]), form.p);
    }
  }
  return acc;
}

}  // namespace

TEST_CASE("assemble: indicator support below the spacing") {
  const MeshPtr mesh = build_mesh(-1.0, 1.0, 16, 1.0);
  const KernelSpec k = KernelSpec::indicator(1, 0.5 * mesh->spacing);
  const DiscreteForm form =
      assemble(mesh, k, 2.0, Region::FullComplement, DiagonalRule::Skip);
  for (double w : form.profile) CHECK(w == 0.0);
  std::mt19937_64 rng(3);
  const GridFunction u = pt::random_grid(mesh, rng);
  CHECK(energy(form, u) == doctest::Approx(0.0));
}

TEST_CASE("assemble: fractional profile decays monotonically") {
  const MeshPtr mesh = build_mesh(-1.0, 1.0, 64, 1.0);
  for (auto diag : {DiagonalRule::Skip, DiagonalRule::LocalExact}) {
    const DiscreteForm form = assemble(
        mesh, KernelSpec::fractional(1, 2.0, 0.6), 2.0,
        Region::FullComplement, diag);
    for (size_t m = 1; m < form.profile.size(); ++m)
      CHECK(form.profile[m] < form.profile[m - 1]);
    CHECK(form.profile.front() > 0.0);
  }
}

TEST_CASE("assemble rejects divergent kernels and d != 1") {
  const MeshPtr mesh = build_mesh(-1.0, 1.0, 8, 1.0);
  CHECK_THROWS_AS(assemble(mesh, KernelSpec::fractional(1, 2.0, 1.2), 2.0),
                  AssemblyError);
  CHECK_THROWS_AS(assemble(mesh, KernelSpec::fractional(2, 2.0, 0.5), 2.0),
                  AssemblyError);
}

TEST_CASE("energy: linear u against brute-force pair enumeration") {
  const MeshPtr mesh = build_mesh(-1.0, 1.0, 32, 1.0);
  const KernelSpec k = KernelSpec::indicator(1, 1.5 * mesh->spacing);
  const DiscreteForm form =
      assemble(mesh, k, 2.0, Region::FullComplement, DiagonalRule::Skip);
  const GridFunction u = grid_sample(mesh, [](double x) { return x; });
  CHECK(energy(form, u) ==
        doctest::Approx(brute_force_energy(form, u)).epsilon(1e-13));

  // and for all three regions with a random u under LocalExact
  std::mt19937_64 rng(11);
  const GridFunction v = pt::random_grid(mesh, rng);
  for (auto region : {Region::FullComplement, Region::Regional, Region::Plus}) {
    const DiscreteForm f2 = assemble(
        mesh, KernelSpec::fractional(1, 2.5, 0.4), 2.5, region,
        DiagonalRule::LocalExact);
    CHECK(energy(f2, v) ==
          doctest::Approx(brute_force_energy(f2, v)).epsilon(1e-12));
  }
}

TEST_CASE("energy: constants and p-homogeneity") {
  const MeshPtr mesh = build_mesh(-1.0, 1.0, 48, 1.0);
  std::mt19937_64 rng(17);
  for (double p : {1.5, 2.0, 3.0}) {
    const DiscreteForm form = assemble(
        mesh, KernelSpec::fractional(1, p, 0.45), p, Region::FullComplement,
        DiagonalRule::LocalExact);
    CHECK(energy(form, GridFunction(mesh, 2.5)) == doctest::Approx(0.0));
    GridFunction u = pt::random_grid(mesh, rng);
    const double E = energy(form, u);
    GridFunction shifted = u;
    for (auto& w : shifted.values) w += 7.3;
    CHECK(std::abs(energy(form, shifted) - E) <= 1e-12 * E);
    const double lam = -1.7;
    GridFunction scaled = u;
    for (auto& w : scaled.values) w *= lam;
    CHECK(pt::close_rel(energy(form, scaled), std::pow(std::abs(lam), p) * E,
                        1e-12));
  }
}

TEST_CASE("form ordering E <= 2E+ <= 2E and regional below full") {
  const MeshPtr mesh = build_mesh(-1.0, 1.0, 40, 1.0);
  const KernelSpec k = KernelSpec::fractional(1, 3.0, 0.3);
  const DiscreteForm full =
      assemble(mesh, k, 3.0, Region::FullComplement, DiagonalRule::LocalExact);
  const DiscreteForm reg =
      assemble(mesh, k, 3.0, Region::Regional, DiagonalRule::LocalExact);
  const DiscreteForm plus =
      assemble(mesh, k, 3.0, Region::Plus, DiagonalRule::LocalExact);
  std::mt19937_64 rng(23);
  for (int t = 0; t < 30; ++t) {
    const GridFunction u = pt::random_grid(mesh, rng);
    const double E = energy(full, u);
    const double Ep = energy(plus, u);
    const double Er = energy(reg, u);
    CHECK(E <= 2.0 * Ep * (1.0 + 1e-12));
    CHECK(2.0 * Ep <= 2.0 * E * (1.0 + 1e-12));
    CHECK(Er <= E * (1.0 + 1e-12));
  }
}

TEST_CASE("form_apply: translation in v, Holder bound, bilinearity at p=2") {
  const MeshPtr mesh = build_mesh(-1.0, 1.0, 40, 1.0);
  std::mt19937_64 rng(29);
  for (double p : {2.0, 3.0}) {
    const DiscreteForm form = assemble(
        mesh, KernelSpec::fractional(1, p, 0.5), p, Region::FullComplement,
        DiagonalRule::LocalExact);
    for (int t = 0; t < 20; ++t) {
      const GridFunction u = pt::random_grid(mesh, rng);
      const GridFunction v = pt::random_grid(mesh, rng);
      CHECK(std::abs(form_apply(form, u, GridFunction(mesh, 4.2))) <= 1e-12);
      const double E = energy(form, u), Ev = energy(form, v);
      CHECK(std::abs(form_apply(form, u, v)) <=
            std::pow(E, (p - 1.0) / p) * std::pow(Ev, 1.0 / p) * (1 + 1e-10));
      CHECK(form_apply(form, u, u) == doctest::Approx(E).epsilon(1e-12));
      if (p == 2.0) {
        const GridFunction w = pt::random_grid(mesh, rng);
        GridFunction vw(mesh);
        for (int i = 0; i < vw.size(); ++i)
          vw.values[i] = 2.0 * v.values[i] - 3.0 * w.values[i];
        const double lhs = form_apply(form, u, vw);
        const double rhs =
            2.0 * form_apply(form, u, v) - 3.0 * form_apply(form, u, w);
        CHECK(pt::close_rel(lhs, rhs, 1e-11));
        CHECK(pt::close_rel(form_apply(form, u, v), form_apply(form, v, u),
                            1e-11));
      }
    }
  }
}

TEST_CASE("convexity of the energy") {
  const MeshPtr mesh = build_mesh(-1.0, 1.0, 40, 1.0);
  std::mt19937_64 rng(31);
  for (double p : {1.5, 2.0, 3.0}) {
    const DiscreteForm form = assemble(
        mesh, KernelSpec::fractional(1, p, 0.4), p, Region::FullComplement,
        DiagonalRule::LocalExact);
    for (int t = 0; t < 25; ++t) {
      const GridFunction u = pt::random_grid(mesh, rng);
      const GridFunction v = pt::random_grid(mesh, rng);
      GridFunction mid(mesh);
      for (int i = 0; i < mid.size(); ++i)
        mid.values[i] = 0.5 * (u.values[i] + v.values[i]);
      CHECK(energy(form, mid) <=
            0.5 * (energy(form, u) + energy(form, v)) + 1e-11);
    }
  }
}

TEST_CASE("gradient matches central finite differences") {
  const MeshPtr mesh = build_mesh(-1.0, 1.0, 32, 1.0);
  std::mt19937_64 rng(37);
  std::uniform_int_distribution<int> pick(0, mesh->num_nodes() - 1);
  for (double p : {1.5, 2.0, 3.0}) {
    const DiscreteForm form = assemble(
        mesh, KernelSpec::fractional(1, p, 0.45), p, Region::FullComplement,
        DiagonalRule::LocalExact);
    const double delta = (p < 2.0) ? 1e-3 : 0.0;
    for (int t = 0; t < 10; ++t) {
      const GridFunction u = pt::random_grid(mesh, rng);
      const GridFunction g = grad_energy(form, u, delta);
      for (int c = 0; c < 6; ++c) {
        const int i = pick(rng);
        const double h = 1e-6;
        GridFunction up = u, dn = u;
        up.values[i] += h;
        dn.values[i] -= h;
        const double fd =
            (energy(form, up, delta) - energy(form, dn, delta)) / (2.0 * h);
        CHECK(std::abs(fd - g.values[i]) <=
              1e-6 * (std::abs(fd) + std::abs(g.values[i]) + 1.0));
      }
    }
  }
}

TEST_CASE("gradient components sum to zero on the full-space form") {
  const MeshPtr mesh = build_full_line(4.0, 128);
  const DiscreteForm form = assemble(
      mesh, KernelSpec::fractional(1, 3.0, 0.4), 3.0, Region::FullComplement,
      DiagonalRule::LocalExact);
  std::mt19937_64 rng(41);
  const GridFunction u = pt::random_grid(mesh, rng);
  const GridFunction g = grad_energy(form, u);
  double sum = 0.0, scale = 0.0;
  for (double v : g.values) {
    sum += v;
    scale += std::abs(v);
  }
  CHECK(std::abs(sum) <= 1e-12 * (scale + 1.0));
}

TEST_CASE("p < 2 without smoothing refuses exact ties") {
  const MeshPtr mesh = build_mesh(-1.0, 1.0, 8, 1.0);
  const DiscreteForm form = assemble(
      mesh, KernelSpec::fractional(1, 1.5, 0.4), 1.5, Region::FullComplement,
      DiagonalRule::LocalExact);
  const GridFunction u(mesh, 1.0);  // all values tie
  CHECK_THROWS_AS(grad_energy(form, u, 0.0), DomainError);
  CHECK_NOTHROW(grad_energy(form, u, 1e-6));
}

TEST_CASE("gradient equals p q_i times the nodal operator") {
  const MeshPtr mesh = build_mesh(-1.0, 1.0, 24, 1.0);
  const DiscreteForm form = assemble(
      mesh, KernelSpec::fractional(1, 3.0, 0.5), 3.0, Region::FullComplement,
      DiagonalRule::LocalExact);
  std::mt19937_64 rng(43);
  const GridFunction u = pt::random_grid(mesh, rng);
  const GridFunction g = grad_energy(form, u);
  const GridFunction L = discrete_L(form, u);
  for (int i : mesh->interior_idx) {
    CHECK(pt::close_rel(g.values[i],
                        form.p * mesh->quad_w[i] * L.values[i], 1e-12));
  }
}

TEST_CASE("discrete Gauss-Green identity") {
  const MeshPtr mesh = build_mesh(-1.0, 1.0, 48, 1.5);
  std::mt19937_64 rng(47);
  for (double p : {2.0, 3.5}) {
    const DiscreteForm form = assemble(
        mesh, KernelSpec::fractional(1, p, 0.5), p, Region::FullComplement,
        DiagonalRule::LocalExact);
    for (int t = 0; t < 10; ++t) {
      const GridFunction u = pt::random_grid(mesh, rng);
      const GridFunction v = pt::random_grid(mesh, rng);
      const double scale = 1.0 + energy(form, u);
      const double tol = (p == 2.0) ? 1e-12 : 1e-10;
      CHECK(gauss_green_residual(form, u, v) <= tol * scale);
    }
    // v = 1: integration by parts, int_Omega Lu = -int_{Omega^c} Nu
    const GridFunction u = pt::random_grid(mesh, rng);
    const GridFunction one(mesh, 1.0);
    CHECK(gauss_green_residual(form, u, one) <=
          1e-10 * (1.0 + energy(form, u)));
    const GridFunction Lu = discrete_L(form, u);
    const GridFunction Nu = discrete_normal(form, u);
    double li = 0.0, ni = 0.0;
    for (int i = 0; i < mesh->num_nodes(); ++i) {
      if (mesh->is_interior[i])
        li += Lu.values[i] * mesh->quad_w[i];
      else
        ni += Nu.values[i] * mesh->quad_w[i];
    }
    CHECK(std::abs(li + ni) <= 1e-10 * (1.0 + energy(form, u)));
  }
}

TEST_CASE("smoothed energy approaches the raw energy") {
  const MeshPtr mesh = build_mesh(-1.0, 1.0, 24, 1.0);
  const DiscreteForm form = assemble(
      mesh, KernelSpec::fractional(1, 1.5, 0.4), 1.5, Region::FullComplement,
      DiagonalRule::LocalExact);
  std::mt19937_64 rng(53);
  const GridFunction u = pt::random_grid(mesh, rng);
  const double raw = energy(form, u, 0.0);
  double prev_err = 1e300;
  for (double delta : {1e-2, 1e-4, 1e-6}) {
    const double err = std::abs(energy(form, u, delta) - raw);
    CHECK(err < prev_err);
    prev_err = err;
  }
  CHECK(prev_err <= 1e-6 * (1.0 + raw));
}

TEST_CASE("threaded evaluation is bit-identical to serial") {
  const MeshPtr mesh = build_mesh(-1.0, 1.0, 96, 1.0);
  DiscreteForm form = assemble(
      mesh, KernelSpec::fractional(1, 2.0, 0.5), 2.0, Region::FullComplement,
      DiagonalRule::LocalExact);
  std::mt19937_64 rng(59);
  const GridFunction u = pt::random_grid(mesh, rng);
  const double serial = energy(form, u);
  form.threads = 4;
  const double threaded = energy(form, u);
  CHECK(serial == threaded);  // exact: band-ordered reduction
}

TEST_CASE("mesh mismatch raises") {
  const MeshPtr m1 = build_mesh(-1.0, 1.0, 16, 1.0);
  const MeshPtr m2 = build_mesh(-1.0, 1.0, 24, 1.0);
  const DiscreteForm form =
      assemble(m1, KernelSpec::fractional(1, 2.0, 0.5), 2.0);
  CHECK_THROWS_AS(energy(form, GridFunction(m2)), MeshMismatchError);
}
