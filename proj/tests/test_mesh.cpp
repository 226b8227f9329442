// Copyright (c) 2026 the plevy authors.
// SPDX-License-Identifier: Apache-2.0

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "plevy/errors.hpp"
#include "plevy/forms.hpp"
#include "plevy/mesh.hpp"
#include "support.hpp"

using namespace plevy;

TEST_CASE("build_mesh basic arithmetic") {
  const MeshPtr m = build_mesh(-1.0, 1.0, 4, 1.0);
  CHECK(m->spacing == doctest::Approx(0.5));
  CHECK(m->num_nodes() == 9);  // 8 cells over [-2,2]
  CHECK(m->nodes.front() == doctest::Approx(-2.0));
  CHECK(m->nodes.back() == doctest::Approx(2.0));

  const MeshPtr m2 = build_mesh(0.0, 2.0, 100, 2.0);
  CHECK(m2->spacing == doctest::Approx(0.02));
  CHECK(m2->num_nodes() == 301);  // 300 cells
}

TEST_CASE("exterior collar straddles the domain") {
  const MeshPtr m = build_mesh(0.0, 1.0, 10, 0.5);
  for (int k : m->exterior_idx) {
    const double x = m->nodes[k];
    const bool left = (x >= -0.5 - 1e-12 && x <= 0.0 + 1e-12);
    const bool right = (x >= 1.0 - 1e-12 && x <= 1.5 + 1e-12);
    CHECK((left || right));
  }
  for (int i : m->interior_idx) {
    CHECK(m->nodes[i] > 0.0);
    CHECK(m->nodes[i] < 1.0);
  }
  // partition property
  CHECK(m->interior_idx.size() + m->exterior_idx.size() ==
        (size_t)m->num_nodes());
}

TEST_CASE("build_mesh rejects tiny meshes") {
  CHECK_THROWS_AS(build_mesh(0.0, 1.0, 2, 0.5), ConfigError);
  CHECK_THROWS_AS(build_mesh(1.0, 0.0, 16, 0.5), ConfigError);
  CHECK_THROWS_AS(build_mesh(0.0, 1.0, 16, 0.0), ConfigError);
}

TEST_CASE("nonlocal hull") {
  // full support: the whole line
  Hull h = nonlocal_hull(-1.0, 1.0, KernelSpec::fractional(1, 2.0, 0.5));
  CHECK(h.whole_line);

  // ball support of radius delta: (a-delta, b+delta)
  h = nonlocal_hull(2.0, 4.0, KernelSpec::indicator(1, 0.75));
  CHECK(!h.whole_line);
  CHECK(h.lo == doctest::Approx(1.25));
  CHECK(h.hi == doctest::Approx(4.75));

  // degenerate delta = 0: hull collapses to Omega, flagged
  h = nonlocal_hull(-1.0, 1.0, KernelSpec::indicator(1, 0.0));
  CHECK(h.degenerate);
  CHECK(h.lo == doctest::Approx(-1.0));
  CHECK(h.hi == doctest::Approx(1.0));
}

TEST_CASE("hull is monotone in the support radius") {
  double prev_lo = 0.0, prev_hi = 0.0;
  bool first = true;
  for (double delta : {0.1, 0.4, 0.9, 2.0}) {
    const Hull h = nonlocal_hull(-1.0, 1.0, KernelSpec::indicator(1, delta));
    if (!first) {
      CHECK(h.lo <= prev_lo);
      CHECK(h.hi >= prev_hi);
    }
    prev_lo = h.lo;
    prev_hi = h.hi;
    first = false;
  }
}

TEST_CASE("hull_idx marks nodes inside the hull") {
  const KernelSpec k = KernelSpec::indicator(1, 0.5);
  const MeshPtr m = build_mesh(-1.0, 1.0, 16, 1.0, &k);
  for (int i : m->hull_idx) {
    CHECK(m->nodes[i] > -1.5 - 1e-9);
    CHECK(m->nodes[i] < 1.5 + 1e-9);
  }
  CHECK(!m->hull_idx.empty());
  // interior nodes always belong to the hull when 0 is in supp nu
  for (int i : m->interior_idx) {
    CHECK(std::find(m->hull_idx.begin(), m->hull_idx.end(), i) !=
          m->hull_idx.end());
  }
}

TEST_CASE("exterior nodes beyond the hull receive zero coupling") {
  const KernelSpec k = KernelSpec::indicator(1, 0.25);
  const MeshPtr m = build_mesh(-1.0, 1.0, 32, 1.0, &k);
  const DiscreteForm form =
      assemble(m, k, 2.0, Region::FullComplement, DiagonalRule::Skip);
  std::mt19937_64 rng(5);
  const GridFunction u = plevy::testing::random_grid(m, rng);
  const GridFunction N = discrete_normal(form, u);
  for (int kk : m->exterior_idx) {
    const double x = m->nodes[kk];
    const double dist = std::max(-1.0 - x, x - 1.0);
    if (dist > 0.25 + m->spacing + 1e-12) {
      CHECK(std::abs(N.values[kk]) == doctest::Approx(0.0));
    }
  }
}
