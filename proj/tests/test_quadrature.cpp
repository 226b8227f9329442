// Copyright (c) 2026 the plevy authors.
// SPDX-License-Identifier: Apache-2.0

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "plevy/quadrature.hpp"

using namespace plevy;

TEST_CASE("gauss rule integrates polynomials exactly") {
  const auto& r = gauss_legendre(10);
  double s = 0.0;
  for (size_t i = 0; i < r.nodes.size(); ++i)
    s += r.weights[i] * std::pow(r.nodes[i], 18);
  CHECK(s == doctest::Approx(2.0 / 19.0).epsilon(1e-13));
  double w = 0.0;
  for (double wi : r.weights) w += wi;
  CHECK(w == doctest::Approx(2.0).epsilon(1e-14));
}

TEST_CASE("adaptive integrate") {
  auto f = [](double x) { return std::sin(x); };
  CHECK(integrate(f, 0.0, std::numbers::pi).value ==
        doctest::Approx(2.0).epsilon(1e-12));
  auto g = [](double x) { return std::exp(-x * x); };
  CHECK(integrate(g, -8.0, 8.0).value ==
        doctest::Approx(std::sqrt(std::numbers::pi)).epsilon(1e-12));
}

TEST_CASE("integrate to infinity") {
  auto f = [](double x) { return std::exp(-x); };
  CHECK(integrate_to_inf(f, 0.0).value == doctest::Approx(1.0).epsilon(1e-10));
  auto g = [](double x) { return 1.0 / (x * x); };
  CHECK(integrate_to_inf(g, 2.0).value == doctest::Approx(0.5).epsilon(1e-10));
}

TEST_CASE("power-singular endpoint") {
  // int_0^1 x^{-0.9} dx = 10
  auto f = [](double x) { return std::pow(x, -0.9); };
  CHECK(integrate_power_singular(f, 1.0, -0.9).value ==
        doctest::Approx(10.0).epsilon(1e-9));
  // int_0^2 x^{-0.5} (1+x) dx = 2 sqrt(2) + (2/3) 2^{3/2}
  auto g = [](double x) { return std::pow(x, -0.5) * (1.0 + x); };
  const double expected =
      2.0 * std::sqrt(2.0) + (2.0 / 3.0) * std::pow(2.0, 1.5);
  CHECK(integrate_power_singular(g, 2.0, -0.5).value ==
        doctest::Approx(expected).epsilon(1e-10));
}
