// Copyright (c) 2026 the plevy authors.
// SPDX-License-Identifier: Apache-2.0

#include "plevy/operators.hpp"

#include <cmath>
#include <numbers>

#include "plevy/errors.hpp"
#include "plevy/quadrature.hpp"
#include "plevy/special_functions.hpp"

namespace plevy {

SmoothFunction1D SmoothFunction1D::gaussian(double center, double width) {
  SmoothFunction1D f;
  f.kind = Kind::Gaussian;
  f.center = center;
  f.width = width;
  return f;
}

SmoothFunction1D SmoothFunction1D::polynomial(std::vector<double> coeffs) {
  SmoothFunction1D f;
  f.kind = Kind::Polynomial;
  f.coeffs = std::move(coeffs);
  return f;
}

SmoothFunction1D SmoothFunction1D::bump(double center, double radius) {
  SmoothFunction1D f;
  f.kind = Kind::BumpCompact;
  f.center = center;
  f.radius = radius;
  return f;
}

double SmoothFunction1D::value(double x) const {
  switch (kind) {
    case Kind::Gaussian: {
      const double z = (x - center) / width;
      return std::exp(-z * z);
    }
    case Kind::Polynomial: {
      double v = 0.0;
      for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it)
        v = v * x + *it;
      return v;
    }
    case Kind::BumpCompact: {
      const double z = (x - center) / radius;
      if (std::abs(z) >= 1.0) return 0.0;
      return std::exp(1.0 - 1.0 / (1.0 - z * z));
    }
  }
  return 0.0;
}

double SmoothFunction1D::d1(double x) const {
  switch (kind) {
    case Kind::Gaussian: {
      const double z = (x - center) / width;
      return -2.0 * z * std::exp(-z * z) / width;
    }
    case Kind::Polynomial: {
      double v = 0.0;
      for (size_t k = coeffs.size(); k-- > 1;)
        v = v * x + coeffs[k] * static_cast<double>(k);
      return v;
    }
    case Kind::BumpCompact: {
      const double z = (x - center) / radius;
      if (std::abs(z) >= 1.0) return 0.0;
      const double d = 1.0 - z * z;
      const double g1 = -2.0 * z / (d * d);
      return value(x) * g1 / radius;
    }
  }
  return 0.0;
}

double SmoothFunction1D::d2(double x) const {
  switch (kind) {
    case Kind::Gaussian: {
      const double z = (x - center) / width;
      return (4.0 * z * z - 2.0) * std::exp(-z * z) / (width * width);
    }
    case Kind::Polynomial: {
      double v = 0.0;
      for (size_t k = coeffs.size(); k-- > 2;)
        v = v * x + coeffs[k] * static_cast<double>(k) *
                        static_cast<double>(k - 1);
      return v;
    }
    case Kind::BumpCompact: {
      const double z = (x - center) / radius;
      if (std::abs(z) >= 1.0) return 0.0;
      const double d = 1.0 - z * z;
      const double g1 = -2.0 * z / (d * d);
      const double g2 = -2.0 / (d * d) - 8.0 * z * z / (d * d * d);
      return value(x) * (g1 * g1 + g2) / (radius * radius);
    }
  }
  return 0.0;
}

bool SmoothFunction1D::bounded() const {
  if (kind != Kind::Polynomial) return true;
  for (size_t k = 1; k < coeffs.size(); ++k)
    if (coeffs[k] != 0.0) return false;
  return true;
}

namespace {

inline double psi(double t, double p) {
  if (t == 0.0) return 0.0;
  return std::pow(std::abs(t), p - 2.0) * t;
}

}  // namespace

double local_plaplace_1d(const SmoothFunction1D& u, double p, double x) {
  const double du = u.d1(x);
  if (p < 2.0 && du == 0.0)
    throw DomainError("local_plaplace_1d: p < 2 at a critical point");
  if (du == 0.0) {
    return p == 2.0 ? u.d2(x) : 0.0;
  }
  return (p - 1.0) * std::pow(std::abs(du), p - 2.0) * u.d2(x);
}

PointwiseResult pointwise_L(const SmoothFunction1D& u, const KernelSpec& k,
                            double p, double x) {
  if (p < 2.0 && u.d1(x) == 0.0)
    throw DomainError("pointwise_L: p < 2 requires a noncritical point");
  const double sup = support_radius(k);
  if (std::isinf(sup) && !u.bounded())
    throw DomainError(
        "pointwise_L: unbounded test function with a fully supported kernel");

  // Taylor coefficient of the symmetrized second difference:
  // psi(u(x+h)-u(x)) + psi(u(x-h)-u(x)) = Cp h^p (1+O(h)) near h = 0.
  const double Cp =
      (u.d1(x) == 0.0 && p > 2.0)
          ? 0.0
          : (p - 1.0) * std::pow(std::abs(u.d1(x)), p - 2.0) * u.d2(x);
  const double h0 = 1e-5 * std::max(1.0, std::abs(x));

  auto snorm = [&](double h) {
    if (h < h0) return Cp;
    const double s =
        psi(u.value(x + h) - u.value(x), p) + psi(u.value(x - h) - u.value(x), p);
    return s / std::pow(h, p);
  };

  // Truncation radius: far enough that u has decayed (or the kernel ended).
  double T;
  if (std::isfinite(sup)) {
    T = sup;
  } else if (u.kind == SmoothFunction1D::Kind::Gaussian) {
    T = std::abs(x - u.center) + 12.0 * u.width;
  } else if (u.kind == SmoothFunction1D::Kind::BumpCompact) {
    T = std::abs(x - u.center) + u.radius + 10.0;
  } else {
    T = std::abs(x) + 20.0;  // bounded polynomial = constant
  }

  const double delta0 = std::min(0.5, T);
  PointwiseResult res;

  // (0, delta0]: singular part through the normalized quotient
  const double alpha = p + near_origin_power(k);
  auto near_f = [&](double h) {
    return snorm(h) * std::pow(h, p) * kernel_eval(k, h);
  };
  QuadResult near = integrate_power_singular(near_f, delta0, alpha, 1e-10, 1e-13);
  res.value += -2.0 * near.value;
  res.error_estimate += 2.0 * near.error_estimate;

  // [delta0, T]: direct symmetrized integrand
  if (T > delta0) {
    auto far_f = [&](double h) {
      const double s = psi(u.value(x + h) - u.value(x), p) +
                       psi(u.value(x - h) - u.value(x), p);
      return s * kernel_eval(k, h);
    };
    QuadResult far = integrate(far_f, delta0, T, 1e-10, 1e-13);
    res.value += -2.0 * far.value;
    res.error_estimate += 2.0 * far.error_estimate;
  }

  // analytic tail: u(x +- h) ~ 0 beyond T, so the integrand is 2 psi(-u(x))
  if (std::isinf(sup)) {
    const double one_sided_tail = 0.5 * tail_mass(k, T);
    res.value += 2.0 * psi(u.value(x), p) * 2.0 * one_sided_tail;
    // leftover from |u| <= m outside [x-T, x+T]
    double m = 0.0;
    if (u.kind == SmoothFunction1D::Kind::Gaussian)
      m = std::exp(-std::pow((T - std::abs(x - u.center)) / u.width, 2));
    res.error_estimate +=
        4.0 * one_sided_tail *
        (std::pow(std::abs(u.value(x)) + m, p - 1.0) -
         std::pow(std::abs(u.value(x)), p - 1.0) + std::pow(m, p - 1.0));
  }
  return res;
}

double nonlocal_normal(const SmoothFunction1D& u, const KernelSpec& k,
                       double p, double y, double a, double b) {
  if (y >= a && y <= b)
    throw DomainError("nonlocal_normal: y must lie outside the closure of Omega");
  const double sup = support_radius(k);
  // restrict to Omega intersected with the kernel support around y
  double lo = a, hi = b;
  if (std::isfinite(sup)) {
    lo = std::max(lo, y - sup);
    hi = std::min(hi, y + sup);
    if (lo >= hi) return 0.0;
  }
  auto f = [&](double xx) {
    return psi(u.value(y) - u.value(xx), p) * kernel_eval(k, std::abs(xx - y));
  };
  return 2.0 * integrate(f, lo, hi, 1e-10, 1e-13).value;
}

SphericalMeanCheck spherical_mean_check(
    int d, double p, const std::array<double, 3>& grad,
    const std::array<std::array<double, 3>, 3>& hess) {
  if (d != 2 && d != 3)
    throw DomainError("spherical_mean_check: d must be 2 or 3");
  double gnorm2 = 0.0;
  for (int i = 0; i < d; ++i) gnorm2 += grad[i] * grad[i];
  if (p < 2.0 && gnorm2 == 0.0)
    throw DomainError("spherical_mean_check: p < 2 with zero gradient");

  auto integrand = [&](const std::array<double, 3>& w) {
    double gw = 0.0, hww = 0.0;
    for (int i = 0; i < d; ++i) {
      gw += grad[i] * w[i];
      for (int j = 0; j < d; ++j) hww += hess[i][j] * w[i] * w[j];
    }
    const double f = (gw == 0.0 && p < 2.0)
                         ? 0.0
                         : std::pow(std::abs(gw), p - 2.0);
    return (p == 2.0 ? 1.0 : f) * hww;
  };

  SphericalMeanCheck out;
  if (d == 2) {
    // adaptive over the circle, split where grad.w vanishes (kink for
    // non-even p)
    auto f = [&](double th) {
      return integrand({std::cos(th), std::sin(th), 0.0});
    };
    const double two_pi = 2.0 * std::numbers::pi;
    double splits[2] = {0.25 * two_pi, 0.75 * two_pi};
    if (gnorm2 > 0.0) {
      const double phi = std::atan2(grad[1], grad[0]);
      splits[0] = phi + 0.25 * two_pi;
      splits[1] = phi + 0.75 * two_pi;
    }
    double v = integrate(f, splits[0], splits[1], 1e-12, 1e-15).value +
               integrate(f, splits[1], splits[0] + two_pi, 1e-12, 1e-15).value;
    out.lhs = v / two_pi;
  } else {
    const auto& rule = gauss_legendre(96);
    const int n_theta = 256;
    double sum = 0.0;
    for (size_t iq = 0; iq < rule.nodes.size(); ++iq) {
      const double ct = rule.nodes[iq];  // cos(phi)
      const double st = std::sqrt(std::max(0.0, 1.0 - ct * ct));
      double ring = 0.0;
      for (int it = 0; it < n_theta; ++it) {
        const double th = 2.0 * std::numbers::pi * it / n_theta;
        ring += integrand({st * std::cos(th), st * std::sin(th), ct});
      }
      sum += rule.weights[iq] * ring / n_theta;
    }
    out.lhs = 0.5 * sum;  // average over S^2
  }

  // closed form: K_{d,p}/(p-1) |g|^{p-2} (trace H + (p-2) Hg.g/|g|^2)
  const double K = k_dp(d, p);
  double trace = 0.0, hgg = 0.0;
  for (int i = 0; i < d; ++i) {
    trace += hess[i][i];
    for (int j = 0; j < d; ++j) hgg += hess[i][j] * grad[i] * grad[j];
  }
  double delta_p;
  if (gnorm2 == 0.0) {
    delta_p = (p == 2.0) ? trace : 0.0;
  } else {
    delta_p = std::pow(gnorm2, 0.5 * (p - 2.0)) *
              (trace + (p - 2.0) * hgg / gnorm2);
  }
  out.rhs = K / (p - 1.0) * delta_p;
  return out;
}

}  // namespace plevy
