// Copyright (c) 2026 the plevy authors.
// SPDX-License-Identifier: Apache-2.0

#include "plevy/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "plevy/errors.hpp"
#include "plevy/quadrature.hpp"
#include "plevy/special_functions.hpp"

namespace plevy {

KernelSpec KernelSpec::fractional(int d, double p, double s,
                                  double amplitude) {
  KernelSpec k;
  k.family = KernelFamily::Fractional;
  k.d = d;
  k.p = p;
  k.s = s;
  k.amplitude = amplitude;
  return k;
}

KernelSpec KernelSpec::truncated_fractional(int d, double p, double s,
                                            double r_cut, double amplitude) {
  KernelSpec k = fractional(d, p, s, amplitude);
  k.family = KernelFamily::TruncatedFractional;
  k.r_cut = r_cut;
  return k;
}

KernelSpec KernelSpec::indicator(int d, double delta, double amplitude) {
  KernelSpec k;
  k.family = KernelFamily::Indicator;
  k.d = d;
  k.delta = delta;
  k.amplitude = amplitude;
  return k;
}

KernelSpec KernelSpec::indicator_normalized(int d, double p, double delta) {
  return power_truncated(d, p, delta, p);
}

KernelSpec KernelSpec::stable_normalized(int d, double p, double eps) {
  if (!(eps > 0.0 && eps < 1.0))
    throw DomainError("stable_normalized: eps must lie in (0,1)");
  KernelSpec k;
  k.family = KernelFamily::StableNormalized;
  k.d = d;
  k.p = p;
  k.eps = eps;
  return k;
}

KernelSpec KernelSpec::power_truncated(int d, double p, double eps,
                                       double beta) {
  if (beta <= -d) throw DomainError("power_truncated: beta must exceed -d");
  if (eps <= 0.0) throw DomainError("power_truncated: eps must be positive");
  KernelSpec k;
  k.family = KernelFamily::PowerTruncated;
  k.d = d;
  k.p = p;
  k.eps = eps;
  k.beta = beta;
  return k;
}

KernelSpec KernelSpec::rescaled(KernelSpec base, double eps) {
  if (!(eps > 0.0 && eps < 1.0))
    throw DomainError("rescaled: eps must lie in (0,1)");
  KernelSpec k;
  k.family = KernelFamily::Rescaled;
  k.d = base.d;
  k.p = base.p;
  k.eps = eps;
  k.base = std::make_shared<const KernelSpec>(std::move(base));
  return k;
}

KernelSpec KernelSpec::scaled_fractional(int d, double p, double s,
                                         double prefactor) {
  KernelSpec k = fractional(d, p, s, 1.0);
  k.family = KernelFamily::ScaledFractional;
  k.prefactor = prefactor;
  return k;
}

namespace {

// amplitude-inclusive coefficient of pure power profiles nu(r) = C r^{-d-m};
// m is the "order times p" exponent.
struct PowerProfile {
  double coeff;
  double m;  // nu = coeff * r^{-d-m}
};

PowerProfile power_profile(const KernelSpec& k) {
  switch (k.family) {
    case KernelFamily::Fractional:
    case KernelFamily::TruncatedFractional:
      return {k.amplitude, k.s * k.p};
    case KernelFamily::StableNormalized: {
      const double a =
          k.p * k.eps * (1.0 - k.eps) / sphere_measure(k.d);
      return {k.amplitude * a, (1.0 - k.eps) * k.p};
    }
    case KernelFamily::ScaledFractional:
      return {k.amplitude * k.prefactor, k.s * k.p};
    default:
      throw Error("power_profile: not a power-law family");
  }
}

bool is_pure_power(const KernelSpec& k) {
  return k.family == KernelFamily::Fractional ||
         k.family == KernelFamily::StableNormalized ||
         k.family == KernelFamily::ScaledFractional;
}

// int_lo^hi C r^e dr
double power_integral(double C, double e, double lo, double hi) {
  if (hi <= lo) return 0.0;
  if (std::abs(e + 1.0) < 1e-13) return C * std::log(hi / lo);
  return C * (std::pow(hi, e + 1.0) - std::pow(lo, e + 1.0)) / (e + 1.0);
}

}  // namespace

double kernel_eval(const KernelSpec& k, double r) {
  if (!(r > 0.0))
    throw DomainError("kernel_eval: profile undefined for r <= 0");
  switch (k.family) {
    case KernelFamily::Fractional:
      return k.amplitude * std::pow(r, -k.d - k.s * k.p);
    case KernelFamily::TruncatedFractional:
      return r <= k.r_cut ? k.amplitude * std::pow(r, -k.d - k.s * k.p) : 0.0;
    case KernelFamily::Indicator:
      return r <= k.delta ? k.amplitude : 0.0;
    case KernelFamily::StableNormalized: {
      const auto pp = power_profile(k);
      return pp.coeff * std::pow(r, -k.d - pp.m);
    }
    case KernelFamily::PowerTruncated: {
      if (r > k.eps) return 0.0;
      const double c =
          (k.d + k.beta) / (sphere_measure(k.d) * std::pow(k.eps, k.d + k.beta));
      return k.amplitude * c * std::pow(r, k.beta - k.p);
    }
    case KernelFamily::Rescaled: {
      const double z = r / k.eps;
      const double nb = kernel_eval(*k.base, z);
      if (r <= k.eps) return k.amplitude * std::pow(k.eps, -k.d - k.p) * nb;
      if (r <= 1.0)
        return k.amplitude * std::pow(k.eps, -(double)k.d) *
               std::pow(r, -k.p) * nb;
      return k.amplitude * std::pow(k.eps, -(double)k.d) * nb;
    }
    case KernelFamily::ScaledFractional:
      return k.amplitude * k.prefactor * std::pow(r, -k.d - k.s * k.p);
  }
  throw Error("kernel_eval: unknown family");
}

double support_radius(const KernelSpec& k) {
  switch (k.family) {
    case KernelFamily::Fractional:
    case KernelFamily::StableNormalized:
    case KernelFamily::ScaledFractional:
      return kInf;
    case KernelFamily::TruncatedFractional:
      return k.r_cut;
    case KernelFamily::Indicator:
      return k.delta;
    case KernelFamily::PowerTruncated:
      return k.eps;
    case KernelFamily::Rescaled: {
      const double rb = support_radius(*k.base);
      return std::isinf(rb) ? kInf : k.eps * rb;
    }
  }
  throw Error("support_radius: unknown family");
}

double near_origin_power(const KernelSpec& k) {
  switch (k.family) {
    case KernelFamily::Fractional:
    case KernelFamily::TruncatedFractional:
    case KernelFamily::ScaledFractional:
      return -k.d - k.s * k.p;
    case KernelFamily::StableNormalized:
      return -k.d - (1.0 - k.eps) * k.p;
    case KernelFamily::Indicator:
      return 0.0;
    case KernelFamily::PowerTruncated:
      return k.beta - k.p;
    case KernelFamily::Rescaled:
      return near_origin_power(*k.base);
  }
  throw Error("near_origin_power: unknown family");
}

bool unimodal(const KernelSpec& k) {
  switch (k.family) {
    case KernelFamily::Fractional:
    case KernelFamily::TruncatedFractional:
    case KernelFamily::Indicator:
    case KernelFamily::StableNormalized:
    case KernelFamily::ScaledFractional:
      return true;
    case KernelFamily::PowerTruncated:
      return k.beta <= k.p;
    case KernelFamily::Rescaled:
      return unimodal(*k.base);
  }
  return false;
}

double tail_mass(const KernelSpec& k, double delta) {
  if (delta <= 0.0) throw DomainError("tail_mass: delta must be positive");
  const double S = sphere_measure(k.d);
  if (is_pure_power(k)) {
    const auto pp = power_profile(k);
    if (pp.m <= 0.0) return kInf;
    // |S^{d-1}| int_delta^inf r^{d-1} C r^{-d-m} dr = |S| C delta^{-m}/m
    return S * pp.coeff * std::pow(delta, -pp.m) / pp.m;
  }
  const double R = support_radius(k);
  if (delta >= R) return 0.0;
  switch (k.family) {
    case KernelFamily::TruncatedFractional:
      return S * power_integral(k.amplitude, k.d - 1.0 - k.d - k.s * k.p,
                                delta, k.r_cut);
    case KernelFamily::Indicator:
      return S * power_integral(k.amplitude, k.d - 1.0, delta, k.delta);
    case KernelFamily::PowerTruncated: {
      const double c = (k.d + k.beta) /
                       (S * std::pow(k.eps, k.d + k.beta)) * k.amplitude;
      return S * power_integral(c, k.d - 1.0 + k.beta - k.p, delta, k.eps);
    }
    case KernelFamily::Rescaled: {
      // middle branch by quadrature on [delta ^ eps, 1], outer branch
      // reduces to the base tail at radius 1/eps.
      double total = 0.0;
      auto f = [&](double r) {
        return std::pow(r, k.d - 1.0) * kernel_eval(k, r);
      };
      if (delta < 1.0) {
        const double lo = delta;
        const double hi = std::min(1.0, R);
        if (hi > lo) total += S * integrate(f, lo, hi, 1e-11, 1e-15).value;
      }
      if (R > 1.0) {
        const double from = std::max(delta, 1.0);
        // nu(h) = amp eps^{-d} nu_b(h/eps) for |h| > 1
        total += k.amplitude * tail_mass(*k.base, from / k.eps);
      }
      return total;
    }
    default:
      break;
  }
  // generic fallback
  auto f = [&](double r) { return std::pow(r, k.d - 1.0) * kernel_eval(k, r); };
  if (std::isinf(R)) return S * integrate_to_inf(f, delta).value;
  return S * integrate(f, delta, R).value;
}

double tp_moment(const KernelSpec& k, double p, double lo, double hi) {
  if (hi <= lo) return 0.0;
  if (is_pure_power(k) ||
      (k.family == KernelFamily::TruncatedFractional && hi <= k.r_cut)) {
    const auto pp = power_profile(k);
    return power_integral(pp.coeff, p - k.d - pp.m, lo, hi);
  }
  if (k.family == KernelFamily::Indicator) {
    const double top = std::min(hi, k.delta);
    return power_integral(k.amplitude, p, lo, top);
  }
  if (k.family == KernelFamily::PowerTruncated) {
    const double c = (k.d + k.beta) /
                     (sphere_measure(k.d) * std::pow(k.eps, k.d + k.beta)) *
                     k.amplitude;
    return power_integral(c, p + k.beta - k.p, lo, std::min(hi, k.eps));
  }
  // generic: adaptive with endpoint substitution when lo = 0
  auto f = [&](double r) { return std::pow(r, p) * kernel_eval(k, r); };
  const double R = support_radius(k);
  const double top = std::min(hi, R);
  if (top <= lo) return 0.0;
  if (lo == 0.0) {
    const double alpha = p + near_origin_power(k);
    // split at family breakpoints (Rescaled branches) to keep panels smooth
    double split = top;
    if (k.family == KernelFamily::Rescaled) split = std::min(top, k.eps);
    double v = integrate_power_singular(f, split, alpha, 1e-11, 1e-15).value;
    if (top > split) v += integrate(f, split, top, 1e-11, 1e-15).value;
    return v;
  }
  return integrate(f, lo, top, 1e-11, 1e-15).value;
}

namespace {

// Geometric-decay test on dyadic shell masses; a divergent integral shows
// up as shell sums that stop decaying.
bool shells_divergent(const std::vector<double>& shells) {
  int stalled = 0, counted = 0;
  for (size_t i = 1; i < shells.size(); ++i) {
    if (!std::isfinite(shells[i]) || !std::isfinite(shells[i - 1]))
      return true;
    if (shells[i - 1] <= 0.0) continue;
    ++counted;
    if (shells[i] >= 0.999 * shells[i - 1]) ++stalled;
  }
  if (counted == 0) return false;
  return stalled >= std::max(4, counted * 3 / 4);
}

double shell_integral(const KernelSpec& k, double expo, double lo, double hi) {
  const auto& rule = gauss_legendre(16);
  const double c = 0.5 * (lo + hi), h = 0.5 * (hi - lo);
  double sum = 0.0;
  for (size_t i = 0; i < rule.nodes.size(); ++i) {
    const double r = c + h * rule.nodes[i];
    sum += rule.weights[i] * std::pow(r, expo) * kernel_eval(k, r);
  }
  return sum * h;
}

}  // namespace

MassReport plevy_mass(const KernelSpec& k, double p,
                      const std::vector<double>& tail_deltas) {
  MassReport rep;
  const double S = sphere_measure(k.d);
  const int kShells = 40;

  // near-origin shells (2^{-j-1}, 2^{-j}] of r^{d-1+p} nu(r)
  std::vector<double> near_shells;
  near_shells.reserve(kShells);
  for (int j = 0; j < kShells; ++j) {
    const double hi = std::pow(2.0, -j), lo = 0.5 * hi;
    near_shells.push_back(S * shell_integral(k, k.d - 1.0 + p, lo, hi));
  }
  rep.divergent_near = shells_divergent(near_shells);

  // outward shells (2^j, 2^{j+1}] of r^{d-1} nu(r)
  const double R = support_radius(k);
  std::vector<double> tail_shells;
  if (std::isinf(R)) {
    for (int j = 0; j < kShells; ++j) {
      const double lo = std::pow(2.0, j), hi = 2.0 * lo;
      tail_shells.push_back(S * shell_integral(k, k.d - 1.0, lo, hi));
    }
    rep.divergent_tail = shells_divergent(tail_shells);
  }

  if (rep.divergent_near) {
    rep.near_mass = kInf;
    rep.total_plevy_mass = kInf;
  } else {
    auto f = [&](double r) {
      return std::pow(r, k.d - 1.0 + p) * kernel_eval(k, r);
    };
    const double top = std::min(1.0, R);
    double v = 0.0;
    if (top > 0.0) {
      const double alpha = k.d - 1.0 + p + near_origin_power(k);
      double split = top;
      if (k.family == KernelFamily::Rescaled)
        split = std::min({top, k.eps, R});
      v = integrate_power_singular(f, split, alpha, 1e-11, 1e-15).value;
      if (top > split) v += integrate(f, split, top, 1e-11, 1e-15).value;
    }
    rep.near_mass = S * v;
  }

  for (double delta : tail_deltas) {
    rep.tail[delta] = rep.divergent_tail ? kInf : tail_mass(k, delta);
  }
  if (!rep.divergent()) {
    rep.total_plevy_mass = rep.near_mass + tail_mass(k, 1.0);
  } else {
    rep.total_plevy_mass = kInf;
  }
  return rep;
}

std::vector<ConcentrationRow> concentration_report(
    const KernelFamilyFn& family, std::vector<double> eps_list, double delta,
    double p) {
  if (delta <= 0.0)
    throw DomainError("concentration_report: delta must be positive");
  std::sort(eps_list.begin(), eps_list.end(), std::greater<double>());
  std::vector<ConcentrationRow> rows;
  rows.reserve(eps_list.size());
  for (double eps : eps_list) {
    const KernelSpec k = family(eps);
    MassReport rep = plevy_mass(k, p, {delta});
    ConcentrationRow row;
    row.eps = eps;
    row.total_plevy_mass = rep.total_plevy_mass;
    row.tail_mass_delta = rep.tail.at(delta);
    row.divergent = rep.divergent();
    rows.push_back(row);
  }
  return rows;
}

double weight_omega(const KernelSpec& k, WeightKind kind, double a, double b,
                    double x) {
  if (!(a < b)) throw DomainError("weight_omega: need a < b");
  switch (kind) {
    case WeightKind::NuTilde: {
      auto f = [&](double y) {
        const double r = std::abs(x - y);
        if (r == 0.0) return 1.0;
        return std::min(1.0, kernel_eval(k, r));
      };
      // split at y = x (kink of min(1,nu) region) when x lies inside B
      if (x > a && x < b) {
        return integrate(f, a, x, 1e-10, 1e-14).value +
               integrate(f, x, b, 1e-10, 1e-14).value;
      }
      return integrate(f, a, b, 1e-10, 1e-14).value;
    }
    case WeightKind::NuBar: {
      if (unimodal(k)) {
        const double far = std::max(std::abs(x - a), std::abs(x - b));
        return far > 0.0 ? kernel_eval(k, far) : kInf;
      }
      // sampled approximation of the essential infimum
      const int n = 1024;
      double best = kInf;
      for (int i = 0; i < n; ++i) {
        const double y = a + (b - a) * (i + 0.5) / n;
        const double r = std::abs(x - y);
        if (r == 0.0) continue;
        best = std::min(best, kernel_eval(k, r));
      }
      return best;
    }
    case WeightKind::NuHat: {
      const double R = std::max({1.0 + 1e-12, std::abs(a), std::abs(b)});
      return kernel_eval(k, R * (1.0 + std::abs(x)));
    }
  }
  throw Error("weight_omega: unknown kind");
}

}  // namespace plevy
