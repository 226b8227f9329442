// Copyright (c) 2026 the plevy authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <functional>
#include <limits>
#include <map>
#include <memory>
#include <vector>

namespace plevy {

enum class KernelFamily {
  Fractional,           // amplitude * r^{-d-sp}
  TruncatedFractional,  // amplitude * r^{-d-sp} on r <= r_cut
  Indicator,            // amplitude * 1_{r <= delta}
  StableNormalized,     // p eps (1-eps)/|S^{d-1}| * r^{-d-(1-eps)p}
  PowerTruncated,       // (d+beta)/(|S^{d-1}| eps^{d+beta}) r^{beta-p} on r<=eps
  Rescaled,             // three-branch rescaling of a normalized base kernel
  ScaledFractional,     // amplitude * prefactor * r^{-d-sp}
};

// A symmetric radial p-Levy kernel. The profile of several families depends
// on the integrability exponent p, so the spec carries p explicitly.
struct KernelSpec {
  KernelFamily family = KernelFamily::Fractional;
  int d = 1;
  double p = 2.0;
  double amplitude = 1.0;

  double s = 0.5;          // fractional order
  double r_cut = 1.0;      // TruncatedFractional
  double delta = 1.0;      // Indicator
  double eps = 0.5;        // StableNormalized, PowerTruncated, Rescaled
  double beta = 0.0;       // PowerTruncated
  double prefactor = 1.0;  // ScaledFractional
  std::shared_ptr<const KernelSpec> base;  // Rescaled

  static KernelSpec fractional(int d, double p, double s,
                               double amplitude = 1.0);
  static KernelSpec truncated_fractional(int d, double p, double s,
                                         double r_cut, double amplitude = 1.0);
  static KernelSpec indicator(int d, double delta, double amplitude = 1.0);
  // Indicator over B_delta scaled to unit p-Levy mass (the beta = p case of
  // PowerTruncated).
  static KernelSpec indicator_normalized(int d, double p, double delta);
  static KernelSpec stable_normalized(int d, double p, double eps);
  static KernelSpec power_truncated(int d, double p, double eps, double beta);
  static KernelSpec rescaled(KernelSpec base, double eps);
  static KernelSpec scaled_fractional(int d, double p, double s,
                                      double prefactor);
};

// Radial profile nu(r). Throws DomainError for r <= 0.
double kernel_eval(const KernelSpec& k, double r);

// Radius of supp nu (infinity for fully supported kernels).
double support_radius(const KernelSpec& k);

// Exponent alpha with nu(r) ~ c r^alpha as r -> 0+ (0 for bounded profiles).
double near_origin_power(const KernelSpec& k);

// Radial profile nonincreasing in r.
bool unimodal(const KernelSpec& k);

// d-dimensional tail integral int_{|h| > delta} nu(h) dh. Closed form for
// power-law families; +infinity when the tail diverges.
double tail_mass(const KernelSpec& k, double delta);

// One-dimensional line moment int_lo^hi t^p nu(t) dt used by the discrete
// forms (no sphere factor).
double tp_moment(const KernelSpec& k, double p, double lo, double hi);

struct MassReport {
  double near_mass = 0.0;         // int_{|h|<=1} |h|^p nu(h) dh
  double total_plevy_mass = 0.0;  // int (1 and |h|^p) nu(h) dh
  std::map<double, double> tail;  // delta -> int_{|h|>delta} nu(h) dh
  bool divergent_near = false;
  bool divergent_tail = false;
  bool divergent() const { return divergent_near || divergent_tail; }
};

// Radial reduction of the p-Levy integrability integral with dyadic-shell
// divergence detection toward 0 and toward infinity. Divergence is flagged
// in the report, never thrown.
MassReport plevy_mass(const KernelSpec& k, double p,
                      const std::vector<double>& tail_deltas = {1.0});

struct ConcentrationRow {
  double eps = 0.0;
  double total_plevy_mass = 0.0;
  double tail_mass_delta = 0.0;
  bool divergent = false;
};

using KernelFamilyFn = std::function<KernelSpec(double)>;

// Mass/tail table of an approximation family, rows in eps-descending order.
std::vector<ConcentrationRow> concentration_report(
    const KernelFamilyFn& family, std::vector<double> eps_list, double delta,
    double p);

enum class WeightKind { NuTilde, NuBar, NuHat };

// Trace-space weights over B = (a,b): nu~_B(x) = int_B (1 ^ nu(x-y)) dy,
// nubar_B(x) = essinf_{y in B} nu(x-y), nuhat_R(x) = nu(R(1+|x|)) with
// R = max(1, |a|, |b|). The essential infimum of a non-unimodal profile is
// approximated by 1024-point sampling.
double weight_omega(const KernelSpec& k, WeightKind kind, double a, double b,
                    double x);

constexpr double kInf = std::numeric_limits<double>::infinity();

}  // namespace plevy
