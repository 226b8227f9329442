// Copyright (c) 2026 the plevy authors.
// SPDX-License-Identifier: Apache-2.0

#include "plevy/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "plevy/errors.hpp"
#include "plevy/local_reference.hpp"
#include "plevy/quadrature.hpp"
#include "plevy/special_functions.hpp"

namespace plevy {

namespace {

ConvergenceRow make_row(double eps, double quantity, double reference,
                        double rel_scale = 0.0) {
  ConvergenceRow r;
  r.epsilon = eps;
  r.quantity = quantity;
  r.reference = reference;
  r.abs_error = std::abs(quantity - reference);
  const double den = (rel_scale > 0.0) ? rel_scale : std::abs(reference);
  r.rel_error = den > 0.0 ? r.abs_error / den : r.abs_error;
  return r;
}

void sort_desc(std::vector<double>& eps_list) {
  std::sort(eps_list.begin(), eps_list.end(), std::greater<double>());
}

double derivative_lp(const SmoothFunction1D& u, double p) {
  double lo = -20.0, hi = 20.0;
  if (u.kind == SmoothFunction1D::Kind::Gaussian) {
    lo = u.center - 14.0 * u.width;
    hi = u.center + 14.0 * u.width;
  } else if (u.kind == SmoothFunction1D::Kind::BumpCompact) {
    lo = u.center - u.radius;
    hi = u.center + u.radius;
  }
  auto f = [&](double x) { return std::pow(std::abs(u.d1(x)), p); };
  return integrate(f, lo, hi, 1e-11, 1e-14).value;
}

}  // namespace

std::vector<ConvergenceRow> bbm_convergence(const SmoothFunction1D& u,
                                            const KernelFamilyFn& family,
                                            double p,
                                            std::vector<double> eps_list,
                                            const BbmOptions& opt) {
  sort_desc(eps_list);
  const double reference = k_dp(1, p) * derivative_lp(u, p);
  const double L = opt.box_half_width;
  MeshPtr mesh = build_full_line(L, opt.n_cells);
  GridFunction uh = grid_sample(mesh, [&](double x) { return u.value(x); });

  std::vector<ConvergenceRow> rows;
  for (double eps : eps_list) {
    const KernelSpec k = family(eps);
    DiscreteForm form = assemble(mesh, k, p, Region::FullComplement,
                                 DiagonalRule::LocalExact);
    double q = energy(form, uh);
    if (opt.tail_correction && std::isinf(support_radius(k))) {
      const double h = mesh->spacing;
      double corr = 0.0;
      for (int i = 0; i < mesh->num_nodes(); ++i) {
        const double x = mesh->nodes[i];
        const double up = std::pow(std::abs(uh.values[i]), p);
        if (up == 0.0) continue;
        const double right = 0.5 * tail_mass(k, std::max(L - x, h));
        const double left = 0.5 * tail_mass(k, std::max(L + x, h));
        corr += up * mesh->quad_w[i] * (right + left);
      }
      q += 2.0 * corr;
    }
    rows.push_back(make_row(eps, q, reference));
  }
  return rows;
}

std::vector<ConvergenceRow> pointwise_convergence(const SmoothFunction1D& u,
                                                  const KernelFamilyFn& family,
                                                  double p, double x,
                                                  std::vector<double> eps_list) {
  sort_desc(eps_list);
  const double reference = -k_dp(1, p) * local_plaplace_1d(u, p, x);
  std::vector<ConvergenceRow> rows;
  for (double eps : eps_list) {
    const PointwiseResult L = pointwise_L(u, family(eps), p, x);
    rows.push_back(make_row(eps, L.value, reference));
  }
  return rows;
}

namespace {

double lp_distance_omega(const GridFunction& u,
                         const std::function<double(double)>& ref, double p) {
  const Mesh1D& mesh = *u.mesh;
  double s = 0.0;
  for (int i : mesh.interior_idx) {
    s += std::pow(std::abs(u.values[i] - ref(mesh.nodes[i])), p) *
         mesh.quad_w[i];
  }
  return std::pow(s, 1.0 / p);
}

double lp_norm_fn(const std::function<double(double)>& ref, double p,
                  const Mesh1D& mesh) {
  double s = 0.0;
  for (int i : mesh.interior_idx)
    s += std::pow(std::abs(ref(mesh.nodes[i])), p) * mesh.quad_w[i];
  return std::pow(s, 1.0 / p);
}

}  // namespace

std::vector<ConvergenceRow> dirichlet_convergence(
    double p, double f_const, const KernelFamilyFn& family,
    std::vector<double> eps_list, const SolveSweepOptions& opt) {
  sort_desc(eps_list);
  MeshPtr mesh = build_mesh(opt.a, opt.b, opt.n_interior, opt.collar_R);
  auto u_local = [&](double x) {
    return local_dirichlet_const_exact(p, f_const, opt.a, opt.b, x);
  };
  const double ref_norm = lp_norm_fn(u_local, p, *mesh);
  const double mu = 1.0 / k_dp(1, p);

  std::vector<ConvergenceRow> rows;
  for (double eps : eps_list) {
    auto form = std::make_shared<DiscreteForm>(
        assemble(mesh, family(eps), p, Region::FullComplement,
                 DiagonalRule::LocalExact));
    ProblemSpec spec;
    spec.kind = ProblemKind::Dirichlet;
    spec.form = form;
    spec.f = GridFunction(mesh);
    for (int i : mesh->interior_idx) spec.f.values[i] = f_const;
    spec.g = GridFunction(mesh);
    spec.mu_scaling = mu;
    SolveReport rep = solve_dirichlet(spec, opt.solver);
    const double dist = lp_distance_omega(rep.u, u_local, p);
    rows.push_back(make_row(eps, dist, 0.0, ref_norm));
  }
  return rows;
}

NeumannSweepResult neumann_convergence(double p, const SmoothFunction1D& phi,
                                       const KernelFamilyFn& family,
                                       std::vector<double> eps_list,
                                       const SolveSweepOptions& opt) {
  sort_desc(eps_list);
  MeshPtr mesh = build_mesh(opt.a, opt.b, opt.n_interior, opt.collar_R);
  const double K = k_dp(1, p);

  auto psi_s = [&](double t) {
    return t == 0.0 ? 0.0 : std::pow(std::abs(t), p - 2.0) * t;
  };
  // boundary p-fluxes of phi and the limiting uniform load
  const double flux_a = -psi_s(phi.d1(opt.a));
  const double flux_b = psi_s(phi.d1(opt.b));
  const double c0 = -K * (flux_a + flux_b);
  const double omega_len = opt.b - opt.a;

  // local oracle at refined resolution: -Delta_p w = (c0/K)/|Omega|,
  // del_np w = del_np phi, mean zero
  LocalGrid lg = local_grid(opt.a, opt.b, opt.n_interior * opt.oracle_refine);
  auto f_loc = [&](double) { return (c0 / K) / omega_len; };
  std::vector<double> w = local_neumann_fd(lg, p, f_loc, flux_a, flux_b);
  auto w_at = [&](double x) {
    const double t = (x - lg.a) / lg.h;
    int i = std::clamp((int)std::floor(t), 0, lg.n - 1);
    const double frac = t - i;
    return (1.0 - frac) * w[i] + frac * w[i + 1];
  };
  const double ref_norm = lp_norm_fn(w_at, p, *mesh);

  NeumannSweepResult out;
  for (double eps : eps_list) {
    auto form = std::make_shared<DiscreteForm>(
        assemble(mesh, family(eps), p, Region::FullComplement,
                 DiagonalRule::LocalExact));
    GridFunction phih =
        grid_sample(mesh, [&](double x) { return phi.value(x); });
    GridFunction Nphi = discrete_normal(*form, phih);

    ProblemSpec spec;
    spec.kind = ProblemKind::Neumann;
    spec.form = form;
    spec.g = GridFunction(mesh);
    double gsum = 0.0;
    for (int k : mesh->exterior_idx) {
      spec.g.values[k] = Nphi.values[k];
      gsum += Nphi.values[k] * mesh->quad_w[k];
    }
    spec.f = GridFunction(mesh);
    double omega_meas = 0.0;
    for (int i : mesh->interior_idx) omega_meas += mesh->quad_w[i];
    for (int i : mesh->interior_idx) spec.f.values[i] = -gsum / omega_meas;

    SolveReport rep = solve_neumann(spec, opt.solver);
    // compare mean-zero representatives
    GridFunction u = rep.u;
    const double dist = lp_distance_omega(u, w_at, p);
    out.rows.push_back(make_row(eps, dist, 0.0, ref_norm));

    GridFunction Lphi = discrete_L(*form, phih);
    double kappa = 0.0;
    for (int i : mesh->interior_idx)
      kappa = std::max(kappa, std::abs(Lphi.values[i]));
    out.kappa_estimates.push_back(kappa);
  }
  if (p < 2.0 && out.kappa_estimates.size() >= 2) {
    const double first = out.kappa_estimates.front();
    const double last = out.kappa_estimates.back();
    out.kappa_growth_warning = last > 4.0 * (first + 1.0);
  }
  return out;
}

NonexistenceResult nonexistence_demo(double s, double p, double gamma,
                                     double beta, int k_max) {
  if (!(s > 0.0 && s < 1.0) || !(p > 1.0))
    throw DomainError("nonexistence_demo: need s in (0,1), p > 1");
  const double sp = s * p;
  const double pprime = p / (p - 1.0);
  const double sum = gamma + beta;
  const bool crit_minus1 = std::abs(sum + 1.0) < 1e-12;
  const bool crit_sp = std::abs(sum - sp) < 1e-12;
  if (!crit_minus1 && !crit_sp)
    throw PreconditionError(
        "nonexistence_demo: gamma+beta must equal -1 or sp");
  const bool gamma_low = (gamma > -1.0 && gamma <= -1.0 / pprime);
  const bool gamma_high = (gamma >= sp / pprime && gamma < sp);
  if (!gamma_low && !gamma_high)
    throw PreconditionError(
        "nonexistence_demo: gamma outside (-1,-1/p'] u [sp/p', sp)");
  if (!(beta > (sp - 1.0) / p && beta < s))
    throw PreconditionError(
        "nonexistence_demo: beta outside ((sp-1)/p, s)");

  NonexistenceResult out;
  const double R_max = std::pow(2.0, k_max);

  // pairing integrand on (1, infinity): 2 (r-1)^{gamma+beta} (1+r)^{-1-sp}
  auto pairing = [&](double r) {
    return 2.0 * std::pow(r - 1.0, sum) * std::pow(1.0 + r, -1.0 - sp);
  };
  // W-seminorm^p integrand: 4 (r-1)^{p beta} ((r-1)^{-sp}-(r+1)^{-sp})/(sp)
  auto wnormf = [&](double r) {
    const double w =
        (std::pow(r - 1.0, -sp) - std::pow(r + 1.0, -sp)) / sp;
    return 4.0 * std::pow(r - 1.0, p * beta) * w;
  };

  // substitute t = r-1 near the boundary so power singularities are explicit
  auto near_piece = [&](const std::function<double(double)>& f, double t_lo,
                        double t_hi, double alpha) {
    auto g = [&](double t) { return f(1.0 + t); };
    if (t_lo > 0.0) return integrate(g, t_lo, t_hi, 1e-10, 1e-14).value;
    return integrate_power_singular(g, t_hi, alpha, 1e-10, 1e-14).value;
  };

  double pair_cum = 0.0, w_cum = 0.0;
  std::vector<double> w_increments;
  if (crit_sp) {
    // divergence at infinity: cumulative over (1, 2^k]
    double prev_R = 1.0;
    pair_cum = 0.0;
    for (int k = 1; k <= k_max; ++k) {
      const double R = std::pow(2.0, k);
      if (k == 1) {
        pair_cum += near_piece(pairing, 0.0, R - 1.0, sum);
        w_cum += near_piece(wnormf, 0.0, R - 1.0, p * beta - sp);
      } else {
        pair_cum += integrate(pairing, prev_R, R, 1e-10, 1e-14).value;
        w_cum += integrate(wnormf, prev_R, R, 1e-10, 1e-14).value;
      }
      out.pairing.push_back({R, pair_cum});
      out.wnorm.push_back({R, w_cum});
      if (k >= 2)
        w_increments.push_back(out.wnorm[k - 1].partial_sum -
                               out.wnorm[k - 2].partial_sum);
      prev_R = R;
    }
  } else {
    // divergence at the boundary: cumulative over (1 + 2^{-k}, R_max]
    const double t_top = R_max - 1.0;
    double prev_t = 1.0;  // start from r = 2
    double tail_from_2 = integrate(pairing, 2.0, R_max, 1e-10, 1e-14).value;
    double w_tail_from_2 = integrate(wnormf, 2.0, R_max, 1e-10, 1e-14).value;
    (void)t_top;
    pair_cum = tail_from_2;
    w_cum = w_tail_from_2;
    for (int k = 1; k <= k_max; ++k) {
      const double t_lo = std::pow(2.0, -k);
      pair_cum += near_piece(pairing, t_lo, prev_t, sum);
      w_cum += near_piece(wnormf, t_lo, prev_t, p * beta - sp);
      out.pairing.push_back({std::pow(2.0, k), pair_cum});
      out.wnorm.push_back({std::pow(2.0, k), w_cum});
      if (k >= 2)
        w_increments.push_back(out.wnorm[k - 1].partial_sum -
                               out.wnorm[k - 2].partial_sum);
      prev_t = t_lo;
    }
  }

  // least-squares fit of the pairing sums against a + b log R
  {
    const int n = (int)out.pairing.size();
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (const auto& row : out.pairing) {
      const double X = std::log(row.R);
      sx += X;
      sy += row.partial_sum;
      sxx += X * X;
      sxy += X * row.partial_sum;
    }
    const double b = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    const double a = (sy - b * sx) / n;
    double ss_res = 0, ss_tot = 0;
    const double mean = sy / n;
    for (const auto& row : out.pairing) {
      const double X = std::log(row.R);
      ss_res += std::pow(row.partial_sum - (a + b * X), 2);
      ss_tot += std::pow(row.partial_sum - mean, 2);
    }
    out.log_fit_slope = b;
    out.log_fit_r2 = ss_tot > 0.0 ? 1.0 - ss_res / ss_tot : 0.0;
  }

  // W-seminorm: full value with the analytic outer tail appended
  {
    double full = w_cum;
    full += integrate_to_inf(wnormf, R_max, 1e-10, 1e-14).value;
    out.norm_g_beta_p = full;
    double worst = 0.0;
    const int m = (int)w_increments.size();
    for (int i = std::max(0, m - 3); i < m; ++i)
      worst = std::max(worst, std::abs(w_increments[i]));
    out.wnorm_cauchy = worst <= 1e-3 * std::abs(full);
  }
  return out;
}

double poincare_estimate(const DiscreteForm& form, PoincareMode mode,
                         int trials, std::uint64_t seed, int iterations) {
  const Mesh1D& mesh = *form.mesh;
  const double p = form.p;
  const double smoothing = (p < 2.0) ? 1e-9 : 0.0;

  std::vector<int> omega_nodes;
  for (int i = 0; i < mesh.num_nodes(); ++i)
    if (form.interior[i]) omega_nodes.push_back(i);
  double omega_meas = 0.0;
  for (int i : omega_nodes) omega_meas += mesh.quad_w[i];

  auto project = [&](GridFunction& u) {
    if (mode == PoincareMode::DirichletZero) {
      for (int i = 0; i < mesh.num_nodes(); ++i)
        if (!form.interior[i]) u.values[i] = 0.0;
    } else {
      double mean = 0.0;
      for (int i : omega_nodes) mean += u.values[i] * mesh.quad_w[i];
      mean /= omega_meas;
      for (double& v : u.values) v -= mean;
    }
  };
  auto lp_p = [&](const GridFunction& u) {
    double s = 0.0;
    for (int i : omega_nodes)
      s += std::pow(std::abs(u.values[i]), p) * mesh.quad_w[i];
    return s;
  };

  auto descend = [&](GridFunction u) {
    project(u);
    double np = lp_p(u);
    if (np <= 1e-30) return kInf;
    const double scl = std::pow(np, 1.0 / p);
    for (double& v : u.values) v /= scl;
    np = 1.0;

    GridFunction gE(form.mesh);
    double E = energy_and_grad(form, u, gE, smoothing);
    double ratio = E / np;
    double step = 0.1;
    for (int it = 0; it < iterations; ++it) {
      GridFunction g(form.mesh);
      for (int i : omega_nodes) {
        const double ui = u.values[i];
        const double dn =
            (ui == 0.0) ? 0.0
                        : p * std::pow(std::abs(ui), p - 2.0) * ui *
                              mesh.quad_w[i];
        g.values[i] = -ratio * dn;
      }
      for (int i = 0; i < mesh.num_nodes(); ++i) g.values[i] += gE.values[i];
      // projected, normalized trial step
      bool improved = false;
      for (int ls = 0; ls < 25; ++ls) {
        GridFunction v = u;
        for (int i = 0; i < mesh.num_nodes(); ++i)
          v.values[i] -= step * g.values[i];
        project(v);
        const double vnp = lp_p(v);
        if (vnp <= 1e-30) break;
        const double sc = std::pow(vnp, 1.0 / p);
        for (double& w : v.values) w /= sc;
        GridFunction gv(form.mesh);
        const double Ev = energy_and_grad(form, v, gv, smoothing);
        if (Ev < ratio * (1.0 - 1e-12)) {
          u = v;
          gE = gv;
          E = Ev;
          ratio = Ev;
          improved = true;
          step = std::min(1.0, step * 1.5);
          break;
        }
        step *= 0.5;
      }
      if (!improved && step < 1e-14) break;
      if (ratio <= 1e-14) break;
    }
    return ratio;
  };

  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  double best = kInf;

  // structured starts: the fundamental half wave and, when Omega splits
  // into several runs of nodes, the two-block sign pattern
  {
    GridFunction u(form.mesh);
    for (int i : omega_nodes) {
      const double t = (mesh.nodes[i] - mesh.a) / (mesh.b - mesh.a);
      u.values[i] = std::sin(std::numbers::pi * t);
    }
    best = std::min(best, descend(u));
  }
  {
    std::vector<std::pair<int, int>> runs;
    int start = -1;
    for (int i = 0; i < mesh.num_nodes(); ++i) {
      if (form.interior[i] && start < 0) start = i;
      if ((!form.interior[i] || i + 1 == mesh.num_nodes()) && start >= 0) {
        const int end = form.interior[i] ? i : i - 1;
        runs.emplace_back(start, end);
        start = -1;
      }
    }
    if (runs.size() >= 2) {
      GridFunction u(form.mesh);
      for (int i = runs[0].first; i <= runs[0].second; ++i) u.values[i] = 1.0;
      for (int i = runs[1].first; i <= runs[1].second; ++i) u.values[i] = -1.0;
      best = std::min(best, descend(u));
    }
  }
  for (int t = 0; t < trials; ++t) {
    GridFunction u(form.mesh);
    for (int i : omega_nodes) u.values[i] = gauss(rng);
    best = std::min(best, descend(u));
  }
  return best;
}

}  // namespace plevy
