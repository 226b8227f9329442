// Copyright (c) 2026 the plevy authors.
// SPDX-License-Identifier: Apache-2.0

#include "plevy/solvers.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <numeric>

#include "plevy/errors.hpp"

namespace plevy {

namespace {

double dot(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0.0;
  for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

double inf_norm(const std::vector<double>& a) {
  double s = 0.0;
  for (double v : a) s = std::max(s, std::abs(v));
  return s;
}

}  // namespace

MinimizeResult minimize(const ValueGrad& objective, std::vector<double> init,
                        const SolverConfig& cfg, const Projection& project) {
  const size_t n = init.size();
  MinimizeResult out;
  out.x = std::move(init);
  if (project) project(out.x);

  std::vector<double> grad(n), x_new(n), grad_new(n);
  double f = objective(out.x, grad);
  const double scale = 1.0 + std::abs(f);
  const double gtol = cfg.tol_grad * scale;

  std::deque<std::vector<double>> s_hist, y_hist;
  std::deque<double> rho_hist;
  int stall = 0, ls_failures = 0;
  double trust = 1.0;

  for (int it = 0; it < cfg.max_iter; ++it) {
    out.iterations = it;
    out.grad_inf_norm = inf_norm(grad);
    if (out.grad_inf_norm <= gtol) {
      out.converged = true;
      break;
    }

    // two-loop recursion
    std::vector<double> dir = grad;
    {
      std::vector<double> alpha(s_hist.size());
      for (int k = (int)s_hist.size() - 1; k >= 0; --k) {
        alpha[k] = rho_hist[k] * dot(s_hist[k], dir);
        for (size_t i = 0; i < n; ++i) dir[i] -= alpha[k] * y_hist[k][i];
      }
      if (!s_hist.empty()) {
        const double gamma = dot(s_hist.back(), y_hist.back()) /
                             std::max(1e-300, dot(y_hist.back(), y_hist.back()));
        for (double& v : dir) v *= gamma;
      }
      for (size_t k = 0; k < s_hist.size(); ++k) {
        const double beta = rho_hist[k] * dot(y_hist[k], dir);
        for (size_t i = 0; i < n; ++i)
          dir[i] += (alpha[k] - beta) * s_hist[k][i];
      }
      for (double& v : dir) v = -v;
    }

    double slope = dot(grad, dir);
    if (!(slope < 0.0)) {  // not a descent direction: steepest restart
      s_hist.clear();
      y_hist.clear();
      rho_hist.clear();
      for (size_t i = 0; i < n; ++i) dir[i] = -grad[i];
      slope = dot(grad, dir);
      if (slope == 0.0) {
        out.converged = true;
        break;
      }
    }

    // Armijo backtracking
    double step = trust;
    bool accepted = false;
    double f_new = f;
    for (int ls = 0; ls < 50; ++ls) {
      for (size_t i = 0; i < n; ++i) x_new[i] = out.x[i] + step * dir[i];
      if (project) project(x_new);
      f_new = objective(x_new, grad_new);
      if (std::isfinite(f_new) && f_new <= f + 1e-4 * step * slope) {
        accepted = true;
        break;
      }
      step *= 0.5;
    }
    if (!accepted) {
      ++ls_failures;
      trust *= 0.5;
      s_hist.clear();
      y_hist.clear();
      rho_hist.clear();
      if (ls_failures >= 3) break;
      continue;
    }
    ls_failures = 0;
    trust = std::min(1.0, step * 2.0);

    // curvature pair with damping against flat directions
    std::vector<double> s(n), y(n);
    for (size_t i = 0; i < n; ++i) {
      s[i] = x_new[i] - out.x[i];
      y[i] = grad_new[i] - grad[i];
    }
    const double sy = dot(s, y);
    if (sy > 1e-14 * dot(s, s)) {
      s_hist.push_back(std::move(s));
      y_hist.push_back(std::move(y));
      rho_hist.push_back(1.0 / sy);
      if ((int)s_hist.size() > cfg.lbfgs_memory) {
        s_hist.pop_front();
        y_hist.pop_front();
        rho_hist.pop_front();
      }
    }

    const double rel_dec = (f - f_new) / std::max(1.0, std::abs(f));
    out.x.swap(x_new);
    grad.swap(grad_new);
    f = f_new;
    if (rel_dec <= 1e-14) {
      if (++stall >= 5) {
        out.converged = inf_norm(grad) <= 10.0 * gtol;
        break;
      }
    } else {
      stall = 0;
    }
  }
  out.value = f;
  out.grad_inf_norm = inf_norm(grad);
  if (out.grad_inf_norm <= gtol) out.converged = true;
  return out;
}

std::pair<double, bool> check_compatibility(const GridFunction& f,
                                            const GridFunction& g,
                                            double tol) {
  if (!f.mesh || !g.mesh || !f.mesh->same_grid(*g.mesh))
    throw MeshMismatchError("check_compatibility: f and g on different meshes");
  const Mesh1D& m = *f.mesh;
  double sum = 0.0, l1 = 0.0;
  for (int i = 0; i < m.num_nodes(); ++i) {
    const double v = m.is_interior[i] ? f.values[i] : g.values[i];
    sum += v * m.quad_w[i];
    l1 += std::abs(v) * m.quad_w[i];
  }
  return {sum, std::abs(sum) <= tol * (l1 + 1.0)};
}

namespace {

struct Workspace {
  const DiscreteForm& form;
  const Mesh1D& mesh;
  const ProblemSpec& spec;
  GridFunction u_full;   // current full grid iterate
  GridFunction g_full;   // gradient buffer
  double smoothing = 0.0;

  explicit Workspace(const ProblemSpec& s)
      : form(*s.form), mesh(*s.form->mesh), spec(s), u_full(s.form->mesh),
        g_full(s.form->mesh) {}

  double data_pairing(const GridFunction& u) const {
    double acc = 0.0;
    for (int i : mesh.interior_idx)
      acc += spec.f.values[i] * u.values[i] * mesh.quad_w[i];
    if (spec.kind != ProblemKind::Dirichlet) {
      for (int k : mesh.exterior_idx)
        acc += spec.g.values[k] * u.values[k] * mesh.quad_w[k];
    }
    return acc;
  }
};

double oscillation(const GridFunction& u) {
  double lo = u.values[0], hi = u.values[0];
  for (double v : u.values) {
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  return hi - lo;
}

double truncation_defect(const ProblemSpec& spec, const GridFunction& u) {
  const double t = tail_mass(spec.form->kernel, spec.form->mesh->collar_R);
  if (!std::isfinite(t)) return 0.0;
  const double osc = oscillation(u);
  return t * std::pow(osc, spec.form->p - 1.0);
}

std::vector<double> smoothing_schedule(const ProblemSpec& spec,
                                       const SolverConfig& cfg, double scale) {
  if (spec.form->p >= 2.0) return {0.0};
  std::vector<double> sched;
  for (double d : cfg.delta_schedule) sched.push_back(d * scale);
  return sched;
}

void validate(const ProblemSpec& spec) {
  if (!spec.form) throw PreconditionError("solve: missing discrete form");
  if (spec.form->region != Region::FullComplement)
    throw PreconditionError("solve: form must use the full complement region");
  const Mesh1D& m = *spec.form->mesh;
  auto check = [&](const GridFunction& v, const char* name) {
    if (!v.mesh || !v.mesh->same_grid(m))
      throw MeshMismatchError(std::string("solve: ") + name +
                              " lives on a different mesh");
  };
  check(spec.f, "f");
  check(spec.g, "g");
}

}  // namespace

SolveReport solve_dirichlet(const ProblemSpec& spec, const SolverConfig& cfg) {
  validate(spec);
  Workspace ws(spec);
  const Mesh1D& mesh = ws.mesh;
  const double p = ws.form.p;
  const double mu = spec.mu_scaling;

  // exterior values pinned to g; initial interior guess interpolates g
  // linearly across Omega
  GridFunction u(spec.form->mesh);
  for (int k : mesh.exterior_idx) u.values[k] = spec.g.values[k];
  {
    // nearest exterior values at the two ends of Omega
    double ga = 0.0, gb = 0.0;
    for (int k : mesh.exterior_idx) {
      if (mesh.nodes[k] <= mesh.a) ga = spec.g.values[k];
      if (mesh.nodes[k] >= mesh.b) {
        gb = spec.g.values[k];
        break;
      }
    }
    for (int i : mesh.interior_idx) {
      const double t = (mesh.nodes[i] - mesh.a) / (mesh.b - mesh.a);
      u.values[i] = (1.0 - t) * ga + t * gb;
    }
  }

  const auto& free_idx = mesh.interior_idx;
  const double scale_u =
      1.0 + std::max(sup_norm(spec.g), sup_norm(u));
  SolveReport rep;

  auto pack = [&](const GridFunction& full) {
    std::vector<double> x(free_idx.size());
    for (size_t i = 0; i < free_idx.size(); ++i)
      x[i] = full.values[free_idx[i]];
    return x;
  };
  auto unpack = [&](const std::vector<double>& x, GridFunction& full) {
    for (size_t i = 0; i < free_idx.size(); ++i)
      full.values[free_idx[i]] = x[i];
  };

  MinimizeResult mres;
  std::vector<double> x0 = pack(u);
  for (double delta : smoothing_schedule(spec, cfg, scale_u)) {
    rep.delta_schedule_used.push_back(delta);
    ValueGrad obj = [&](const std::vector<double>& x,
                        std::vector<double>& grad) {
      unpack(x, u);
      const double E = energy_and_grad(ws.form, u, ws.g_full, delta);
      double val = mu / p * E;
      grad.resize(x.size());
      for (size_t i = 0; i < free_idx.size(); ++i) {
        const int gi = free_idx[i];
        grad[i] = mu / p * ws.g_full.values[gi] -
                  spec.f.values[gi] * mesh.quad_w[gi];
      }
      val -= ws.data_pairing(u);
      return val;
    };
    mres = minimize(obj, std::move(x0), cfg);
    x0 = mres.x;
  }
  unpack(mres.x, u);

  rep.u = u;
  rep.iterations = mres.iterations;
  rep.final_energy = energy(ws.form, u);
  rep.converged = mres.converged;
  // residual per unit measure over the free directions
  double min_q = mesh.quad_w[free_idx.front()];
  for (int i : free_idx) min_q = std::min(min_q, mesh.quad_w[i]);
  rep.variational_residual = mres.grad_inf_norm / min_q;
  rep.residual_tol =
      cfg.tol_grad * (1.0 + std::abs(mres.value)) / min_q * 10.0;
  rep.truncation_defect = truncation_defect(spec, u);

  // energy-bound diagnostic ||u||_W <= C (|f|^{p'} + |g|_W^p)^{1/p}
  {
    const double pprime = p / (p - 1.0);
    GridFunction gbar(spec.form->mesh);  // zero extension of g
    for (int k : mesh.exterior_idx) gbar.values[k] = spec.g.values[k];
    const double fn = std::pow(lp_norm_omega(spec.f, pprime), pprime);
    const double gn = energy(ws.form, gbar) +
                      std::pow(lp_norm_omega(gbar, p), p);
    const double un =
        std::pow(std::pow(lp_norm_omega(u, p), p) + rep.final_energy, 1.0 / p);
    const double den = std::pow(fn + gn, 1.0 / p);
    rep.energy_bound_ratio = den > 0.0 ? un / den : 0.0;
  }
  return rep;
}

SolveReport solve_neumann(const ProblemSpec& spec, const SolverConfig& cfg) {
  validate(spec);
  auto [sum, ok] = check_compatibility(spec.f, spec.g, cfg.tol_compat);
  if (!ok)
    throw PreconditionError(
        "solve_neumann: incompatible data, defect = " + std::to_string(sum));

  Workspace ws(spec);
  const Mesh1D& mesh = ws.mesh;
  const double p = ws.form.p;
  const double mu = spec.mu_scaling;

  double omega_measure = 0.0;
  for (int i : mesh.interior_idx) omega_measure += mesh.quad_w[i];

  Projection project = [&](std::vector<double>& x) {
    double mean = 0.0;
    for (int i : mesh.interior_idx) mean += x[i] * mesh.quad_w[i];
    mean /= omega_measure;
    for (double& v : x) v -= mean;
  };

  GridFunction u(spec.form->mesh);
  const double scale_u = 1.0 + sup_norm(spec.g) + sup_norm(spec.f);
  SolveReport rep;
  rep.compat_sum = sum;

  MinimizeResult mres;
  std::vector<double> x0 = u.values;
  for (double delta : smoothing_schedule(spec, cfg, scale_u)) {
    rep.delta_schedule_used.push_back(delta);
    ValueGrad obj = [&](const std::vector<double>& x,
                        std::vector<double>& grad) {
      u.values = x;
      const double E = energy_and_grad(ws.form, u, ws.g_full, delta);
      grad.resize(x.size());
      for (int i = 0; i < mesh.num_nodes(); ++i) {
        const double data = mesh.is_interior[i]
                                ? spec.f.values[i]
                                : spec.g.values[i];
        grad[i] = mu / p * ws.g_full.values[i] - data * mesh.quad_w[i];
      }
      return mu / p * E - ws.data_pairing(u);
    };
    mres = minimize(obj, std::move(x0), cfg, project);
    x0 = mres.x;
  }
  u.values = mres.x;

  rep.u = u;
  rep.iterations = mres.iterations;
  rep.final_energy = energy(ws.form, u);
  rep.converged = mres.converged;
  double min_q = mesh.quad_w[0];
  for (double q : mesh.quad_w) min_q = std::min(min_q, q);
  // gradient projected onto mean-zero test directions
  rep.variational_residual = mres.grad_inf_norm / min_q;
  rep.residual_tol =
      cfg.tol_grad * (1.0 + std::abs(mres.value)) / min_q * 10.0;
  rep.truncation_defect = truncation_defect(spec, u);
  return rep;
}

SolveReport solve_robin(const ProblemSpec& spec, const SolverConfig& cfg) {
  validate(spec);
  const Mesh1D& mesh = *spec.form->mesh;
  if (!spec.beta.mesh || !spec.beta.mesh->same_grid(mesh))
    throw MeshMismatchError("solve_robin: beta lives on a different mesh");
  double beta_mass = 0.0;
  for (int k : mesh.exterior_idx) {
    if (spec.beta.values[k] < 0.0)
      throw PreconditionError("solve_robin: beta must be nonnegative");
    beta_mass += spec.beta.values[k] * mesh.quad_w[k];
  }
  if (beta_mass == 0.0)
    throw PreconditionError(
        "solve_robin: beta vanishes identically; use solve_neumann");

  Workspace ws(spec);
  const double p = ws.form.p;
  const double mu = spec.mu_scaling;
  GridFunction u(spec.form->mesh);
  const double scale_u = 1.0 + sup_norm(spec.g) + sup_norm(spec.f);
  SolveReport rep;

  MinimizeResult mres;
  std::vector<double> x0 = u.values;
  for (double delta : smoothing_schedule(spec, cfg, scale_u)) {
    rep.delta_schedule_used.push_back(delta);
    ValueGrad obj = [&](const std::vector<double>& x,
                        std::vector<double>& grad) {
      u.values = x;
      const double E = energy_and_grad(ws.form, u, ws.g_full, delta);
      double val = mu / p * E;
      grad.resize(x.size());
      for (int i = 0; i < mesh.num_nodes(); ++i) {
        const double data = mesh.is_interior[i]
                                ? spec.f.values[i]
                                : spec.g.values[i];
        grad[i] = mu / p * ws.g_full.values[i] - data * mesh.quad_w[i];
      }
      for (int k : mesh.exterior_idx) {
        const double b = spec.beta.values[k] * mesh.quad_w[k];
        if (b == 0.0) continue;
        const double uk = u.values[k];
        val += b / p * std::pow(std::abs(uk), p);
        grad[k] += b * (uk == 0.0
                            ? 0.0
                            : std::pow(std::abs(uk), p - 2.0) * uk);
      }
      return val - ws.data_pairing(u);
    };
    mres = minimize(obj, std::move(x0), cfg);
    x0 = mres.x;
  }
  u.values = mres.x;

  rep.u = u;
  rep.iterations = mres.iterations;
  rep.final_energy = energy(ws.form, u);
  rep.converged = mres.converged;
  double min_q = mesh.quad_w[0];
  for (double q : mesh.quad_w) min_q = std::min(min_q, q);
  rep.variational_residual = mres.grad_inf_norm / min_q;
  rep.residual_tol =
      cfg.tol_grad * (1.0 + std::abs(mres.value)) / min_q * 10.0;
  rep.truncation_defect = truncation_defect(spec, u);
  return rep;
}

SolveReport solve(const ProblemSpec& spec, const SolverConfig& cfg) {
  switch (spec.kind) {
    case ProblemKind::Dirichlet:
      return solve_dirichlet(spec, cfg);
    case ProblemKind::Neumann:
      return solve_neumann(spec, cfg);
    case ProblemKind::Robin:
      return solve_robin(spec, cfg);
  }
  throw Error("solve: unknown kind");
}

bool comparison_check(const SolveReport& hi, const SolveReport& lo,
                      const GridFunction& f_hi, const GridFunction& f_lo,
                      const GridFunction& g_hi, const GridFunction& g_lo,
                      double tol) {
  const Mesh1D& mesh = *hi.u.mesh;
  if (!lo.u.mesh || !lo.u.mesh->same_grid(mesh))
    throw MeshMismatchError("comparison_check: different meshes");
  for (int i : mesh.interior_idx) {
    if (f_lo.values[i] > f_hi.values[i] + 1e-14)
      throw PreconditionError("comparison_check: f data not ordered");
  }
  for (int k : mesh.exterior_idx) {
    if (g_lo.values[k] > g_hi.values[k] + 1e-14)
      throw PreconditionError("comparison_check: g data not ordered");
  }
  for (int i = 0; i < mesh.num_nodes(); ++i) {
    if (lo.u.values[i] > hi.u.values[i] + tol) return false;
  }
  return true;
}

}  // namespace plevy
