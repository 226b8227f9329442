// Copyright (c) 2026 the plevy authors.
// SPDX-License-Identifier: Apache-2.0
//
// Command-line front-end: constants, check-kernel, solve, converge, verify.

#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

#include <CLI11.hpp>

#include "plevy/config.hpp"
#include "plevy/errors.hpp"
#include "plevy/experiments.hpp"
#include "plevy/inequalities.hpp"
#include "plevy/local_reference.hpp"
#include "plevy/special_functions.hpp"

namespace {

constexpr const char* kVersion = "0.1.0";

using namespace plevy;

void write_meta(const std::string& out_dir, std::uint64_t seed,
                double wall_s) {
  std::ofstream meta(std::filesystem::path(out_dir) / "meta.csv");
  meta << "version,seed,wall_time_s\n";
  meta << kVersion << "," << seed << "," << csv_number(wall_s) << "\n";
}

int cmd_constants(int d, double p, double s) {
  const ConstantsReport r = constants_report(d, p, s);
  std::cout << "d,p,s,sphere_measure,k_dp,c_dps,c_tilde\n";
  std::cout << r.d << "," << csv_number(r.p) << "," << csv_number(r.s) << ","
            << csv_number(r.sphere_measure) << "," << csv_number(r.k_dp)
            << "," << csv_number(r.c_dps) << "," << csv_number(r.c_tilde)
            << "\n";
  return 0;
}

int cmd_check_kernel(const RunConfig& cfg, const std::string& out_dir) {
  if (!cfg.has_kernel) throw ConfigError("check-kernel: config needs a kernel");
  const auto t0 = std::chrono::steady_clock::now();
  MassReport rep = plevy_mass(cfg.kernel, cfg.p, {cfg.check_delta});
  double eps = 0.0;
  switch (cfg.kernel.family) {
    case KernelFamily::StableNormalized:
    case KernelFamily::PowerTruncated:
    case KernelFamily::Rescaled:
      eps = cfg.kernel.eps;
      break;
    default:
      break;
  }
  std::cout << "epsilon,total_plevy_mass,near_mass,tail_mass_delta,divergent\n";
  std::cout << csv_number(eps) << "," << csv_number(rep.total_plevy_mass)
            << "," << csv_number(rep.near_mass) << ","
            << csv_number(rep.tail.at(cfg.check_delta)) << ","
            << (rep.divergent() ? 1 : 0) << "\n";
  const double wall =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
          .count();
  write_meta(out_dir, cfg.seed, wall);
  return 0;
}

int cmd_solve(const RunConfig& cfg, const std::string& out_dir) {
  if (!cfg.has_kernel) throw ConfigError("solve: config needs a kernel");
  if (!cfg.problem_kind) throw ConfigError("solve: config needs a problem");
  if (cfg.n_interior == 0) throw ConfigError("solve: config needs a mesh");
  const auto t0 = std::chrono::steady_clock::now();

  MeshPtr mesh =
      build_mesh(cfg.a, cfg.b, cfg.n_interior, cfg.collar_R, &cfg.kernel);
  auto form = std::make_shared<DiscreteForm>(
      assemble(mesh, cfg.kernel, cfg.p, Region::FullComplement,
               DiagonalRule::LocalExact));
  ProblemSpec spec;
  spec.kind = *cfg.problem_kind;
  spec.form = form;
  spec.f = cfg.realize(cfg.f, mesh, /*interior=*/true);
  spec.g = cfg.realize(cfg.g, mesh, /*interior=*/false);
  spec.beta = cfg.realize(cfg.beta, mesh, /*interior=*/false);
  spec.mu_scaling = cfg.mu_scaling;

  const SolveReport rep = solve(spec, cfg.solver);

  {
    std::ofstream sol(std::filesystem::path(out_dir) / "solution.csv");
    sol << "x,u,is_interior\n";
    for (int i = 0; i < mesh->num_nodes(); ++i) {
      sol << csv_number(mesh->nodes[i]) << "," << csv_number(rep.u.values[i])
          << "," << (mesh->is_interior[i] ? 1 : 0) << "\n";
    }
  }
  {
    std::ofstream r(std::filesystem::path(out_dir) / "report.csv");
    r << "iterations,final_energy,variational_residual,converged,"
         "truncation_defect\n";
    r << rep.iterations << "," << csv_number(rep.final_energy) << ","
      << csv_number(rep.variational_residual) << ","
      << (rep.converged ? 1 : 0) << "," << csv_number(rep.truncation_defect)
      << "\n";
  }
  const double wall =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
          .count();
  write_meta(out_dir, cfg.seed, wall);
  return rep.converged ? 0 : 2;
}

void print_rows(const std::vector<ConvergenceRow>& rows) {
  std::cout << "epsilon,quantity,reference,abs_error,rel_error\n";
  for (const auto& r : rows) {
    std::cout << csv_number(r.epsilon) << "," << csv_number(r.quantity) << ","
              << csv_number(r.reference) << "," << csv_number(r.abs_error)
              << "," << csv_number(r.rel_error) << "\n";
  }
}

int cmd_converge(const std::string& experiment, const RunConfig& cfg,
                 const std::string& out_dir) {
  const auto t0 = std::chrono::steady_clock::now();
  std::vector<ConvergenceRow> rows;

  if (experiment == "bbm") {
    if (cfg.eps_list.empty())
      throw ConfigError("bbm: experiment.eps_list required");
    rows = bbm_convergence(cfg.test_function.smooth(), cfg.family_fn(), cfg.p,
                           cfg.eps_list);
  } else if (experiment == "pointwise") {
    if (cfg.eps_list.empty())
      throw ConfigError("pointwise: experiment.eps_list required");
    rows = pointwise_convergence(cfg.test_function.smooth(), cfg.family_fn(),
                                 cfg.p, cfg.point_x, cfg.eps_list);
  } else if (experiment == "dirichlet") {
    if (cfg.eps_list.empty())
      throw ConfigError("dirichlet: experiment.eps_list required");
    if (cfg.f.type != DataSpec::Type::Constant)
      throw ConfigError("dirichlet sweep: problem.f must be constant");
    SolveSweepOptions opt;
    opt.a = cfg.a;
    opt.b = cfg.b;
    if (cfg.n_interior > 0) opt.n_interior = cfg.n_interior;
    opt.collar_R = cfg.collar_R;
    opt.solver = cfg.solver;
    rows = dirichlet_convergence(cfg.p, cfg.f.value, cfg.family_fn(),
                                 cfg.eps_list, opt);
  } else if (experiment == "neumann") {
    if (cfg.eps_list.empty())
      throw ConfigError("neumann: experiment.eps_list required");
    SolveSweepOptions opt;
    opt.a = cfg.a;
    opt.b = cfg.b;
    if (cfg.n_interior > 0) opt.n_interior = cfg.n_interior;
    opt.collar_R = cfg.collar_R;
    opt.solver = cfg.solver;
    NeumannSweepResult res = neumann_convergence(
        cfg.p, cfg.test_function.smooth(), cfg.family_fn(), cfg.eps_list, opt);
    if (res.kappa_growth_warning)
      std::cerr << "warning: kappa_phi estimate grows along the sweep\n";
    rows = res.rows;
  } else if (experiment == "nonexistence") {
    NonexistenceResult res =
        nonexistence_demo(cfg.exp_s, cfg.p, cfg.exp_gamma, cfg.exp_beta_exp);
    for (size_t i = 0; i < res.pairing.size(); ++i) {
      ConvergenceRow r;
      r.epsilon = res.pairing[i].R;
      r.quantity = res.pairing[i].partial_sum;
      r.reference = res.wnorm[i].partial_sum;
      r.abs_error = std::abs(r.quantity - r.reference);
      r.rel_error = r.reference != 0.0 ? r.abs_error / std::abs(r.reference)
                                       : r.abs_error;
      rows.push_back(r);
    }
  } else if (experiment == "poincare") {
    if (!cfg.has_kernel && cfg.family_name.empty())
      throw ConfigError("poincare: needs a kernel family");
    if (cfg.eps_list.empty())
      throw ConfigError("poincare: experiment.eps_list required");
    MeshPtr mesh = build_mesh(cfg.a, cfg.b,
                              cfg.n_interior > 0 ? cfg.n_interior : 128,
                              cfg.collar_R);
    const PoincareMode mode = cfg.poincare_mode == "dirichlet_zero"
                                  ? PoincareMode::DirichletZero
                                  : PoincareMode::MeanZero;
    auto fam = cfg.family_fn();
    std::vector<double> eps_list = cfg.eps_list;
    std::sort(eps_list.begin(), eps_list.end(), std::greater<double>());
    double first = 0.0;
    for (double eps : eps_list) {
      DiscreteForm form = assemble(mesh, fam(eps), cfg.p,
                                   mode == PoincareMode::DirichletZero
                                       ? Region::FullComplement
                                       : Region::Regional,
                                   DiagonalRule::LocalExact);
      const double ratio =
          poincare_estimate(form, mode, cfg.trials, cfg.seed);
      if (rows.empty()) first = ratio;
      ConvergenceRow r;
      r.epsilon = eps;
      r.quantity = ratio;
      r.reference = first;
      r.abs_error = std::abs(ratio - first);
      r.rel_error = first != 0.0 ? r.abs_error / std::abs(first) : 0.0;
      rows.push_back(r);
    }
  } else {
    throw ConfigError("unknown experiment '" + experiment + "'");
  }

  print_rows(rows);
  const double wall =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
          .count();
  write_meta(out_dir, cfg.seed, wall);
  return 0;
}

// ---- verify suites (TAP output) -------------------------------------------

struct Tap {
  int n = 0;
  bool all_ok = true;
  void check(bool ok, const std::string& name) {
    ++n;
    all_ok = all_ok && ok;
    std::cout << (ok ? "ok " : "not ok ") << n << " - " << name << "\n";
  }
};

int verify_inequalities(std::uint64_t seed) {
  Tap tap;
  for (double p : {1.2, 1.5, 2.0, 3.0, 4.7}) {
    const auto checks = inequality_suite(p, 20000, seed);
    for (const auto& c : checks) {
      std::ostringstream name;
      name << c.name << " p=" << p << " (" << c.trials << " checks)";
      tap.check(c.violations == 0, name.str());
    }
  }
  return tap.all_ok ? 0 : 1;
}

int verify_forms(std::uint64_t seed) {
  Tap tap;
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);

  MeshPtr mesh = build_mesh(-1.0, 1.0, 64, 1.0);
  auto random_u = [&]() {
    GridFunction u(mesh);
    for (auto& v : u.values) v = gauss(rng);
    return u;
  };

  for (double p : {1.5, 2.0, 3.0}) {
    const KernelSpec k = KernelSpec::fractional(1, p, 0.4);
    DiscreteForm full =
        assemble(mesh, k, p, Region::FullComplement, DiagonalRule::LocalExact);
    DiscreteForm reg =
        assemble(mesh, k, p, Region::Regional, DiagonalRule::LocalExact);
    DiscreteForm plus =
        assemble(mesh, k, p, Region::Plus, DiagonalRule::LocalExact);

    bool ok_translate = true, ok_homog = true, ok_order = true,
         ok_holder = true, ok_convex = true, ok_grad = true, ok_gg = true;
    for (int t = 0; t < 20; ++t) {
      GridFunction u = random_u(), v = random_u();
      const double E = energy(full, u);
      GridFunction shifted = u;
      for (auto& w : shifted.values) w += 3.7;
      ok_translate &= std::abs(energy(full, shifted) - E) <= 1e-12 * (1.0 + E);
      const double lam = 1.0 + std::abs(gauss(rng));
      GridFunction scaled = u;
      for (auto& w : scaled.values) w *= lam;
      ok_homog &= std::abs(energy(full, scaled) - std::pow(lam, p) * E) <=
                  1e-12 * std::pow(lam, p) * (1.0 + E);
      const double Ep = energy(plus, u), Er = energy(reg, u);
      ok_order &= (E <= 2.0 * Ep + 1e-12) && (2.0 * Ep <= 2.0 * E + 1e-12) &&
                  (Er <= E + 1e-12);
      const double Ev = energy(full, v);
      ok_holder &= std::abs(form_apply(full, u, v)) <=
                   std::pow(E, (p - 1.0) / p) * std::pow(Ev, 1.0 / p) + 1e-10;
      GridFunction mid(mesh);
      for (int i = 0; i < mid.size(); ++i)
        mid.values[i] = 0.5 * (u.values[i] + v.values[i]);
      ok_convex &= energy(full, mid) <= 0.5 * (E + Ev) + 1e-10;

      const double delta = (p < 2.0) ? 1e-4 : 0.0;
      GridFunction g = grad_energy(full, u, delta);
      std::uniform_int_distribution<int> pick(0, mesh->num_nodes() - 1);
      for (int c = 0; c < 4; ++c) {
        const int i = pick(rng);
        const double h = 1e-6;
        GridFunction up = u, dn = u;
        up.values[i] += h;
        dn.values[i] -= h;
        const double fd =
            (energy(full, up, delta) - energy(full, dn, delta)) / (2.0 * h);
        ok_grad &= std::abs(fd - g.values[i]) <=
                   1e-5 * (1.0 + std::abs(fd) + std::abs(g.values[i]));
      }
      ok_gg &= gauss_green_residual(full, u, v) <= 1e-10 * (1.0 + E);
    }
    std::ostringstream tag;
    tag << " p=" << p;
    tap.check(ok_translate, "translation invariance" + tag.str());
    tap.check(ok_homog, "p-homogeneity" + tag.str());
    tap.check(ok_order, "form ordering E<=2E+<=2E" + tag.str());
    tap.check(ok_holder, "Holder bound" + tag.str());
    tap.check(ok_convex, "convexity" + tag.str());
    tap.check(ok_grad, "gradient vs finite differences" + tag.str());
    tap.check(ok_gg, "Gauss-Green residual" + tag.str());
  }
  return tap.all_ok ? 0 : 1;
}

int verify_solvers(std::uint64_t seed) {
  Tap tap;
  std::mt19937_64 rng(seed);
  MeshPtr mesh = build_mesh(-1.0, 1.0, 64, 1.0);
  const KernelSpec k = KernelSpec::fractional(1, 2.0, 0.5, 1.0);
  auto form = std::make_shared<DiscreteForm>(
      assemble(mesh, k, 2.0, Region::FullComplement, DiagonalRule::LocalExact));

  {
    ProblemSpec spec;
    spec.kind = ProblemKind::Dirichlet;
    spec.form = form;
    spec.f = GridFunction(mesh);
    spec.g = GridFunction(mesh);
    SolveReport rep = solve_dirichlet(spec);
    tap.check(rep.converged && sup_norm(rep.u) <= 1e-9,
              "dirichlet zero data gives zero");
  }
  {
    ProblemSpec spec;
    spec.kind = ProblemKind::Dirichlet;
    spec.form = form;
    spec.f = GridFunction(mesh);
    spec.g = GridFunction(mesh, 0.0);
    for (int i : mesh->exterior_idx) spec.g.values[i] = 1.0;
    SolveReport rep = solve_dirichlet(spec);
    double worst = 0.0;
    for (double v : rep.u.values) worst = std::max(worst, std::abs(v - 1.0));
    tap.check(rep.converged && worst <= 1e-7,
              "constants are harmonic (g=1 -> u=1)");
  }
  {
    // gauge invariance of the Neumann functional at compatible data
    ProblemSpec spec;
    spec.kind = ProblemKind::Neumann;
    spec.form = form;
    spec.f = GridFunction(mesh);
    spec.g = GridFunction(mesh);
    for (int i : mesh->interior_idx)
      spec.f.values[i] = mesh->nodes[i];  // odd, integral zero
    SolveReport rep = solve_neumann(spec);
    auto J = [&](const GridFunction& u) {
      double pair = 0.0;
      for (int i : mesh->interior_idx)
        pair += spec.f.values[i] * u.values[i] * mesh->quad_w[i];
      return 0.5 * energy(*form, u) - pair;
    };
    GridFunction up = rep.u;
    for (auto& v : up.values) v += 1.0;
    const double j0 = J(rep.u), j1 = J(up);
    tap.check(rep.converged &&
                  std::abs(j1 - j0) <= 1e-10 * (1.0 + std::abs(j0)),
              "neumann gauge invariance J(u+c)=J(u)");
  }
  {
    bool refused = false;
    try {
      ProblemSpec spec;
      spec.kind = ProblemKind::Neumann;
      spec.form = form;
      spec.f = GridFunction(mesh);
      for (int i : mesh->interior_idx) spec.f.values[i] = 1.0;
      spec.g = GridFunction(mesh);
      solve_neumann(spec);
    } catch (const PreconditionError&) {
      refused = true;
    }
    tap.check(refused, "incompatible neumann data refused");
  }
  {
    // comparison principle on ordered data
    std::normal_distribution<double> gauss(0.0, 1.0);
    ProblemSpec lo_spec, hi_spec;
    lo_spec.kind = hi_spec.kind = ProblemKind::Dirichlet;
    lo_spec.form = hi_spec.form = form;
    lo_spec.f = GridFunction(mesh);
    hi_spec.f = GridFunction(mesh);
    lo_spec.g = GridFunction(mesh);
    hi_spec.g = GridFunction(mesh);
    for (int i : mesh->interior_idx) {
      const double v = gauss(rng);
      lo_spec.f.values[i] = v;
      hi_spec.f.values[i] = v + std::abs(gauss(rng));
    }
    SolveReport lo = solve_dirichlet(lo_spec);
    SolveReport hi = solve_dirichlet(hi_spec);
    tap.check(comparison_check(hi, lo, hi_spec.f, lo_spec.f, hi_spec.g,
                               lo_spec.g, 1e-8),
              "weak comparison principle");
  }
  return tap.all_ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"nonlocal p-Levy complement-value problems: constants, "
               "kernels, solvers and convergence experiments"};
  app.require_subcommand(1);

  int d = 1;
  double p = 2.0, s = 0.5;
  auto* c_const = app.add_subcommand("constants", "print a constants report");
  c_const->add_option("--d", d, "dimension")->required();
  c_const->add_option("--p", p, "exponent p")->required();
  c_const->add_option("--s", s, "order s")->required();

  std::string config_path, out_dir = ".", experiment, suite;
  std::uint64_t seed_opt = 42;

  auto* c_kernel =
      app.add_subcommand("check-kernel", "p-Levy mass report of a kernel");
  c_kernel->add_option("--config", config_path, "JSON config")->required();
  c_kernel->add_option("--out", out_dir, "output directory");

  auto* c_solve =
      app.add_subcommand("solve", "solve a complement-value problem");
  c_solve->add_option("--config", config_path, "JSON config")->required();
  c_solve->add_option("--out", out_dir, "output directory");

  auto* c_conv = app.add_subcommand("converge", "convergence experiment");
  c_conv
      ->add_option("--experiment", experiment,
                   "bbm|pointwise|dirichlet|neumann|nonexistence|poincare")
      ->required();
  c_conv->add_option("--config", config_path, "JSON config")->required();
  c_conv->add_option("--out", out_dir, "output directory");

  auto* c_verify = app.add_subcommand("verify", "property suites (TAP)");
  c_verify->add_option("--suite", suite, "inequalities|forms|solvers")
      ->required();
  c_verify->add_option("--seed", seed_opt, "RNG seed");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*c_const) return cmd_constants(d, p, s);
    if (*c_kernel) return cmd_check_kernel(parse_config(config_path), out_dir);
    if (*c_solve) return cmd_solve(parse_config(config_path), out_dir);
    if (*c_conv)
      return cmd_converge(experiment, parse_config(config_path), out_dir);
    if (*c_verify) {
      if (suite == "inequalities") return verify_inequalities(seed_opt);
      if (suite == "forms") return verify_forms(seed_opt);
      if (suite == "solvers") return verify_solvers(seed_opt);
      throw ConfigError("unknown suite '" + suite + "'");
    }
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 1;
  } catch (const PreconditionError& e) {
    std::cerr << "precondition error: " << e.what() << "\n";
    return 1;
  } catch (const DomainError& e) {
    std::cerr << "domain error: " << e.what() << "\n";
    return 1;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 1;
}
