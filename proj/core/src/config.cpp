// Copyright (c) 2026 the plevy authors.
// SPDX-License-Identifier: Apache-2.0

#include "plevy/config.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>

#include <json.hpp>

#include "plevy/errors.hpp"
#include "plevy/special_functions.hpp"

namespace plevy {

using nlohmann::json;

namespace {

void reject_unknown(const json& obj, const std::set<std::string>& allowed,
                    const std::string& where) {
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    if (!allowed.count(it.key()))
      throw ConfigError("unknown field '" + it.key() + "' in " + where);
  }
}

double need_number(const json& obj, const std::string& key,
                   const std::string& where) {
  if (!obj.contains(key))
    throw ConfigError("missing required field '" + key + "' in " + where);
  if (!obj[key].is_number())
    throw ConfigError("field '" + key + "' in " + where + " must be a number");
  return obj[key].get<double>();
}

double opt_number(const json& obj, const std::string& key, double fallback) {
  if (!obj.contains(key)) return fallback;
  return obj[key].get<double>();
}

std::string need_string(const json& obj, const std::string& key,
                        const std::string& where) {
  if (!obj.contains(key))
    throw ConfigError("missing required field '" + key + "' in " + where);
  return obj[key].get<std::string>();
}

KernelSpec parse_kernel(const json& obj) {
  const std::string fam = need_string(obj, "family", "kernel");
  const int d = (int)opt_number(obj, "d", 1);
  const double amplitude = opt_number(obj, "amplitude", 1.0);
  const double p = opt_number(obj, "p", 2.0);
  if (d < 1) throw ConfigError("kernel.d must be >= 1");
  if (amplitude < 0.0) throw ConfigError("kernel.amplitude must be >= 0");

  if (fam == "fractional") {
    reject_unknown(obj, {"family", "d", "amplitude", "p", "s"}, "kernel");
    const double s = need_number(obj, "s", "kernel");
    if (!(s > 0.0 && s < 1.0))
      throw ConfigError("kernel.s must lie in (0,1)");
    return KernelSpec::fractional(d, p, s, amplitude);
  }
  if (fam == "truncated_fractional") {
    reject_unknown(obj, {"family", "d", "amplitude", "p", "s", "r_cut"},
                   "kernel");
    const double s = need_number(obj, "s", "kernel");
    const double r_cut = need_number(obj, "r_cut", "kernel");
    if (!(s > 0.0 && s < 1.0))
      throw ConfigError("kernel.s must lie in (0,1)");
    if (!(r_cut > 0.0)) throw ConfigError("kernel.r_cut must be positive");
    return KernelSpec::truncated_fractional(d, p, s, r_cut, amplitude);
  }
  if (fam == "indicator") {
    reject_unknown(obj, {"family", "d", "amplitude", "delta"}, "kernel");
    const double delta = need_number(obj, "delta", "kernel");
    if (delta < 0.0) throw ConfigError("kernel.delta must be >= 0");
    return KernelSpec::indicator(d, delta, amplitude);
  }
  if (fam == "stable_normalized") {
    reject_unknown(obj, {"family", "d", "p", "eps"}, "kernel");
    const double eps = need_number(obj, "eps", "kernel");
    if (!(eps > 0.0 && eps < 1.0))
      throw ConfigError("kernel.eps must lie in (0,1)");
    return KernelSpec::stable_normalized(d, p, eps);
  }
  if (fam == "power_truncated") {
    reject_unknown(obj, {"family", "d", "p", "eps", "beta"}, "kernel");
    const double eps = need_number(obj, "eps", "kernel");
    const double beta = need_number(obj, "beta", "kernel");
    if (!(eps > 0.0)) throw ConfigError("kernel.eps must be positive");
    if (!(beta > -d)) throw ConfigError("kernel.beta must exceed -d");
    return KernelSpec::power_truncated(d, p, eps, beta);
  }
  if (fam == "rescaled") {
    reject_unknown(obj, {"family", "eps", "base"}, "kernel");
    if (!obj.contains("base"))
      throw ConfigError("missing required field 'base' in kernel");
    KernelSpec base = parse_kernel(obj["base"]);
    const double eps = need_number(obj, "eps", "kernel");
    if (!(eps > 0.0 && eps < 1.0))
      throw ConfigError("kernel.eps must lie in (0,1)");
    return KernelSpec::rescaled(std::move(base), eps);
  }
  if (fam == "scaled_fractional") {
    reject_unknown(obj, {"family", "d", "p", "s", "prefactor"}, "kernel");
    const double s = need_number(obj, "s", "kernel");
    const double pre = need_number(obj, "prefactor", "kernel");
    if (!(s > 0.0 && s < 1.0))
      throw ConfigError("kernel.s must lie in (0,1)");
    return KernelSpec::scaled_fractional(d, p, s, pre);
  }
  throw ConfigError("unknown kernel family '" + fam + "'");
}

DataSpec parse_data(const json& obj, const std::string& where) {
  DataSpec d;
  const std::string type = need_string(obj, "type", where);
  if (type == "zero") {
    reject_unknown(obj, {"type"}, where);
    d.type = DataSpec::Type::Zero;
  } else if (type == "constant") {
    reject_unknown(obj, {"type", "value"}, where);
    d.type = DataSpec::Type::Constant;
    d.value = need_number(obj, "value", where);
  } else if (type == "gaussian") {
    reject_unknown(obj, {"type", "center", "width"}, where);
    d.type = DataSpec::Type::Gaussian;
    const double width = opt_number(obj, "width", 1.0);
    if (!(width > 0.0)) throw ConfigError(where + ".width must be positive");
    d.fn = SmoothFunction1D::gaussian(opt_number(obj, "center", 0.0), width);
  } else if (type == "polynomial") {
    reject_unknown(obj, {"type", "coeffs"}, where);
    d.type = DataSpec::Type::Polynomial;
    if (!obj.contains("coeffs") || !obj["coeffs"].is_array())
      throw ConfigError(where + ".coeffs must be an array");
    d.fn = SmoothFunction1D::polynomial(
        obj["coeffs"].get<std::vector<double>>());
  } else if (type == "bump") {
    reject_unknown(obj, {"type", "center", "radius"}, where);
    d.type = DataSpec::Type::Bump;
    const double radius = opt_number(obj, "radius", 1.0);
    if (!(radius > 0.0)) throw ConfigError(where + ".radius must be positive");
    d.fn = SmoothFunction1D::bump(opt_number(obj, "center", 0.0), radius);
  } else if (type == "values") {
    reject_unknown(obj, {"type", "values"}, where);
    d.type = DataSpec::Type::Values;
    if (!obj.contains("values") || !obj["values"].is_array())
      throw ConfigError(where + ".values must be an array");
    d.values = obj["values"].get<std::vector<double>>();
  } else {
    throw ConfigError("unknown data type '" + type + "' in " + where);
  }
  return d;
}

}  // namespace

double DataSpec::eval(double x) const {
  switch (type) {
    case Type::Zero:
      return 0.0;
    case Type::Constant:
      return value;
    case Type::Gaussian:
    case Type::Polynomial:
    case Type::Bump:
      return fn.value(x);
    case Type::Values:
      throw ConfigError("nodewise data has no closed form; realize on a mesh");
  }
  return 0.0;
}

SmoothFunction1D DataSpec::smooth() const {
  switch (type) {
    case Type::Gaussian:
    case Type::Polynomial:
    case Type::Bump:
      return fn;
    case Type::Constant:
      return SmoothFunction1D::polynomial({value});
    case Type::Zero:
      return SmoothFunction1D::polynomial({0.0});
    case Type::Values:
      throw ConfigError("nodewise data is not a smooth test function");
  }
  return SmoothFunction1D::polynomial({0.0});
}

GridFunction RunConfig::realize(const DataSpec& d, const MeshPtr& mesh,
                                bool interior) const {
  GridFunction out(mesh);
  if (d.type == DataSpec::Type::Values) {
    if ((int)d.values.size() != mesh->num_nodes())
      throw ConfigError("nodewise data length does not match the mesh");
    out.values = d.values;
  } else {
    for (int i = 0; i < mesh->num_nodes(); ++i)
      out.values[i] = d.eval(mesh->nodes[i]);
  }
  for (int i = 0; i < mesh->num_nodes(); ++i) {
    const bool in = mesh->is_interior[i];
    if (interior != in) out.values[i] = 0.0;
  }
  return out;
}

KernelFamilyFn RunConfig::family_fn() const {
  const double pp = p;
  if (family_name == "stable" || family_name.empty()) {
    return [pp](double eps) {
      return KernelSpec::stable_normalized(1, pp, eps);
    };
  }
  if (family_name == "rescaled_indicator") {
    return [pp](double eps) {
      return KernelSpec::rescaled(KernelSpec::indicator_normalized(1, pp, 1.0),
                                  eps);
    };
  }
  if (family_name == "fractional_norm") {
    // nu_eps = (C_{1,p,s}/2) |h|^{-1-sp}, s = 1-eps
    return [pp](double eps) {
      const double s = 1.0 - eps;
      return KernelSpec::scaled_fractional(1, pp, s,
                                           0.5 * c_dps(1, pp, s));
    };
  }
  throw ConfigError("unknown experiment family '" + family_name + "'");
}

RunConfig parse_config_text(const std::string& text) {
  json root;
  try {
    root = json::parse(text);
  } catch (const std::exception& e) {
    throw ConfigError(std::string("invalid JSON: ") + e.what());
  }
  reject_unknown(root,
                 {"domain", "mesh", "kernel", "p", "problem", "solver",
                  "experiment", "seed", "deterministic", "check"},
                 "config");
  RunConfig cfg;

  if (root.contains("domain")) {
    const json& d = root["domain"];
    reject_unknown(d, {"a", "b"}, "domain");
    cfg.a = need_number(d, "a", "domain");
    cfg.b = need_number(d, "b", "domain");
    if (!(cfg.a < cfg.b)) throw ConfigError("domain: need a < b");
  }
  if (root.contains("mesh")) {
    const json& m = root["mesh"];
    reject_unknown(m, {"n_interior", "collar_R"}, "mesh");
    cfg.n_interior = (int)need_number(m, "n_interior", "mesh");
    cfg.collar_R = need_number(m, "collar_R", "mesh");
    if (cfg.n_interior < 4)
      throw ConfigError("mesh.n_interior must be >= 4");
    if (!(cfg.collar_R > 0.0))
      throw ConfigError("mesh.collar_R must be positive");
  }
  cfg.p = opt_number(root, "p", 2.0);
  if (!(cfg.p > 1.0)) throw ConfigError("p must exceed 1");
  if (root.contains("kernel")) {
    json k = root["kernel"];
    if (!k.contains("p")) k["p"] = cfg.p;
    cfg.kernel = parse_kernel(k);
    cfg.has_kernel = true;
  }
  if (root.contains("problem")) {
    const json& pr = root["problem"];
    reject_unknown(pr, {"kind", "f", "g", "beta", "mu_scaling"}, "problem");
    const std::string kind = need_string(pr, "kind", "problem");
    if (kind == "dirichlet")
      cfg.problem_kind = ProblemKind::Dirichlet;
    else if (kind == "neumann")
      cfg.problem_kind = ProblemKind::Neumann;
    else if (kind == "robin")
      cfg.problem_kind = ProblemKind::Robin;
    else
      throw ConfigError("problem.kind must be dirichlet|neumann|robin");
    if (pr.contains("f")) cfg.f = parse_data(pr["f"], "problem.f");
    if (pr.contains("g")) cfg.g = parse_data(pr["g"], "problem.g");
    if (pr.contains("beta")) cfg.beta = parse_data(pr["beta"], "problem.beta");
    cfg.mu_scaling = opt_number(pr, "mu_scaling", 1.0);
    if (!(cfg.mu_scaling > 0.0))
      throw ConfigError("problem.mu_scaling must be positive");
  }
  if (root.contains("solver")) {
    const json& s = root["solver"];
    reject_unknown(s, {"max_iter", "tol_grad", "delta_schedule"}, "solver");
    cfg.solver.max_iter = (int)opt_number(s, "max_iter", cfg.solver.max_iter);
    cfg.solver.tol_grad = opt_number(s, "tol_grad", cfg.solver.tol_grad);
    if (s.contains("delta_schedule"))
      cfg.solver.delta_schedule =
          s["delta_schedule"].get<std::vector<double>>();
    if (cfg.solver.max_iter < 1)
      throw ConfigError("solver.max_iter must be positive");
    if (!(cfg.solver.tol_grad > 0.0))
      throw ConfigError("solver.tol_grad must be positive");
  }
  if (root.contains("experiment")) {
    const json& e = root["experiment"];
    reject_unknown(e,
                   {"eps_list", "family", "test_function", "x", "s", "gamma",
                    "beta", "trials", "mode"},
                   "experiment");
    if (e.contains("eps_list"))
      cfg.eps_list = e["eps_list"].get<std::vector<double>>();
    for (double v : cfg.eps_list)
      if (!(v > 0.0 && v < 1.0))
        throw ConfigError("experiment.eps_list entries must lie in (0,1)");
    if (e.contains("family"))
      cfg.family_name = e["family"].get<std::string>();
    if (e.contains("test_function"))
      cfg.test_function =
          parse_data(e["test_function"], "experiment.test_function");
    cfg.point_x = opt_number(e, "x", cfg.point_x);
    cfg.exp_s = opt_number(e, "s", cfg.exp_s);
    cfg.exp_gamma = opt_number(e, "gamma", cfg.exp_gamma);
    cfg.exp_beta_exp = opt_number(e, "beta", cfg.exp_beta_exp);
    cfg.trials = (int)opt_number(e, "trials", cfg.trials);
    if (e.contains("mode")) {
      cfg.poincare_mode = e["mode"].get<std::string>();
      if (cfg.poincare_mode != "mean_zero" &&
          cfg.poincare_mode != "dirichlet_zero")
        throw ConfigError("experiment.mode must be mean_zero|dirichlet_zero");
    }
  }
  if (root.contains("check")) {
    const json& c = root["check"];
    reject_unknown(c, {"delta"}, "check");
    cfg.check_delta = opt_number(c, "delta", 1.0);
    if (!(cfg.check_delta > 0.0))
      throw ConfigError("check.delta must be positive");
  }
  if (root.contains("seed")) cfg.seed = root["seed"].get<std::uint64_t>();
  if (root.contains("deterministic"))
    cfg.deterministic = root["deterministic"].get<bool>();
  return cfg;
}

RunConfig parse_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  std::string text((std::istreambuf_iterator<char>(in)),
                   std::istreambuf_iterator<char>());
  return parse_config_text(text);
}

std::string csv_number(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace plevy
