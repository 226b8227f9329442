// Copyright (c) 2026 the plevy authors.
// SPDX-License-Identifier: Apache-2.0

#include "plevy/forms.hpp"

#include <atomic>
#include <cmath>
#include <thread>

#include "plevy/errors.hpp"

namespace plevy {

double mean_omega(const GridFunction& u) {
  const Mesh1D& m = *u.mesh;
  double num = 0.0, den = 0.0;
  for (int i : m.interior_idx) {
    num += u.values[i] * m.quad_w[i];
    den += m.quad_w[i];
  }
  return num / den;
}

double lp_norm_omega(const GridFunction& u, double p) {
  const Mesh1D& m = *u.mesh;
  double s = 0.0;
  for (int i : m.interior_idx)
    s += std::pow(std::abs(u.values[i]), p) * m.quad_w[i];
  return std::pow(s, 1.0 / p);
}

double sup_norm(const GridFunction& u) {
  double s = 0.0;
  for (double v : u.values) s = std::max(s, std::abs(v));
  return s;
}

namespace {

void check_same_mesh(const DiscreteForm& form, const GridFunction& u,
                     const char* what) {
  if (!u.mesh || !u.mesh->same_grid(*form.mesh))
    throw MeshMismatchError(std::string(what) +
                            ": grid function lives on a different mesh");
}

inline double region_coef(Region region, double bi, double bj) {
  switch (region) {
    case Region::FullComplement:
      return std::max(bi, bj);
    case Region::Regional:
      return std::min(bi, bj);
    case Region::Plus:
      return 0.5 * (bi + bj);
  }
  return 0.0;
}

struct PairKernel {
  const DiscreteForm& form;
  const std::vector<double>& q;
  std::vector<double> b;  // interior flags as doubles
  int n;

  explicit PairKernel(const DiscreteForm& f)
      : form(f), q(f.mesh->quad_w), n(f.mesh->num_nodes()) {
    b.resize(n);
    for (int i = 0; i < n; ++i) b[i] = form.interior[i] ? 1.0 : 0.0;
  }

  double weight(int i, int j, int m) const {
    return form.profile[m - 1] * q[i] * q[j] +
           (m == 1 ? form.band1_extra : 0.0);
  }

  // Applies fn(i, j, pair_weight_times_coef) over the masked pairs of one
  // band.
  template <typename Fn>
  void for_band(int m, Fn&& fn) const {
    const double wm = form.profile[m - 1];
    const double extra = (m == 1) ? form.band1_extra : 0.0;
    if (wm == 0.0 && extra == 0.0) return;
    for (int i = 0; i + m < n; ++i) {
      const int j = i + m;
      const double c = region_coef(form.region, b[i], b[j]);
      if (c == 0.0) continue;
      const double w = (wm * q[i] * q[j] + extra) * c;
      fn(i, j, w);
    }
  }
};

// shell-parallel evaluation with a deterministic band-ordered reduction
template <typename BandFn>
double reduce_bands(const DiscreteForm& form, int n, BandFn&& band_value) {
  const int bands = n - 1;
  std::vector<double> partial(bands, 0.0);
  const int threads = std::max(1, form.threads);
  if (threads == 1 || bands < 64) {
    for (int m = 1; m <= bands; ++m) partial[m - 1] = band_value(m);
  } else {
    std::vector<std::thread> pool;
    std::atomic_int next{1};
    for (int t = 0; t < threads; ++t) {
      pool.emplace_back([&]() {
        int m;
        while ((m = next.fetch_add(1)) <= bands) partial[m - 1] = band_value(m);
      });
    }
    for (auto& th : pool) th.join();
  }
  double acc = 0.0;
  for (int m = 0; m < bands; ++m) acc += partial[m];
  return acc;
}

inline double phi_p(double du, double p, double delta) {
  if (delta > 0.0) {
    return std::pow(du * du + delta * delta, 0.5 * p) - std::pow(delta, p);
  }
  return std::pow(std::abs(du), p);
}

inline double psi_p(double du, double p, double delta) {
  if (delta > 0.0) {
    return std::pow(du * du + delta * delta, 0.5 * (p - 2.0)) * du;
  }
  if (du == 0.0) return 0.0;
  return std::pow(std::abs(du), p - 2.0) * du;
}

}  // namespace

DiscreteForm assemble_masked(MeshPtr mesh, const KernelSpec& kernel, double p,
                             Region region, DiagonalRule diag,
                             std::vector<char> omega_mask) {
  if (kernel.d != 1)
    throw AssemblyError("assemble: discrete forms require a d = 1 kernel");
  if (!(p > 1.0)) throw AssemblyError("assemble: p must exceed 1");
  {
    MassReport mass = plevy_mass(kernel, p);
    if (mass.divergent())
      throw AssemblyError("assemble: kernel is not p-Levy integrable");
  }
  if ((int)omega_mask.size() != mesh->num_nodes())
    throw AssemblyError("assemble: mask size does not match node count");

  DiscreteForm form;
  form.mesh = std::move(mesh);
  form.kernel = kernel;
  form.p = p;
  form.region = region;
  form.diagonal_rule = diag;
  form.interior = std::move(omega_mask);

  const int n = form.mesh->num_nodes();
  const double h = form.mesh->spacing;
  form.profile.assign(n - 1, 0.0);
  const double sup = support_radius(kernel);

  if (diag == DiagonalRule::Skip) {
    for (int m = 1; m < n; ++m) {
      const double r = m * h;
      if (r > sup) break;
      form.profile[m - 1] = kernel_eval(kernel, r);
    }
    form.band1_extra = 0.0;
  } else {
    for (int m = 1; m < n; ++m) {
      const double lo = (m - 0.5) * h;
      if (lo > sup) break;
      const double hi = (m + 0.5) * h;
      const double mom = tp_moment(kernel, p, lo, hi);
      form.profile[m - 1] = (mom / h) / std::pow(m * h, p);
    }
    const double strip = tp_moment(kernel, p, 0.0, 0.5 * h);
    form.band1_extra = strip * std::pow(h, 1.0 - p);
  }
  return form;
}

DiscreteForm assemble(MeshPtr mesh, const KernelSpec& kernel, double p,
                      Region region, DiagonalRule diag) {
  std::vector<char> mask(mesh->is_interior.begin(), mesh->is_interior.end());
  return assemble_masked(std::move(mesh), kernel, p, region, diag,
                         std::move(mask));
}

double energy(const DiscreteForm& form, const GridFunction& u,
              double smoothing) {
  check_same_mesh(form, u, "energy");
  PairKernel pk(form);
  const double p = form.p;
  const double* uv = u.values.data();
  return reduce_bands(form, pk.n, [&](int m) {
    double s = 0.0;
    pk.for_band(m, [&](int i, int j, double w) {
      s += w * phi_p(uv[j] - uv[i], p, smoothing);
    });
    return 2.0 * s;
  });
}

double form_apply(const DiscreteForm& form, const GridFunction& u,
                  const GridFunction& v) {
  check_same_mesh(form, u, "form_apply");
  check_same_mesh(form, v, "form_apply");
  PairKernel pk(form);
  const double p = form.p;
  const double* uv = u.values.data();
  const double* vv = v.values.data();
  return reduce_bands(form, pk.n, [&](int m) {
    double s = 0.0;
    pk.for_band(m, [&](int i, int j, double w) {
      s += w * psi_p(uv[i] - uv[j], p, 0.0) * (vv[i] - vv[j]);
    });
    return 2.0 * s;
  });
}

double energy_and_grad(const DiscreteForm& form, const GridFunction& u,
                       GridFunction& grad, double smoothing) {
  check_same_mesh(form, u, "energy_and_grad");
  if (!grad.mesh || !grad.mesh->same_grid(*form.mesh))
    grad = GridFunction(form.mesh);
  std::fill(grad.values.begin(), grad.values.end(), 0.0);

  PairKernel pk(form);
  const double p = form.p;
  const bool tie_error = (p < 2.0 && smoothing == 0.0);
  const double* uv = u.values.data();
  double* gv = grad.values.data();

  // The gradient write pattern overlaps between bands, so this fused pass
  // stays band-serial; determinism comes for free.
  double acc = 0.0;
  for (int m = 1; m < pk.n; ++m) {
    double s = 0.0;
    pk.for_band(m, [&](int i, int j, double w) {
      const double du = uv[i] - uv[j];
      if (tie_error && du == 0.0 && w != 0.0)
        throw DomainError(
            "grad_energy: p < 2 with zero smoothing hit a tie u_i = u_j");
      double a;
      if (smoothing > 0.0) {
        const double t2 = du * du + smoothing * smoothing;
        a = std::pow(t2, 0.5 * (p - 2.0));
        s += w * (a * t2 - std::pow(smoothing, p));
      } else {
        const double t = std::abs(du);
        a = (t == 0.0) ? 0.0 : std::pow(t, p - 2.0);
        s += w * a * du * du;
      }
      const double psi = a * du;
      gv[i] += 2.0 * p * w * psi;
      gv[j] -= 2.0 * p * w * psi;
    });
    acc += 2.0 * s;
  }
  return acc;
}

GridFunction grad_energy(const DiscreteForm& form, const GridFunction& u,
                         double smoothing) {
  GridFunction g(form.mesh);
  energy_and_grad(form, u, g, smoothing);
  return g;
}

GridFunction discrete_L(const DiscreteForm& form, const GridFunction& u) {
  check_same_mesh(form, u, "discrete_L");
  PairKernel pk(form);
  GridFunction L(form.mesh);
  const double p = form.p;
  for (int m = 1; m < pk.n; ++m) {
    const double wm = form.profile[m - 1];
    const double extra = (m == 1) ? form.band1_extra : 0.0;
    if (wm == 0.0 && extra == 0.0) continue;
    for (int i = 0; i + m < pk.n; ++i) {
      const int j = i + m;
      const double w = wm * pk.q[i] * pk.q[j] + extra;
      const double psi = psi_p(u.values[i] - u.values[j], p, 0.0);
      L.values[i] += 2.0 * w * psi;
      L.values[j] -= 2.0 * w * psi;
    }
  }
  for (int i = 0; i < pk.n; ++i) L.values[i] /= pk.q[i];
  return L;
}

GridFunction discrete_normal(const DiscreteForm& form, const GridFunction& u) {
  check_same_mesh(form, u, "discrete_normal");
  PairKernel pk(form);
  GridFunction N(form.mesh);
  const double p = form.p;
  for (int m = 1; m < pk.n; ++m) {
    const double wm = form.profile[m - 1];
    const double extra = (m == 1) ? form.band1_extra : 0.0;
    if (wm == 0.0 && extra == 0.0) continue;
    for (int i = 0; i + m < pk.n; ++i) {
      const int j = i + m;
      const double w = wm * pk.q[i] * pk.q[j] + extra;
      if (!form.interior[i] && form.interior[j])
        N.values[i] += 2.0 * w * psi_p(u.values[i] - u.values[j], p, 0.0);
      if (!form.interior[j] && form.interior[i])
        N.values[j] += 2.0 * w * psi_p(u.values[j] - u.values[i], p, 0.0);
    }
  }
  for (int k = 0; k < pk.n; ++k) N.values[k] /= pk.q[k];
  return N;
}

double gauss_green_residual(const DiscreteForm& form, const GridFunction& u,
                            const GridFunction& v) {
  if (form.region != Region::FullComplement)
    throw PreconditionError(
        "gauss_green_residual: identity is stated for the full complement "
        "form");
  const GridFunction Lu = discrete_L(form, u);
  const GridFunction Nu = discrete_normal(form, u);
  const Mesh1D& mesh = *form.mesh;
  double lhs = 0.0, bdry = 0.0;
  for (int i = 0; i < mesh.num_nodes(); ++i) {
    if (form.interior[i])
      lhs += Lu.values[i] * v.values[i] * mesh.quad_w[i];
    else
      bdry += Nu.values[i] * v.values[i] * mesh.quad_w[i];
  }
  const double E = form_apply(form, u, v);
  return std::abs(lhs - (E - bdry));
}

}  // namespace plevy
