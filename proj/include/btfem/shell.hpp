#ifndef BTFEM_SHELL_HPP
#define BTFEM_SHELL_HPP

#include "btfem/core.hpp"
#include "btfem/levelset.hpp"
#include "btfem/tdc.hpp"

namespace btfem {

/// Linear elastic shell material, plane-stress Lame constants.
struct MaterialParams {
  double E = 1.0;
  double nu = 0.0;
  double t = 0.1;       // shell thickness
  double alpha_s = 1.0;  // shear correction factor

  double mu() const { return E / (2.0 * (1.0 + nu)); }
  double lambda() const { return E * nu / (1.0 - nu * nu); }

  void validate() const {
    if (E <= 0.0) throw ConfigError("material.E must be > 0");
    if (!(nu > -1.0 && nu < 0.5)) throw ConfigError("material.nu must be in (-1, 0.5)");
    if (t <= 0.0) throw ConfigError("material.t must be > 0");
    if (alpha_s <= 0.0) throw ConfigError("material.alpha_s must be > 0");
  }
};

/// Membrane, bending, and transverse shear strain tensors. Membrane and
/// bending are in-plane symmetric; shear has no in-plane/in-plane block.
struct StrainState {
  Mat3 memb = Mat3::Zero();
  Mat3 bend = Mat3::Zero();
  Mat3 shear = Mat3::Zero();
};

/// Strains from the full gradient of u, the (already tangential) difference
/// vector w = P * w_check, and the directional surface gradient of w.
inline StrainState strains(const Mat3& grad_u, const Vec3& w, const Mat3& grad_w_dir,
                           const SurfaceFrame& fr) {
  StrainState s;
  const Mat3 dir_u = grad_u * fr.P;
  s.memb = sym(fr.P * dir_u);
  s.bend = sym(fr.H * dir_u) + sym(fr.P * grad_w_dir);
  s.shear = sym(fr.Q * dir_u) + sym(outer(fr.n, w));
  return s;
}

/// Thickness-pre-integrated stress resultants. The in-plane stress law is
/// sigma_P(e) = 2 mu e + lambda tr(e) P; shear carries only the 2 mu term
/// (trace-free) scaled by alpha_s.
struct StressResultants {
  Mat3 m = Mat3::Zero();       // bending moment tensor
  Mat3 n_eff = Mat3::Zero();   // effective normal force tensor
  Mat3 q = Mat3::Zero();       // transverse shear force tensor
  Mat3 n_real = Mat3::Zero();  // physical normal force, n_eff + H m
};

inline Mat3 stress_plane(const Mat3& eps, const MaterialParams& mat, const Mat3& P) {
  return 2.0 * mat.mu() * eps + mat.lambda() * eps.trace() * P;
}

inline StressResultants stress_resultants(const StrainState& s, const MaterialParams& mat,
                                          const SurfaceFrame& fr) {
  StressResultants r;
  const double t = mat.t;
  r.m = (t * t * t / 12.0) * stress_plane(s.bend, mat, fr.P);
  r.n_eff = t * stress_plane(s.memb, mat, fr.P);
  r.q = mat.alpha_s * t * 2.0 * mat.mu() * s.shear;
  r.n_real = r.n_eff + fr.H * r.m;
  return r;
}

/// Stored-energy density per bulk volume (includes the co-area weight).
inline double energy_density(const StrainState& s, const StressResultants& r, double coarea) {
  return 0.5 * (ddot(s.memb, r.n_eff) + ddot(s.bend, r.m) + ddot(s.shear, r.q)) * coarea;
}

/// Pointwise state of the solution fields needed by the strong-form
/// residuals: values, gradients, and second gradients of u and w_check.
/// hess_u[i](k,l) = d^2 u_i / dx_k dx_l.
struct SolutionPointState {
  Vec3 u = Vec3::Zero();
  Mat3 grad_u = Mat3::Zero();      // (i,k) = d u_i / d x_k
  Tensor3 hess_u = zero_tensor3();
  Vec3 wc = Vec3::Zero();          // Cartesian difference vector w_check
  Mat3 grad_wc = Mat3::Zero();
  Tensor3 hess_wc = zero_tensor3();
};

struct ResidualVectors {
  Vec3 r_force = Vec3::Zero();
  Vec3 r_moment = Vec3::Zero();
};

namespace detail {
inline Vec3 hess_vec(const Tensor3& hess, int k, int l) {
  return Vec3(hess[0](k, l), hess[1](k, l), hess[2](k, l));
}
}  // namespace detail

/// Strong-form residuals of the force and moment equilibrium evaluated from
/// the discrete solution. Requires the frame with curvature gradients
/// (third derivatives of phi^h) and second derivatives of u^h, w_check^h.
inline ResidualVectors strong_form_residuals(const SolutionPointState& st,
                                             const SurfaceFrame& fr,
                                             const MaterialParams& mat, const Vec3& f_load,
                                             const Vec3& c_load) {
  if (!fr.has_second)
    throw MeshError("strong-form residuals need curvature gradients (third derivatives)");
  const Mat3& P = fr.P;
  const Mat3& Q = fr.Q;
  const Mat3& H = fr.H;
  const Vec3& n = fr.n;

  // w = P wc and its first/second spatial gradients by the product rule.
  const Vec3 w = P * st.wc;
  Mat3 grad_w;
  for (int k = 0; k < 3; ++k)
    grad_w.col(k) = fr.dP[k] * st.wc + P * st.grad_wc.col(k);
  Tensor3 d_grad_w;  // d_grad_w[k](i,l) = d/dx_k of grad_w(i,l)
  for (int k = 0; k < 3; ++k)
    for (int l = 0; l < 3; ++l) {
      const Vec3 col = fr.d2P[l][k] * st.wc + fr.dP[l] * st.grad_wc.col(k) +
                       fr.dP[k] * st.grad_wc.col(l) + P * detail::hess_vec(st.hess_wc, k, l);
      for (int i = 0; i < 3; ++i) d_grad_w[k](i, l) = col[i];
    }
  Tensor3 d_grad_u;
  for (int k = 0; k < 3; ++k)
    for (int l = 0; l < 3; ++l) {
      const Vec3 col = detail::hess_vec(st.hess_u, k, l);
      for (int i = 0; i < 3; ++i) d_grad_u[k](i, l) = col[i];
    }

  // Strains and their spatial gradients.
  const Mat3 e_m = sym(P * st.grad_u * P);
  const Mat3 e_b = sym(H * st.grad_u * P) + sym(P * grad_w * P);
  const Mat3 e_s = sym(Q * st.grad_u * P) + sym(outer(n, w));
  Tensor3 de_m, de_b, de_s;
  for (int k = 0; k < 3; ++k) {
    const Mat3& dPk = fr.dP[k];
    const Mat3 dQk = -dPk;
    de_m[k] = sym(dPk * st.grad_u * P + P * d_grad_u[k] * P + P * st.grad_u * dPk);
    de_b[k] = sym(fr.dH[k] * st.grad_u * P + H * d_grad_u[k] * P + H * st.grad_u * dPk) +
              sym(dPk * grad_w * P + P * d_grad_w[k] * P + P * grad_w * dPk);
    de_s[k] = sym(dQk * st.grad_u * P + Q * d_grad_u[k] * P + Q * st.grad_u * dPk) +
              sym(outer(fr.dn.col(k), w) + outer(n, grad_w.col(k)));
  }

  // Resultants and their gradients.
  const double mu = mat.mu(), lam = mat.lambda();
  const double cb = mat.t * mat.t * mat.t / 12.0;
  const double cm = mat.t;
  const double cs = mat.alpha_s * mat.t * 2.0 * mu;
  const Mat3 mten = cb * (2.0 * mu * e_b + lam * e_b.trace() * P);
  const Mat3 nten = cm * (2.0 * mu * e_m + lam * e_m.trace() * P);
  const Mat3 qten = cs * e_s;
  Tensor3 dm, dnt, dq;
  for (int k = 0; k < 3; ++k) {
    dm[k] = cb * (2.0 * mu * de_b[k] + lam * (de_b[k].trace() * P + e_b.trace() * fr.dP[k]));
    dnt[k] = cm * (2.0 * mu * de_m[k] + lam * (de_m[k].trace() * P + e_m.trace() * fr.dP[k]));
    dq[k] = cs * de_s[k];
  }

  const Vec3 div_m = surface_divergence_tensor(dm, P);
  const Vec3 div_n = surface_divergence_tensor(dnt, P);
  const Vec3 div_q = surface_divergence_tensor(dq, P);

  // Directional surface derivatives of H contracted with the moment tensor:
  // extra_k = sum_ij [H_{,i}]_{jk} m_{ji} with [H_{,i}]_{jk} = sum_l dH[l](j,k) P(l,i).
  Vec3 extra = Vec3::Zero();
  for (int k = 0; k < 3; ++k) {
    double s = 0.0;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) {
        double hji = 0.0;
        for (int l = 0; l < 3; ++l) hji += fr.dH[l](j, k) * P(l, i);
        s += hji * mten(j, i);
      }
    extra[k] = s;
  }

  ResidualVectors rv;
  rv.r_force = div_n + H * div_m + extra + Q * div_q + H * (qten * n) + f_load;
  rv.r_moment = P * div_m - qten * n + c_load;
  return rv;
}

}  // namespace btfem

#endif
