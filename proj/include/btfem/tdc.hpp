#ifndef BTFEM_TDC_HPP
#define BTFEM_TDC_HPP

#include <functional>

#include "btfem/core.hpp"
#include "btfem/levelset.hpp"

namespace btfem {

/// Directional and covariant surface gradients of a vector field, plus the
/// surface divergence. The covariant gradient is the in-plane projection of
/// the directional one; both have the same trace.
struct SurfaceGradientBundle {
  Mat3 dir = Mat3::Zero();
  Mat3 cov = Mat3::Zero();
  double divergence = 0.0;
};

inline Vec3 surface_gradient_scalar(const Vec3& grad_f, const Mat3& P) { return P * grad_f; }

inline SurfaceGradientBundle surface_gradient_vector(const Mat3& grad_v, const Mat3& P) {
  SurfaceGradientBundle b;
  b.dir = grad_v * P;
  b.cov = P * b.dir;
  b.divergence = b.dir.trace();
  return b;
}

/// Rowwise surface divergence of a tensor field: [div_G T]_i = sum_jk dT[k](i,j) P(k,j).
inline Vec3 surface_divergence_tensor(const Tensor3& dT, const Mat3& P) {
  Vec3 out = Vec3::Zero();
  for (int i = 0; i < 3; ++i) {
    double s = 0.0;
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 3; ++k) s += dT[k](i, j) * P(k, j);
    out[i] = s;
  }
  return out;
}

/// Analytic test fields for the divergence-theorem harness; each callback
/// receives the physical point and the discrete frame there.
struct DivergenceTestFields {
  std::function<Vec3(const Vec3&, const SurfaceFrame&)> v;
  std::function<Mat3(const Vec3&, const SurfaceFrame&)> grad_v;
  std::function<Mat3(const Vec3&, const SurfaceFrame&)> T;
  std::function<Tensor3(const Vec3&, const SurfaceFrame&)> grad_T;
};

struct DivergenceCheckResult {
  double lhs = 0.0;
  double rhs = 0.0;
  double residual() const { return std::abs(lhs - rhs); }
};

/// Verification harness for the divergence theorem on all level sets:
/// int v . div_G T ||grad phi|| dOmega
///   = - int grad_G^dir v : T ||grad phi||
///     + int kappa v . (T n) ||grad phi||
///     + int_boundary v . (T q) (q.m) ||grad phi||,
/// with both sides assembled by independent quadrature. Level-set faces of
/// the bulk boundary are excluded (no shell boundary there).
inline DivergenceCheckResult bulk_divergence_theorem_check(const LevelSetField& field,
                                                           const DivergenceTestFields& tf,
                                                           int n_quad = 0) {
  const Mesh& mesh = *field.mesh;
  const int nq = n_quad > 0 ? n_quad : mesh.geometry_order + 2;
  const VolumeRule qr = tensor_rule(nq);
  std::vector<BasisDerivs> bt;
  for (const Vec3& xi : qr.points) bt.push_back(mesh.ref->eval(xi, 3));

  DivergenceCheckResult res;
  for (int e = 0; e < mesh.n_elements(); ++e)
    for (int qp = 0; qp < qr.n(); ++qp) {
      const MapJet jet = mesh.map_jet_from(e, bt[qp], 3);
      const ScalarJet phi = transform_scalar_jet(contract_levelset(field, e, bt[qp], 3), jet);
      const SurfaceFrame fr = surface_frame(phi, field.eps_grad());
      const double w = qr.weights[qp] * jet.detJ * fr.coarea;
      const Vec3 v = tf.v(jet.x, fr);
      const Mat3 gv = tf.grad_v(jet.x, fr);
      const Mat3 T = tf.T(jet.x, fr);
      const Tensor3 gT = tf.grad_T(jet.x, fr);
      res.lhs += w * v.dot(surface_divergence_tensor(gT, fr.P));
      res.rhs += w * (-ddot(gv * fr.P, T) + fr.kappa * v.dot(T * fr.n));
    }
  for (const BoundaryFace& bf : mesh.boundary_faces) {
    if (mesh.levelset_face[bf.tag]) continue;
    for (const BoundaryQuadPoint& bq : boundary_quadrature(mesh, bf, nq)) {
      const ScalarJet phi = evaluate_levelset(field, bf.element, bq.xi, 3);
      const SurfaceFrame fr = surface_frame(phi, field.eps_grad());
      const BoundaryTriad tr = boundary_triad(fr, bq.m);
      const Vec3 v = tf.v(bq.x, fr);
      const Mat3 T = tf.T(bq.x, fr);
      res.rhs += bq.weight * tr.qm * fr.coarea * v.dot(T * tr.q);
    }
  }
  return res;
}

}  // namespace btfem

#endif
