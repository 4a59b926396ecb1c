#ifndef BTFEM_LEVELSET_HPP
#define BTFEM_LEVELSET_HPP

#include <functional>
#include <limits>
#include <string>
#include <vector>

#include "btfem/core.hpp"
#include "btfem/mesh.hpp"

namespace btfem {

/// Interpolated level-set field phi^h on the geometry-order field space.
/// Nodal values are sampled from the analytic expression at the (possibly
/// perturbed) mesh nodes.
struct LevelSetField {
  const Mesh* mesh = nullptr;
  std::vector<double> nodal;
  double phi_min = 0.0, phi_max = 0.0;
  std::function<double(const Vec3&)> analytic;  // kept for oracle comparisons

  double eps_grad() const { return 1e-8 * mesh->diameter; }
};

inline LevelSetField make_levelset(const Mesh& mesh,
                                   const std::function<double(const Vec3&)>& phi,
                                   double phi_min, double phi_max) {
  if (!(phi_min < phi_max)) throw MeshError("level-set interval requires phi_min < phi_max");
  LevelSetField f;
  f.mesh = &mesh;
  f.analytic = phi;
  f.phi_min = phi_min;
  f.phi_max = phi_max;
  f.nodal.resize(mesh.nodes.size());
  for (std::size_t i = 0; i < mesh.nodes.size(); ++i) f.nodal[i] = phi(mesh.nodes[i]);
  return f;
}

/// Reference-space jet of phi^h in one element (coefficients contracted with
/// the geometry basis); transform with the map jet for physical derivatives.
inline RefScalarJet contract_levelset(const LevelSetField& field, int element,
                                      const BasisDerivs& bd, int maxd) {
  RefScalarJet rj;
  rj.order = maxd;
  const std::vector<int>& conn = field.mesh->elems[element];
  for (int f = 0; f < static_cast<int>(conn.size()); ++f) {
    const double c = field.nodal[conn[f]];
    rj.value += c * bd.value(f);
    if (maxd >= 1) rj.g1 += c * bd.d1.row(f).transpose();
    if (maxd >= 2) rj.g2 += c * bd.d2[f];
    if (maxd >= 3)
      for (int a = 0; a < 3; ++a) rj.g3[a] += c * bd.d3[f][a];
  }
  return rj;
}

/// phi^h and its physical derivatives up to order maxd (<= 3) at xi.
inline ScalarJet evaluate_levelset(const LevelSetField& field, int element, const Vec3& xi,
                                   int maxd) {
  const BasisDerivs bd = field.mesh->ref->eval(xi, maxd);
  const MapJet jet = field.mesh->map_jet_from(element, bd, maxd);
  return transform_scalar_jet(contract_levelset(field, element, bd, maxd), jet);
}

/// Per-point geometric bundle of the level sets: unit normal, projectors,
/// Weingarten map and its gradients, mean curvature, co-area weight.
/// dn(i,j) = d n_i / d x_j; dP[k] = d P / d x_k; with third derivatives of phi
/// also d2n[k](i,j) = d^2 n_i / (dx_j dx_k), d2P[j][k], and dH[k] = d H / d x_k.
struct SurfaceFrame {
  Vec3 n = Vec3::Zero();
  Mat3 P = Mat3::Zero();
  Mat3 Q = Mat3::Zero();
  Mat3 H = Mat3::Zero();
  double kappa = 0.0;
  double coarea = 0.0;
  Mat3 dn = Mat3::Zero();
  Tensor3 dP = zero_tensor3();
  bool has_second = false;
  Tensor3 d2n = zero_tensor3();
  Tensor4 d2P = zero_tensor4();
  Tensor3 dH = zero_tensor3();
};

/// Build the frame from a level-set jet (needs at least second derivatives;
/// third derivatives populate the gradient bundle of H and P).
inline SurfaceFrame surface_frame(const ScalarJet& jet, double eps_grad) {
  SurfaceFrame fr;
  const Vec3& g = jet.grad;
  const double r = g.norm();
  if (r <= eps_grad) throw MeshError("vanishing level-set gradient: field invalid here");
  fr.coarea = r;
  fr.n = g / r;
  fr.Q = outer(fr.n, fr.n);
  fr.P = Mat3::Identity() - fr.Q;
  if (jet.order < 2) return fr;
  const Mat3& hess = jet.hess;
  fr.dn = fr.P * hess / r;
  fr.H = fr.dn * fr.P;
  fr.kappa = fr.H.trace();
  for (int k = 0; k < 3; ++k)
    fr.dP[k] = -(fr.dn.col(k) * fr.n.transpose() + fr.n * fr.dn.col(k).transpose());
  if (jet.order < 3) return fr;
  fr.has_second = true;
  const Vec3 b = hess * fr.n;  // gradient of ||grad phi||
  for (int k = 0; k < 3; ++k) {
    const Vec3 dnk = fr.dn.col(k);
    const Vec3 tb = jet.third[k] * fr.n + hess * dnk;
    fr.d2n[k] = jet.third[k] / r - hess * (b[k] / (r * r)) -
                (dnk * b.transpose() + fr.n * tb.transpose()) / r +
                outer(fr.n, b) * (b[k] / (r * r));
  }
  for (int j = 0; j < 3; ++j)
    for (int k = 0; k < 3; ++k) {
      Mat3 m = Mat3::Zero();
      for (int i = 0; i < 3; ++i)
        for (int l = 0; l < 3; ++l)
          m(i, l) = fr.d2n[k](i, j) * fr.n[l] + fr.dn(i, k) * fr.dn(l, j) +
                    fr.dn(i, j) * fr.dn(l, k) + fr.n[i] * fr.d2n[k](l, j);
      fr.d2P[j][k] = -m;
    }
  for (int k = 0; k < 3; ++k) fr.dH[k] = fr.d2n[k] * fr.P + fr.dn * fr.dP[k];
  return fr;
}

/// Local triad and boundary co-area factor at a point of the bulk boundary.
struct BoundaryTriad {
  Vec3 t = Vec3::Zero();
  Vec3 q = Vec3::Zero();
  Vec3 m = Vec3::Zero();
  double qm = 0.0;  // q . m, boundary co-area factor
};

inline BoundaryTriad boundary_triad(const SurfaceFrame& fr, const Vec3& m) {
  BoundaryTriad tr;
  tr.m = m;
  Vec3 t = m.cross(fr.n);
  const double tn = t.norm();
  if (tn < 1e-10) throw MeshError("boundary normal parallel to level-set normal");
  tr.t = t / tn;
  Vec3 q = fr.n.cross(tr.t);
  tr.q = q / q.norm();
  tr.qm = tr.q.dot(m);
  return tr;
}

/// Validity diagnostics of a level-set field on its mesh.
struct LevelSetDiagnostics {
  double min_coarea = 0.0;   // min ||grad phi^h|| over the domain
  double min_detJ = 0.0;
  double phi_min_seen = 0.0;
  double phi_max_seen = 0.0;
  double eps_grad = 0.0;
  bool valid = false;
};

/// Checks min ||grad phi^h|| by per-element minimization seeded from the
/// quadrature points (catches interior critical points between them).
inline LevelSetDiagnostics validate_field(const LevelSetField& field, int n_quad = 0) {
  const Mesh& mesh = *field.mesh;
  const int p = mesh.geometry_order;
  const int nq = n_quad > 0 ? n_quad : p + 1;
  const VolumeRule qr = tensor_rule(nq);
  std::vector<BasisDerivs> bt;
  bt.reserve(qr.n());
  for (const Vec3& xi : qr.points) bt.push_back(mesh.ref->eval(xi, 2));

  LevelSetDiagnostics d;
  d.eps_grad = field.eps_grad();
  d.min_coarea = std::numeric_limits<double>::max();
  d.min_detJ = std::numeric_limits<double>::max();
  d.phi_min_seen = std::numeric_limits<double>::max();
  d.phi_max_seen = std::numeric_limits<double>::lowest();

  for (int e = 0; e < mesh.n_elements(); ++e) {
    double best = std::numeric_limits<double>::max();
    Vec3 best_xi = Vec3::Zero();
    for (int qp = 0; qp < qr.n(); ++qp) {
      const MapJet jet = mesh.map_jet_from(e, bt[qp], 1);
      d.min_detJ = std::min(d.min_detJ, jet.detJ);
      const RefScalarJet rj = contract_levelset(field, e, bt[qp], 1);
      const Vec3 grad = jet.Kinv.transpose() * rj.g1;
      d.phi_min_seen = std::min(d.phi_min_seen, rj.value);
      d.phi_max_seen = std::max(d.phi_max_seen, rj.value);
      const double gn = grad.norm();
      if (gn < best) {
        best = gn;
        best_xi = qr.points[qp];
      }
    }
    // Newton on grad(phi^h)(xi) = 0 from the weakest quadrature point, kept
    // inside the element; tracks the smallest gradient norm encountered.
    Vec3 xi = best_xi;
    for (int it = 0; it < 12; ++it) {
      ScalarJet sj;
      try {
        sj = evaluate_levelset(field, e, xi, 2);
      } catch (const MeshError&) {
        break;
      }
      best = std::min(best, sj.grad.norm());
      const Mat3 A = sj.hess;
      Eigen::FullPivLU<Mat3> lu(A);
      if (!lu.isInvertible()) break;
      Vec3 step = lu.solve(-sj.grad);
      const double maxstep = 0.5;
      if (step.norm() > maxstep) step *= maxstep / step.norm();
      xi += step;
      bool inside = true;
      for (int c = 0; c < 3; ++c)
        if (xi[c] < -1.0 || xi[c] > 1.0) inside = false;
      if (!inside) break;
      ScalarJet after = evaluate_levelset(field, e, xi, 1);
      best = std::min(best, after.grad.norm());
      if (best < 1e-14) break;
    }
    d.min_coarea = std::min(d.min_coarea, best);
  }
  d.valid = d.min_coarea > d.eps_grad && d.min_detJ > 0.0;
  return d;
}

// ---------------------------------------------------------------------------
// Analytic level-set expressions used by the case presets.

inline std::function<double(const Vec3&)> levelset_plane(const Vec3& normal, double offset) {
  const Vec3 n = normal.normalized();
  return [n, offset](const Vec3& x) { return n.dot(x) - offset; };
}

inline std::function<double(const Vec3&)> levelset_sphere(const Vec3& center, double radius) {
  return [center, radius](const Vec3& x) { return (x - center).norm() - radius; };
}

/// Distance from the y-axis (radius of cylinders about the y-axis) minus offset.
inline std::function<double(const Vec3&)> levelset_cylinder_radius(double offset = 0.0) {
  return [offset](const Vec3& x) { return std::hypot(x[0], x[2]) - offset; };
}

/// phi = z - amplitude * sin(factor * x * y)
inline std::function<double(const Vec3&)> levelset_trig_graph(double amplitude, double factor) {
  return [amplitude, factor](const Vec3& x) {
    return x[2] - amplitude * std::sin(factor * x[0] * x[1]);
  };
}

/// phi = z - g(x,y) for an arbitrary graph surface.
inline std::function<double(const Vec3&)> levelset_graph(
    const std::function<double(double, double)>& g) {
  return [g](const Vec3& x) { return x[2] - g(x[0], x[1]); };
}

}  // namespace btfem

#endif
