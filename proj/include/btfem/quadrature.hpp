#ifndef BTFEM_QUADRATURE_HPP
#define BTFEM_QUADRATURE_HPP

#include <vector>

#include "btfem/core.hpp"

namespace btfem {

struct Rule1D {
  std::vector<double> points;
  std::vector<double> weights;
};

/// Gauss-Legendre rule with n points on [-1,1]. Nodes by Newton iteration on
/// the Legendre recurrence; deterministic to machine precision.
inline Rule1D gauss_legendre(int n) {
  if (n < 1 || n > 30) throw MeshError("Gauss rule size must be in [1,30]");
  Rule1D r;
  r.points.resize(n);
  r.weights.resize(n);
  for (int i = 0; i < n; ++i) {
    double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    r.points[n - 1 - i] = x;
    r.weights[n - 1 - i] = 2.0 / ((1.0 - x * x) * dp * dp);
  }
  return r;
}

struct VolumeRule {
  std::vector<Vec3> points;
  std::vector<double> weights;
  int n() const { return static_cast<int>(points.size()); }
};

/// Tensor Gauss rule with n points per direction on [-1,1]^3.
inline VolumeRule tensor_rule(int n) {
  const Rule1D g = gauss_legendre(n);
  VolumeRule r;
  r.points.reserve(n * n * n);
  r.weights.reserve(n * n * n);
  for (int k = 0; k < n; ++k)
    for (int j = 0; j < n; ++j)
      for (int i = 0; i < n; ++i) {
        r.points.emplace_back(g.points[i], g.points[j], g.points[k]);
        r.weights.push_back(g.weights[i] * g.weights[j] * g.weights[k]);
      }
  return r;
}

/// Hex local faces: face f fixes axis f/2 at -1 (f even) or +1 (f odd).
struct FaceRule {
  int local_face = 0;
  int axis = 0;          // fixed reference axis
  int tangent_axes[2];   // free reference axes (s,t)
  double side = -1.0;    // -1 or +1
  std::vector<Vec3> points;     // embedded in [-1,1]^3
  std::vector<double> weights;  // 2d reference weights ws*wt
  int n() const { return static_cast<int>(points.size()); }
};

inline FaceRule face_rule(int local_face, int n) {
  if (local_face < 0 || local_face > 5) throw MeshError("local face must be 0..5");
  FaceRule r;
  r.local_face = local_face;
  r.axis = local_face / 2;
  r.side = (local_face % 2 == 0) ? -1.0 : 1.0;
  int idx = 0;
  for (int a = 0; a < 3; ++a)
    if (a != r.axis) r.tangent_axes[idx++] = a;
  const Rule1D g = gauss_legendre(n);
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) {
      Vec3 xi;
      xi[r.axis] = r.side;
      xi[r.tangent_axes[0]] = g.points[i];
      xi[r.tangent_axes[1]] = g.points[j];
      r.points.push_back(xi);
      r.weights.push_back(g.weights[i] * g.weights[j]);
    }
  return r;
}

}  // namespace btfem

#endif
