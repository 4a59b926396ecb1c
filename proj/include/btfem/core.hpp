#ifndef BTFEM_CORE_HPP
#define BTFEM_CORE_HPP

#include <Eigen/Dense>
#include <array>
#include <cmath>
#include <stdexcept>
#include <string>

namespace btfem {

using Vec3 = Eigen::Vector3d;
using Mat3 = Eigen::Matrix3d;
using Vec6 = Eigen::Matrix<double, 6, 1>;

/// Third-order tensor stored as three matrices, T[k](i,j).
/// Used for spatial gradients of matrix fields: (dT)[k] = d T / d x_k.
using Tensor3 = std::array<Mat3, 3>;
/// Fourth-order tensor, T[j][k](i,l), e.g. second gradients of a matrix field.
using Tensor4 = std::array<std::array<Mat3, 3>, 3>;

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct MeshError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct SolveError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline Mat3 sym(const Mat3& a) { return 0.5 * (a + a.transpose()); }

inline Mat3 outer(const Vec3& a, const Vec3& b) { return a * b.transpose(); }

inline double ddot(const Mat3& a, const Mat3& b) {
  return (a.array() * b.array()).sum();
}

/// Orthonormal (Kelvin) vector of a symmetric 3x3 tensor: kelvin(A).dot(kelvin(B)) == A:B.
inline Vec6 kelvin(const Mat3& s) {
  const double r2 = std::sqrt(2.0);
  Vec6 v;
  v << s(0, 0), s(1, 1), s(2, 2), r2 * s(0, 1), r2 * s(0, 2), r2 * s(1, 2);
  return v;
}

inline Mat3 from_kelvin(const Vec6& v) {
  const double ir2 = 1.0 / std::sqrt(2.0);
  Mat3 s;
  s << v(0), ir2 * v(3), ir2 * v(4),
      ir2 * v(3), v(1), ir2 * v(5),
      ir2 * v(4), ir2 * v(5), v(2);
  return s;
}

inline Tensor3 zero_tensor3() {
  return {Mat3::Zero(), Mat3::Zero(), Mat3::Zero()};
}

inline Tensor4 zero_tensor4() {
  return {zero_tensor3(), zero_tensor3(), zero_tensor3()};
}

}  // namespace btfem

#endif
