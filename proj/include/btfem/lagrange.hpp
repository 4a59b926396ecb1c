#ifndef BTFEM_LAGRANGE_HPP
#define BTFEM_LAGRANGE_HPP

#include <vector>

#include "btfem/core.hpp"

namespace btfem {

inline constexpr int kMaxOrder = 6;

/// 1D Lagrange basis on equally spaced nodes in [-1,1], with derivatives up
/// to third order. Basis polynomials are expanded into monomial coefficients
/// at construction; degree is at most kMaxOrder so this stays well
/// conditioned in double precision.
class Lagrange1D {
 public:
  explicit Lagrange1D(int order) : order_(order) {
    if (order < 1 || order > kMaxOrder)
      throw MeshError("Lagrange order must be in [1," + std::to_string(kMaxOrder) +
                      "], got " + std::to_string(order));
    const int n = order + 1;
    nodes_.resize(n);
    for (int i = 0; i < n; ++i) nodes_[i] = -1.0 + 2.0 * i / order;
    coef_[0].assign(n, Poly{});
    for (int i = 0; i < n; ++i) {
      Poly p{};
      p[0] = 1.0;
      int deg = 0;
      for (int j = 0; j < n; ++j) {
        if (j == i) continue;
        const double a = nodes_[j];
        const double s = 1.0 / (nodes_[i] - a);
        // p(x) <- p(x) * (x - a) * s
        Poly q{};
        for (int k = 0; k <= deg; ++k) {
          q[k + 1] += p[k] * s;
          q[k] -= p[k] * a * s;
        }
        p = q;
        ++deg;
      }
      coef_[0][i] = p;
    }
    for (int d = 1; d <= 3; ++d) {
      coef_[d].assign(n, Poly{});
      for (int i = 0; i < n; ++i)
        for (int k = 0; k + 1 < kPolyLen; ++k)
          coef_[d][i][k] = (k + 1) * coef_[d - 1][i][k + 1];
    }
  }

  int order() const { return order_; }
  int size() const { return order_ + 1; }
  const std::vector<double>& nodes() const { return nodes_; }

  /// Value of the d-th derivative (d in 0..3) of basis i at x.
  double eval(int d, int i, double x) const {
    const Poly& c = coef_[d][i];
    double v = 0.0;
    for (int k = kPolyLen - 1; k >= 0; --k) v = v * x + c[k];
    return v;
  }

  /// All basis values and derivatives 0..maxd at x; out[d][i].
  void eval_all(double x, int maxd, std::array<std::vector<double>, 4>& out) const {
    const int n = size();
    for (int d = 0; d <= maxd; ++d) {
      out[d].resize(n);
      for (int i = 0; i < n; ++i) out[d][i] = eval(d, i, x);
    }
  }

 private:
  static constexpr int kPolyLen = kMaxOrder + 2;
  using Poly = std::array<double, kPolyLen>;
  int order_;
  std::vector<double> nodes_;
  std::array<std::vector<Poly>, 4> coef_;
};

/// Values and reference-space derivatives of all basis functions at one point.
/// d3[f][a](b,c) = third derivative of function f w.r.t. xi_a, xi_b, xi_c
/// (stored fully, symmetric in all index pairs).
struct BasisDerivs {
  int order = 0;
  Eigen::VectorXd value;
  Eigen::Matrix<double, Eigen::Dynamic, 3> d1;
  std::vector<Mat3> d2;
  std::vector<Tensor3> d3;
};

/// Tensor-product Lagrange hexahedron on [-1,1]^3 with equally spaced nodes.
/// Node ordering is lexicographic with the first axis fastest:
/// node(i,j,k) = i + (p+1)*(j + (p+1)*k).
class ReferenceElement {
 public:
  explicit ReferenceElement(int order) : line_(order) {
    const int n1 = line_.size();
    nfun_ = n1 * n1 * n1;
    nodes_.reserve(nfun_);
    for (int k = 0; k < n1; ++k)
      for (int j = 0; j < n1; ++j)
        for (int i = 0; i < n1; ++i)
          nodes_.emplace_back(line_.nodes()[i], line_.nodes()[j], line_.nodes()[k]);
  }

  int order() const { return line_.order(); }
  int nfun() const { return nfun_; }
  const std::vector<Vec3>& nodes() const { return nodes_; }
  const Lagrange1D& line() const { return line_; }

  /// Evaluate all basis functions at xi with derivatives up to maxd (0..3).
  BasisDerivs eval(const Vec3& xi, int maxd) const {
    if (maxd < 0 || maxd > 3) throw MeshError("derivative order must be 0..3");
    std::array<std::array<std::vector<double>, 4>, 3> L;
    for (int a = 0; a < 3; ++a) line_.eval_all(xi[a], maxd, L[a]);

    BasisDerivs out;
    out.order = order();
    out.value.resize(nfun_);
    if (maxd >= 1) out.d1.resize(nfun_, 3);
    if (maxd >= 2) out.d2.assign(nfun_, Mat3::Zero());
    if (maxd >= 3) out.d3.assign(nfun_, zero_tensor3());

    const int n1 = line_.size();
    auto term = [&](int i, int j, int k, int dx, int dy, int dz) {
      return L[0][dx][i] * L[1][dy][j] * L[2][dz][k];
    };
    int f = 0;
    for (int k = 0; k < n1; ++k)
      for (int j = 0; j < n1; ++j)
        for (int i = 0; i < n1; ++i, ++f) {
          out.value(f) = term(i, j, k, 0, 0, 0);
          if (maxd >= 1) {
            out.d1(f, 0) = term(i, j, k, 1, 0, 0);
            out.d1(f, 1) = term(i, j, k, 0, 1, 0);
            out.d1(f, 2) = term(i, j, k, 0, 0, 1);
          }
          if (maxd >= 2) {
            Mat3& h = out.d2[f];
            for (int a = 0; a < 3; ++a)
              for (int b = a; b < 3; ++b) {
                int d[3] = {0, 0, 0};
                d[a]++;
                d[b]++;
                h(a, b) = h(b, a) = term(i, j, k, d[0], d[1], d[2]);
              }
          }
          if (maxd >= 3) {
            Tensor3& t = out.d3[f];
            for (int a = 0; a < 3; ++a)
              for (int b = 0; b < 3; ++b)
                for (int c = 0; c < 3; ++c) {
                  int d[3] = {0, 0, 0};
                  d[a]++;
                  d[b]++;
                  d[c]++;
                  t[a](b, c) = term(i, j, k, d[0], d[1], d[2]);
                }
          }
        }
    return out;
  }

 private:
  Lagrange1D line_;
  int nfun_;
  std::vector<Vec3> nodes_;
};

inline ReferenceElement build_reference_element(int order) {
  return ReferenceElement(order);
}

}  // namespace btfem

#endif
