#include <catch2/catch_amalgamated.hpp>

#include "btfem/quadrature.hpp"

using namespace btfem;

TEST_CASE("Gauss-Legendre integrates polynomials of degree 2n-1 exactly", "[quadrature]") {
  for (int n : {1, 2, 3, 5, 8, 12}) {
    Rule1D g = gauss_legendre(n);
    for (int deg = 0; deg <= 2 * n - 1; ++deg) {
      double s = 0.0;
      for (int i = 0; i < n; ++i) s += g.weights[i] * std::pow(g.points[i], deg);
      const double exact = (deg % 2 == 0) ? 2.0 / (deg + 1) : 0.0;
      CHECK(s == Catch::Approx(exact).margin(1e-13));
    }
  }
}

TEST_CASE("tensor rule weights sum to the reference volume", "[quadrature]") {
  VolumeRule r = tensor_rule(4);
  double s = 0.0;
  for (double w : r.weights) s += w;
  CHECK(s == Catch::Approx(8.0).epsilon(1e-14));
}

TEST_CASE("face rules embed into the correct reference plane", "[quadrature]") {
  for (int f = 0; f < 6; ++f) {
    FaceRule r = face_rule(f, 3);
    REQUIRE(r.n() == 9);
    double s = 0.0;
    for (int qp = 0; qp < r.n(); ++qp) {
      CHECK(r.points[qp][r.axis] == (f % 2 == 0 ? -1.0 : 1.0));
      s += r.weights[qp];
    }
    CHECK(s == Catch::Approx(4.0).epsilon(1e-14));
  }
}
