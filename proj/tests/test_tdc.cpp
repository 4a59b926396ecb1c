#include <catch2/catch_amalgamated.hpp>
#include <random>

#include "btfem/tdc.hpp"

using namespace btfem;

namespace {

SurfaceFrame plane_frame() {
  ScalarJet j;
  j.order = 2;
  j.grad = Vec3(0, 0, 1);
  return surface_frame(j, 1e-12);
}

SurfaceFrame sphere_frame(const Vec3& x) {
  ScalarJet j;
  j.order = 3;
  const double r = x.norm();
  const Vec3 nh = x / r;
  j.grad = nh;
  j.hess = (Mat3::Identity() - outer(nh, nh)) / r;
  // d3 ||x|| = -(n_i P_jk + n_j P_ik + n_k P_ij)/r^2
  const Mat3 P = Mat3::Identity() - outer(nh, nh);
  for (int k = 0; k < 3; ++k)
    for (int i = 0; i < 3; ++i)
      for (int jj = 0; jj < 3; ++jj)
        j.third[k](i, jj) = -(nh[i] * P(jj, k) + nh[jj] * P(i, k) + nh[k] * P(i, jj)) / (r * r);
  return surface_frame(j, 1e-12);
}

}  // namespace

TEST_CASE("surface gradient of scalars", "[tdc]") {
  SurfaceFrame pf = plane_frame();
  SECTION("phi itself has zero surface gradient") {
    CHECK(surface_gradient_scalar(Vec3(0, 0, 1), pf.P).norm() < 1e-15);
  }
  SECTION("in-plane coordinate is unchanged") {
    CHECK((surface_gradient_scalar(Vec3(1, 0, 0), pf.P) - Vec3(1, 0, 0)).norm() < 1e-15);
  }
  SECTION("normal direction is removed at the sphere pole") {
    SurfaceFrame sf = sphere_frame(Vec3(0, 0, 2));
    CHECK(surface_gradient_scalar(Vec3(0, 0, 1), sf.P).norm() < 1e-14);
  }
}

TEST_CASE("surface gradient of vectors", "[tdc]") {
  SECTION("identity field on a plane gives P and divergence 2") {
    SurfaceFrame pf = plane_frame();
    SurfaceGradientBundle b = surface_gradient_vector(Mat3::Identity(), pf.P);
    CHECK((b.dir - pf.P).norm() < 1e-15);
    CHECK(b.divergence == Catch::Approx(2.0));
  }
  SECTION("divergence of the sphere normal is the mean curvature") {
    const Vec3 x(1.2, -0.4, 0.9);
    SurfaceFrame sf = sphere_frame(x);
    // grad n = P/r for the sphere field
    SurfaceGradientBundle b = surface_gradient_vector(sf.P / x.norm(), sf.P);
    CHECK(b.divergence == Catch::Approx(2.0 / x.norm()).epsilon(1e-12));
    CHECK(b.divergence == Catch::Approx(sf.kappa).epsilon(1e-12));
  }
  SECTION("constant fields give zero") {
    SurfaceGradientBundle b = surface_gradient_vector(Mat3::Zero(), plane_frame().P);
    CHECK(b.dir.norm() == 0.0);
    CHECK(b.divergence == 0.0);
  }
}

TEST_CASE("covariant gradient is in-plane on both sides", "[tdc]") {
  std::mt19937 rng(3);
  std::uniform_real_distribution<double> u(-1, 1);
  for (int trial = 0; trial < 30; ++trial) {
    Vec3 g(u(rng), u(rng), u(rng));
    if (g.norm() < 0.3) continue;
    ScalarJet j;
    j.order = 2;
    j.grad = g;
    Mat3 h;
    for (int a = 0; a < 3; ++a)
      for (int b = a; b < 3; ++b) h(a, b) = h(b, a) = u(rng);
    j.hess = h;
    SurfaceFrame fr = surface_frame(j, 1e-12);
    Mat3 gv;
    for (int a = 0; a < 3; ++a)
      for (int b = 0; b < 3; ++b) gv(a, b) = u(rng);
    SurfaceGradientBundle bdl = surface_gradient_vector(gv, fr.P);
    CHECK((fr.P * bdl.cov * fr.P - bdl.cov).norm() < 1e-12);
    CHECK(bdl.divergence == Catch::Approx(bdl.cov.trace()).margin(1e-12));
    CHECK((bdl.dir * fr.n).norm() < 1e-12);
  }
}

TEST_CASE("surface divergence of tensors", "[tdc]") {
  SECTION("constant tensors give zero") {
    Tensor3 dT = zero_tensor3();
    CHECK(surface_divergence_tensor(dT, plane_frame().P).norm() == 0.0);
  }
  SECTION("projector of a sphere gives -kappa n") {
    const Vec3 x(0.3, 1.1, -0.7);
    SurfaceFrame sf = sphere_frame(x);
    const Vec3 expect = -sf.kappa * sf.n;
    CHECK((surface_divergence_tensor(sf.dP, sf.P) - expect).norm() < 1e-12);
    // finite-difference oracle on the analytic projector field
    const double h = 1e-6;
    Tensor3 dP_fd;
    for (int k = 0; k < 3; ++k) {
      SurfaceFrame fp = sphere_frame(x + h * Vec3::Unit(k));
      SurfaceFrame fm = sphere_frame(x - h * Vec3::Unit(k));
      dP_fd[k] = (fp.P - fm.P) / (2 * h);
    }
    CHECK((surface_divergence_tensor(dP_fd, sf.P) - expect).norm() < 1e-8);
  }
}

TEST_CASE("bulk divergence theorem", "[tdc]") {
  SECTION("zero tensor gives zero residual") {
    MappedBoxSpec spec;
    spec.map = [](const Vec3& u) { return Vec3(u[0], u[1], 0.3 * u[2]); };
    Mesh mesh = generate_mapped_box(spec, {2, 2, 1}, 2);
    LevelSetField f = make_levelset(mesh, [](const Vec3& x) { return x[2]; }, 0.0, 0.3);
    DivergenceTestFields tf;
    tf.v = [](const Vec3& x, const SurfaceFrame&) { return Vec3(x[0], 0, 0); };
    tf.grad_v = [](const Vec3&, const SurfaceFrame&) {
      Mat3 g = Mat3::Zero();
      g(0, 0) = 1;
      return g;
    };
    tf.T = [](const Vec3&, const SurfaceFrame&) { return Mat3::Zero(); };
    tf.grad_T = [](const Vec3&, const SurfaceFrame&) { return zero_tensor3(); };
    DivergenceCheckResult r = bulk_divergence_theorem_check(f, tf);
    CHECK(r.residual() < 1e-14);
  }
  SECTION("flat slab with T = P is exact") {
    MappedBoxSpec spec;
    spec.map = [](const Vec3& u) { return Vec3(u[0], u[1], 0.3 * u[2]); };
    Mesh mesh = generate_mapped_box(spec, {2, 2, 1}, 2);
    LevelSetField f = make_levelset(mesh, [](const Vec3& x) { return x[2]; }, 0.0, 0.3);
    DivergenceTestFields tf;
    tf.v = [](const Vec3& x, const SurfaceFrame&) { return Vec3(x[0], 0, 0); };
    tf.grad_v = [](const Vec3&, const SurfaceFrame&) {
      Mat3 g = Mat3::Zero();
      g(0, 0) = 1;
      return g;
    };
    tf.T = [](const Vec3&, const SurfaceFrame& fr) { return fr.P; };
    tf.grad_T = [](const Vec3&, const SurfaceFrame& fr) { return fr.dP; };
    DivergenceCheckResult r = bulk_divergence_theorem_check(f, tf);
    CHECK(r.residual() < 1e-10 * std::max(1.0, std::abs(r.lhs)));
  }
  SECTION("sphere slab residual decreases under refinement") {
    Mat3 A;
    A << 1.0, 0.3, -0.2, 0.3, 0.7, 0.1, -0.2, 0.1, 1.4;
    auto run = [&](int n, bool inplane) {
      SphericalSectorParams sp;
      Mesh mesh = generate_spherical_shell_sector(sp, {n, n, n}, 2);
      LevelSetField f =
          make_levelset(mesh, [](const Vec3& x) { return x.norm() - 1.0; }, -0.2, 0.4);
      DivergenceTestFields tf;
      tf.v = [](const Vec3& x, const SurfaceFrame&) {
        return Vec3(x[0] * x[1], x[2], x[0] - x[1] * x[2]);
      };
      tf.grad_v = [](const Vec3& x, const SurfaceFrame&) {
        Mat3 g;
        g << x[1], x[0], 0, 0, 0, 1, 1, -x[2], -x[1];
        return g;
      };
      if (inplane) {
        tf.T = [&](const Vec3&, const SurfaceFrame& fr) { return Mat3(fr.P * A * fr.P); };
        tf.grad_T = [&](const Vec3&, const SurfaceFrame& fr) {
          Tensor3 d;
          for (int k = 0; k < 3; ++k)
            d[k] = fr.dP[k] * A * fr.P + fr.P * A * fr.dP[k];
          return d;
        };
      } else {
        // smooth non-in-plane tensor exercises the curvature term
        tf.T = [&](const Vec3& x, const SurfaceFrame&) { return Mat3(A * (1.0 + x[0])); };
        tf.grad_T = [&](const Vec3&, const SurfaceFrame&) {
          Tensor3 d = zero_tensor3();
          d[0] = A;
          return d;
        };
      }
      return bulk_divergence_theorem_check(f, tf, 4).residual();
    };
    for (bool inplane : {true, false}) {
      const double r1 = run(1, inplane);
      const double r2 = run(2, inplane);
      const double r4 = run(4, inplane);
      CHECK(r2 < r1);
      CHECK(r4 < r2);
    }
  }
}
