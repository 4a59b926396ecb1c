#ifndef BTFEM_MESH_HPP
#define BTFEM_MESH_HPP

#include <functional>
#include <map>
#include <memory>
#include <random>
#include <string>
#include <vector>

#include "btfem/core.hpp"
#include "btfem/lagrange.hpp"
#include "btfem/quadrature.hpp"

namespace btfem {

/// Jet of the isoparametric map at one reference point.
/// J(i,a) = dx_i/dxi_a, Kinv(a,i) = dxi_a/dx_i,
/// d2x[i](a,b) and d3x[i][a](b,c) are map derivatives in reference indices.
struct MapJet {
  Vec3 x = Vec3::Zero();
  Mat3 J = Mat3::Zero();
  Mat3 Kinv = Mat3::Zero();
  double detJ = 0.0;
  int order = 1;  // highest map derivative available
  Tensor3 d2x = zero_tensor3();
  std::array<Tensor3, 3> d3x = {zero_tensor3(), zero_tensor3(), zero_tensor3()};
};

/// Physical-space derivatives of a scalar field given its reference jet.
struct ScalarJet {
  double value = 0.0;
  Vec3 grad = Vec3::Zero();
  Mat3 hess = Mat3::Zero();
  Tensor3 third = zero_tensor3();  // third[k](i,j) = d^3 f / dx_i dx_j dx_k
  int order = 0;
};

/// Reference jet of a scalar field (coefficients contracted with ref basis).
struct RefScalarJet {
  double value = 0.0;
  Vec3 g1 = Vec3::Zero();
  Mat3 g2 = Mat3::Zero();
  Tensor3 g3 = zero_tensor3();
  int order = 0;
};

/// Chain rule for physical derivatives of a scalar field on a curved element.
/// First derivatives use Kinv; second and third solve the isoparametric
/// identities for the unknown physical tensors.
inline ScalarJet transform_scalar_jet(const RefScalarJet& ref, const MapJet& jet) {
  ScalarJet out;
  out.order = ref.order;
  out.value = ref.value;
  if (ref.order < 1) return out;
  const Mat3& K = jet.Kinv;
  out.grad = K.transpose() * ref.g1;
  if (ref.order < 2) return out;
  Mat3 m = ref.g2;
  for (int i = 0; i < 3; ++i) m -= out.grad[i] * jet.d2x[i];
  out.hess = K.transpose() * m * K;
  if (ref.order < 3) return out;
  // T_abc = g3_abc - sum_ij D2_ij [d2x_i(a,c) J(j,b) + J(i,a) d2x_j(b,c)]
  //         - sum_ik D2_ik d2x_i(a,b) J(k,c) - sum_i D1_i d3x_i(a)(b,c)
  Tensor3 T = ref.g3;
  const Mat3& J = jet.J;
  const Mat3& D2 = out.hess;
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b)
      for (int c = 0; c < 3; ++c) {
        double s = 0.0;
        for (int i = 0; i < 3; ++i) {
          s += out.grad[i] * jet.d3x[i][a](b, c);
          for (int j = 0; j < 3; ++j)
            s += D2(i, j) * (jet.d2x[i](a, c) * J(j, b) + J(i, a) * jet.d2x[j](b, c)) +
                 D2(i, j) * jet.d2x[i](a, b) * J(j, c);
        }
        T[a](b, c) -= s;
      }
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 3; ++k) {
        double s = 0.0;
        for (int a = 0; a < 3; ++a)
          for (int b = 0; b < 3; ++b)
            for (int c = 0; c < 3; ++c)
              s += K(a, i) * K(b, j) * K(c, k) * T[a](b, c);
        out.third[k](i, j) = s;
      }
  return out;
}

/// Physical derivatives of all basis functions (values unchanged).
struct PhysicalBasis {
  Eigen::VectorXd value;
  Eigen::Matrix<double, Eigen::Dynamic, 3> d1;  // d1(f,i) = dB_f/dx_i
  std::vector<Mat3> d2;
  std::vector<Tensor3> d3;
  int order = 0;
};

inline PhysicalBasis transform_basis(const BasisDerivs& ref, const MapJet& jet, int maxd) {
  PhysicalBasis out;
  out.order = maxd;
  out.value = ref.value;
  const int n = static_cast<int>(ref.value.size());
  if (maxd >= 1) out.d1 = ref.d1 * jet.Kinv;  // (f,a)*(a,i)
  if (maxd >= 2) {
    out.d2.resize(n);
    if (maxd >= 3) out.d3.resize(n);
    for (int f = 0; f < n; ++f) {
      RefScalarJet rj;
      rj.order = maxd;
      rj.value = ref.value(f);
      rj.g1 = ref.d1.row(f).transpose();
      rj.g2 = ref.d2[f];
      if (maxd >= 3) rj.g3 = ref.d3[f];
      ScalarJet pj = transform_scalar_jet(rj, jet);
      out.d2[f] = pj.hess;
      if (maxd >= 3) out.d3[f] = pj.third;
    }
  }
  return out;
}

/// Full isoparametric point data: map jet plus physical derivatives of the
/// geometry basis functions up to the requested order.
struct PhysicalPointData {
  Vec3 x;
  Mat3 J;
  double detJ;
  MapJet jet;
  PhysicalBasis basis;
};

struct BoundaryFace {
  int element = 0;
  int local_face = 0;  // 0..5, equals the structured box face here
  int tag = 0;         // index into Mesh::face_tags
};

/// Conforming field space of a given order on the element partition of a mesh.
struct FieldSpace {
  int order = 1;
  std::array<int, 3> node_dims = {0, 0, 0};
  int n_nodes = 0;
  std::vector<std::vector<int>> elems;  // per element, (q+1)^3 node ids
  std::vector<Vec3> node_coords;        // via the geometry map
  std::map<std::string, std::vector<int>> boundary_nodes;  // tag -> sorted ids
  std::shared_ptr<ReferenceElement> ref;

  std::array<int, 3> node_ijk(int id) const {
    const int i = id % node_dims[0];
    const int j = (id / node_dims[0]) % node_dims[1];
    const int k = id / (node_dims[0] * node_dims[1]);
    return {i, j, k};
  }
};

struct PerturbationSpec {
  bool enabled = false;
  double amplitude = 0.1;  // fraction of local element size
  std::uint64_t seed = 20240801;
};

/// Higher-order Lagrange hexahedral mesh of a mapped box. Elements form a
/// structured n1 x n2 x n3 grid in parameter space; the six box faces carry
/// the boundary tags. Faces marked as level-set faces are the phi = phi_min /
/// phi_max surfaces and are excluded from shell-boundary integrals.
class Mesh {
 public:
  int geometry_order = 1;
  std::array<int, 3> divisions = {1, 1, 1};
  std::vector<Vec3> nodes;
  std::vector<std::vector<int>> elems;
  std::vector<BoundaryFace> boundary_faces;
  std::array<std::string, 6> face_tags;
  std::array<bool, 6> levelset_face = {false, false, false, false, false, false};
  std::shared_ptr<ReferenceElement> ref;
  PerturbationSpec perturbation;
  double diameter = 0.0;
  double min_detJ = 0.0;

  int n_elements() const { return static_cast<int>(elems.size()); }

  std::array<int, 3> element_ijk(int e) const {
    return {e % divisions[0], (e / divisions[0]) % divisions[1],
            e / (divisions[0] * divisions[1])};
  }

  bool tag_is_levelset(const std::string& tag) const {
    for (int f = 0; f < 6; ++f)
      if (face_tags[f] == tag) return levelset_face[f];
    throw MeshError("unknown boundary tag: " + tag);
  }

  bool has_tag(const std::string& tag) const {
    for (int f = 0; f < 6; ++f)
      if (face_tags[f] == tag) return true;
    return false;
  }

  MapJet map_jet(int e, const Vec3& xi, int maxd) const {
    const BasisDerivs bd = ref->eval(xi, std::min(maxd, 3));
    return map_jet_from(e, bd, maxd);
  }

  /// Same as map_jet but with precomputed reference basis derivatives.
  MapJet map_jet_from(int e, const BasisDerivs& bd, int maxd) const {
    MapJet jet;
    jet.order = maxd;
    const std::vector<int>& conn = elems[e];
    const int n = static_cast<int>(conn.size());
    for (int f = 0; f < n; ++f) {
      const Vec3& X = nodes[conn[f]];
      jet.x += bd.value(f) * X;
      jet.J += X * bd.d1.row(f);
    }
    jet.detJ = jet.J.determinant();
    if (jet.detJ <= 0.0)
      throw MeshError("non-positive Jacobian determinant in element " + std::to_string(e));
    jet.Kinv = jet.J.inverse();
    if (maxd >= 2) {
      for (int f = 0; f < n; ++f) {
        const Vec3& X = nodes[conn[f]];
        for (int i = 0; i < 3; ++i) jet.d2x[i] += X[i] * bd.d2[f];
      }
    }
    if (maxd >= 3) {
      for (int f = 0; f < n; ++f) {
        const Vec3& X = nodes[conn[f]];
        for (int i = 0; i < 3; ++i)
          for (int a = 0; a < 3; ++a) jet.d3x[i][a] += X[i] * bd.d3[f][a];
      }
    }
    return jet;
  }

  PhysicalPointData map_point(int e, const Vec3& xi, int maxd) const {
    const BasisDerivs bd = ref->eval(xi, std::min(maxd, 3));
    MapJet jet = map_jet_from(e, bd, maxd);
    PhysicalPointData out;
    out.x = jet.x;
    out.J = jet.J;
    out.detJ = jet.detJ;
    out.basis = transform_basis(bd, jet, maxd);
    out.jet = jet;
    return out;
  }

  const FieldSpace& field_space(int order) const {
    auto it = spaces_.find(order);
    if (it != spaces_.end()) return *it->second;
    auto sp = build_field_space(order);
    auto res = spaces_.emplace(order, std::move(sp));
    return *res.first->second;
  }

 private:
  mutable std::map<int, std::shared_ptr<FieldSpace>> spaces_;

  std::shared_ptr<FieldSpace> build_field_space(int q) const {
    auto sp = std::make_shared<FieldSpace>();
    sp->order = q;
    sp->ref = std::make_shared<ReferenceElement>(q);
    for (int d = 0; d < 3; ++d) sp->node_dims[d] = q * divisions[d] + 1;
    sp->n_nodes = sp->node_dims[0] * sp->node_dims[1] * sp->node_dims[2];
    sp->node_coords.assign(sp->n_nodes, Vec3::Zero());
    sp->elems.resize(n_elements());

    // Geometry basis values at the q-lattice of the reference element.
    const int m = q + 1;
    std::vector<Eigen::VectorXd> geo_at(m * m * m);
    {
      int idx = 0;
      for (int k = 0; k < m; ++k)
        for (int j = 0; j < m; ++j)
          for (int i = 0; i < m; ++i, ++idx) {
            const Vec3 xi(-1.0 + 2.0 * i / q, -1.0 + 2.0 * j / q, -1.0 + 2.0 * k / q);
            geo_at[idx] = ref->eval(xi, 0).value;
          }
    }
    const auto& nd = sp->node_dims;
    for (int e = 0; e < n_elements(); ++e) {
      const auto eijk = element_ijk(e);
      std::vector<int>& conn = sp->elems[e];
      conn.resize(m * m * m);
      int idx = 0;
      for (int k = 0; k < m; ++k)
        for (int j = 0; j < m; ++j)
          for (int i = 0; i < m; ++i, ++idx) {
            const int gi = q * eijk[0] + i;
            const int gj = q * eijk[1] + j;
            const int gk = q * eijk[2] + k;
            const int gid = gi + nd[0] * (gj + nd[1] * gk);
            conn[idx] = gid;
            Vec3 x = Vec3::Zero();
            const Eigen::VectorXd& B = geo_at[idx];
            const std::vector<int>& gc = elems[e];
            for (int f = 0; f < static_cast<int>(gc.size()); ++f)
              x += B(f) * nodes[gc[f]];
            sp->node_coords[gid] = x;  // shared nodes overwritten, element order
          }
    }
    for (int f = 0; f < 6; ++f) {
      const int axis = f / 2;
      const int fixed = (f % 2 == 0) ? 0 : nd[axis] - 1;
      std::vector<int> ids;
      for (int id = 0; id < sp->n_nodes; ++id)
        if (sp->node_ijk(id)[axis] == fixed) ids.push_back(id);
      sp->boundary_nodes[face_tags[f]] = std::move(ids);
    }
    return sp;
  }
};

/// Specification of a mapped box: an analytic map from [0,1]^3 to the bulk
/// domain where the third parameter traverses the level-set interval, so the
/// faces u3 = 0,1 are the iso-surfaces phi = phi_min, phi_max.
struct MappedBoxSpec {
  std::function<Vec3(const Vec3&)> map;
  std::array<std::string, 6> tags = {"u0_min", "u0_max", "u1_min",
                                     "u1_max", "u2_min", "u2_max"};
  std::array<bool, 6> levelset_face = {false, false, false, false, true, true};
};

inline Mesh generate_mapped_box(const MappedBoxSpec& spec, std::array<int, 3> div,
                                int order, const PerturbationSpec& pert = {}) {
  for (int d = 0; d < 3; ++d)
    if (div[d] < 1) throw MeshError("divisions must be >= 1");
  Mesh mesh;
  mesh.geometry_order = order;
  mesh.divisions = div;
  mesh.ref = std::make_shared<ReferenceElement>(order);
  mesh.face_tags = spec.tags;
  mesh.levelset_face = spec.levelset_face;
  mesh.perturbation = pert;

  const int p = order;
  const std::array<int, 3> nd = {p * div[0] + 1, p * div[1] + 1, p * div[2] + 1};
  const int n_nodes = nd[0] * nd[1] * nd[2];

  // Smooth pseudo-random displacement field in parameter space. Boundary
  // nodes stay fixed (bubble factor); interior nodes move by amplitude*h.
  struct Mode {
    Vec3 k;
    double a, phase;
  };
  std::array<std::vector<Mode>, 3> modes;
  double norm[3] = {1.0, 1.0, 1.0};
  if (pert.enabled) {
    std::mt19937_64 rng(pert.seed);
    std::uniform_real_distribution<double> ua(-1.0, 1.0);
    std::uniform_real_distribution<double> uphase(0.0, 2.0 * M_PI);
    std::uniform_int_distribution<int> uk(1, 2);
    for (int c = 0; c < 3; ++c) {
      double s = 0.0;
      for (int mdx = 0; mdx < 4; ++mdx) {
        Mode mo;
        mo.k = Vec3(uk(rng), uk(rng), uk(rng));
        mo.a = ua(rng);
        mo.phase = uphase(rng);
        s += std::abs(mo.a);
        modes[c].push_back(mo);
      }
      norm[c] = s > 0 ? s : 1.0;
    }
  }
  auto perturbed = [&](Vec3 u) {
    if (!pert.enabled) return u;
    const double bubble = 4.0 * u[0] * (1.0 - u[0]) * 4.0 * u[1] * (1.0 - u[1]) *
                          4.0 * u[2] * (1.0 - u[2]);
    if (bubble <= 0.0) return u;
    for (int c = 0; c < 3; ++c) {
      double v = 0.0;
      for (const auto& mo : modes[c]) v += mo.a * std::sin(2.0 * M_PI * mo.k.dot(u) + mo.phase);
      u[c] += pert.amplitude * bubble * (v / norm[c]) / div[c];
    }
    return u;
  };

  mesh.nodes.resize(n_nodes);
  for (int k = 0; k < nd[2]; ++k)
    for (int j = 0; j < nd[1]; ++j)
      for (int i = 0; i < nd[0]; ++i) {
        const Vec3 u(double(i) / (p * div[0]), double(j) / (p * div[1]),
                     double(k) / (p * div[2]));
        mesh.nodes[i + nd[0] * (j + nd[1] * k)] = spec.map(perturbed(u));
      }

  const int m = p + 1;
  mesh.elems.resize(div[0] * div[1] * div[2]);
  for (int ez = 0; ez < div[2]; ++ez)
    for (int ey = 0; ey < div[1]; ++ey)
      for (int ex = 0; ex < div[0]; ++ex) {
        const int e = ex + div[0] * (ey + div[1] * ez);
        std::vector<int>& conn = mesh.elems[e];
        conn.resize(m * m * m);
        int idx = 0;
        for (int k = 0; k < m; ++k)
          for (int j = 0; j < m; ++j)
            for (int i = 0; i < m; ++i, ++idx)
              conn[idx] = (p * ex + i) +
                          nd[0] * ((p * ey + j) + nd[1] * (p * ez + k));
      }

  for (int f = 0; f < 6; ++f) {
    const int axis = f / 2;
    const int fixed = (f % 2 == 0) ? 0 : div[axis] - 1;
    for (int e = 0; e < mesh.n_elements(); ++e)
      if (mesh.element_ijk(e)[axis] == fixed) mesh.boundary_faces.push_back({e, f, f});
  }

  Vec3 lo = mesh.nodes[0], hi = mesh.nodes[0];
  for (const Vec3& x : mesh.nodes) {
    lo = lo.cwiseMin(x);
    hi = hi.cwiseMax(x);
  }
  mesh.diameter = (hi - lo).norm();

  // Jacobian positivity at quadrature points (catches bad presets and
  // over-aggressive perturbation).
  const VolumeRule qr = tensor_rule(p + 1);
  std::vector<BasisDerivs> bt;
  bt.reserve(qr.n());
  for (const Vec3& xi : qr.points) bt.push_back(mesh.ref->eval(xi, 1));
  double mind = std::numeric_limits<double>::max();
  for (int e = 0; e < mesh.n_elements(); ++e)
    for (int qp = 0; qp < qr.n(); ++qp) {
      Mat3 J = Mat3::Zero();
      const std::vector<int>& conn = mesh.elems[e];
      for (int f = 0; f < static_cast<int>(conn.size()); ++f)
        J += mesh.nodes[conn[f]] * bt[qp].d1.row(f);
      mind = std::min(mind, J.determinant());
    }
  if (mind <= 0.0) throw MeshError("mesh generation produced non-positive Jacobians");
  mesh.min_detJ = mind;
  return mesh;
}

// ---------------------------------------------------------------------------
// Benchmark domain presets.

struct CylinderSectorParams {
  double r0 = 20.0, r1 = 25.0;
  double theta0_deg = 50.0, theta1_deg = 130.0;
  double y0 = 0.0, y1 = 50.0;
};

/// Cylindrical sector about the y-axis; x = r cos(theta), z = r sin(theta).
/// The inner/outer cylinder surfaces are the level-set faces.
inline Mesh generate_cylinder_sector(const CylinderSectorParams& cp, std::array<int, 3> div,
                                     int order, const PerturbationSpec& pert = {}) {
  if (cp.r0 >= cp.r1) throw MeshError("cylinder_sector: requires r_inner < r_outer");
  if (cp.theta0_deg >= cp.theta1_deg) throw MeshError("cylinder_sector: empty angular range");
  MappedBoxSpec spec;
  const double t0 = cp.theta0_deg * M_PI / 180.0, t1 = cp.theta1_deg * M_PI / 180.0;
  // parameter order (axial, theta, r) keeps the map right-handed
  spec.map = [=](const Vec3& u) {
    const double y = cp.y0 + (cp.y1 - cp.y0) * u[0];
    const double th = t0 + (t1 - t0) * u[1];
    const double r = cp.r0 + (cp.r1 - cp.r0) * u[2];
    return Vec3(r * std::cos(th), y, r * std::sin(th));
  };
  spec.tags = {"axial_min", "axial_max", "theta_min", "theta_max", "inner", "outer"};
  spec.levelset_face = {false, false, false, false, true, true};
  return generate_mapped_box(spec, div, order, pert);
}

struct ExtrudedGraphParams {
  std::function<double(double, double)> g;  // surface z = g(x,y)
  double x0 = -0.5, x1 = 0.5, y0 = -0.5, y1 = 0.5;
  double c0 = -0.05, c1 = 0.05;  // level-set interval
};

/// Graph surface extruded along z over the level-set interval [c0,c1];
/// top and bottom faces are iso-surfaces of phi = z - g(x,y).
inline Mesh generate_extruded_graph(const ExtrudedGraphParams& gp, std::array<int, 3> div,
                                    int order, const PerturbationSpec& pert = {}) {
  if (gp.c0 >= gp.c1) throw MeshError("extruded_graph: empty level-set interval");
  MappedBoxSpec spec;
  spec.map = [=](const Vec3& u) {
    const double x = gp.x0 + (gp.x1 - gp.x0) * u[0];
    const double y = gp.y0 + (gp.y1 - gp.y0) * u[1];
    const double c = gp.c0 + (gp.c1 - gp.c0) * u[2];
    return Vec3(x, y, gp.g(x, y) + c);
  };
  spec.tags = {"xmin", "xmax", "ymin", "ymax", "bottom", "top"};
  spec.levelset_face = {false, false, false, false, true, true};
  return generate_mapped_box(spec, div, order, pert);
}

struct SphericalSectorParams {
  Vec3 center = Vec3::Zero();
  double r0 = 0.8, r1 = 1.4;
  double polar0_deg = 30.0, polar1_deg = 70.0;
  double azim0_deg = 0.0, azim1_deg = 60.0;
};

/// Spherical shell sector; radial faces are the level-set faces.
inline Mesh generate_spherical_shell_sector(const SphericalSectorParams& sp,
                                            std::array<int, 3> div, int order,
                                            const PerturbationSpec& pert = {}) {
  if (sp.r0 >= sp.r1) throw MeshError("spherical_shell_sector: requires r0 < r1");
  if (sp.polar0_deg <= 0.0 || sp.polar1_deg >= 180.0)
    throw MeshError("spherical_shell_sector: polar range must avoid the poles");
  MappedBoxSpec spec;
  const double d2r = M_PI / 180.0;
  // parameter order (polar, azimuth, r) keeps the map right-handed
  spec.map = [=](const Vec3& u) {
    const double th = (sp.polar0_deg + (sp.polar1_deg - sp.polar0_deg) * u[0]) * d2r;
    const double psi = (sp.azim0_deg + (sp.azim1_deg - sp.azim0_deg) * u[1]) * d2r;
    const double r = sp.r0 + (sp.r1 - sp.r0) * u[2];
    const Vec3 dir(std::sin(th) * std::cos(psi), std::sin(th) * std::sin(psi), std::cos(th));
    return sp.center + r * dir;
  };
  spec.tags = {"polar_min", "polar_max", "azim_min", "azim_max", "rmin", "rmax"};
  spec.levelset_face = {false, false, false, false, true, true};
  return generate_mapped_box(spec, div, order, pert);
}

/// Newton inversion of the isoparametric map within one element. Returns the
/// reference coordinates of x if the iteration converges, regardless of
/// whether they lie inside [-1,1]^3; callers check containment.
inline bool inverse_map(const Mesh& mesh, int element, const Vec3& x, Vec3& xi,
                        int max_iter = 30) {
  const double tol = 1e-13 * std::max(1.0, mesh.diameter);
  for (int it = 0; it < max_iter; ++it) {
    MapJet jet;
    try {
      jet = mesh.map_jet(element, xi, 1);
    } catch (const MeshError&) {
      return false;
    }
    const Vec3 r = x - jet.x;
    if (r.norm() < tol) return true;
    Vec3 step = jet.Kinv * r;
    const double cap = 0.5;
    if (step.lpNorm<Eigen::Infinity>() > cap) step *= cap / step.lpNorm<Eigen::Infinity>();
    xi += step;
    if (xi.lpNorm<Eigen::Infinity>() > 3.0) return false;
  }
  return false;
}

// ---------------------------------------------------------------------------
// Boundary quadrature.

struct BoundaryQuadPoint {
  Vec3 xi;      // reference coords in the element
  Vec3 x;       // physical point
  Vec3 m;       // outward unit normal of the bulk boundary
  double weight;  // area-scaled weight
};

/// Gauss points on a boundary face with outward unit normals m and
/// area-scaled weights.
inline std::vector<BoundaryQuadPoint> boundary_quadrature(const Mesh& mesh,
                                                          const BoundaryFace& face,
                                                          int n_per_dir) {
  const FaceRule fr = face_rule(face.local_face, n_per_dir);
  std::vector<BoundaryQuadPoint> out;
  out.reserve(fr.n());
  for (int qp = 0; qp < fr.n(); ++qp) {
    const MapJet jet = mesh.map_jet(face.element, fr.points[qp], 1);
    const Vec3 t1 = jet.J.col(fr.tangent_axes[0]);
    const Vec3 t2 = jet.J.col(fr.tangent_axes[1]);
    Vec3 nn = t1.cross(t2);
    const double area = nn.norm();
    if (area < 1e-14 * mesh.diameter * mesh.diameter)
      throw MeshError("degenerate boundary face (zero area metric)");
    const Vec3 outward = jet.J.col(fr.axis) * fr.side;
    if (nn.dot(outward) < 0.0) nn = -nn;
    out.push_back({fr.points[qp], jet.x, nn / area, area * fr.weights[qp]});
  }
  return out;
}

}  // namespace btfem

#endif
