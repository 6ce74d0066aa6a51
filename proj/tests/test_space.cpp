#include <cmath>
#include <random>

#include "almhd/mesh.hpp"
#include "almhd/space.hpp"
#include "doctest.h"

using namespace almhd;

TEST_CASE("dof counts follow the closed forms for n = 1,2,4") {
  for (int n : {1, 2, 4}) {
    auto mesh = build_box_mesh(n);
    const int V = mesh.n_vertices(), E = mesh.n_edges();
    CHECK(build_dofmap(mesh, SpaceKind::VelocityP2).n_dofs == 3 * (V + E));
    CHECK(build_dofmap(mesh, SpaceKind::PressureP1).n_dofs == V);
    CHECK(build_dofmap(mesh, SpaceKind::MagneticNed2).n_dofs == 2 * E);
    CHECK(build_dofmap(mesh, SpaceKind::MultiplierP2).n_dofs == V + E);
  }
}

TEST_CASE("dof totals reproduce the driven-cavity table at n=8") {
  auto mesh = build_box_mesh(8);
  const int dofs_br = build_dofmap(mesh, SpaceKind::MagneticNed2).n_dofs +
                      build_dofmap(mesh, SpaceKind::MultiplierP2).n_dofs;
  const int dofs_up = build_dofmap(mesh, SpaceKind::VelocityP2).n_dofs +
                      build_dofmap(mesh, SpaceKind::PressureP1).n_dofs;
  CHECK(dofs_br == 13281);
  CHECK(dofs_up == 15468);
}

TEST_CASE("pressure space has no Dirichlet set; n=1 has 8 pressure dofs") {
  auto mesh = build_box_mesh(1);
  auto qmap = build_dofmap(mesh, SpaceKind::PressureP1);
  CHECK(qmap.n_dofs == 8);
  CHECK(qmap.n_interior() == 8);
}

TEST_CASE("boundary dof sets: complement touches no boundary entity") {
  auto mesh = build_box_mesh(2);
  const int V = mesh.n_vertices(), E = mesh.n_edges();

  auto vmap = build_dofmap(mesh, SpaceKind::VelocityP2);
  for (int d : vmap.interior) {
    const int scalar = d % (V + E);
    if (scalar < V)
      CHECK(!mesh.vertex_on_boundary[scalar]);
    else
      CHECK(!mesh.edge_on_boundary[scalar - V]);
  }

  auto cmap = build_dofmap(mesh, SpaceKind::MagneticNed2);
  for (int d : cmap.interior) CHECK(!mesh.edge_on_boundary[d / 2]);

  // n=2: exactly one interior vertex and the interior edges carry the rest
  auto smap = build_dofmap(mesh, SpaceKind::MultiplierP2);
  int interior_vertex_dofs = 0;
  for (int d : smap.interior)
    if (d < V) interior_vertex_dofs++;
  CHECK(interior_vertex_dofs == 1);
}

TEST_CASE("interpolation: constants, nodal reproduction") {
  auto mesh = build_box_mesh(2);
  auto qmap = build_dofmap(mesh, SpaceKind::PressureP1);
  auto ones = interpolate(mesh, qmap, ScalarField([](const Eigen::Vector3d&) { return 1.0; }));
  for (double c : ones.coeffs) CHECK(c == doctest::Approx(1.0));

  auto vmap = build_dofmap(mesh, SpaceKind::VelocityP2);
  auto u = interpolate(mesh, vmap, VectorField([](const Eigen::Vector3d& x) {
                         return Eigen::Vector3d(x.y(), std::sin(x.x() + x.z()), 1.0);
                       }));
  // vertex (0.5,0.5,0.5) is the single interior vertex; find it
  const int V = mesh.n_vertices(), E = mesh.n_edges();
  int center = -1;
  for (int v = 0; v < V; ++v)
    if ((mesh.vertices[v] - Eigen::Vector3d(0.5, 0.5, 0.5)).norm() < 1e-12) center = v;
  REQUIRE(center >= 0);
  CHECK(u.coeffs[center] == doctest::Approx(0.5));
  CHECK(u.coeffs[(V + E) + center] == doctest::Approx(std::sin(1.0)));
  CHECK(u.coeffs[2 * (V + E) + center] == doctest::Approx(1.0));
}

TEST_CASE("interpolation into the edge space: tangential trace agrees across tets") {
  auto mesh = build_box_mesh(2);
  auto cmap = build_dofmap(mesh, SpaceKind::MagneticNed2);
  VectorField f = [](const Eigen::Vector3d& x) {
    return Eigen::Vector3d(std::sin(x.y()) + std::cos(x.z()), 1.0 - std::sin(x.x()), 1.0);
  };
  auto field = interpolate(mesh, cmap, f);

  // pick an interior edge, compare the edge-tangential value from both tets
  int edge = -1;
  for (int e = 0; e < mesh.n_edges(); ++e)
    if (!mesh.edge_on_boundary[e]) {
      edge = e;
      break;
    }
  REQUIRE(edge >= 0);
  std::vector<int> owners;
  std::vector<int> local;
  for (int t = 0; t < mesh.n_tets() && owners.size() < 2; ++t)
    for (int le = 0; le < 6; ++le)
      if (mesh.tet_edges[t][le] == edge) {
        owners.push_back(t);
        local.push_back(le);
      }
  REQUIRE(owners.size() == 2);

  const Eigen::Vector3d a = mesh.vertices[mesh.edges[edge][0]];
  const Eigen::Vector3d b = mesh.vertices[mesh.edges[edge][1]];
  const Eigen::Vector3d tangent = (b - a).normalized();
  for (double t : {0.25, 0.5, 0.75}) {
    const Eigen::Vector3d x = a + t * (b - a);
    std::vector<double> trace;
    for (int k = 0; k < 2; ++k) {
      const auto& tet = mesh.tets[owners[k]];
      auto geom = make_tet_geometry(mesh.vertices[tet[0]], mesh.vertices[tet[1]],
                                    mesh.vertices[tet[2]], mesh.vertices[tet[3]]);
      const Eigen::Vector3d ref = geom.jacobian.inverse() * (x - geom.v0);
      auto vals = eval_vector(mesh, cmap, field.coeffs, owners[k], {ref});
      trace.push_back(vals[0].dot(tangent));
    }
    CHECK(trace[0] == doctest::Approx(trace[1]).epsilon(1e-12));
  }
}

TEST_CASE("errors vanish for fields inside the space") {
  auto mesh = build_box_mesh(2);

  // random coefficient vector interpreted as the exact field: P1 pressure
  auto qmap = build_dofmap(mesh, SpaceKind::PressureP1);
  ScalarField p = [](const Eigen::Vector3d& x) { return 2.0 * x.x() - x.y() + 0.5 * x.z(); };
  VectorField gp = [](const Eigen::Vector3d&) { return Eigen::Vector3d(2.0, -1.0, 0.5); };
  auto ph = interpolate(mesh, qmap, p);
  auto err = error_norms(mesh, qmap, ph, p, gp);
  CHECK(err.l2 == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(err.semi == doctest::Approx(0.0).epsilon(1e-12));

  // quadratic velocity is in P2^3
  auto vmap = build_dofmap(mesh, SpaceKind::VelocityP2);
  VectorField u = [](const Eigen::Vector3d& x) {
    return Eigen::Vector3d(x.x() * x.x(), x.y() * x.z(), x.x() + x.z() * x.z());
  };
  MatrixField gu = [](const Eigen::Vector3d& x) {
    Eigen::Matrix3d g;
    g << 2 * x.x(), 0, 0, 0, x.z(), x.y(), 1, 0, 2 * x.z();
    return g;
  };
  auto uh = interpolate(mesh, vmap, u);
  auto uerr = error_norms(mesh, vmap, uh, u, gu);
  CHECK(uerr.l2 == doctest::Approx(0.0).epsilon(1e-11));
  CHECK(uerr.semi == doctest::Approx(0.0).epsilon(1e-11));

  // linear B is in the edge space
  auto cmap = build_dofmap(mesh, SpaceKind::MagneticNed2);
  VectorField B = [](const Eigen::Vector3d& x) {
    return Eigen::Vector3d(x.y() + 1.0, x.z() - x.x(), 2.0 * x.x());
  };
  VectorField curlB = [](const Eigen::Vector3d&) { return Eigen::Vector3d(-1.0, -2.0, -2.0); };
  auto Bh = interpolate(mesh, cmap, B);
  auto berr = error_norms_hcurl(mesh, cmap, Bh, B, curlB);
  CHECK(berr.l2 == doctest::Approx(0.0).epsilon(1e-11));
  CHECK(berr.semi == doctest::Approx(0.0).epsilon(1e-11));
}

TEST_CASE("interpolation of B=(cos y,0,0): H(curl) error halves from n=4 to n=8") {
  VectorField B = [](const Eigen::Vector3d& x) { return Eigen::Vector3d(std::cos(x.y()), 0, 0); };
  VectorField curlB = [](const Eigen::Vector3d& x) {
    return Eigen::Vector3d(0, 0, std::sin(x.y()));
  };
  double err[2];
  int idx = 0;
  for (int n : {4, 8}) {
    auto mesh = build_box_mesh(n);
    auto cmap = build_dofmap(mesh, SpaceKind::MagneticNed2);
    auto Bh = interpolate(mesh, cmap, B);
    err[idx++] = error_norms_hcurl(mesh, cmap, Bh, B, curlB).full();
  }
  const double ratio = err[0] / err[1];
  CHECK(ratio >= 1.8);
  CHECK(ratio <= 2.2);
}
