#include <Eigen/Dense>
#include <cmath>
#include <random>

#include "almhd/element.hpp"
#include "almhd/quadrature.hpp"
#include "doctest.h"

using namespace almhd;

namespace {

// Exact integral of x^a y^b z^c over the reference tetrahedron.
double monomial_integral(int a, int b, int c) {
  auto fact = [](int k) {
    double r = 1.0;
    for (int i = 2; i <= k; ++i) r *= i;
    return r;
  };
  return fact(a) * fact(b) * fact(c) / fact(a + b + c + 3);
}

std::vector<Eigen::Vector3d> interior_points() {
  return {{0.25, 0.25, 0.25}, {0.1, 0.2, 0.3}, {0.5, 0.1, 0.05}, {0.05, 0.7, 0.2}};
}

}  // namespace

TEST_CASE("quadrature: order 1 is the centroid rule") {
  auto rule = quad_rule(1);
  REQUIRE(rule.size() == 1);
  CHECK(rule.weights[0] == doctest::Approx(1.0 / 6.0));
  CHECK((rule.points[0] - Eigen::Vector3d(0.25, 0.25, 0.25)).norm() ==
        doctest::Approx(0.0).epsilon(1e-14));
}

TEST_CASE("quadrature: weights positive, sum to reference volume") {
  for (int order = 1; order <= 6; ++order) {
    auto rule = quad_rule(order);
    double total = 0.0;
    for (double w : rule.weights) {
      CHECK(w > 0.0);
      total += w;
    }
    CHECK(total == doctest::Approx(1.0 / 6.0).epsilon(1e-14));
  }
  CHECK_THROWS(quad_rule(0));
  CHECK_THROWS(quad_rule(7));
}

TEST_CASE("quadrature: exhaustive monomial exactness up to declared order") {
  for (int order = 1; order <= 6; ++order) {
    auto rule = quad_rule(order);
    for (int a = 0; a <= order; ++a)
      for (int b = 0; a + b <= order; ++b)
        for (int c = 0; a + b + c <= order; ++c) {
          double q = 0.0;
          for (int k = 0; k < rule.size(); ++k) {
            const auto& p = rule.points[k];
            q += rule.weights[k] * std::pow(p.x(), a) * std::pow(p.y(), b) *
                 std::pow(p.z(), c);
          }
          CHECK(q == doctest::Approx(monomial_integral(a, b, c)).epsilon(1e-12));
        }
  }
  // the frozen case: integral of x^2 y = 1/360
  CHECK(monomial_integral(2, 1, 0) == doctest::Approx(1.0 / 360.0));
}

TEST_CASE("LagrangeP2: partition of unity and nodal duality") {
  auto pts = interior_points();
  auto basis = eval_basis(BasisKind::LagrangeP2, pts);
  for (int q = 0; q < basis.n_points; ++q) {
    double sum = 0.0;
    Eigen::Vector3d grad_sum = Eigen::Vector3d::Zero();
    for (int i = 0; i < 10; ++i) {
      sum += basis.values[q * 10 + i];
      grad_sum += basis.gradients[q * 10 + i];
    }
    CHECK(sum == doctest::Approx(1.0).epsilon(1e-13));
    CHECK(grad_sum.norm() == doctest::Approx(0.0).epsilon(1e-13));
  }

  // nodes: 4 vertices then 6 edge midpoints, basis i is 1 at node i, 0 elsewhere
  std::vector<Eigen::Vector3d> nodes;
  for (int i = 0; i < 4; ++i) nodes.push_back(ref_vertex(i));
  for (const auto& e : kTetEdges) nodes.push_back(0.5 * (ref_vertex(e[0]) + ref_vertex(e[1])));
  auto at_nodes = eval_basis(BasisKind::LagrangeP2, nodes);
  for (int q = 0; q < 10; ++q)
    for (int i = 0; i < 10; ++i)
      CHECK(at_nodes.values[q * 10 + i] == doctest::Approx(q == i ? 1.0 : 0.0).epsilon(1e-13));
}

TEST_CASE("Nedelec2_1: edge-moment duality against a 3-point quadrature oracle") {
  // independent oracle: 3-point Gauss per edge applied to the basis values
  std::vector<double> gt, gw;
  gauss_legendre_01(3, gt, gw);

  Eigen::Matrix<double, 12, 12> M = Eigen::Matrix<double, 12, 12>::Zero();
  for (int e = 0; e < 6; ++e) {
    const Eigen::Vector3d a = ref_vertex(kTetEdges[e][0]);
    const Eigen::Vector3d b = ref_vertex(kTetEdges[e][1]);
    const Eigen::Vector3d tangent = b - a;
    std::vector<Eigen::Vector3d> pts;
    for (double t : gt) pts.push_back(a + t * tangent);
    auto basis = eval_basis(BasisKind::Nedelec2_1, pts);
    for (int m = 0; m < 2; ++m)
      for (int i = 0; i < 12; ++i) {
        double integral = 0.0;
        for (std::size_t q = 0; q < gt.size(); ++q) {
          const double weight_fn = (m == 0) ? 1.0 - gt[q] : gt[q];
          integral += gw[q] * weight_fn * basis.vector_values[q * 12 + i].dot(tangent);
        }
        M(2 * e + m, i) = integral;
      }
  }
  CHECK((M - Eigen::Matrix<double, 12, 12>::Identity()).cwiseAbs().maxCoeff() <= 1e-10);
}

TEST_CASE("Nedelec2_1: gradients of linears are reproduced curl-free") {
  // interpolate grad(x + 2y - z) = (1, 2, -1) by its edge moments
  const Eigen::Vector3d g(1.0, 2.0, -1.0);
  Eigen::Matrix<double, 12, 1> dofs;
  for (int e = 0; e < 6; ++e) {
    const Eigen::Vector3d tangent = ref_vertex(kTetEdges[e][1]) - ref_vertex(kTetEdges[e][0]);
    dofs[2 * e] = 0.5 * g.dot(tangent);  // integral of (1-t) and of t is 1/2
    dofs[2 * e + 1] = 0.5 * g.dot(tangent);
  }
  auto pts = interior_points();
  auto basis = eval_basis(BasisKind::Nedelec2_1, pts);
  for (int q = 0; q < basis.n_points; ++q) {
    Eigen::Vector3d val = Eigen::Vector3d::Zero();
    for (int i = 0; i < 12; ++i) val += dofs[i] * basis.vector_values[q * 12 + i];
    CHECK((val - g).norm() == doctest::Approx(0.0).epsilon(1e-12));
  }
  Eigen::Vector3d curl = Eigen::Vector3d::Zero();
  for (int i = 0; i < 12; ++i) curl += dofs[i] * basis.curls[i];
  CHECK(curl.norm() == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("Nedelec2_1: any divergence-free linear field is reproduced exactly") {
  std::mt19937 rng(71);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  Eigen::Matrix3d A;
  A << u(rng), u(rng), u(rng), u(rng), u(rng), u(rng), u(rng), u(rng), u(rng);
  A(2, 2) = -A(0, 0) - A(1, 1);  // trace-free => divergence-free
  const Eigen::Vector3d c(u(rng), u(rng), u(rng));
  auto field = [&](const Eigen::Vector3d& x) -> Eigen::Vector3d { return A * x + c; };

  std::vector<double> gt, gw;
  gauss_legendre_01(3, gt, gw);
  Eigen::Matrix<double, 12, 1> dofs = Eigen::Matrix<double, 12, 1>::Zero();
  for (int e = 0; e < 6; ++e) {
    const Eigen::Vector3d a = ref_vertex(kTetEdges[e][0]);
    const Eigen::Vector3d tangent = ref_vertex(kTetEdges[e][1]) - a;
    for (std::size_t q = 0; q < gt.size(); ++q) {
      const double ft = field(a + gt[q] * tangent).dot(tangent);
      dofs[2 * e] += gw[q] * (1.0 - gt[q]) * ft;
      dofs[2 * e + 1] += gw[q] * gt[q] * ft;
    }
  }
  auto pts = interior_points();
  auto basis = eval_basis(BasisKind::Nedelec2_1, pts);
  for (int q = 0; q < basis.n_points; ++q) {
    Eigen::Vector3d val = Eigen::Vector3d::Zero();
    for (int i = 0; i < 12; ++i) val += dofs[i] * basis.vector_values[q * 12 + i];
    CHECK((val - field(pts[q])).norm() == doctest::Approx(0.0).epsilon(1e-12));
  }
}

TEST_CASE("map_to_physical: identity map leaves tables unchanged") {
  auto pts = interior_points();
  auto ref = eval_basis(BasisKind::Nedelec2_1, pts);
  auto geom = make_tet_geometry(ref_vertex(0), ref_vertex(1), ref_vertex(2), ref_vertex(3));
  auto phys = map_to_physical(geom, ref);
  CHECK(phys.weight_scale == doctest::Approx(1.0));
  for (std::size_t i = 0; i < ref.vector_values.size(); ++i)
    CHECK((phys.vector_values[i] - ref.vector_values[i]).norm() == doctest::Approx(0.0));
  for (std::size_t i = 0; i < ref.curls.size(); ++i)
    CHECK((phys.curls[i] - ref.curls[i]).norm() == doctest::Approx(0.0));
}

TEST_CASE("map_to_physical: uniform scaling transforms covariantly") {
  const double s = 2.5;
  auto pts = interior_points();
  auto ref = eval_basis(BasisKind::Nedelec2_1, pts);
  auto geom = make_tet_geometry(Eigen::Vector3d::Zero(), s * ref_vertex(1), s * ref_vertex(2),
                                s * ref_vertex(3));
  auto phys = map_to_physical(geom, ref);
  CHECK(phys.weight_scale == doctest::Approx(s * s * s));
  for (std::size_t i = 0; i < ref.vector_values.size(); ++i)
    CHECK((phys.vector_values[i] - ref.vector_values[i] / s).norm() ==
          doctest::Approx(0.0).epsilon(1e-13));
  // curl scales by J/det = 1/s^2
  for (std::size_t i = 0; i < ref.curls.size(); ++i)
    CHECK((phys.curls[i] - ref.curls[i] / (s * s)).norm() == doctest::Approx(0.0).epsilon(1e-13));
}

TEST_CASE("map_to_physical: curl energy matches a finite-difference oracle on a random tet") {
  std::mt19937 rng(97);
  std::uniform_real_distribution<double> u(-0.4, 0.4);
  const Eigen::Vector3d p0(u(rng), u(rng), u(rng));
  const Eigen::Vector3d p1 = Eigen::Vector3d(1.3, 0, 0) + Eigen::Vector3d(0, u(rng), u(rng));
  const Eigen::Vector3d p2 = Eigen::Vector3d(0.1, 1.1, 0) + Eigen::Vector3d(u(rng), 0, u(rng));
  const Eigen::Vector3d p3 = Eigen::Vector3d(0, 0.2, 1.2) + Eigen::Vector3d(u(rng), u(rng), 0);
  auto geom = make_tet_geometry(p0, p1, p2, p3);
  REQUIRE(geom.det > 0.0);

  auto rule = quad_rule(4);
  auto ref = eval_basis(BasisKind::Nedelec2_1, rule.points);
  auto phys = map_to_physical(geom, ref);

  // physical-space evaluation of basis function w at x, via pullback
  const Eigen::Matrix3d jac_inv = geom.jacobian.inverse();
  auto w_phys = [&](int i, const Eigen::Vector3d& x) -> Eigen::Vector3d {
    std::vector<Eigen::Vector3d> one = {jac_inv * (x - geom.v0)};
    auto b = eval_basis(BasisKind::Nedelec2_1, one);
    return geom.jacobian_inv_t * b.vector_values[i];
  };
  auto curl_fd = [&](int i, const Eigen::Vector3d& x) -> Eigen::Vector3d {
    const double h = 1e-6;
    Eigen::Matrix3d d;  // column j = d w / d x_j
    for (int j = 0; j < 3; ++j) {
      Eigen::Vector3d dx = Eigen::Vector3d::Zero();
      dx[j] = h;
      d.col(j) = (w_phys(i, x + dx) - w_phys(i, x - dx)) / (2 * h);
    }
    return {d(2, 1) - d(1, 2), d(0, 2) - d(2, 0), d(1, 0) - d(0, 1)};
  };

  for (int i : {0, 5, 11}) {
    double energy = 0.0, energy_fd = 0.0;
    for (int q = 0; q < rule.size(); ++q) {
      const double w = rule.weights[q] * phys.weight_scale;
      energy += w * phys.curls[i].squaredNorm();
      energy_fd += w * curl_fd(i, geom.map(rule.points[q])).squaredNorm();
    }
    CHECK(energy == doctest::Approx(energy_fd).epsilon(1e-6));
    // the mapped curl itself is exact to quadrature-free 1e-12 via FD at one point
    CHECK((phys.curls[i] - curl_fd(i, geom.map(rule.points[0]))).norm() <= 1e-5);
  }
}

TEST_CASE("map_to_physical rejects degenerate geometry") {
  CHECK_THROWS(make_tet_geometry(ref_vertex(0), ref_vertex(1), ref_vertex(2),
                                 Eigen::Vector3d(0.5, 0.5, 0.0)));
  // negative orientation
  CHECK_THROWS(make_tet_geometry(ref_vertex(0), ref_vertex(2), ref_vertex(1), ref_vertex(3)));
}
