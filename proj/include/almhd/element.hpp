#pragma once

#include <Eigen/Dense>
#include <array>
#include <vector>

namespace almhd {

enum class BasisKind { LagrangeP1, LagrangeP2, Nedelec2_1 };

/// Local edges of the reference tetrahedron, endpoints in increasing local
/// vertex order. Edge-element and P2 midpoint DOFs follow this ordering.
inline constexpr std::array<std::array<int, 2>, 6> kTetEdges = {
    {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}}};

/// Reference vertices: (0,0,0), (1,0,0), (0,1,0), (0,0,1).
Eigen::Vector3d ref_vertex(int i);

/// Basis tables on the reference tetrahedron at a fixed set of points.
///
/// Lagrange kinds fill `values` and `gradients` (point-major, ndofs per
/// point). Nedelec2_1 is the first-order edge element of the second family:
/// the full P1^3 polynomial space with two tangential moments per edge,
/// weighted by the affine functions that are 1 at either endpoint. It fills
/// `vector_values` (point-major) and the per-DOF constant `curls`.
struct RefBasis {
  BasisKind kind;
  int ndofs = 0;
  int n_points = 0;
  std::vector<double> values;
  std::vector<Eigen::Vector3d> gradients;
  std::vector<Eigen::Vector3d> vector_values;
  std::vector<Eigen::Vector3d> curls;
};

RefBasis eval_basis(BasisKind kind, const std::vector<Eigen::Vector3d>& points);

/// Affine geometry of one physical tetrahedron.
struct TetGeometry {
  Eigen::Vector3d v0;
  Eigen::Matrix3d jacobian;        // columns v1-v0, v2-v0, v3-v0
  Eigen::Matrix3d jacobian_inv_t;  // inverse transpose
  double det = 0.0;

  Eigen::Vector3d map(const Eigen::Vector3d& ref) const { return v0 + jacobian * ref; }
};

TetGeometry make_tet_geometry(const Eigen::Vector3d& p0, const Eigen::Vector3d& p1,
                              const Eigen::Vector3d& p2, const Eigen::Vector3d& p3);

/// Reference tables pushed to a physical tetrahedron: Lagrange gradients by
/// the inverse-transpose Jacobian, edge-element values covariantly, their
/// curls by J/det. Scalar values are unchanged. `weight_scale` multiplies
/// reference quadrature weights.
struct PhysBasis {
  BasisKind kind;
  int ndofs = 0;
  int n_points = 0;
  double weight_scale = 0.0;  // |det J|
  std::vector<double> values;
  std::vector<Eigen::Vector3d> gradients;
  std::vector<Eigen::Vector3d> vector_values;
  std::vector<Eigen::Vector3d> curls;
};

PhysBasis map_to_physical(const TetGeometry& geom, const RefBasis& ref);

}  // namespace almhd
