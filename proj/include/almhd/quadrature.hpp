#pragma once

#include <Eigen/Dense>
#include <vector>

namespace almhd {

/// Quadrature rule on the reference tetrahedron
/// {x,y,z >= 0, x+y+z <= 1}. Weights carry the reference volume, i.e. they
/// sum to 1/6, and are all positive.
struct QuadratureRule {
  int order = 0;  // all monomials of total degree <= order are exact
  std::vector<Eigen::Vector3d> points;
  std::vector<double> weights;

  int size() const { return static_cast<int>(points.size()); }
};

/// Conical-product Gauss-Jacobi rule of the requested order (1..6).
QuadratureRule quad_rule(int order);

/// Gauss-Legendre nodes/weights on [0,1] (used for edge moments).
void gauss_legendre_01(int n_points, std::vector<double>& nodes,
                       std::vector<double>& weights);

}  // namespace almhd
