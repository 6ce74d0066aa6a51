#include "almhd/quadrature.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <stdexcept>

namespace almhd {

namespace {

// Gauss-Jacobi nodes/weights on [0,1] for the weight function (1-x)^alpha,
// via Golub-Welsch on the symmetric Jacobi recurrence matrix.
void gauss_jacobi_01(int n, int alpha, std::vector<double>& nodes,
                     std::vector<double>& weights) {
  const double a = static_cast<double>(alpha);
  Eigen::MatrixXd J = Eigen::MatrixXd::Zero(n, n);
  for (int k = 0; k < n; ++k) {
    double diag;
    if (k == 0)
      diag = -a / (a + 2.0);
    else
      diag = -a * a / ((2.0 * k + a) * (2.0 * k + a + 2.0));
    J(k, k) = diag;
    if (k >= 1) {
      const double kk = static_cast<double>(k);
      const double num = 4.0 * kk * kk * (kk + a) * (kk + a);
      const double den =
          (2.0 * kk + a) * (2.0 * kk + a) * (2.0 * kk + a + 1.0) * (2.0 * kk + a - 1.0);
      const double off = std::sqrt(num / den);
      J(k, k - 1) = off;
      J(k - 1, k) = off;
    }
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(J);
  const double mu0 = std::pow(2.0, a + 1.0) / (a + 1.0);  // total weight on [-1,1]
  nodes.resize(n);
  weights.resize(n);
  for (int k = 0; k < n; ++k) {
    nodes[k] = 0.5 * (es.eigenvalues()[k] + 1.0);  // map [-1,1] -> [0,1]
    const double v0 = es.eigenvectors()(0, k);
    weights[k] = mu0 * v0 * v0 / std::pow(2.0, a + 1.0);
  }
}

}  // namespace

QuadratureRule quad_rule(int order) {
  if (order < 1 || order > 6) throw std::invalid_argument("quad_rule: order must be in 1..6");
  const int m = order / 2 + 1;  // m-point product rule is exact to degree 2m-1

  std::vector<double> xu, wu, xv, wv, xw, ww;
  gauss_jacobi_01(m, 2, xu, wu);
  gauss_jacobi_01(m, 1, xv, wv);
  gauss_jacobi_01(m, 0, xw, ww);

  QuadratureRule rule;
  rule.order = 2 * m - 1;
  rule.points.reserve(m * m * m);
  rule.weights.reserve(m * m * m);
  // Duffy map: x=u, y=v(1-u), z=w(1-u)(1-v); Jacobian (1-u)^2 (1-v) is the
  // Gauss-Jacobi weight, so the product weights are used as-is.
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j)
      for (int k = 0; k < m; ++k) {
        const double u = xu[i], v = xv[j], w = xw[k];
        rule.points.emplace_back(u, v * (1.0 - u), w * (1.0 - u) * (1.0 - v));
        rule.weights.push_back(wu[i] * wv[j] * ww[k]);
      }
  return rule;
}

void gauss_legendre_01(int n_points, std::vector<double>& nodes, std::vector<double>& weights) {
  if (n_points < 1) throw std::invalid_argument("gauss_legendre_01: need at least one point");
  gauss_jacobi_01(n_points, 0, nodes, weights);
}

}  // namespace almhd
