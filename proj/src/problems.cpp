#include "almhd/problems.hpp"

#include <algorithm>
#include <cmath>

namespace almhd {

Problem manufactured_problem(const PhysParams& params) {
  const double Re = params.Re, Rm = params.Rm, S = params.S;

  Problem prob;
  prob.name = "manufactured";
  prob.has_exact = true;

  prob.u_exact = [](const Eigen::Vector3d& x) {
    return Eigen::Vector3d(std::sin(x.z()), 2.0 * std::cos(x.x()), 0.0);
  };
  prob.u_exact_grad = [](const Eigen::Vector3d& x) {
    Eigen::Matrix3d g = Eigen::Matrix3d::Zero();
    g(0, 2) = std::cos(x.z());
    g(1, 0) = -2.0 * std::sin(x.x());
    return g;
  };
  prob.p_exact = [](const Eigen::Vector3d& x) {
    return std::sin(x.y()) + std::cos(1.0) - 1.0;
  };
  prob.b_exact = [](const Eigen::Vector3d& x) {
    return Eigen::Vector3d(std::cos(x.y()), 0.0, 0.0);
  };
  prob.b_exact_curl = [](const Eigen::Vector3d& x) {
    return Eigen::Vector3d(0.0, 0.0, std::sin(x.y()));
  };

  prob.velocity_bc = prob.u_exact;
  prob.magnetic_bc = prob.b_exact;

  // momentum: f = u.grad u + grad p - 1/Re lap u - S curl B x B  (div u = 0)
  prob.f = [Re, S](const Eigen::Vector3d& x) {
    return Eigen::Vector3d(
        std::sin(x.z()) / Re,
        -2.0 * std::sin(x.x()) * std::sin(x.z()) + std::cos(x.y()) +
            2.0 * std::cos(x.x()) / Re - S * std::sin(x.y()) * std::cos(x.y()),
        0.0);
  };
  // induction: f_b = S curl(B x u + 1/Rm curl B)
  prob.f_b = [Rm, S](const Eigen::Vector3d& x) {
    return Eigen::Vector3d(
        S * (-2.0 * std::cos(x.x()) * std::sin(x.y()) + std::cos(x.y()) / Rm),
        S * 2.0 * std::sin(x.x()) * std::cos(x.y()), 0.0);
  };

  return prob;
}

Problem cavity_problem(double ramp_width) {
  Problem prob;
  prob.name = "cavity";
  const double w = ramp_width;
  prob.velocity_bc = [w](const Eigen::Vector3d& x) {
    const double g1 = std::clamp((x.z() - (1.0 - w)) / w, 0.0, 1.0);
    return Eigen::Vector3d(g1, 0.0, 0.0);
  };
  prob.magnetic_bc = [](const Eigen::Vector3d&) { return Eigen::Vector3d(1.0, 0.0, 0.0); };
  return prob;
}

CouplingData coupling_block_data() {
  CouplingData data;
  data.f = [](const Eigen::Vector3d& x) { return Eigen::Vector3d(1.0, std::sin(x.x()), 0.0); };
  data.u0 = [](const Eigen::Vector3d& x) {
    return Eigen::Vector3d(x.y(), std::sin(x.x() + x.z()), 1.0);
  };
  data.B0 = [](const Eigen::Vector3d& x) {
    return Eigen::Vector3d(std::sin(x.y()) + std::cos(x.z()), 1.0 - std::sin(x.x()), 1.0);
  };
  return data;
}

}  // namespace almhd
