#pragma once

#include "almhd/space.hpp"

namespace almhd {

/// Data of one boundary-value problem: forcings, Dirichlet data, and the
/// analytic solution when one exists.
struct Problem {
  std::string name;
  VectorField f;            // fluid body force
  VectorField f_b;          // magnetic forcing (manufactured solutions only)
  VectorField velocity_bc;  // g on the boundary
  VectorField magnetic_bc;  // B_s on the boundary

  bool has_exact = false;
  VectorField u_exact;
  MatrixField u_exact_grad;  // row c = grad of component c
  ScalarField p_exact;
  VectorField b_exact;
  VectorField b_exact_curl;
};

}  // namespace almhd
