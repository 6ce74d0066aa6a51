#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <functional>
#include <vector>

#include "almhd/element.hpp"
#include "almhd/mesh.hpp"

namespace almhd {

enum class SpaceKind {
  VelocityP2,    // continuous piecewise-quadratic vectors
  PressureP1,    // continuous piecewise-linear scalars
  MagneticNed2,  // first-order edge elements of the second family
  MultiplierP2   // continuous piecewise-quadratic scalars
};

/// Global degree-of-freedom numbering for one space on one mesh.
///
/// Scalar P2 DOFs are numbered vertices first, then edge midpoints; vector
/// spaces are component-major. Edge-element DOFs come in pairs (2e, 2e+1)
/// holding the two tangential moments of global edge e, oriented low->high
/// vertex index. `cell_dof_signs` carries the per-cell sign (and the
/// moment-pair swap is baked into `cell_dofs`) for edges whose local
/// direction opposes the global one; it is all +1 for Lagrange spaces.
struct DofMap {
  SpaceKind kind;
  int n_dofs = 0;
  int dofs_per_cell = 0;
  std::vector<int> cell_dofs;               // n_tets x dofs_per_cell
  std::vector<std::int8_t> cell_dof_signs;  // same shape
  std::vector<std::uint8_t> is_boundary;    // per DOF; empty Dirichlet set for pressure
  std::vector<int> interior;                // full indices of non-Dirichlet DOFs
  std::vector<int> interior_index;          // full -> interior, -1 on boundary

  int n_interior() const { return static_cast<int>(interior.size()); }
  int cell_dof(int tet, int i) const { return cell_dofs[tet * dofs_per_cell + i]; }
  double cell_sign(int tet, int i) const { return cell_dof_signs[tet * dofs_per_cell + i]; }
};

DofMap build_dofmap(const TetMesh& mesh, SpaceKind kind);

/// Coefficient vector in one space.
struct FieldVector {
  SpaceKind kind;
  std::vector<double> coeffs;
};

using ScalarField = std::function<double(const Eigen::Vector3d&)>;
using VectorField = std::function<Eigen::Vector3d(const Eigen::Vector3d&)>;
using MatrixField = std::function<Eigen::Matrix3d(const Eigen::Vector3d&)>;

/// Nodal interpolation for Lagrange spaces; edge tangential moments
/// (5-point Gauss per edge) for the edge-element space.
FieldVector interpolate(const TetMesh& mesh, const DofMap& map, const ScalarField& f);
FieldVector interpolate(const TetMesh& mesh, const DofMap& map, const VectorField& f);

/// Squared-norm accumulators for FE-vs-analytic errors (order-6 quadrature).
struct ErrorNorms {
  double l2 = 0.0;    // ||e||_L2
  double semi = 0.0;  // |e|_H1 or ||curl e||_L2 depending on the space
  double full() const;
};

ErrorNorms error_norms(const TetMesh& mesh, const DofMap& map, const FieldVector& fe,
                       const ScalarField& exact, const VectorField& exact_grad);
ErrorNorms error_norms(const TetMesh& mesh, const DofMap& map, const FieldVector& fe,
                       const VectorField& exact, const MatrixField& exact_grad);
// Magnetic field: semi part is the curl misfit.
ErrorNorms error_norms_hcurl(const TetMesh& mesh, const DofMap& map, const FieldVector& fe,
                             const VectorField& exact, const VectorField& exact_curl);

/// Pointwise evaluation of an FE field on one tet at reference coordinates.
std::vector<double> eval_scalar(const TetMesh& mesh, const DofMap& map,
                                const std::vector<double>& coeffs, int tet,
                                const std::vector<Eigen::Vector3d>& ref_points);
std::vector<Eigen::Vector3d> eval_vector(const TetMesh& mesh, const DofMap& map,
                                         const std::vector<double>& coeffs, int tet,
                                         const std::vector<Eigen::Vector3d>& ref_points);

}  // namespace almhd
