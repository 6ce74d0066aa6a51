#pragma once

#include <functional>
#include <utility>
#include <vector>

#include "almhd/assembly.hpp"
#include "almhd/precond.hpp"
#include "almhd/problems_fwd.hpp"

namespace almhd {

struct StepRecord {
  int step = 0;
  double rel_residual = 0.0;
  int gmres_iterations = 0;
  bool gmres_converged = true;
  double assemble_seconds = 0.0;
  double solve_seconds = 0.0;
};

using StepCallback = std::function<void(const StepRecord&)>;

struct NonlinearReport {
  int picard_iterations = 0;          // number of linear solves performed
  std::vector<int> gmres_iterations;  // one entry per solve
  std::vector<double> residuals;      // relative nonlinear residual before each solve
  double final_residual = 0.0;        // relative, at the returned state
  bool converged = false;
  double assemble_seconds = 0.0;
  double solve_seconds = 0.0;

  double avg_gmres() const;
};

struct PicardOptions {
  double tol_nonlinear = 1e-4;
  double tol_outer = 1e-6;  // linear-solve relative residual
  double tol_inner = 1e-3;  // sub-solve tolerance inside the preconditioner
  int max_picard = 30;
  int max_gmres = 200;
  PrecondConfig precond;
  StepCallback on_step;
};

/// One linearized solve: FGMRES on the 4x4 block operator with the given
/// right preconditioner; the pressure part of the correction is projected to
/// zero (mass-weighted) mean afterwards.
std::pair<std::vector<double>, KrylovReport> solve_linearized(const BlockSystem& sys,
                                                              const std::vector<double>& rhs,
                                                              const Preconditioner& precond,
                                                              double tol, int max_iterations);

/// x_{k+1} = x_k + theta * delta on the interior DOFs; boundary entries are
/// untouched so the Dirichlet data survives bit-exactly.
void update_state(MhdState& state, const std::vector<double>& delta_interior,
                  const DofMaps& maps, double theta);

/// The nonlinear loop: residual assembly, linearized solve, relaxed update,
/// until the relative residual drops below tol_nonlinear. Throws on
/// sustained residual growth (three consecutive increases).
std::pair<MhdState, NonlinearReport> picard_solve(const TetMesh& mesh, const DofMaps& maps,
                                                  const PhysParams& params,
                                                  const Problem& problem,
                                                  const PicardOptions& options);

}  // namespace almhd
