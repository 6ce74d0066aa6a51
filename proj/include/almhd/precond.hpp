#pragma once

#include <memory>
#include <vector>

#include "almhd/assembly.hpp"
#include "almhd/direct.hpp"
#include "almhd/krylov.hpp"

namespace almhd {

/// Which approximation serves as the velocity Schur block: the full
/// convection-diffusion-grad-div matrix plus the magnetic coupling term
/// S Rm (B_k x u, B_k x v), or just the former.
enum class SchurVariant { WithBuBv, WithoutBuBv };

enum class SubSolverKind { Direct, DiagCg, IlutGmres };

struct SubSolverConfig {
  SubSolverKind kind = SubSolverKind::Direct;
  double tol = 1e-3;
  int max_iterations = 500;
  double ilut_drop_tol = 1e-4;
  int ilut_fill = 14;
};

/// One inner solve: direct factorization or an iterative method run to the
/// configured tolerance. Owns its matrix, so it stays valid independently of
/// the block system it was built from; reusable across many right-hand sides.
class SubSolver {
public:
  SubSolver() = default;

  void setup(SparseMatrix A, bool spd, const SubSolverConfig& config);

  /// Returns false when an iterative path missed its tolerance (the
  /// approximate solution is still written to x).
  bool solve(const std::vector<double>& b, std::vector<double>& x) const;

  bool ready() const { return ready_; }

private:
  SparseMatrix matrix_;
  SubSolverConfig config_;
  DirectSolver direct_;
  IncompleteLU ilut_;
  std::vector<double> diag_inv_;
  bool ready_ = false;
};

struct PrecondConfig {
  SchurVariant variant = SchurVariant::WithBuBv;
  double sigma = -1.0;     // negative = use S/Rm
  double tol_inner = 1e-3;  // epsilon_0: mass, multiplier, curl-shift solves
  double tol_schur = 1e-3;  // the velocity Schur solve
  SubSolverConfig schur_solver;
  SubSolverConfig curl_solver;
  SubSolverConfig lr_solver;
  int qp_max_iterations = 1000;
};

/// Factorizations of the state-independent blocks (C + sigma M, Lr, Qp
/// diagonal), reusable across Picard steps on a fixed mesh and parameter
/// set. Only the Schur block is rebuilt per step.
struct PrecondCache {
  bool ready = false;
  SparseMatrix curl_shift;
  SubSolver curl, lr;
  std::vector<double> qp_diag_inv;
};

/// Right preconditioner: the inverse of the block upper-triangular matrix
///   ( C + sigma M   G^T            J^T   0                       )
///   ( 0            -1/sigma Lr     0     0                       )
///   ( 0             0              Shat  B^T                     )
///   ( 0             0              0    -(1/Re+gamma)^-1 Qp      )
/// applied by back substitution in the order p, u, r, B. Sub-solves may be
/// inexact; a read-only context is safe for concurrent applications.
class Preconditioner {
public:
  /// With a cache, the C + sigma M and Lr factorizations are built on the
  /// first construction and reused afterwards; the caller must keep the
  /// cache tied to one mesh/parameter combination.
  Preconditioner(const BlockSystem& sys, const PrecondConfig& config,
                 PrecondCache* cache = nullptr);

  void apply(const std::vector<double>& r, std::vector<double>& e) const;

  double sigma() const { return sigma_; }
  const SparseMatrix& curl_shift_matrix() const;
  const SparseMatrix& schur_matrix() const;
  SchurVariant variant() const { return config_.variant; }

  /// Number of inner solves that missed their tolerance so far.
  int sub_solve_failures() const { return failures_; }

private:
  const BlockSystem* sys_;
  PrecondConfig config_;
  double sigma_;
  double pressure_scale_;  // 1/Re + gamma
  PrecondCache owned_;     // used when no external cache is supplied
  PrecondCache* parts_;
  SubSolver schur_;
  mutable int failures_ = 0;
};

/// The standalone magnetic-fluid coupling solve: the 2x2 system
///   ( C + sigma M   J^T ) (x_b)   (0)
///   (-J             F   ) (x_u) = (load(f))
/// with frozen fields u0, B0, solved by FGMRES with the two-step
/// back-substitution preconditioner (Schur solve, then curl-shift solve).
struct CouplingStudyConfig {
  double tol = 1e-6;
  int max_iterations = 200;
  SchurVariant variant = SchurVariant::WithBuBv;
  SubSolverConfig schur_solver;
  SubSolverConfig curl_solver;
};

KrylovReport coupling_block_solve(const TetMesh& mesh, const PhysParams& params, double sigma,
                                  const VectorField& f, const VectorField& u0,
                                  const VectorField& B0, const CouplingStudyConfig& config);

}  // namespace almhd
