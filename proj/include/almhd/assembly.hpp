#pragma once

#include <vector>

#include "almhd/mesh.hpp"
#include "almhd/space.hpp"
#include "almhd/sparse.hpp"

namespace almhd {

/// Physical and algorithmic parameters of one solve.
struct PhysParams {
  double Re = 1.0;     // fluid Reynolds number
  double Rm = 1.0;     // magnetic Reynolds number
  double S = 1.0;      // coupling number
  double gamma = 1.0;  // grad-div penalty
  double sigma = -1.0;  // curl-block shift; negative means "auto" = S/Rm
  double theta = 1.0;  // nonlinear relaxation

  double sigma_or_default() const { return sigma > 0.0 ? sigma : S / Rm; }
  void validate() const;
};

/// The DOF maps of the four spaces, in the block order of the system.
struct DofMaps {
  DofMap magnetic;    // B
  DofMap multiplier;  // r
  DofMap velocity;    // u
  DofMap pressure;    // p
};

DofMaps build_dofmaps(const TetMesh& mesh);

/// Current nonlinear iterate; full-length coefficient vectors whose boundary
/// entries carry the interpolated Dirichlet data.
struct MhdState {
  FieldVector x_b, x_r, x_u, x_p;
};

MhdState zero_state(const DofMaps& maps);

enum class BlockKind { C, M, G, J, F, B, Lr, Qp, Shat };

/// One block of the linearized system, on interior (non-Dirichlet) DOFs.
/// C  = S/Rm (curl.,curl.)        on the magnetic space
/// M  = mass                      on the magnetic space
/// G  = (., grad s)               multiplier rows x magnetic cols
/// J  = S (curl., B_k x v)        velocity rows x magnetic cols
/// F  = 1/Re grad-grad + convection(u_k) + gamma div-div   on velocity
/// B  = -(div., q)                pressure rows x velocity cols
/// Lr = grad-grad                 on the multiplier space
/// Qp = mass                      on the pressure space (never eliminated)
/// Shat = F + S Rm (B_k x ., B_k x .)
SparseMatrix assemble_block(const TetMesh& mesh, const DofMaps& maps, const PhysParams& params,
                            const MhdState& state, BlockKind kind);

/// Same bilinear forms on the full DOF set (no elimination); used by the
/// residual consistency oracle and for Matrix Market dumps.
SparseMatrix assemble_block_full(const TetMesh& mesh, const DofMaps& maps,
                                 const PhysParams& params, const MhdState& state,
                                 BlockKind kind);

/// All blocks plus cached transposes, ready for operator application.
struct BlockSystem {
  SparseMatrix C, M, G, J, F, B, Lr, Qp, Shat;
  SparseMatrix Gt, Jt, Bt;
  int nb = 0, nr = 0, nu = 0, np = 0;  // interior sizes per block
  PhysParams params;

  int total() const { return nb + nr + nu + np; }
  int offset_b() const { return 0; }
  int offset_r() const { return nb; }
  int offset_u() const { return nb + nr; }
  int offset_p() const { return nb + nr + nu; }
};

BlockSystem assemble_system(const TetMesh& mesh, const DofMaps& maps, const PhysParams& params,
                            const MhdState& state);

/// Refresh only the blocks that depend on the frozen fields u_k, B_k
/// (J, F, Shat and J's transpose); everything else is state-independent.
void update_state_blocks(BlockSystem& sys, const TetMesh& mesh, const DofMaps& maps,
                         const PhysParams& params, const MhdState& state);

/// y = A x for the 4x4 block operator
///   ( C   G^T  J^T  0  )
///   ( G   0    0    0  )
///   (-J   0    F    B^T)
///   ( 0   0    B    0  )
void apply_block_operator(const BlockSystem& sys, const std::vector<double>& x,
                          std::vector<double>& y);

/// Residual functionals at the given state, restricted to interior DOFs and
/// stacked in block order (b | r | u | p). `f` is the fluid forcing, `f_b`
/// the magnetic one (identically zero except for manufactured solutions).
std::vector<double> assemble_residuals(const TetMesh& mesh, const DofMaps& maps,
                                       const PhysParams& params, const MhdState& state,
                                       const VectorField& f, const VectorField& f_b);

/// Load vector (f, v_i) on the interior DOFs of a vector space.
std::vector<double> assemble_load(const TetMesh& mesh, const DofMap& map, const VectorField& f);

/// Row/column restriction of a full-DOF matrix to interior DOFs.
SparseMatrix restrict_interior(const SparseMatrix& full, const DofMap& rows, const DofMap& cols);

/// Symmetric Dirichlet elimination: interior rows/columns of `full`, with the
/// boundary contribution moved to the right-hand side.
struct EliminatedSystem {
  SparseMatrix matrix;
  std::vector<double> rhs;
};
EliminatedSystem apply_dirichlet(const SparseMatrix& full, const std::vector<double>& rhs_full,
                                 const DofMap& map, const std::vector<double>& bc_values);

std::vector<double> restrict_vector(const std::vector<double>& full, const DofMap& map);
void add_interior_to_full(const std::vector<double>& interior, const DofMap& map, double scale,
                          std::vector<double>& full);

}  // namespace almhd
