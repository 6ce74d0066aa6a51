#include "almhd/precond.hpp"

#include <cmath>
#include <stdexcept>

namespace almhd {

void SubSolver::setup(SparseMatrix A, bool spd, const SubSolverConfig& config) {
  matrix_ = std::move(A);
  config_ = config;
  switch (config.kind) {
    case SubSolverKind::Direct:
      direct_.factorize(matrix_, spd ? DirectSolver::Kind::LDLT : DirectSolver::Kind::LU);
      break;
    case SubSolverKind::DiagCg: {
      diag_inv_ = matrix_.diagonal();
      for (double& d : diag_inv_) {
        if (d == 0.0) throw std::runtime_error("SubSolver: zero diagonal entry");
        d = 1.0 / d;
      }
      break;
    }
    case SubSolverKind::IlutGmres:
      ilut_.compute(matrix_, config.ilut_drop_tol, config.ilut_fill);
      break;
  }
  ready_ = true;
}

bool SubSolver::solve(const std::vector<double>& b, std::vector<double>& x) const {
  switch (config_.kind) {
    case SubSolverKind::Direct:
      direct_.solve(b, x);
      return true;
    case SubSolverKind::DiagCg: {
      LinearOperator op = [this](const std::vector<double>& v, std::vector<double>& y) {
        matrix_.apply(v, y);
      };
      LinearOperator pre = [this](const std::vector<double>& v, std::vector<double>& y) {
        y.resize(v.size());
        for (std::size_t i = 0; i < v.size(); ++i) y[i] = diag_inv_[i] * v[i];
      };
      x.assign(b.size(), 0.0);
      auto rep = pcg(op, b, pre, x, {config_.tol, config_.max_iterations});
      return rep.converged;
    }
    case SubSolverKind::IlutGmres: {
      LinearOperator op = [this](const std::vector<double>& v, std::vector<double>& y) {
        matrix_.apply(v, y);
      };
      LinearOperator pre = [this](const std::vector<double>& v, std::vector<double>& y) {
        ilut_.apply(v, y);
      };
      x.assign(b.size(), 0.0);
      auto rep = fgmres(op, b, pre, x, {config_.tol, config_.max_iterations, 0});
      return rep.converged;
    }
  }
  return false;
}

Preconditioner::Preconditioner(const BlockSystem& sys, const PrecondConfig& config,
                               PrecondCache* cache)
    : sys_(&sys), config_(config), parts_(cache ? cache : &owned_) {
  sigma_ = config.sigma > 0.0 ? config.sigma : sys.params.sigma_or_default();
  pressure_scale_ = 1.0 / sys.params.Re + sys.params.gamma;

  if (!parts_->ready) {
    parts_->curl_shift = sys.C.axpy(sigma_, sys.M);

    SubSolverConfig curl_cfg = config.curl_solver;
    curl_cfg.tol = config.tol_inner;
    parts_->curl.setup(parts_->curl_shift, true, curl_cfg);

    SubSolverConfig lr_cfg = config.lr_solver;
    lr_cfg.tol = config.tol_inner;
    parts_->lr.setup(sys.Lr, true, lr_cfg);

    parts_->qp_diag_inv = sys.Qp.diagonal();
    for (double& d : parts_->qp_diag_inv) d = 1.0 / d;
    parts_->ready = true;
  }

  SubSolverConfig schur_cfg = config.schur_solver;
  schur_cfg.tol = config.tol_schur;
  schur_.setup(schur_matrix(), false, schur_cfg);
}

const SparseMatrix& Preconditioner::schur_matrix() const {
  return config_.variant == SchurVariant::WithBuBv ? sys_->Shat : sys_->F;
}

const SparseMatrix& Preconditioner::curl_shift_matrix() const { return parts_->curl_shift; }

void Preconditioner::apply(const std::vector<double>& r, std::vector<double>& e) const {
  const BlockSystem& sys = *sys_;
  if (static_cast<int>(r.size()) != sys.total())
    throw std::invalid_argument("Preconditioner::apply: dimension mismatch");
  e.assign(sys.total(), 0.0);

  const std::vector<double> rb(r.begin(), r.begin() + sys.nb);
  const std::vector<double> rr(r.begin() + sys.offset_r(), r.begin() + sys.offset_u());
  const std::vector<double> ru(r.begin() + sys.offset_u(), r.begin() + sys.offset_p());
  const std::vector<double> rp(r.begin() + sys.offset_p(), r.end());

  // step 1: Qp e_p = -(1/Re + gamma) r_p, diagonally preconditioned CG
  std::vector<double> ep(sys.np, 0.0);
  if (sys.np > 0) {
    std::vector<double> rhs(rp);
    for (double& v : rhs) v *= -pressure_scale_;
    LinearOperator op = [&sys](const std::vector<double>& v, std::vector<double>& y) {
      sys.Qp.apply(v, y);
    };
    LinearOperator pre = [this](const std::vector<double>& v, std::vector<double>& y) {
      y.resize(v.size());
      for (std::size_t i = 0; i < v.size(); ++i) y[i] = parts_->qp_diag_inv[i] * v[i];
    };
    auto rep = pcg(op, rhs, pre, ep, {config_.tol_inner, config_.qp_max_iterations});
    if (!rep.converged) failures_++;
  }

  // step 2: Shat e_u = r_u - B^T e_p
  std::vector<double> rhs_u(ru);
  {
    std::vector<double> tmp;
    sys.Bt.apply(ep, tmp);
    axpy(-1.0, tmp, rhs_u);
  }
  std::vector<double> eu;
  if (!schur_.solve(rhs_u, eu)) failures_++;

  // step 3: Lr e_r = -sigma r_r
  std::vector<double> rhs_r(rr);
  for (double& v : rhs_r) v *= -sigma_;
  std::vector<double> er;
  if (!parts_->lr.solve(rhs_r, er)) failures_++;

  // step 4: (C + sigma M) e_b = r_b - J^T e_u - G^T e_r
  std::vector<double> rhs_b(rb);
  {
    std::vector<double> tmp;
    sys.Jt.apply(eu, tmp);
    axpy(-1.0, tmp, rhs_b);
    sys.Gt.apply(er, tmp);
    axpy(-1.0, tmp, rhs_b);
  }
  std::vector<double> eb;
  if (!parts_->curl.solve(rhs_b, eb)) failures_++;

  std::copy(eb.begin(), eb.end(), e.begin() + sys.offset_b());
  std::copy(er.begin(), er.end(), e.begin() + sys.offset_r());
  std::copy(eu.begin(), eu.end(), e.begin() + sys.offset_u());
  std::copy(ep.begin(), ep.end(), e.begin() + sys.offset_p());
}

KrylovReport coupling_block_solve(const TetMesh& mesh, const PhysParams& params, double sigma,
                                  const VectorField& f, const VectorField& u0,
                                  const VectorField& B0, const CouplingStudyConfig& config) {
  params.validate();
  if (!(sigma > 0.0)) throw std::invalid_argument("coupling_block_solve: sigma must be > 0");

  DofMaps maps = build_dofmaps(mesh);
  MhdState state = zero_state(maps);
  state.x_u = interpolate(mesh, maps.velocity, u0);
  state.x_b = interpolate(mesh, maps.magnetic, B0);

  const SparseMatrix C = assemble_block(mesh, maps, params, state, BlockKind::C);
  const SparseMatrix M = assemble_block(mesh, maps, params, state, BlockKind::M);
  const SparseMatrix J = assemble_block(mesh, maps, params, state, BlockKind::J);
  const SparseMatrix Jt = J.transposed();
  const SparseMatrix F = assemble_block(mesh, maps, params, state, BlockKind::F);
  const SparseMatrix Shat = config.variant == SchurVariant::WithBuBv
                                ? assemble_block(mesh, maps, params, state, BlockKind::Shat)
                                : F;
  const SparseMatrix CsM = C.axpy(sigma, M);

  const int nb = maps.magnetic.n_interior();
  const int nu = maps.velocity.n_interior();

  SubSolver schur, curl;
  schur.setup(Shat, false, config.schur_solver);
  curl.setup(CsM, true, config.curl_solver);

  std::vector<double> rhs(nb + nu, 0.0);
  {
    auto load = assemble_load(mesh, maps.velocity, f);
    std::copy(load.begin(), load.end(), rhs.begin() + nb);
  }

  LinearOperator op = [&](const std::vector<double>& x, std::vector<double>& y) {
    y.assign(nb + nu, 0.0);
    const std::vector<double> xb(x.begin(), x.begin() + nb);
    const std::vector<double> xu(x.begin() + nb, x.end());
    std::vector<double> tmp;
    CsM.apply(xb, tmp);
    for (int i = 0; i < nb; ++i) y[i] += tmp[i];
    Jt.apply(xu, tmp);
    for (int i = 0; i < nb; ++i) y[i] += tmp[i];
    J.apply(xb, tmp);
    for (int i = 0; i < nu; ++i) y[nb + i] -= tmp[i];
    F.apply(xu, tmp);
    for (int i = 0; i < nu; ++i) y[nb + i] += tmp[i];
  };

  LinearOperator pre = [&](const std::vector<double>& r, std::vector<double>& e) {
    e.assign(nb + nu, 0.0);
    const std::vector<double> rb(r.begin(), r.begin() + nb);
    const std::vector<double> ru(r.begin() + nb, r.end());
    std::vector<double> eu, eb;
    schur.solve(ru, eu);
    std::vector<double> rhs_b(rb);
    std::vector<double> tmp;
    Jt.apply(eu, tmp);
    axpy(-1.0, tmp, rhs_b);
    curl.solve(rhs_b, eb);
    std::copy(eb.begin(), eb.end(), e.begin());
    std::copy(eu.begin(), eu.end(), e.begin() + nb);
  };

  std::vector<double> x;
  return fgmres(op, rhs, pre, x, {config.tol, config.max_iterations, 0});
}

}  // namespace almhd
