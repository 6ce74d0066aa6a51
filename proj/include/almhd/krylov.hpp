#pragma once

#include <functional>
#include <vector>

namespace almhd {

/// Matrix-free operator: y = op(x). Output vector is pre-sized by the driver.
using LinearOperator =
    std::function<void(const std::vector<double>&, std::vector<double>&)>;

struct KrylovReport {
  int iterations = 0;
  std::vector<double> residual_history;  // relative to ||b||, history[0] = 1
  bool converged = false;
  bool breakdown = false;   // happy (exact solve) or lucky breakdown
  bool indefinite = false;  // CG only: negative p'Ap encountered
};

struct FgmresOptions {
  double tol = 1e-6;
  int max_iterations = 200;
  int restart = 0;  // 0 = full Arnoldi up to max_iterations
};

/// Right-preconditioned flexible GMRES. The preconditioner may change between
/// iterations (inexact inner solves are fine); preconditioned directions are
/// stored so the correction is as in Saad's FGMRES.
KrylovReport fgmres(const LinearOperator& A, const std::vector<double>& b,
                    const LinearOperator& precond, std::vector<double>& x,
                    const FgmresOptions& opts = {});

struct PcgOptions {
  double tol = 1e-6;
  int max_iterations = 1000;
};

/// Preconditioned conjugate gradients; M must be SPD.
KrylovReport pcg(const LinearOperator& A, const std::vector<double>& b,
                 const LinearOperator& precond, std::vector<double>& x,
                 const PcgOptions& opts = {});

}  // namespace almhd
