#pragma once

#include <memory>
#include <vector>

#include "almhd/sparse.hpp"

namespace almhd {

/// Sparse direct factorization handle. LDLT is used for symmetric positive
/// definite blocks, LU for general ones. A factorized handle is immutable and
/// can serve concurrent solves.
class DirectSolver {
public:
  enum class Kind { LU, LDLT };

  DirectSolver() = default;

  /// Throws std::runtime_error on structural or numerical singularity,
  /// naming the offending pivot when it can be identified.
  void factorize(const SparseMatrix& A, Kind kind);

  bool ready() const { return impl_ != nullptr; }

  void solve(const std::vector<double>& b, std::vector<double>& x) const;
  std::vector<double> solve(const std::vector<double>& b) const;

private:
  struct Impl;
  std::shared_ptr<const Impl> impl_;
};

/// Incomplete LU factorization (dual-threshold ILUT) usable as a
/// preconditioner for the Krylov drivers.
class IncompleteLU {
public:
  IncompleteLU() = default;

  void compute(const SparseMatrix& A, double drop_tol = 1e-3, int fill_factor = 10);

  bool ready() const { return impl_ != nullptr; }

  void apply(const std::vector<double>& r, std::vector<double>& z) const;

private:
  struct Impl;
  std::shared_ptr<const Impl> impl_;
};

}  // namespace almhd
