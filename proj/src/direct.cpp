#include "almhd/direct.hpp"

#include <Eigen/IterativeLinearSolvers>
#include <Eigen/Sparse>
#include <Eigen/SparseCholesky>
#include <Eigen/SparseLU>
#include <cmath>
#include <stdexcept>
#include <string>

namespace almhd {

namespace {

using EigenSparse = Eigen::SparseMatrix<double>;

EigenSparse to_eigen(const SparseMatrix& A) {
  EigenSparse M(A.rows(), A.cols());
  std::vector<Eigen::Triplet<double>> trips;
  trips.reserve(static_cast<std::size_t>(A.nnz()));
  for (int i = 0; i < A.rows(); ++i)
    for (int k = A.row_offsets()[i]; k < A.row_offsets()[i + 1]; ++k)
      trips.emplace_back(i, A.col_indices()[k], A.values()[k]);
  M.setFromTriplets(trips.begin(), trips.end());
  M.makeCompressed();
  return M;
}

}  // namespace

struct DirectSolver::Impl {
  Kind kind = Kind::LU;
  Eigen::SparseLU<EigenSparse> lu;
  Eigen::SimplicialLDLT<EigenSparse> ldlt;
  int n = 0;
};

void DirectSolver::factorize(const SparseMatrix& A, Kind kind) {
  if (A.rows() != A.cols()) throw std::invalid_argument("DirectSolver: matrix not square");
  auto impl = std::make_shared<Impl>();
  impl->kind = kind;
  impl->n = A.rows();
  const EigenSparse M = to_eigen(A);
  if (kind == Kind::LU) {
    impl->lu.analyzePattern(M);
    impl->lu.factorize(M);
    if (impl->lu.info() != Eigen::Success)
      throw std::runtime_error("sparse LU failed: " + impl->lu.lastErrorMessage());
  } else {
    impl->ldlt.compute(M);
    if (impl->ldlt.info() != Eigen::Success)
      throw std::runtime_error("sparse LDLT factorization failed (matrix not SPD?)");
    // LDLT succeeds structurally even with zero pivots; flag them here.
    const auto& D = impl->ldlt.vectorD();
    for (int i = 0; i < D.size(); ++i)
      if (!(std::abs(D[i]) > 0.0))
        throw std::runtime_error("sparse LDLT: zero pivot at index " + std::to_string(i));
  }
  impl_ = std::move(impl);
}

void DirectSolver::solve(const std::vector<double>& b, std::vector<double>& x) const {
  if (!impl_) throw std::logic_error("DirectSolver::solve before factorize");
  if (static_cast<int>(b.size()) != impl_->n)
    throw std::invalid_argument("DirectSolver::solve: dimension mismatch");
  Eigen::Map<const Eigen::VectorXd> bm(b.data(), impl_->n);
  Eigen::VectorXd xe;
  if (impl_->kind == Kind::LU)
    xe = impl_->lu.solve(bm);
  else
    xe = impl_->ldlt.solve(bm);
  x.assign(xe.data(), xe.data() + impl_->n);
}

std::vector<double> DirectSolver::solve(const std::vector<double>& b) const {
  std::vector<double> x;
  solve(b, x);
  return x;
}

struct IncompleteLU::Impl {
  Eigen::IncompleteLUT<double> ilut;
  int n = 0;
};

void IncompleteLU::compute(const SparseMatrix& A, double drop_tol, int fill_factor) {
  if (A.rows() != A.cols()) throw std::invalid_argument("IncompleteLU: matrix not square");
  auto impl = std::make_shared<Impl>();
  impl->n = A.rows();
  impl->ilut.setDroptol(drop_tol);
  impl->ilut.setFillfactor(fill_factor);
  impl->ilut.compute(to_eigen(A));
  if (impl->ilut.info() != Eigen::Success)
    throw std::runtime_error("incomplete LU factorization failed");
  impl_ = std::move(impl);
}

void IncompleteLU::apply(const std::vector<double>& r, std::vector<double>& z) const {
  if (!impl_) throw std::logic_error("IncompleteLU::apply before compute");
  Eigen::Map<const Eigen::VectorXd> rm(r.data(), impl_->n);
  Eigen::VectorXd ze = impl_->ilut.solve(rm);
  z.assign(ze.data(), ze.data() + impl_->n);
}

}  // namespace almhd
