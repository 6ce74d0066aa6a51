#include "almhd/krylov.hpp"

#include <cmath>
#include <stdexcept>

#include "almhd/sparse.hpp"

namespace almhd {

namespace {

// One restart cycle of right-preconditioned flexible GMRES.
// Returns true if converged; x is updated in place.
bool fgmres_cycle(const LinearOperator& A, const std::vector<double>& b,
                  const LinearOperator& precond, std::vector<double>& x, double abs_tol,
                  double bnorm, int max_steps, KrylovReport& report) {
  const std::size_t n = b.size();
  std::vector<double> r(n), w(n);
  A(x, r);
  for (std::size_t i = 0; i < n; ++i) r[i] = b[i] - r[i];
  double beta = norm2(r);
  report.residual_history.push_back(beta / bnorm);
  if (beta <= abs_tol) {
    report.converged = true;
    return true;
  }

  std::vector<std::vector<double>> V;  // Arnoldi basis
  std::vector<std::vector<double>> Z;  // preconditioned directions
  V.reserve(max_steps + 1);
  Z.reserve(max_steps);
  {
    std::vector<double> v0(r);
    for (double& v : v0) v /= beta;
    V.push_back(std::move(v0));
  }

  // Hessenberg kept column-wise; Givens rotations applied on the fly.
  std::vector<std::vector<double>> H;
  std::vector<double> cs(max_steps), sn(max_steps);
  std::vector<double> g(max_steps + 1, 0.0);
  g[0] = beta;

  int j = 0;
  for (; j < max_steps; ++j) {
    std::vector<double> z(n);
    precond(V[j], z);
    A(z, w);
    Z.push_back(std::move(z));

    std::vector<double> h(j + 2, 0.0);
    for (int i = 0; i <= j; ++i) {  // modified Gram-Schmidt
      h[i] = dot(w, V[i]);
      axpy(-h[i], V[i], w);
    }
    h[j + 1] = norm2(w);

    bool lucky = h[j + 1] <= 1e-14 * bnorm;
    if (!lucky) {
      std::vector<double> vj(w);
      for (double& v : vj) v /= h[j + 1];
      V.push_back(std::move(vj));
    }

    for (int i = 0; i < j; ++i) {
      const double t = cs[i] * h[i] + sn[i] * h[i + 1];
      h[i + 1] = -sn[i] * h[i] + cs[i] * h[i + 1];
      h[i] = t;
    }
    const double denom = std::hypot(h[j], h[j + 1]);
    if (denom == 0.0) {
      report.breakdown = true;
      break;
    }
    cs[j] = h[j] / denom;
    sn[j] = h[j + 1] / denom;
    h[j] = denom;
    h[j + 1] = 0.0;
    g[j + 1] = -sn[j] * g[j];
    g[j] = cs[j] * g[j];
    H.push_back(std::move(h));

    report.iterations++;
    const double res = std::abs(g[j + 1]);
    report.residual_history.push_back(res / bnorm);
    if (res <= abs_tol || lucky) {
      report.converged = res <= abs_tol;
      report.breakdown = report.breakdown || lucky;
      ++j;
      break;
    }
  }

  // Solve the triangular least-squares system and update x.
  const int m = static_cast<int>(H.size());
  std::vector<double> y(m, 0.0);
  for (int i = m - 1; i >= 0; --i) {
    double s = g[i];
    for (int k = i + 1; k < m; ++k) s -= H[k][i] * y[k];
    y[i] = s / H[i][i];
  }
  for (int i = 0; i < m; ++i) axpy(y[i], Z[i], x);
  return report.converged;
}

}  // namespace

KrylovReport fgmres(const LinearOperator& A, const std::vector<double>& b,
                    const LinearOperator& precond, std::vector<double>& x,
                    const FgmresOptions& opts) {
  KrylovReport report;
  if (x.size() != b.size()) x.assign(b.size(), 0.0);
  const double bnorm = norm2(b);
  if (bnorm == 0.0) {
    x.assign(b.size(), 0.0);
    report.converged = true;
    report.residual_history.push_back(0.0);
    return report;
  }
  const double abs_tol = opts.tol * bnorm;
  const int cycle = opts.restart > 0 ? opts.restart : opts.max_iterations;
  while (report.iterations < opts.max_iterations) {
    const int steps = std::min(cycle, opts.max_iterations - report.iterations);
    if (fgmres_cycle(A, b, precond, x, abs_tol, bnorm, steps, report)) break;
    if (report.breakdown) break;
  }
  return report;
}

KrylovReport pcg(const LinearOperator& A, const std::vector<double>& b,
                 const LinearOperator& precond, std::vector<double>& x,
                 const PcgOptions& opts) {
  KrylovReport report;
  const std::size_t n = b.size();
  if (x.size() != n) x.assign(n, 0.0);

  std::vector<double> r(n), z(n), p(n), Ap(n);
  A(x, r);
  for (std::size_t i = 0; i < n; ++i) r[i] = b[i] - r[i];
  const double bnorm = norm2(b);
  if (bnorm == 0.0) {
    x.assign(n, 0.0);
    report.converged = true;
    report.residual_history.push_back(0.0);
    return report;
  }
  double rnorm = norm2(r);
  report.residual_history.push_back(rnorm / bnorm);
  if (rnorm <= opts.tol * bnorm) {
    report.converged = true;
    return report;
  }

  precond(r, z);
  p = z;
  double rz = dot(r, z);
  for (int it = 0; it < opts.max_iterations; ++it) {
    A(p, Ap);
    const double pAp = dot(p, Ap);
    if (pAp <= 0.0) {
      report.indefinite = true;
      break;
    }
    const double alpha = rz / pAp;
    axpy(alpha, p, x);
    axpy(-alpha, Ap, r);
    report.iterations++;
    rnorm = norm2(r);
    report.residual_history.push_back(rnorm / bnorm);
    if (rnorm <= opts.tol * bnorm) {
      report.converged = true;
      break;
    }
    precond(r, z);
    const double rz_new = dot(r, z);
    const double beta = rz_new / rz;
    for (std::size_t i = 0; i < n; ++i) p[i] = z[i] + beta * p[i];
    rz = rz_new;
  }
  return report;
}

}  // namespace almhd
