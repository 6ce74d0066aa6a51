#include "almhd/solver.hpp"

#include <chrono>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace almhd {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

// The assembled operator has the constant pressure vector in its left
// nullspace; remove that component so FGMRES sees a consistent system.
void make_pressure_consistent(std::vector<double>& rhs, int offset_p, int np) {
  if (np == 0) return;
  double mean = 0.0;
  for (int i = 0; i < np; ++i) mean += rhs[offset_p + i];
  mean /= np;
  for (int i = 0; i < np; ++i) rhs[offset_p + i] -= mean;
}

// Mass-weighted projection of the pressure block against constants.
void project_pressure_mean(const BlockSystem& sys, std::vector<double>& x) {
  if (sys.np == 0) return;
  std::vector<double> xp(x.begin() + sys.offset_p(), x.end());
  std::vector<double> ones(sys.np, 1.0), m;
  sys.Qp.apply(ones, m);  // lumped vertex masses
  const double total = std::accumulate(m.begin(), m.end(), 0.0);
  const double mean = dot(m, xp) / total;
  for (int i = 0; i < sys.np; ++i) x[sys.offset_p() + i] -= mean;
}

}  // namespace

double NonlinearReport::avg_gmres() const {
  if (gmres_iterations.empty()) return 0.0;
  double total = 0.0;
  for (int g : gmres_iterations) total += g;
  return total / static_cast<double>(gmres_iterations.size());
}

std::pair<std::vector<double>, KrylovReport> solve_linearized(const BlockSystem& sys,
                                                              const std::vector<double>& rhs,
                                                              const Preconditioner& precond,
                                                              double tol, int max_iterations) {
  LinearOperator op = [&sys](const std::vector<double>& x, std::vector<double>& y) {
    apply_block_operator(sys, x, y);
  };
  LinearOperator pre = [&precond](const std::vector<double>& r, std::vector<double>& e) {
    precond.apply(r, e);
  };
  std::vector<double> delta;
  KrylovReport report = fgmres(op, rhs, pre, delta, {tol, max_iterations, 0});
  project_pressure_mean(sys, delta);
  return {std::move(delta), report};
}

void update_state(MhdState& state, const std::vector<double>& delta_interior,
                  const DofMaps& maps, double theta) {
  if (!(theta > 0.0 && theta <= 1.0))
    throw std::invalid_argument("update_state: theta must be in (0,1]");
  const int nb = maps.magnetic.n_interior();
  const int nr = maps.multiplier.n_interior();
  const int nu = maps.velocity.n_interior();
  const int np = maps.pressure.n_interior();
  if (static_cast<int>(delta_interior.size()) != nb + nr + nu + np)
    throw std::invalid_argument("update_state: dimension mismatch");

  const double* d = delta_interior.data();
  add_interior_to_full(std::vector<double>(d, d + nb), maps.magnetic, theta,
                       state.x_b.coeffs);
  add_interior_to_full(std::vector<double>(d + nb, d + nb + nr), maps.multiplier, theta,
                       state.x_r.coeffs);
  add_interior_to_full(std::vector<double>(d + nb + nr, d + nb + nr + nu), maps.velocity,
                       theta, state.x_u.coeffs);
  add_interior_to_full(std::vector<double>(d + nb + nr + nu, d + nb + nr + nu + np),
                       maps.pressure, theta, state.x_p.coeffs);
}

std::pair<MhdState, NonlinearReport> picard_solve(const TetMesh& mesh, const DofMaps& maps,
                                                  const PhysParams& params,
                                                  const Problem& problem,
                                                  const PicardOptions& options) {
  params.validate();
  NonlinearReport report;

  // initial iterate: velocity data lifted and extended by zero; the magnetic
  // field starts from the globally interpolated B_s closure (for the cavity
  // that is the applied field itself). Zero-extending B instead leaves a
  // boundary layer whose curl scales like S/(Rm h) and swamps the initial
  // residual.
  MhdState state = zero_state(maps);
  if (problem.velocity_bc) {
    auto g = interpolate(mesh, maps.velocity, problem.velocity_bc);
    for (int d = 0; d < maps.velocity.n_dofs; ++d)
      if (maps.velocity.is_boundary[d]) state.x_u.coeffs[d] = g.coeffs[d];
  }
  if (problem.magnetic_bc)
    state.x_b = interpolate(mesh, maps.magnetic, problem.magnetic_bc);

  const int offset_p =
      maps.magnetic.n_interior() + maps.multiplier.n_interior() + maps.velocity.n_interior();
  const int np = maps.pressure.n_interior();

  double res0 = -1.0;
  int growth_streak = 0;
  double prev_res = 0.0;
  BlockSystem sys;
  PrecondCache cache;

  for (int k = 0; k <= options.max_picard; ++k) {
    auto t_assemble = Clock::now();
    std::vector<double> rhs =
        assemble_residuals(mesh, maps, params, state, problem.f, problem.f_b);
    make_pressure_consistent(rhs, offset_p, np);
    const double res = norm2(rhs);
    if (res0 < 0.0) res0 = res;
    const double rel = res0 > 0.0 ? res / res0 : 0.0;
    report.final_residual = rel;

    if (res0 == 0.0 || rel <= options.tol_nonlinear) {
      report.converged = true;
      break;
    }
    if (k == options.max_picard) break;  // out of iterations, not converged

    if (k > 0 && res > prev_res) {
      if (++growth_streak >= 3)
        throw std::runtime_error(
            "picard_solve: nonlinear residual grew for three consecutive steps (rel=" +
            std::to_string(rel) + ")");
    } else {
      growth_streak = 0;
    }
    prev_res = res;
    report.residuals.push_back(rel);

    if (k == 0)
      sys = assemble_system(mesh, maps, params, state);
    else
      update_state_blocks(sys, mesh, maps, params, state);
    PrecondConfig pc = options.precond;
    pc.tol_inner = options.tol_inner;
    Preconditioner precond(sys, pc, &cache);
    const double assemble_s = seconds_since(t_assemble);
    report.assemble_seconds += assemble_s;

    auto t_solve = Clock::now();
    auto [delta, krylov] = solve_linearized(sys, rhs, precond, options.tol_outer,
                                            options.max_gmres);
    const double solve_s = seconds_since(t_solve);
    report.solve_seconds += solve_s;

    update_state(state, delta, maps, params.theta);
    report.picard_iterations++;
    report.gmres_iterations.push_back(krylov.iterations);

    if (options.on_step)
      options.on_step({k, rel, krylov.iterations, krylov.converged, assemble_s, solve_s});
  }

  return {std::move(state), report};
}

}  // namespace almhd
