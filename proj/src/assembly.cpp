#include "almhd/assembly.hpp"

#include <functional>
#include <stdexcept>

#include "almhd/element.hpp"
#include "almhd/quadrature.hpp"

namespace almhd {

void PhysParams::validate() const {
  if (!(Re > 0.0 && Rm > 0.0 && S > 0.0))
    throw std::invalid_argument("PhysParams: Re, Rm, S must be positive");
  if (gamma < 0.0) throw std::invalid_argument("PhysParams: gamma must be >= 0");
  if (!(sigma_or_default() > 0.0)) throw std::invalid_argument("PhysParams: sigma must be > 0");
  if (!(theta > 0.0 && theta <= 1.0))
    throw std::invalid_argument("PhysParams: theta must be in (0,1]");
}

DofMaps build_dofmaps(const TetMesh& mesh) {
  return {build_dofmap(mesh, SpaceKind::MagneticNed2),
          build_dofmap(mesh, SpaceKind::MultiplierP2),
          build_dofmap(mesh, SpaceKind::VelocityP2),
          build_dofmap(mesh, SpaceKind::PressureP1)};
}

MhdState zero_state(const DofMaps& maps) {
  return {{SpaceKind::MagneticNed2, std::vector<double>(maps.magnetic.n_dofs, 0.0)},
          {SpaceKind::MultiplierP2, std::vector<double>(maps.multiplier.n_dofs, 0.0)},
          {SpaceKind::VelocityP2, std::vector<double>(maps.velocity.n_dofs, 0.0)},
          {SpaceKind::PressureP1, std::vector<double>(maps.pressure.n_dofs, 0.0)}};
}

namespace {

constexpr int kAssemblyOrder = 4;

// Reference tables shared by every tet (affine mesh).
struct RefTables {
  QuadratureRule rule;
  RefBasis p1, p2, ned;

  RefTables() {
    rule = quad_rule(kAssemblyOrder);
    p1 = eval_basis(BasisKind::LagrangeP1, rule.points);
    p2 = eval_basis(BasisKind::LagrangeP2, rule.points);
    ned = eval_basis(BasisKind::Nedelec2_1, rule.points);
  }
};

const RefTables& ref_tables() {
  static const RefTables tables;
  return tables;
}

// Physical tables plus state evaluations on one tet.
struct ElementContext {
  const TetMesh& mesh;
  const DofMaps& maps;
  const MhdState* state;
  const RefTables& ref;

  TetGeometry geom;
  PhysBasis p1, p2, ned;
  std::vector<double> weights;            // |det| * reference weights
  std::vector<Eigen::Vector3d> points;    // physical quadrature points

  // state evaluations, filled on demand
  std::vector<Eigen::Vector3d> u_val;
  std::vector<Eigen::Matrix3d> u_grad;  // row c = grad u_c
  std::vector<double> u_div;
  std::vector<Eigen::Vector3d> b_val;
  Eigen::Vector3d b_curl;  // constant per tet for P1^3 fields
  std::vector<Eigen::Vector3d> r_grad;
  std::vector<double> p_val;

  ElementContext(const TetMesh& m, const DofMaps& dm, const MhdState* st)
      : mesh(m), maps(dm), state(st), ref(ref_tables()) {}

  int nq() const { return ref.rule.size(); }

  void bind(int t) {
    const auto& tet = mesh.tets[t];
    geom = make_tet_geometry(mesh.vertices[tet[0]], mesh.vertices[tet[1]],
                             mesh.vertices[tet[2]], mesh.vertices[tet[3]]);
    p1 = map_to_physical(geom, ref.p1);
    p2 = map_to_physical(geom, ref.p2);
    ned = map_to_physical(geom, ref.ned);
    weights.resize(nq());
    points.resize(nq());
    for (int q = 0; q < nq(); ++q) {
      weights[q] = ref.rule.weights[q] * p2.weight_scale;
      points[q] = geom.map(ref.rule.points[q]);
    }
  }

  void eval_velocity_state(int t) {
    const auto& vm = maps.velocity;
    u_val.assign(nq(), Eigen::Vector3d::Zero());
    u_grad.assign(nq(), Eigen::Matrix3d::Zero());
    u_div.assign(nq(), 0.0);
    for (int c = 0; c < 3; ++c)
      for (int a = 0; a < 10; ++a) {
        const double coef = state->x_u.coeffs[vm.cell_dof(t, c * 10 + a)];
        if (coef == 0.0) continue;
        for (int q = 0; q < nq(); ++q) {
          u_val[q][c] += coef * p2.values[q * 10 + a];
          u_grad[q].row(c) += coef * p2.gradients[q * 10 + a].transpose();
        }
      }
    for (int q = 0; q < nq(); ++q) u_div[q] = u_grad[q].trace();
  }

  void eval_magnetic_state(int t) {
    const auto& cm = maps.magnetic;
    b_val.assign(nq(), Eigen::Vector3d::Zero());
    b_curl = Eigen::Vector3d::Zero();
    for (int i = 0; i < 12; ++i) {
      const double coef = state->x_b.coeffs[cm.cell_dof(t, i)] * cm.cell_sign(t, i);
      if (coef == 0.0) continue;
      b_curl += coef * ned.curls[i];
      for (int q = 0; q < nq(); ++q) b_val[q] += coef * ned.vector_values[q * 12 + i];
    }
  }

  void eval_multiplier_state(int t) {
    const auto& sm = maps.multiplier;
    r_grad.assign(nq(), Eigen::Vector3d::Zero());
    for (int a = 0; a < 10; ++a) {
      const double coef = state->x_r.coeffs[sm.cell_dof(t, a)];
      if (coef == 0.0) continue;
      for (int q = 0; q < nq(); ++q) r_grad[q] += coef * p2.gradients[q * 10 + a];
    }
  }

  void eval_pressure_state(int t) {
    const auto& qm = maps.pressure;
    p_val.assign(nq(), 0.0);
    for (int a = 0; a < 4; ++a) {
      const double coef = state->x_p.coeffs[qm.cell_dof(t, a)];
      for (int q = 0; q < nq(); ++q) p_val[q] += coef * p1.values[q * 4 + a];
    }
  }
};

using ElementKernel = std::function<void(ElementContext&, int, Eigen::MatrixXd&)>;

// Scatter one element matrix through two dof maps. `interior` drops Dirichlet
// rows/columns; rows/cols with sign carry it into the entries.
SparseMatrix assemble_generic(const TetMesh& mesh, const DofMaps& maps, const MhdState* state,
                              const DofMap& rows, const DofMap& cols, bool interior,
                              const ElementKernel& kernel) {
  const int n_rows = interior ? rows.n_interior() : rows.n_dofs;
  const int n_cols = interior ? cols.n_interior() : cols.n_dofs;
  TripletBuffer buf(n_rows, n_cols);
  buf.reserve(static_cast<std::size_t>(mesh.n_tets()) * rows.dofs_per_cell * cols.dofs_per_cell);

  ElementContext ctx(mesh, maps, state);
  Eigen::MatrixXd ke(rows.dofs_per_cell, cols.dofs_per_cell);
  for (int t = 0; t < mesh.n_tets(); ++t) {
    ctx.bind(t);
    ke.setZero();
    kernel(ctx, t, ke);
    for (int i = 0; i < rows.dofs_per_cell; ++i) {
      int gi = rows.cell_dof(t, i);
      const double si = rows.cell_sign(t, i);
      if (interior) {
        gi = rows.interior_index[gi];
        if (gi < 0) continue;
      }
      for (int j = 0; j < cols.dofs_per_cell; ++j) {
        int gj = cols.cell_dof(t, j);
        const double sj = cols.cell_sign(t, j);
        if (interior) {
          gj = cols.interior_index[gj];
          if (gj < 0) continue;
        }
        const double v = si * sj * ke(i, j);
        if (v != 0.0) buf.add(gi, gj, v);
      }
    }
  }
  return buf.compress();
}

ElementKernel kernel_for(BlockKind kind, const PhysParams& params) {
  switch (kind) {
    case BlockKind::C: {
      const double scale = params.S / params.Rm;
      return [scale](ElementContext& ctx, int, Eigen::MatrixXd& ke) {
        double total_w = 0.0;
        for (int q = 0; q < ctx.nq(); ++q) total_w += ctx.weights[q];
        for (int i = 0; i < 12; ++i)
          for (int j = 0; j < 12; ++j)
            ke(i, j) = scale * total_w * ctx.ned.curls[i].dot(ctx.ned.curls[j]);
      };
    }
    case BlockKind::M:
      return [](ElementContext& ctx, int, Eigen::MatrixXd& ke) {
        for (int q = 0; q < ctx.nq(); ++q) {
          const double w = ctx.weights[q];
          for (int i = 0; i < 12; ++i)
            for (int j = 0; j < 12; ++j)
              ke(i, j) += w * ctx.ned.vector_values[q * 12 + i].dot(
                                  ctx.ned.vector_values[q * 12 + j]);
        }
      };
    case BlockKind::G:
      // rows: multiplier test functions, cols: magnetic trial functions
      return [](ElementContext& ctx, int, Eigen::MatrixXd& ke) {
        for (int q = 0; q < ctx.nq(); ++q) {
          const double w = ctx.weights[q];
          for (int a = 0; a < 10; ++a)
            for (int j = 0; j < 12; ++j)
              ke(a, j) += w * ctx.ned.vector_values[q * 12 + j].dot(
                                  ctx.p2.gradients[q * 10 + a]);
        }
      };
    case BlockKind::J: {
      const double S = params.S;
      return [S](ElementContext& ctx, int t, Eigen::MatrixXd& ke) {
        ctx.eval_magnetic_state(t);
        for (int q = 0; q < ctx.nq(); ++q) {
          const double w = ctx.weights[q];
          std::array<Eigen::Vector3d, 3> b_cross_e;
          for (int c = 0; c < 3; ++c)
            b_cross_e[c] = ctx.b_val[q].cross(Eigen::Vector3d::Unit(c));
          for (int j = 0; j < 12; ++j) {
            const Eigen::Vector3d& curl_j = ctx.ned.curls[j];
            for (int c = 0; c < 3; ++c) {
              const double coupling = S * w * curl_j.dot(b_cross_e[c]);
              if (coupling == 0.0) continue;
              for (int a = 0; a < 10; ++a)
                ke(c * 10 + a, j) += coupling * ctx.p2.values[q * 10 + a];
            }
          }
        }
      };
    }
    case BlockKind::F:
    case BlockKind::Shat: {
      const double invRe = 1.0 / params.Re;
      const double gamma = params.gamma;
      const double srm = params.S * params.Rm;
      const bool with_bubv = kind == BlockKind::Shat;
      return [invRe, gamma, srm, with_bubv](ElementContext& ctx, int t, Eigen::MatrixXd& ke) {
        ctx.eval_velocity_state(t);
        if (with_bubv) ctx.eval_magnetic_state(t);
        for (int q = 0; q < ctx.nq(); ++q) {
          const double w = ctx.weights[q];
          const double* phi = &ctx.p2.values[q * 10];
          const Eigen::Vector3d* dphi = &ctx.p2.gradients[q * 10];
          // scalar convection-diffusion part, identical for each component
          std::array<double, 10> conv;
          for (int b = 0; b < 10; ++b) conv[b] = ctx.u_val[q].dot(dphi[b]);
          for (int a = 0; a < 10; ++a)
            for (int b = 0; b < 10; ++b) {
              const double val = w * (invRe * dphi[a].dot(dphi[b]) + phi[a] * conv[b]);
              for (int c = 0; c < 3; ++c) ke(c * 10 + a, c * 10 + b) += val;
            }
          // grad-div couples the components
          if (gamma != 0.0)
            for (int c = 0; c < 3; ++c)
              for (int d = 0; d < 3; ++d)
                for (int a = 0; a < 10; ++a)
                  for (int b = 0; b < 10; ++b)
                    ke(c * 10 + a, d * 10 + b) += w * gamma * dphi[a][c] * dphi[b][d];
          if (with_bubv) {
            std::array<Eigen::Vector3d, 3> b_cross_e;
            for (int c = 0; c < 3; ++c)
              b_cross_e[c] = ctx.b_val[q].cross(Eigen::Vector3d::Unit(c));
            Eigen::Matrix3d cross_dot;  // (B x e_d) . (B x e_c)
            for (int c = 0; c < 3; ++c)
              for (int d = 0; d < 3; ++d) cross_dot(c, d) = b_cross_e[c].dot(b_cross_e[d]);
            for (int c = 0; c < 3; ++c)
              for (int d = 0; d < 3; ++d) {
                if (cross_dot(c, d) == 0.0) continue;
                const double s = w * srm * cross_dot(c, d);
                for (int a = 0; a < 10; ++a)
                  for (int b = 0; b < 10; ++b) ke(c * 10 + a, d * 10 + b) += s * phi[a] * phi[b];
              }
          }
        }
      };
    }
    case BlockKind::B:
      // rows: pressure, cols: velocity; entries -(div v_j, q_i)
      return [](ElementContext& ctx, int, Eigen::MatrixXd& ke) {
        for (int q = 0; q < ctx.nq(); ++q) {
          const double w = ctx.weights[q];
          for (int i = 0; i < 4; ++i) {
            const double chi = ctx.p1.values[q * 4 + i];
            for (int d = 0; d < 3; ++d)
              for (int b = 0; b < 10; ++b)
                ke(i, d * 10 + b) -= w * chi * ctx.p2.gradients[q * 10 + b][d];
          }
        }
      };
    case BlockKind::Lr:
      return [](ElementContext& ctx, int, Eigen::MatrixXd& ke) {
        for (int q = 0; q < ctx.nq(); ++q) {
          const double w = ctx.weights[q];
          for (int a = 0; a < 10; ++a)
            for (int b = 0; b < 10; ++b)
              ke(a, b) += w * ctx.p2.gradients[q * 10 + a].dot(ctx.p2.gradients[q * 10 + b]);
        }
      };
    case BlockKind::Qp:
      return [](ElementContext& ctx, int, Eigen::MatrixXd& ke) {
        for (int q = 0; q < ctx.nq(); ++q) {
          const double w = ctx.weights[q];
          for (int a = 0; a < 4; ++a)
            for (int b = 0; b < 4; ++b)
              ke(a, b) += w * ctx.p1.values[q * 4 + a] * ctx.p1.values[q * 4 + b];
        }
      };
  }
  throw std::invalid_argument("assemble_block: unknown block kind");
}

std::pair<const DofMap*, const DofMap*> block_spaces(const DofMaps& maps, BlockKind kind) {
  switch (kind) {
    case BlockKind::C:
    case BlockKind::M: return {&maps.magnetic, &maps.magnetic};
    case BlockKind::G: return {&maps.multiplier, &maps.magnetic};
    case BlockKind::J: return {&maps.velocity, &maps.magnetic};
    case BlockKind::F:
    case BlockKind::Shat: return {&maps.velocity, &maps.velocity};
    case BlockKind::B: return {&maps.pressure, &maps.velocity};
    case BlockKind::Lr: return {&maps.multiplier, &maps.multiplier};
    case BlockKind::Qp: return {&maps.pressure, &maps.pressure};
  }
  throw std::invalid_argument("assemble_block: unknown block kind");
}

SparseMatrix assemble_impl(const TetMesh& mesh, const DofMaps& maps, const PhysParams& params,
                           const MhdState& state, BlockKind kind, bool interior) {
  params.validate();
  auto [rows, cols] = block_spaces(maps, kind);
  return assemble_generic(mesh, maps, &state, *rows, *cols, interior,
                          kernel_for(kind, params));
}

}  // namespace

SparseMatrix assemble_block(const TetMesh& mesh, const DofMaps& maps, const PhysParams& params,
                            const MhdState& state, BlockKind kind) {
  return assemble_impl(mesh, maps, params, state, kind, true);
}

SparseMatrix assemble_block_full(const TetMesh& mesh, const DofMaps& maps,
                                 const PhysParams& params, const MhdState& state,
                                 BlockKind kind) {
  return assemble_impl(mesh, maps, params, state, kind, false);
}

BlockSystem assemble_system(const TetMesh& mesh, const DofMaps& maps, const PhysParams& params,
                            const MhdState& state) {
  BlockSystem sys;
  sys.params = params;
  sys.C = assemble_block(mesh, maps, params, state, BlockKind::C);
  sys.M = assemble_block(mesh, maps, params, state, BlockKind::M);
  sys.G = assemble_block(mesh, maps, params, state, BlockKind::G);
  sys.J = assemble_block(mesh, maps, params, state, BlockKind::J);
  sys.F = assemble_block(mesh, maps, params, state, BlockKind::F);
  sys.B = assemble_block(mesh, maps, params, state, BlockKind::B);
  sys.Lr = assemble_block(mesh, maps, params, state, BlockKind::Lr);
  sys.Qp = assemble_block(mesh, maps, params, state, BlockKind::Qp);
  sys.Shat = assemble_block(mesh, maps, params, state, BlockKind::Shat);
  sys.Gt = sys.G.transposed();
  sys.Jt = sys.J.transposed();
  sys.Bt = sys.B.transposed();
  sys.nb = maps.magnetic.n_interior();
  sys.nr = maps.multiplier.n_interior();
  sys.nu = maps.velocity.n_interior();
  sys.np = maps.pressure.n_interior();
  return sys;
}

void update_state_blocks(BlockSystem& sys, const TetMesh& mesh, const DofMaps& maps,
                         const PhysParams& params, const MhdState& state) {
  sys.J = assemble_block(mesh, maps, params, state, BlockKind::J);
  sys.F = assemble_block(mesh, maps, params, state, BlockKind::F);
  sys.Shat = assemble_block(mesh, maps, params, state, BlockKind::Shat);
  sys.Jt = sys.J.transposed();
}

void apply_block_operator(const BlockSystem& sys, const std::vector<double>& x,
                          std::vector<double>& y) {
  if (static_cast<int>(x.size()) != sys.total())
    throw std::invalid_argument("apply_block_operator: dimension mismatch");
  y.assign(sys.total(), 0.0);

  const auto xb = std::vector<double>(x.begin(), x.begin() + sys.nb);
  const auto xr = std::vector<double>(x.begin() + sys.offset_r(), x.begin() + sys.offset_u());
  const auto xu = std::vector<double>(x.begin() + sys.offset_u(), x.begin() + sys.offset_p());
  const auto xp = std::vector<double>(x.begin() + sys.offset_p(), x.end());

  std::vector<double> tmp;
  auto add_to = [&](int offset, const std::vector<double>& v, double scale) {
    for (std::size_t i = 0; i < v.size(); ++i) y[offset + i] += scale * v[i];
  };

  sys.C.apply(xb, tmp);
  add_to(sys.offset_b(), tmp, 1.0);
  sys.Gt.apply(xr, tmp);
  add_to(sys.offset_b(), tmp, 1.0);
  sys.Jt.apply(xu, tmp);
  add_to(sys.offset_b(), tmp, 1.0);

  sys.G.apply(xb, tmp);
  add_to(sys.offset_r(), tmp, 1.0);

  sys.J.apply(xb, tmp);
  add_to(sys.offset_u(), tmp, -1.0);
  sys.F.apply(xu, tmp);
  add_to(sys.offset_u(), tmp, 1.0);
  sys.Bt.apply(xp, tmp);
  add_to(sys.offset_u(), tmp, 1.0);

  sys.B.apply(xu, tmp);
  add_to(sys.offset_p(), tmp, 1.0);
}

std::vector<double> assemble_residuals(const TetMesh& mesh, const DofMaps& maps,
                                       const PhysParams& params, const MhdState& state,
                                       const VectorField& f, const VectorField& f_b) {
  params.validate();
  const double S = params.S;
  const double SRm_inv = params.S / params.Rm;
  const double invRe = 1.0 / params.Re;
  const double gamma = params.gamma;

  std::vector<double> rb(maps.magnetic.n_dofs, 0.0);
  std::vector<double> rr(maps.multiplier.n_dofs, 0.0);
  std::vector<double> ru(maps.velocity.n_dofs, 0.0);
  std::vector<double> rp(maps.pressure.n_dofs, 0.0);

  ElementContext ctx(mesh, maps, &state);
  for (int t = 0; t < mesh.n_tets(); ++t) {
    ctx.bind(t);
    ctx.eval_velocity_state(t);
    ctx.eval_magnetic_state(t);
    ctx.eval_multiplier_state(t);
    ctx.eval_pressure_state(t);

    for (int q = 0; q < ctx.nq(); ++q) {
      const double w = ctx.weights[q];
      const Eigen::Vector3d fq = f ? f(ctx.points[q]) : Eigen::Vector3d::Zero();
      const Eigen::Vector3d fbq = f_b ? f_b(ctx.points[q]) : Eigen::Vector3d::Zero();
      const Eigen::Vector3d b_cross_u = ctx.b_val[q].cross(ctx.u_val[q]);
      const Eigen::Vector3d conv = ctx.u_grad[q] * ctx.u_val[q];  // (u.grad)u

      // magnetic residual: (f_b, phi) - S/Rm (curl B, curl phi)
      //                    - (grad r, phi) - S (B x u, curl phi)
      for (int i = 0; i < 12; ++i) {
        const double sg = ctx.maps.magnetic.cell_sign(t, i);
        const Eigen::Vector3d& phi = ctx.ned.vector_values[q * 12 + i];
        const Eigen::Vector3d& curl_phi = ctx.ned.curls[i];
        double v = fbq.dot(phi) - SRm_inv * ctx.b_curl.dot(curl_phi) -
                   ctx.r_grad[q].dot(phi) - S * b_cross_u.dot(curl_phi);
        rb[ctx.maps.magnetic.cell_dof(t, i)] += w * sg * v;
      }

      // multiplier residual: -(B, grad s)
      for (int a = 0; a < 10; ++a)
        rr[ctx.maps.multiplier.cell_dof(t, a)] -=
            w * ctx.b_val[q].dot(ctx.p2.gradients[q * 10 + a]);

      // velocity residual: (f, v) - F(u;u,v) + S (curl B, B x v) + (p, div v)
      for (int c = 0; c < 3; ++c) {
        const Eigen::Vector3d b_cross_e = ctx.b_val[q].cross(Eigen::Vector3d::Unit(c));
        const double lorentz = S * ctx.b_curl.dot(b_cross_e);
        for (int a = 0; a < 10; ++a) {
          const double phi = ctx.p2.values[q * 10 + a];
          const Eigen::Vector3d& dphi = ctx.p2.gradients[q * 10 + a];
          double v = fq[c] * phi - invRe * ctx.u_grad[q].row(c).dot(dphi) - conv[c] * phi -
                     gamma * ctx.u_div[q] * dphi[c] + lorentz * phi +
                     ctx.p_val[q] * dphi[c];
          ru[ctx.maps.velocity.cell_dof(t, c * 10 + a)] += w * v;
        }
      }

      // pressure residual: (div u, q)
      for (int i = 0; i < 4; ++i)
        rp[ctx.maps.pressure.cell_dof(t, i)] += w * ctx.u_div[q] * ctx.p1.values[q * 4 + i];
    }
  }

  std::vector<double> out;
  out.reserve(maps.magnetic.n_interior() + maps.multiplier.n_interior() +
              maps.velocity.n_interior() + maps.pressure.n_interior());
  for (int d : maps.magnetic.interior) out.push_back(rb[d]);
  for (int d : maps.multiplier.interior) out.push_back(rr[d]);
  for (int d : maps.velocity.interior) out.push_back(ru[d]);
  for (int d : maps.pressure.interior) out.push_back(rp[d]);
  return out;
}

std::vector<double> assemble_load(const TetMesh& mesh, const DofMap& map, const VectorField& f) {
  std::vector<double> full(map.n_dofs, 0.0);
  const QuadratureRule rule = quad_rule(kAssemblyOrder);
  if (map.kind == SpaceKind::VelocityP2) {
    const RefBasis ref = eval_basis(BasisKind::LagrangeP2, rule.points);
    for (int t = 0; t < mesh.n_tets(); ++t) {
      const auto& tet = mesh.tets[t];
      const TetGeometry geom = make_tet_geometry(mesh.vertices[tet[0]], mesh.vertices[tet[1]],
                                                 mesh.vertices[tet[2]], mesh.vertices[tet[3]]);
      for (int q = 0; q < rule.size(); ++q) {
        const double w = rule.weights[q] * geom.det;
        const Eigen::Vector3d fq = f(geom.map(rule.points[q]));
        for (int c = 0; c < 3; ++c)
          for (int a = 0; a < 10; ++a)
            full[map.cell_dof(t, c * 10 + a)] += w * fq[c] * ref.values[q * 10 + a];
      }
    }
  } else if (map.kind == SpaceKind::MagneticNed2) {
    const RefBasis ref = eval_basis(BasisKind::Nedelec2_1, rule.points);
    for (int t = 0; t < mesh.n_tets(); ++t) {
      const auto& tet = mesh.tets[t];
      const TetGeometry geom = make_tet_geometry(mesh.vertices[tet[0]], mesh.vertices[tet[1]],
                                                 mesh.vertices[tet[2]], mesh.vertices[tet[3]]);
      const PhysBasis phys = map_to_physical(geom, ref);
      for (int q = 0; q < rule.size(); ++q) {
        const double w = rule.weights[q] * phys.weight_scale;
        const Eigen::Vector3d fq = f(geom.map(rule.points[q]));
        for (int i = 0; i < 12; ++i)
          full[map.cell_dof(t, i)] +=
              w * map.cell_sign(t, i) * fq.dot(phys.vector_values[q * 12 + i]);
      }
    }
  } else {
    throw std::invalid_argument("assemble_load: vector spaces only");
  }
  return restrict_vector(full, map);
}

SparseMatrix restrict_interior(const SparseMatrix& full, const DofMap& rows, const DofMap& cols) {
  TripletBuffer buf(rows.n_interior(), cols.n_interior());
  for (int i = 0; i < full.rows(); ++i) {
    const int ii = rows.interior_index[i];
    if (ii < 0) continue;
    for (int k = full.row_offsets()[i]; k < full.row_offsets()[i + 1]; ++k) {
      const int jj = cols.interior_index[full.col_indices()[k]];
      if (jj >= 0) buf.add(ii, jj, full.values()[k]);
    }
  }
  return buf.compress();
}

EliminatedSystem apply_dirichlet(const SparseMatrix& full, const std::vector<double>& rhs_full,
                                 const DofMap& map, const std::vector<double>& bc_values) {
  if (static_cast<int>(bc_values.size()) != map.n_dofs)
    throw std::invalid_argument("apply_dirichlet: bc vector length mismatch");
  EliminatedSystem out;
  out.matrix = restrict_interior(full, map, map);
  out.rhs.resize(map.n_interior());
  for (int ii = 0; ii < map.n_interior(); ++ii) {
    const int i = map.interior[ii];
    double v = rhs_full[i];
    for (int k = full.row_offsets()[i]; k < full.row_offsets()[i + 1]; ++k) {
      const int j = full.col_indices()[k];
      if (map.interior_index[j] < 0) v -= full.values()[k] * bc_values[j];
    }
    out.rhs[ii] = v;
  }
  return out;
}

std::vector<double> restrict_vector(const std::vector<double>& full, const DofMap& map) {
  std::vector<double> out(map.n_interior());
  for (int ii = 0; ii < map.n_interior(); ++ii) out[ii] = full[map.interior[ii]];
  return out;
}

void add_interior_to_full(const std::vector<double>& interior, const DofMap& map, double scale,
                          std::vector<double>& full) {
  for (int ii = 0; ii < map.n_interior(); ++ii)
    full[map.interior[ii]] += scale * interior[ii];
}

}  // namespace almhd
