#include "almhd/space.hpp"

#include <cmath>
#include <stdexcept>

#include "almhd/quadrature.hpp"

namespace almhd {

namespace {

TetGeometry geometry_of(const TetMesh& mesh, int t) {
  const auto& tet = mesh.tets[t];
  return make_tet_geometry(mesh.vertices[tet[0]], mesh.vertices[tet[1]],
                           mesh.vertices[tet[2]], mesh.vertices[tet[3]]);
}

void finalize_interior(DofMap& map) {
  map.interior_index.assign(map.n_dofs, -1);
  for (int d = 0; d < map.n_dofs; ++d) {
    if (!map.is_boundary[d]) {
      map.interior_index[d] = static_cast<int>(map.interior.size());
      map.interior.push_back(d);
    }
  }
}

}  // namespace

DofMap build_dofmap(const TetMesh& mesh, SpaceKind kind) {
  const int V = mesh.n_vertices();
  const int E = mesh.n_edges();
  const int T = mesh.n_tets();

  DofMap map;
  map.kind = kind;

  switch (kind) {
    case SpaceKind::PressureP1: {
      map.n_dofs = V;
      map.dofs_per_cell = 4;
      map.cell_dofs.reserve(static_cast<std::size_t>(T) * 4);
      for (int t = 0; t < T; ++t)
        for (int v : mesh.tets[t]) map.cell_dofs.push_back(v);
      map.cell_dof_signs.assign(map.cell_dofs.size(), 1);
      map.is_boundary.assign(map.n_dofs, 0);  // no Dirichlet data on pressure
      break;
    }
    case SpaceKind::MultiplierP2: {
      map.n_dofs = V + E;
      map.dofs_per_cell = 10;
      map.cell_dofs.reserve(static_cast<std::size_t>(T) * 10);
      for (int t = 0; t < T; ++t) {
        for (int v : mesh.tets[t]) map.cell_dofs.push_back(v);
        for (int e : mesh.tet_edges[t]) map.cell_dofs.push_back(V + e);
      }
      map.cell_dof_signs.assign(map.cell_dofs.size(), 1);
      map.is_boundary.assign(map.n_dofs, 0);
      for (int v = 0; v < V; ++v) map.is_boundary[v] = mesh.vertex_on_boundary[v];
      for (int e = 0; e < E; ++e) map.is_boundary[V + e] = mesh.edge_on_boundary[e];
      break;
    }
    case SpaceKind::VelocityP2: {
      const int per_comp = V + E;
      map.n_dofs = 3 * per_comp;
      map.dofs_per_cell = 30;
      map.cell_dofs.reserve(static_cast<std::size_t>(T) * 30);
      for (int t = 0; t < T; ++t)
        for (int c = 0; c < 3; ++c) {
          for (int v : mesh.tets[t]) map.cell_dofs.push_back(c * per_comp + v);
          for (int e : mesh.tet_edges[t]) map.cell_dofs.push_back(c * per_comp + V + e);
        }
      map.cell_dof_signs.assign(map.cell_dofs.size(), 1);
      map.is_boundary.assign(map.n_dofs, 0);
      for (int c = 0; c < 3; ++c) {
        for (int v = 0; v < V; ++v)
          map.is_boundary[c * per_comp + v] = mesh.vertex_on_boundary[v];
        for (int e = 0; e < E; ++e)
          map.is_boundary[c * per_comp + V + e] = mesh.edge_on_boundary[e];
      }
      break;
    }
    case SpaceKind::MagneticNed2: {
      map.n_dofs = 2 * E;
      map.dofs_per_cell = 12;
      map.cell_dofs.resize(static_cast<std::size_t>(T) * 12);
      map.cell_dof_signs.assign(static_cast<std::size_t>(T) * 12, 1);
      for (int t = 0; t < T; ++t)
        for (int le = 0; le < 6; ++le) {
          const int ge = mesh.tet_edges[t][le];
          const int sign = mesh.tet_edge_signs[t][le];
          const std::size_t slot = static_cast<std::size_t>(t) * 12 + 2 * le;
          if (sign > 0) {
            map.cell_dofs[slot] = 2 * ge;
            map.cell_dofs[slot + 1] = 2 * ge + 1;
          } else {
            // reversed edge: moments swap and both flip sign
            map.cell_dofs[slot] = 2 * ge + 1;
            map.cell_dofs[slot + 1] = 2 * ge;
            map.cell_dof_signs[slot] = -1;
            map.cell_dof_signs[slot + 1] = -1;
          }
        }
      map.is_boundary.assign(map.n_dofs, 0);
      for (int e = 0; e < E; ++e)
        if (mesh.edge_on_boundary[e]) {
          map.is_boundary[2 * e] = 1;
          map.is_boundary[2 * e + 1] = 1;
        }
      break;
    }
  }

  finalize_interior(map);
  return map;
}

FieldVector interpolate(const TetMesh& mesh, const DofMap& map, const ScalarField& f) {
  const int V = mesh.n_vertices();
  FieldVector field{map.kind, std::vector<double>(map.n_dofs, 0.0)};
  switch (map.kind) {
    case SpaceKind::PressureP1:
      for (int v = 0; v < V; ++v) field.coeffs[v] = f(mesh.vertices[v]);
      break;
    case SpaceKind::MultiplierP2: {
      for (int v = 0; v < V; ++v) field.coeffs[v] = f(mesh.vertices[v]);
      for (int e = 0; e < mesh.n_edges(); ++e) {
        const Eigen::Vector3d mid =
            0.5 * (mesh.vertices[mesh.edges[e][0]] + mesh.vertices[mesh.edges[e][1]]);
        field.coeffs[V + e] = f(mid);
      }
      break;
    }
    default:
      throw std::invalid_argument("interpolate: scalar field into a vector space");
  }
  return field;
}

FieldVector interpolate(const TetMesh& mesh, const DofMap& map, const VectorField& f) {
  const int V = mesh.n_vertices();
  const int E = mesh.n_edges();
  FieldVector field{map.kind, std::vector<double>(map.n_dofs, 0.0)};
  switch (map.kind) {
    case SpaceKind::VelocityP2: {
      const int per_comp = V + E;
      for (int v = 0; v < V; ++v) {
        const Eigen::Vector3d val = f(mesh.vertices[v]);
        for (int c = 0; c < 3; ++c) field.coeffs[c * per_comp + v] = val[c];
      }
      for (int e = 0; e < E; ++e) {
        const Eigen::Vector3d mid =
            0.5 * (mesh.vertices[mesh.edges[e][0]] + mesh.vertices[mesh.edges[e][1]]);
        const Eigen::Vector3d val = f(mid);
        for (int c = 0; c < 3; ++c) field.coeffs[c * per_comp + V + e] = val[c];
      }
      break;
    }
    case SpaceKind::MagneticNed2: {
      std::vector<double> gt, gw;
      gauss_legendre_01(5, gt, gw);
      for (int e = 0; e < E; ++e) {
        const Eigen::Vector3d a = mesh.vertices[mesh.edges[e][0]];
        const Eigen::Vector3d b = mesh.vertices[mesh.edges[e][1]];
        const Eigen::Vector3d tangent = b - a;
        double m0 = 0.0, m1 = 0.0;
        for (std::size_t q = 0; q < gt.size(); ++q) {
          const double ft = f(a + gt[q] * tangent).dot(tangent);
          m0 += gw[q] * (1.0 - gt[q]) * ft;
          m1 += gw[q] * gt[q] * ft;
        }
        field.coeffs[2 * e] = m0;
        field.coeffs[2 * e + 1] = m1;
      }
      break;
    }
    default:
      throw std::invalid_argument("interpolate: vector field into a scalar space");
  }
  return field;
}

double ErrorNorms::full() const { return std::sqrt(l2 * l2 + semi * semi); }

namespace {

BasisKind basis_of(SpaceKind kind) {
  switch (kind) {
    case SpaceKind::PressureP1: return BasisKind::LagrangeP1;
    case SpaceKind::MultiplierP2:
    case SpaceKind::VelocityP2: return BasisKind::LagrangeP2;
    case SpaceKind::MagneticNed2: return BasisKind::Nedelec2_1;
  }
  throw std::logic_error("basis_of: unreachable");
}

}  // namespace

ErrorNorms error_norms(const TetMesh& mesh, const DofMap& map, const FieldVector& fe,
                       const ScalarField& exact, const VectorField& exact_grad) {
  const QuadratureRule rule = quad_rule(6);
  const RefBasis ref = eval_basis(basis_of(map.kind), rule.points);
  const int nd = map.dofs_per_cell;

  double l2 = 0.0, semi = 0.0;
  for (int t = 0; t < mesh.n_tets(); ++t) {
    const TetGeometry geom = geometry_of(mesh, t);
    const PhysBasis phys = map_to_physical(geom, ref);
    for (int q = 0; q < rule.size(); ++q) {
      const Eigen::Vector3d x = geom.map(rule.points[q]);
      double val = 0.0;
      Eigen::Vector3d grad = Eigen::Vector3d::Zero();
      for (int i = 0; i < nd; ++i) {
        const double c = fe.coeffs[map.cell_dof(t, i)];
        val += c * phys.values[q * nd + i];
        grad += c * phys.gradients[q * nd + i];
      }
      const double w = rule.weights[q] * phys.weight_scale;
      const double dv = val - exact(x);
      l2 += w * dv * dv;
      if (exact_grad) {
        const Eigen::Vector3d dg = grad - exact_grad(x);
        semi += w * dg.squaredNorm();
      }
    }
  }
  return {std::sqrt(l2), std::sqrt(semi)};
}

ErrorNorms error_norms(const TetMesh& mesh, const DofMap& map, const FieldVector& fe,
                       const VectorField& exact, const MatrixField& exact_grad) {
  if (map.kind != SpaceKind::VelocityP2)
    throw std::invalid_argument("error_norms: vector overload expects the velocity space");
  const QuadratureRule rule = quad_rule(6);
  const RefBasis ref = eval_basis(BasisKind::LagrangeP2, rule.points);
  const int per_comp = ref.ndofs;  // 10 scalar dofs per component

  double l2 = 0.0, semi = 0.0;
  for (int t = 0; t < mesh.n_tets(); ++t) {
    const TetGeometry geom = geometry_of(mesh, t);
    const PhysBasis phys = map_to_physical(geom, ref);
    for (int q = 0; q < rule.size(); ++q) {
      const Eigen::Vector3d x = geom.map(rule.points[q]);
      Eigen::Vector3d val = Eigen::Vector3d::Zero();
      Eigen::Matrix3d grad = Eigen::Matrix3d::Zero();  // row c = grad of comp c
      for (int c = 0; c < 3; ++c)
        for (int i = 0; i < per_comp; ++i) {
          const double coef = fe.coeffs[map.cell_dof(t, c * per_comp + i)];
          val[c] += coef * phys.values[q * per_comp + i];
          grad.row(c) += coef * phys.gradients[q * per_comp + i].transpose();
        }
      const double w = rule.weights[q] * phys.weight_scale;
      l2 += w * (val - exact(x)).squaredNorm();
      if (exact_grad) semi += w * (grad - exact_grad(x)).squaredNorm();
    }
  }
  return {std::sqrt(l2), std::sqrt(semi)};
}

ErrorNorms error_norms_hcurl(const TetMesh& mesh, const DofMap& map, const FieldVector& fe,
                             const VectorField& exact, const VectorField& exact_curl) {
  if (map.kind != SpaceKind::MagneticNed2)
    throw std::invalid_argument("error_norms_hcurl expects the edge-element space");
  const QuadratureRule rule = quad_rule(6);
  const RefBasis ref = eval_basis(BasisKind::Nedelec2_1, rule.points);
  const int nd = 12;

  double l2 = 0.0, curl_l2 = 0.0;
  for (int t = 0; t < mesh.n_tets(); ++t) {
    const TetGeometry geom = geometry_of(mesh, t);
    const PhysBasis phys = map_to_physical(geom, ref);
    Eigen::Vector3d curl_val = Eigen::Vector3d::Zero();  // constant per tet
    for (int i = 0; i < nd; ++i)
      curl_val += fe.coeffs[map.cell_dof(t, i)] * map.cell_sign(t, i) * phys.curls[i];
    for (int q = 0; q < rule.size(); ++q) {
      const Eigen::Vector3d x = geom.map(rule.points[q]);
      Eigen::Vector3d val = Eigen::Vector3d::Zero();
      for (int i = 0; i < nd; ++i)
        val += fe.coeffs[map.cell_dof(t, i)] * map.cell_sign(t, i) *
               phys.vector_values[q * nd + i];
      const double w = rule.weights[q] * phys.weight_scale;
      l2 += w * (val - exact(x)).squaredNorm();
      if (exact_curl) curl_l2 += w * (curl_val - exact_curl(x)).squaredNorm();
    }
  }
  return {std::sqrt(l2), std::sqrt(curl_l2)};
}

std::vector<double> eval_scalar(const TetMesh& mesh, const DofMap& map,
                                const std::vector<double>& coeffs, int tet,
                                const std::vector<Eigen::Vector3d>& ref_points) {
  const RefBasis ref = eval_basis(basis_of(map.kind), ref_points);
  const int nd = map.dofs_per_cell;
  std::vector<double> out(ref_points.size(), 0.0);
  for (std::size_t q = 0; q < ref_points.size(); ++q)
    for (int i = 0; i < nd; ++i)
      out[q] += coeffs[map.cell_dof(tet, i)] * ref.values[q * nd + i];
  return out;
}

std::vector<Eigen::Vector3d> eval_vector(const TetMesh& mesh, const DofMap& map,
                                         const std::vector<double>& coeffs, int tet,
                                         const std::vector<Eigen::Vector3d>& ref_points) {
  std::vector<Eigen::Vector3d> out(ref_points.size(), Eigen::Vector3d::Zero());
  if (map.kind == SpaceKind::VelocityP2) {
    const RefBasis ref = eval_basis(BasisKind::LagrangeP2, ref_points);
    for (std::size_t q = 0; q < ref_points.size(); ++q)
      for (int c = 0; c < 3; ++c)
        for (int i = 0; i < 10; ++i)
          out[q][c] += coeffs[map.cell_dof(tet, c * 10 + i)] * ref.values[q * 10 + i];
  } else if (map.kind == SpaceKind::MagneticNed2) {
    const TetGeometry geom = geometry_of(mesh, tet);
    const PhysBasis phys = map_to_physical(geom, eval_basis(BasisKind::Nedelec2_1, ref_points));
    for (std::size_t q = 0; q < ref_points.size(); ++q)
      for (int i = 0; i < 12; ++i)
        out[q] += coeffs[map.cell_dof(tet, i)] * map.cell_sign(tet, i) *
                  phys.vector_values[q * 12 + i];
  } else {
    throw std::invalid_argument("eval_vector: scalar space");
  }
  return out;
}

}  // namespace almhd
