#include "almhd/element.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <stdexcept>

namespace almhd {

namespace {

// Barycentric coordinates and their (constant) gradients.
inline std::array<double, 4> bary(const Eigen::Vector3d& p) {
  return {1.0 - p.x() - p.y() - p.z(), p.x(), p.y(), p.z()};
}

const std::array<Eigen::Vector3d, 4> kBaryGrad = {
    Eigen::Vector3d(-1, -1, -1), Eigen::Vector3d(1, 0, 0), Eigen::Vector3d(0, 1, 0),
    Eigen::Vector3d(0, 0, 1)};

// Coefficients of the 12 Nedelec basis functions in the monomial basis
// {e_c, x e_c, y e_c, z e_c}, c = 0..2 (index c*4 + {1,x,y,z}).
// Built once by inverting the edge-moment matrix.
const Eigen::Matrix<double, 12, 12>& nedelec_coefficients() {
  static const Eigen::Matrix<double, 12, 12> coeffs = [] {
    // 2-point Gauss on [0,1]: exact for the quadratic edge integrands.
    const double g0 = 0.5 - std::sqrt(3.0) / 6.0;
    const double g1 = 0.5 + std::sqrt(3.0) / 6.0;
    const std::array<double, 2> gt = {g0, g1};
    const std::array<double, 2> gw = {0.5, 0.5};

    auto monomial = [](int j, const Eigen::Vector3d& p) -> Eigen::Vector3d {
      const int comp = j / 4;
      const int term = j % 4;
      const double scalar = term == 0 ? 1.0 : p[term - 1];
      Eigen::Vector3d v = Eigen::Vector3d::Zero();
      v[comp] = scalar;
      return v;
    };

    Eigen::Matrix<double, 12, 12> M;
    for (int e = 0; e < 6; ++e) {
      const Eigen::Vector3d a = ref_vertex(kTetEdges[e][0]);
      const Eigen::Vector3d b = ref_vertex(kTetEdges[e][1]);
      const Eigen::Vector3d tangent = b - a;
      for (int m = 0; m < 2; ++m) {
        for (int j = 0; j < 12; ++j) {
          double integral = 0.0;
          for (int q = 0; q < 2; ++q) {
            const Eigen::Vector3d p = a + gt[q] * tangent;
            const double weight_fn = (m == 0) ? 1.0 - gt[q] : gt[q];
            integral += gw[q] * weight_fn * monomial(j, p).dot(tangent);
          }
          M(2 * e + m, j) = integral;
        }
      }
    }
    // Basis phi_i = sum_j C(i,j) m_j with moment_k(phi_i) = delta_ki.
    return Eigen::Matrix<double, 12, 12>(M.transpose().inverse());
  }();
  return coeffs;
}

}  // namespace

Eigen::Vector3d ref_vertex(int i) {
  switch (i) {
    case 0: return {0, 0, 0};
    case 1: return {1, 0, 0};
    case 2: return {0, 1, 0};
    case 3: return {0, 0, 1};
    default: throw std::out_of_range("ref_vertex: index must be 0..3");
  }
}

RefBasis eval_basis(BasisKind kind, const std::vector<Eigen::Vector3d>& points) {
  RefBasis basis;
  basis.kind = kind;
  basis.n_points = static_cast<int>(points.size());

  switch (kind) {
    case BasisKind::LagrangeP1: {
      basis.ndofs = 4;
      basis.values.reserve(points.size() * 4);
      basis.gradients.reserve(points.size() * 4);
      for (const auto& p : points) {
        const auto l = bary(p);
        for (int i = 0; i < 4; ++i) {
          basis.values.push_back(l[i]);
          basis.gradients.push_back(kBaryGrad[i]);
        }
      }
      break;
    }
    case BasisKind::LagrangeP2: {
      basis.ndofs = 10;
      basis.values.reserve(points.size() * 10);
      basis.gradients.reserve(points.size() * 10);
      for (const auto& p : points) {
        const auto l = bary(p);
        for (int i = 0; i < 4; ++i) {
          basis.values.push_back(l[i] * (2.0 * l[i] - 1.0));
          basis.gradients.push_back((4.0 * l[i] - 1.0) * kBaryGrad[i]);
        }
        for (int e = 0; e < 6; ++e) {
          const int a = kTetEdges[e][0], b = kTetEdges[e][1];
          basis.values.push_back(4.0 * l[a] * l[b]);
          basis.gradients.push_back(4.0 * (l[a] * kBaryGrad[b] + l[b] * kBaryGrad[a]));
        }
      }
      break;
    }
    case BasisKind::Nedelec2_1: {
      basis.ndofs = 12;
      const auto& C = nedelec_coefficients();
      basis.vector_values.reserve(points.size() * 12);
      for (const auto& p : points) {
        for (int i = 0; i < 12; ++i) {
          Eigen::Vector3d v = Eigen::Vector3d::Zero();
          for (int c = 0; c < 3; ++c)
            v[c] = C(i, c * 4) + C(i, c * 4 + 1) * p.x() + C(i, c * 4 + 2) * p.y() +
                   C(i, c * 4 + 3) * p.z();
          basis.vector_values.push_back(v);
        }
      }
      basis.curls.resize(12);
      for (int i = 0; i < 12; ++i) {
        // curl of (a_c + b_c x + g_c y + d_c z)_c is constant
        basis.curls[i] = Eigen::Vector3d(C(i, 2 * 4 + 2) - C(i, 1 * 4 + 3),
                                         C(i, 0 * 4 + 3) - C(i, 2 * 4 + 1),
                                         C(i, 1 * 4 + 1) - C(i, 0 * 4 + 2));
      }
      break;
    }
  }
  return basis;
}

TetGeometry make_tet_geometry(const Eigen::Vector3d& p0, const Eigen::Vector3d& p1,
                              const Eigen::Vector3d& p2, const Eigen::Vector3d& p3) {
  TetGeometry geom;
  geom.v0 = p0;
  geom.jacobian.col(0) = p1 - p0;
  geom.jacobian.col(1) = p2 - p0;
  geom.jacobian.col(2) = p3 - p0;
  geom.det = geom.jacobian.determinant();
  if (!(geom.det > 0.0))
    throw std::invalid_argument("make_tet_geometry: non-positive Jacobian determinant");
  geom.jacobian_inv_t = geom.jacobian.inverse().transpose();
  return geom;
}

PhysBasis map_to_physical(const TetGeometry& geom, const RefBasis& ref) {
  if (!(geom.det > 0.0))
    throw std::invalid_argument("map_to_physical: non-positive Jacobian determinant");
  PhysBasis phys;
  phys.kind = ref.kind;
  phys.ndofs = ref.ndofs;
  phys.n_points = ref.n_points;
  phys.weight_scale = std::abs(geom.det);
  phys.values = ref.values;  // scalars unchanged
  phys.gradients.resize(ref.gradients.size());
  for (std::size_t i = 0; i < ref.gradients.size(); ++i)
    phys.gradients[i] = geom.jacobian_inv_t * ref.gradients[i];
  phys.vector_values.resize(ref.vector_values.size());
  for (std::size_t i = 0; i < ref.vector_values.size(); ++i)
    phys.vector_values[i] = geom.jacobian_inv_t * ref.vector_values[i];
  phys.curls.resize(ref.curls.size());
  for (std::size_t i = 0; i < ref.curls.size(); ++i)
    phys.curls[i] = geom.jacobian * ref.curls[i] / geom.det;
  return phys;
}

}  // namespace almhd
