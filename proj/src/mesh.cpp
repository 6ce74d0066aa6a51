#include "almhd/mesh.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <stdexcept>

#include "almhd/element.hpp"

namespace almhd {

double TetMesh::tet_volume(int t) const {
  const auto& tet = tets[t];
  const Eigen::Vector3d a = vertices[tet[1]] - vertices[tet[0]];
  const Eigen::Vector3d b = vertices[tet[2]] - vertices[tet[0]];
  const Eigen::Vector3d c = vertices[tet[3]] - vertices[tet[0]];
  return a.cross(b).dot(c) / 6.0;
}

TetMesh build_box_mesh(int n, const Box& box) {
  if (n < 1) throw std::invalid_argument("build_box_mesh: n must be >= 1");
  const Eigen::Vector3d extent = box.hi - box.lo;
  if (!(extent.x() > 0.0 && extent.y() > 0.0 && extent.z() > 0.0))
    throw std::invalid_argument("build_box_mesh: box has non-positive extent");

  TetMesh mesh;
  const int m = n + 1;
  auto vid = [m](int i, int j, int k) { return (i * m + j) * m + k; };

  mesh.vertices.reserve(static_cast<std::size_t>(m) * m * m);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j)
      for (int k = 0; k < m; ++k)
        mesh.vertices.emplace_back(box.lo.x() + extent.x() * i / n,
                                   box.lo.y() + extent.y() * j / n,
                                   box.lo.z() + extent.z() * k / n);

  // Six tets per cell along the main diagonal: one per permutation of the
  // axis order; odd permutations get their last two vertices swapped to keep
  // the orientation positive.
  static const std::array<std::array<int, 3>, 6> perms = {
      {{0, 1, 2}, {0, 2, 1}, {1, 0, 2}, {1, 2, 0}, {2, 0, 1}, {2, 1, 0}}};
  static const std::array<bool, 6> odd = {false, true, true, false, false, true};

  mesh.tets.reserve(static_cast<std::size_t>(6) * n * n * n);
  for (int ci = 0; ci < n; ++ci)
    for (int cj = 0; cj < n; ++cj)
      for (int ck = 0; ck < n; ++ck)
        for (int p = 0; p < 6; ++p) {
          std::array<int, 3> at = {ci, cj, ck};
          std::array<int, 4> tet;
          tet[0] = vid(at[0], at[1], at[2]);
          for (int s = 0; s < 3; ++s) {
            at[perms[p][s]] += 1;
            tet[s + 1] = vid(at[0], at[1], at[2]);
          }
          if (odd[p]) std::swap(tet[2], tet[3]);
          mesh.tets.push_back(tet);
        }

  // Global edge table, sorted lexicographically by (low, high) endpoint.
  {
    std::vector<std::array<int, 2>> pairs;
    pairs.reserve(mesh.tets.size() * 6);
    for (const auto& tet : mesh.tets)
      for (const auto& le : kTetEdges) {
        int a = tet[le[0]], b = tet[le[1]];
        if (a > b) std::swap(a, b);
        pairs.push_back({a, b});
      }
    std::sort(pairs.begin(), pairs.end());
    pairs.erase(std::unique(pairs.begin(), pairs.end()), pairs.end());
    mesh.edges = std::move(pairs);
  }
  std::map<std::array<int, 2>, int> edge_index;
  for (int e = 0; e < mesh.n_edges(); ++e) edge_index[mesh.edges[e]] = e;

  mesh.tet_edges.resize(mesh.tets.size());
  mesh.tet_edge_signs.resize(mesh.tets.size());
  for (int t = 0; t < mesh.n_tets(); ++t) {
    for (int le = 0; le < 6; ++le) {
      int a = mesh.tets[t][kTetEdges[le][0]];
      int b = mesh.tets[t][kTetEdges[le][1]];
      const std::int8_t sign = a < b ? 1 : -1;
      if (a > b) std::swap(a, b);
      mesh.tet_edges[t][le] = edge_index.at({a, b});
      mesh.tet_edge_signs[t][le] = sign;
    }
  }

  // Global face table; local face i is opposite local vertex i.
  {
    std::vector<std::array<int, 3>> triples;
    triples.reserve(mesh.tets.size() * 4);
    static const std::array<std::array<int, 3>, 4> local_faces = {
        {{1, 2, 3}, {0, 2, 3}, {0, 1, 3}, {0, 1, 2}}};
    for (const auto& tet : mesh.tets)
      for (const auto& lf : local_faces) {
        std::array<int, 3> f = {tet[lf[0]], tet[lf[1]], tet[lf[2]]};
        std::sort(f.begin(), f.end());
        triples.push_back(f);
      }
    std::sort(triples.begin(), triples.end());
    triples.erase(std::unique(triples.begin(), triples.end()), triples.end());
    mesh.faces = std::move(triples);

    std::map<std::array<int, 3>, int> face_index;
    for (int f = 0; f < mesh.n_faces(); ++f) face_index[mesh.faces[f]] = f;
    mesh.tet_faces.resize(mesh.tets.size());
    for (int t = 0; t < mesh.n_tets(); ++t)
      for (int lf = 0; lf < 4; ++lf) {
        std::array<int, 3> f;
        int pos = 0;
        for (int v = 0; v < 4; ++v)
          if (v != lf) f[pos++] = mesh.tets[t][v];
        std::sort(f.begin(), f.end());
        mesh.tet_faces[t][lf] = face_index.at(f);
      }
  }

  for (int t = 0; t < mesh.n_tets(); ++t)
    if (!(mesh.tet_volume(t) > 0.0))
      throw std::logic_error("build_box_mesh: non-positive tet volume");

  BoundarySets bd = classify_boundary(mesh);
  mesh.boundary_faces = std::move(bd.faces);
  mesh.vertex_on_boundary = std::move(bd.vertex_on_boundary);
  mesh.edge_on_boundary = std::move(bd.edge_on_boundary);

  mesh.h_max = 0.0;
  for (const auto& e : mesh.edges)
    mesh.h_max = std::max(mesh.h_max, (mesh.vertices[e[1]] - mesh.vertices[e[0]]).norm());

  return mesh;
}

BoundarySets classify_boundary(const TetMesh& mesh) {
  std::vector<int> incidence(mesh.n_faces(), 0);
  for (const auto& tf : mesh.tet_faces)
    for (int f : tf) incidence[f]++;

  BoundarySets bd;
  bd.vertex_on_boundary.assign(mesh.n_vertices(), 0);
  bd.edge_on_boundary.assign(mesh.n_edges(), 0);

  std::map<std::array<int, 2>, int> edge_index;
  for (int e = 0; e < mesh.n_edges(); ++e) edge_index[mesh.edges[e]] = e;

  for (int f = 0; f < mesh.n_faces(); ++f) {
    if (incidence[f] == 1) {
      bd.faces.push_back(f);
      const auto& tri = mesh.faces[f];
      for (int v : tri) bd.vertex_on_boundary[v] = 1;
      bd.edge_on_boundary[edge_index.at({tri[0], tri[1]})] = 1;
      bd.edge_on_boundary[edge_index.at({tri[0], tri[2]})] = 1;
      bd.edge_on_boundary[edge_index.at({tri[1], tri[2]})] = 1;
    } else if (incidence[f] != 2) {
      throw std::logic_error("classify_boundary: face shared by more than two tets");
    }
  }
  return bd;
}

void write_vtk_mesh(const TetMesh& mesh, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  out << "# vtk DataFile Version 2.0\n";
  out << "tetrahedral box mesh\n";
  out << "ASCII\n";
  out << "DATASET UNSTRUCTURED_GRID\n";
  out << "POINTS " << mesh.n_vertices() << " double\n";
  for (const auto& v : mesh.vertices) out << v.x() << " " << v.y() << " " << v.z() << "\n";
  out << "CELLS " << mesh.n_tets() << " " << 5 * mesh.n_tets() << "\n";
  for (const auto& t : mesh.tets)
    out << "4 " << t[0] << " " << t[1] << " " << t[2] << " " << t[3] << "\n";
  out << "CELL_TYPES " << mesh.n_tets() << "\n";
  for (int t = 0; t < mesh.n_tets(); ++t) out << "10\n";
}

}  // namespace almhd
