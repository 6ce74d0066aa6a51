#pragma once

#include <Eigen/Dense>
#include <array>
#include <cstdint>
#include <string>
#include <vector>

namespace almhd {

struct Box {
  Eigen::Vector3d lo = {0, 0, 0};
  Eigen::Vector3d hi = {1, 1, 1};
};

/// Structured tetrahedral mesh of an axis-aligned box. Each grid cell is
/// split into six tetrahedra sharing the cell's main diagonal (Freudenthal
/// subdivision), so h equals the cell diagonal. All tets are positively
/// oriented; entity tables are immutable after construction.
struct TetMesh {
  std::vector<Eigen::Vector3d> vertices;
  std::vector<std::array<int, 4>> tets;
  std::vector<std::array<int, 2>> edges;  // endpoint indices, first < second
  std::vector<std::array<int, 3>> faces;  // vertex triples, sorted

  /// Global edge ids per tet in local edge order (see kTetEdges), and the
  /// sign +1/-1 telling whether the local direction (low local vertex ->
  /// high) agrees with the global low->high orientation.
  std::vector<std::array<int, 6>> tet_edges;
  std::vector<std::array<std::int8_t, 6>> tet_edge_signs;
  std::vector<std::array<int, 4>> tet_faces;  // face opposite local vertex i

  std::vector<int> boundary_faces;  // ascending
  std::vector<std::uint8_t> vertex_on_boundary;
  std::vector<std::uint8_t> edge_on_boundary;

  double h_max = 0.0;

  int n_vertices() const { return static_cast<int>(vertices.size()); }
  int n_tets() const { return static_cast<int>(tets.size()); }
  int n_edges() const { return static_cast<int>(edges.size()); }
  int n_faces() const { return static_cast<int>(faces.size()); }

  double tet_volume(int t) const;
};

/// Freudenthal mesh of `box` with an n x n x n cell grid.
TetMesh build_box_mesh(int n, const Box& box = Box{});

/// Boundary entity sets, derived purely from face incidence: a face is on the
/// boundary iff it belongs to exactly one tet; vertices/edges are boundary
/// iff they lie on a boundary face.
struct BoundarySets {
  std::vector<int> faces;
  std::vector<std::uint8_t> vertex_on_boundary;
  std::vector<std::uint8_t> edge_on_boundary;
};

BoundarySets classify_boundary(const TetMesh& mesh);

/// Legacy ASCII VTK dump of the bare mesh (cell type 10).
void write_vtk_mesh(const TetMesh& mesh, const std::string& path);

}  // namespace almhd
