#pragma once

#include <Eigen/Dense>
#include <array>
#include <map>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace seamless {

using Vec2 = Eigen::Vector2d;
using Vec3 = Eigen::Vector3d;

struct Error : std::runtime_error {
  // 1 = validation failure, 2 = internal/numerical failure, 3 = I/O failure
  int code;
  Error(int c, const std::string& msg) : std::runtime_error(msg), code(c) {}
};

using VPair = std::pair<int, int>;

// Triangle mesh with halfedge connectivity.
//
// Halfedge h = 3*f+i runs from tri[f][i] to tri[f][(i+1)%3]; twin(h) = -1 on
// the boundary. Vertices carry a geometric id `orig` that is shared between
// copies created by cutting, so the projection to the uncut surface is always
// available. `seam` pairs directed boundary edges that came from the same cut
// edge: if seam[(a,b)] = (c,d) then a,d and b,c are copies of one point.
class Mesh {
 public:
  std::vector<Vec3> pos;
  std::vector<std::array<int, 3>> tri;
  std::vector<int> orig;
  std::vector<int> cone_k;            // 0 = regular vertex
  std::vector<uint8_t> flag;          // on-path / scratch marker
  std::vector<Vec2> uv;               // empty until flattened
  std::map<VPair, VPair> seam;

  void init_ids();                    // orig = identity, flags cleared
  void build();                       // connectivity from tri; checks manifoldness
  void check_closed() const;

  int nv() const { return (int)pos.size(); }
  int nf() const { return (int)tri.size(); }

  int he_from(int h) const { return tri[h / 3][h % 3]; }
  int he_to(int h) const { return tri[h / 3][(h % 3 + 1) % 3]; }
  int he_next(int h) const { return 3 * (h / 3) + (h % 3 + 1) % 3; }
  int he_prev(int h) const { return 3 * (h / 3) + (h % 3 + 2) % 3; }
  int twin(int h) const { return twin_[h]; }
  int halfedge(int a, int b) const;   // -1 if absent
  bool has_edge(int a, int b) const { return halfedge(a, b) >= 0 || halfedge(b, a) >= 0; }
  bool is_boundary_edge(int a, int b) const;
  bool is_boundary_vertex(int v) const { return boundary_vertex_[v] != 0; }
  int boundary_next(int h) const;     // next boundary halfedge after boundary h

  double edge_len3(int a, int b) const { return (pos[a] - pos[b]).norm(); }

  long euler() const;
  std::vector<std::vector<int>> boundary_loops() const;  // halfedge lists
  int component_count() const;
  std::vector<int> face_component() const;
  int genus() const;                  // connected mesh, with or without boundary
  std::vector<std::vector<int>> vertex_faces() const;

  // Splits edge (a,b) at parameter t from a; returns the new vertex. The new
  // vertex gets a fresh geometric id. Interior edges only unless the mesh is
  // open at (a,b); seam-paired boundary edges must go through split_seam_pair.
  int split_edge(int a, int b, double t = 0.5);
  // Splits a seam-paired boundary edge together with its mate so the pairing
  // stays one-to-one; returns new vertices (this side, mate side).
  VPair split_seam_pair(int a, int b, double t);

  // Cuts along the given interior edges; vertices are duplicated per sector
  // and seam pairs recorded for both sides of each cut edge.
  void cut_along_edges(const std::vector<VPair>& edges);

  int fresh_orig() { return next_orig_++; }

 private:
  std::vector<int> twin_;
  std::vector<uint8_t> boundary_vertex_;
  std::unordered_map<long long, int> hmap_;
  int next_orig_ = 0;

  long long ekey(int a, int b) const { return (long long)a * (long long)(1 << 30) + b; }
};

// Edge path as an ordered vertex list; consecutive entries share a mesh edge.
using EdgePath = std::vector<int>;

void check_path(const Mesh& m, const EdgePath& p, bool closed);

// Splits every interior edge whose endpoints are both flagged, so path
// searches can route between flagged obstacles; new vertices are unflagged.
// Edges listed in `keep` are left alone. Returns the number of splits.
int refine_for_paths(Mesh& m, const std::vector<VPair>& keep = {});

}  // namespace seamless
