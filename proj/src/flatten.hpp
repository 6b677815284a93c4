#pragma once

#include <set>
#include <vector>

#include "cutgraph.hpp"

namespace seamless {

// Result of cutting the metric-carrying surface to the cones and laying each
// disk component out isometrically in the plane.
//
// `mc` is the fully cut mesh with uv filled; `mlen` the flat metric length per
// halfedge; `tree_origs` the geometric ids of cone-tree vertices (roots and
// cones included), which classify boundary edges: an edge is a tree edge iff
// both endpoint ids are in the set. `node_origs`/`extra_origs` are carried
// over so corner flags and splitting-path segments stay derivable after
// refinement.
struct Flattening {
  Mesh mc;
  std::vector<uint8_t> corner;
  std::vector<double> mlen;
  std::set<int> tree_origs;
  std::vector<int> node_origs;
  std::vector<int> extra_origs;
  double drift = 0;  // worst vertex reconstruction disagreement in the layout
};

// Splits edge (a,b) at its metric midpoint and updates the per-halfedge
// lengths by the cevian (Stewart) rule, so the refined mesh carries exactly
// the same flat metric. Returns the new vertex.
int split_edge_metric(Mesh& m, std::vector<double>& mlen, int a, int b);

// Union of metric-shortest paths connecting all cones of each component to a
// root: a non-corner boundary point (middle of the metric-longest segment),
// or the first cone on a closed genus-0 surface. May refine the mesh (new
// entries appended to `corner` as non-corners). Each returned path runs from
// an existing tree/root vertex to a cone; cones are always leaves.
std::vector<EdgePath> build_cone_trees(Mesh& m, std::vector<uint8_t>& corner,
                                       std::vector<double>& mlen);

// Isometric breadth-first layout of every component into m.uv, seeded at a
// boundary halfedge laid along +u (corner start preferred). Returns the worst
// reconstruction disagreement; throws Error(2) if it exceeds the layout drift
// tolerance relative to the component bounding-box diagonal.
double layout_charts(Mesh& m, const std::vector<uint8_t>& corner,
                     const std::vector<double>& mlen);

// Full stage: scale the metric by u, build and cut the cone trees, lay out.
Flattening flatten_charts(const CutMesh& cm, const std::vector<double>& u);

// One maximal run of boundary halfedges of a single kind: a piece of a
// segment between two corners (possibly interrupted by a tree excursion), or
// a whole excursion (tree = true, axis meaningless).
struct BoundaryPiece {
  std::vector<int> halfedges;  // walk order
  int segment = -1;
  int axis = 0;  // exact image direction class: 0,1,2,3 = +u,+v,-u,-v
  bool tree = false;
};

// Segment-level view of the cut boundary with exact axis classes, lengths and
// mate combinatorics; recomputable after padding refinements.
struct BoundaryMap {
  std::vector<BoundaryPiece> pieces;         // walk order, loop by loop
  SegmentTopo topo;                          // components and mates
  Eigen::VectorXd seg_len;                   // per segment
  std::vector<std::vector<int>> seg_pieces;  // piece ids per segment, in order
  std::vector<int> seg_axis;                 // per segment
  std::vector<int> extra_segments;           // the component-splitting pair
};

// Decomposes the boundary of a laid-out (or padded) cut mesh. Lengths come
// from uv when `use_uv`, else from `mlen`. The axis of each loop's first
// piece is snapped from its uv direction (must be within the rotation snap
// tolerance); later pieces advance by exact quarter turns: one per corner,
// (4-k) per cone passed in a tree excursion.
BoundaryMap boundary_map(const Mesh& mc, const std::vector<uint8_t>& corner,
                         const std::set<int>& tree_origs,
                         const std::vector<int>& extra_origs, bool use_uv,
                         const std::vector<double>* mlen = nullptr);

// Corner flags derived from node ids: boundary vertices whose geometric id
// belongs to a cutgraph node.
std::vector<uint8_t> corner_flags(const Mesh& m, const std::vector<int>& node_origs);

}  // namespace seamless
