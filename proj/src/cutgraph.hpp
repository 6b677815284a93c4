#pragma once

#include <array>
#include <vector>

#include "equalize.hpp"
#include "mesh.hpp"
#include "prescription.hpp"

namespace seamless {

// Result of cutting a closed surface into one or two disk components whose
// boundary decomposes into mate-paired segments meeting at degree-4 nodes.
//
// `cut` is the open mesh; `corner[v]` marks boundary vertices sitting at a
// node (four boundary copies per node). `extra_origs` are the geometric ids
// of all vertices of the component-splitting path, endpoint included (empty
// for four-fold prescriptions); the two segments running along that path are
// reported for diagnostics.
struct CutMesh {
  Mesh cut;
  std::vector<uint8_t> corner;
  std::vector<int> node_origs;
  std::vector<int> extra_origs;
  std::array<int, 2> open_origs{-1, -1};  // degree-3 points awaiting the splitting path
  std::vector<EdgePath> loops;  // homology loops on the closed input, for reporting
};

// Segment decomposition of a cut mesh boundary: walk order, lengths and the
// combinatorics fed to the width equalization.
struct Segments {
  SegmentTopo topo;
  std::vector<std::vector<int>> halfedges;  // per segment, in walk order
  Eigen::VectorXd length3;                  // 3d arc length per segment
  std::vector<int> extra_segments;          // the component-splitting pair
};

// --- construction stages (exposed for unit tests) ---

// g vertex-disjoint cone-avoiding simple loops, each verified to reduce the
// genus of a tentative cut; refines the mesh between picks when needed.
std::vector<EdgePath> homology_loops(Mesh& m);

// Chain order of the 2g boundary loops of the loop-cut mesh: first and last
// are the two copies of one loop, and for genus >= 3 some partner pair
// encloses an odd number of holes in between. Returns boundary-loop indices.
std::vector<int> order_holes(const Mesh& loop_cut);

// Cuts 2g-1 vertex-disjoint connector paths between consecutive holes of the
// chain. Endpoints are placed so that every designated point receives exactly
// two connector ends (a degree-4 node, counting the loop passing through).
// With `open_chain`, the chain's first start and last end instead use two
// different points of the terminal loop; those stay at degree 3 (recorded in
// open_origs) until the component-splitting path completes them to degree 4.
// Fills node/corner data of `out` and leaves a single disk in out.cut.
void build_connectors(CutMesh& out, const std::vector<int>& hole_order,
                      bool open_chain = false);

// Rotation field on halfedges in units of pi/2: rho[h] is picked up when
// crossing from the triangle of h into the triangle of twin(h). The clockwise
// sum around any interior vertex equals its cone curvature (4-k).
std::vector<int> assign_rho(const Mesh& disk);

// Finds and cuts a simple interior path between a boundary copy of one open
// chain endpoint and a boundary copy of the other, so that the disk splits
// into two components satisfying the corner-count condition
// n_i*pi/2 + sum(curvatures) = 2*pi with n_i not a multiple of 4. Only called
// for non-fourfold prescriptions (after an open-chain connector pass). Throws
// Error(2) when the search budget is exhausted.
void find_extra_path(CutMesh& out);

// Full pipeline stage: homology loops, hole chain, connectors and (unless the
// prescription is fourfold or the surface has genus 0) the extra path.
// Genus 0 returns the input unchanged with no boundary.
CutMesh build_cutgraph(const Mesh& closed);

// Boundary decomposition into corner-to-corner segments with mate relations
// recovered from the seam pairing; callable again after refinement splits.
Segments extract_segments(const Mesh& cut, const std::vector<uint8_t>& corner,
                          const std::vector<int>& extra_origs);

// Checks disk components, node degrees, cone avoidance and the per-component
// corner-count condition; throws Error(2) on violation.
void validate_cutgraph(const CutMesh& cm);

}  // namespace seamless
