#pragma once

#include <string>
#include <vector>

#include "mesh.hpp"

namespace seamless {

// Rigid transition fitted to one seam run (a maximal chain of consecutive
// boundary halfedges whose mates are consecutive too, broken at corners and
// cones). The mate image equals rotation by rot_class quarter turns plus the
// translation, up to max_residual.
struct Transition {
  int first_halfedge = -1;
  int nedges = 0;
  int rot_class = 0;         // quarter turns, 0..3
  Vec2 translation{0, 0};
  double pre_snap_dev = 0;   // radians between fitted and snapped rotation
  double max_residual = 0;   // worst endpoint mismatch after the rigid map
  bool ok = false;
};

struct ConeReport {
  int orig = -1;
  int k = 0;
  double target = 0;
  double realized = 0;
  bool ok = false;
};

struct CheckReport {
  bool ok = false;
  bool seamless_ok = false;
  bool inject_ok = false;
  bool cones_ok = false;
  double diam = 0;  // uv bounding-box diagonal, the tolerance scale
  std::vector<Transition> transitions;
  std::vector<ConeReport> cones;
  std::vector<int> flipped;  // faces with non-positive uv area
};

// Verifies a laid-out cut mesh: every seam run maps rigidly onto its mate
// with a quarter-turn rotation, all uv triangles are positively oriented,
// and every cone realizes its prescribed angle. `corner` (optional) marks
// additional run break points.
CheckReport check_seamless(const Mesh& m, const std::vector<uint8_t>* corner = nullptr);

// Machine-readable form of the report.
std::string report_json(const CheckReport& r);

// One linear seamlessness constraint per mated boundary edge pair:
// uv[b] - uv[a] = R^k (uv[c] - uv[d]) with R a quarter turn. The rotation
// class k is the one fitted (and snapped) for the seam run the edge lies on.
struct EdgeConstraint {
  int a, b, c, d;
  int k;  // quarter turns, 0..3
};

// Extracts the constraint set of a layout, one entry per mated edge pair.
std::vector<EdgeConstraint> seam_constraints(const Mesh& m,
                                             const std::vector<uint8_t>* corner = nullptr);

}  // namespace seamless
