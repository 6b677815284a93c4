#pragma once

#include <set>
#include <vector>

#include "mesh.hpp"

namespace seamless {

// Per-vertex target angle sums: k*pi/2 at cones, 2*pi at other interior
// vertices, pi at non-corner boundary vertices, pi/2 at corners.
struct AngleTargets {
  std::vector<double> theta;
};

struct ConformalOptions {
  double defect_tol = 1e-12;
  double defect_accept = 1e-8;
  int max_newton = 200;
  int max_halvings = 40;
  int max_refine_rounds = 20;
  // Geometric ids spanning tracked boundary stretches (e.g. the zero-pinned
  // path): when a seam edge inside such a stretch is split, the new id is
  // added so the stretch stays recognizable after refinement.
  std::set<int>* track_span = nullptr;
};

// Clausen function Cl2; the Lobachevsky function is Cl2(2x)/2.
double clausen2(double theta);

AngleTargets build_targets(const Mesh& m, const std::vector<uint8_t>& corner);

// Scaled edge lengths per halfedge: l * exp((u_a + u_b) / 2).
std::vector<double> metric_lengths(const Mesh& m, const std::vector<double>& u);

// Corner angles per halfedge (angle at he_from) from per-halfedge lengths;
// throws on triangle-inequality violation unless `violations` captures them.
std::vector<double> corner_angles(const Mesh& m, const std::vector<double>& len,
                                  std::vector<int>* violating_faces = nullptr);

// target - realized angle sum per vertex
std::vector<double> angle_residuals(const Mesh& m, const std::vector<double>& u,
                                    const AngleTargets& targets);

// Convex energy whose gradient is (target - realized) / 2 per vertex.
double conformal_energy(const Mesh& m, const std::vector<double>& u, const AngleTargets& targets);

// Newton solve for log scale factors; may refine `m` by edge splits (corner
// grows alongside). Returns per-vertex u with max defect <= defect_accept.
std::vector<double> compute_metric(Mesh& m, std::vector<uint8_t>& corner,
                                   const ConformalOptions& opt = {});

// Split edges of cone one-rings until each cone with k >= 5 has at least
// k + 2 incident triangles.
void refine_cone_neighborhoods(Mesh& m);

}  // namespace seamless
