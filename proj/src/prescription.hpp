#pragma once

#include <optional>
#include <string>
#include <vector>

#include "mesh.hpp"

namespace seamless {

struct Cone {
  int vertex;
  int k;  // target angle k * pi/2; curvature (4-k) * pi/2
};

// Curvature bookkeeping stays in integer units of pi/2 for exactness.
struct Prescription {
  std::vector<Cone> cones;

  int curvature_units(int i) const { return 4 - cones[i].k; }
  double curvature(int i) const;
  int total_units() const;
  bool fourfold() const;
  bool has_vertex(int v) const;
};

double curvature_of_k(int k);

struct AdmissibilityReport {
  bool ok = false;
  int residual_units = 0;  // sum(4-k) - (8-8g), units of pi/2
  std::string message;
};

AdmissibilityReport check_admissible(const Prescription& p, int genus);

// Subset of cone indices whose curvatures sum to target_units (pi/2 units).
// Smallest cardinality, ties by lowest indices; exhaustive up to 24 cones,
// otherwise DP over reachable sums.
std::optional<std::vector<int>> subset_with_curvature_sum(const Prescription& p,
                                                          int target_units);

Prescription load_cones_json(const std::string& path);
void apply_cones(Mesh& m, const Prescription& p);

}  // namespace seamless
