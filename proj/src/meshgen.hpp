#pragma once

#include "mesh.hpp"
#include "prescription.hpp"

namespace seamless {

// Deterministic generators for closed test surfaces and cone sets.

Mesh make_torus_grid(int nu, int nv, double R = 2.0, double r = 0.8);
Mesh make_icosphere(int subdivisions);
// Boundary surface of a voxel slab with `genus` tunnels.
Mesh make_genus_solid(int genus);
// Midpoint 1-to-4 subdivision.
Mesh subdivide(const Mesh& m);

// Farthest-point placement (combinatorial BFS distance) of the given k values,
// lowest index breaking ties; deterministic.
Prescription place_cones(const Mesh& m, const std::vector<int>& ks, unsigned seed = 0);

// Curated admissible k multisets: >= 5 per genus, including the fourfold set
// where one exists (genus >= 1; at genus 0 every fourfold k has non-positive
// curvature, so no fourfold set can sum to 4pi).
std::vector<std::vector<int>> cone_sets_for_genus(int genus);

}  // namespace seamless
