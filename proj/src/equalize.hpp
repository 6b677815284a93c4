#pragma once

#include <Eigen/Dense>
#include <utility>
#include <vector>

#include "mesh.hpp"

namespace seamless {

// Segment s_i must end up as long as the concatenation of its mates J_i.
struct MateRelation {
  int i;
  std::vector<int> js;
};

// Combinatorics of the segment boundary structure: cyclic segment order per
// disk component plus the mate relations. Segment ids are 0..count()-1 and
// appear in exactly one component cycle.
struct SegmentTopo {
  std::vector<std::vector<int>> components;  // counterclockwise cyclic order
  std::vector<MateRelation> mates;
  // Segments whose padding width is pinned to zero by the solver. Only
  // needed for cutgraphs with flat node joints; the constructed cutgraphs
  // use degree-4 nodes throughout and leave this empty.
  std::vector<int> zero_pinned;

  int count() const;
  // previous/next segment around the component boundary
  std::pair<int, int> prev_next(int seg) const;
};

struct EqSystem {
  Eigen::MatrixXd A;
  Eigen::VectorXd b;
  Eigen::VectorXd ell;
};

// One row per mate relation: +1 on prev/next of s_i, -1 on prev/next of each
// mate (coefficients accumulate); b = sum of mate lengths - ell_i.
EqSystem build_system(const SegmentTopo& topo, const Eigen::VectorXd& ell);

// Least-norm solve with the zero-pinned columns removed, then a constant
// shift of the free entries into nonnegativity (the all-ones direction is in
// the kernel for the constructed cutgraph families).
Eigen::VectorXd solve_nonnegative(const EqSystem& sys, const std::vector<int>& zero_pinned);

struct MismatchReport {
  bool ok = false;
  double worst = 0;
  int worst_row = -1;
};

MismatchReport verify_equalized(const SegmentTopo& topo, const Eigen::VectorXd& ell,
                                const Eigen::VectorXd& w);

// --- constructive-proof oracles (test support, not the production path) ---

// m x m circulant with ones at offsets +1 and -1 (associated polynomial
// x + x^{m-1}); full rank iff m is not a multiple of 4.
Eigen::MatrixXd circulant_unit_matrix(int m);

struct UnitSystem {
  Eigen::MatrixXd B;
  Eigen::VectorXd c;
};

// Row per segment: w_prev(i) + w_next(i) = d_i - ell_i with d_i = 1 except 0
// on the listed segments; any solution also solves the mate system.
UnitSystem oracle_unit_system(const SegmentTopo& topo, const Eigen::VectorXd& ell,
                              const std::vector<int>& zero_target_segments);

// Correction widths for the last equalization step on a chain excerpt of
// hole segments 0..r where (0, r) is the odd-couple partner pair and segment
// 1 is short by 2*delta. Returns the r gap paddings g_1..g_r; the length of
// hole t changes by g_t + g_{t+1}.
std::vector<double> oracle_odd_couple_fix(int r, double delta);

// Alternating sums sum_i (-1)^i ell_{2i} and sum_i (-1)^i ell_{2i+1} of a
// closed rectilinear polygon's segment lengths; both vanish by closedness.
std::pair<double, double> oracle_fourfold_closure(const std::vector<double>& ell);

}  // namespace seamless
