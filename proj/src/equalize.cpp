#include "equalize.hpp"

#include <algorithm>
#include <cmath>

#include "tolerances.hpp"

namespace seamless {

int SegmentTopo::count() const {
  int n = 0;
  for (const auto& c : components) n += (int)c.size();
  return n;
}

std::pair<int, int> SegmentTopo::prev_next(int seg) const {
  for (const auto& c : components) {
    int m = (int)c.size();
    for (int k = 0; k < m; ++k)
      if (c[k] == seg) return {c[(k + m - 1) % m], c[(k + 1) % m]};
  }
  throw Error(2, "segment " + std::to_string(seg) + " not in any component");
}

EqSystem build_system(const SegmentTopo& topo, const Eigen::VectorXd& ell) {
  int m = topo.count();
  if (ell.size() != m) throw Error(2, "segment length count mismatch");
  EqSystem sys;
  sys.A = Eigen::MatrixXd::Zero((int)topo.mates.size(), m);
  sys.b = Eigen::VectorXd::Zero((int)topo.mates.size());
  sys.ell = ell;
  for (int r = 0; r < (int)topo.mates.size(); ++r) {
    const auto& rel = topo.mates[r];
    auto [pi, ni] = topo.prev_next(rel.i);
    sys.A(r, pi) += 1;
    sys.A(r, ni) += 1;
    sys.b(r) = -ell(rel.i);
    for (int j : rel.js) {
      auto [pj, nj] = topo.prev_next(j);
      sys.A(r, pj) -= 1;
      sys.A(r, nj) -= 1;
      sys.b(r) += ell(j);
    }
  }
  return sys;
}

Eigen::VectorXd solve_nonnegative(const EqSystem& sys, const std::vector<int>& zero_pinned) {
  Eigen::MatrixXd A = sys.A;
  for (int z : zero_pinned) A.col(z).setZero();
  Eigen::VectorXd w = A.completeOrthogonalDecomposition().solve(sys.b);
  for (int z : zero_pinned) w(z) = 0;

  double bmax = std::max(1.0, sys.b.cwiseAbs().maxCoeff());
  if ((A * w - sys.b).cwiseAbs().maxCoeff() > tol::equalize_residual * bmax)
    throw Error(2, "cutgraph not equalizable: padding system inconsistent");

  std::vector<bool> pinned(w.size(), false);
  for (int z : zero_pinned) pinned[z] = true;
  double wmin = 0;
  for (int i = 0; i < w.size(); ++i)
    if (!pinned[i]) wmin = std::min(wmin, w(i));
  double lmax = sys.ell.size() ? sys.ell.maxCoeff() : 1.0;
  double lambda = -wmin + tol::width_margin * std::max(1.0, lmax);
  for (int i = 0; i < w.size(); ++i)
    if (!pinned[i]) w(i) += lambda;

  if ((sys.A * w - sys.b).cwiseAbs().maxCoeff() > tol::equalize_residual * bmax)
    throw Error(2, "nonnegativity shift is not in the padding system kernel");
  return w;
}

MismatchReport verify_equalized(const SegmentTopo& topo, const Eigen::VectorXd& ell,
                                const Eigen::VectorXd& w) {
  auto padded = [&](int s) {
    auto [p, n] = topo.prev_next(s);
    return ell(s) + w(p) + w(n);
  };
  MismatchReport rep;
  double lmax = 0;
  for (int s = 0; s < topo.count(); ++s) lmax = std::max(lmax, padded(s));
  for (int r = 0; r < (int)topo.mates.size(); ++r) {
    double rhs = 0;
    for (int j : topo.mates[r].js) rhs += padded(j);
    double d = std::abs(padded(topo.mates[r].i) - rhs);
    if (d > rep.worst) {
      rep.worst = d;
      rep.worst_row = r;
    }
  }
  rep.ok = rep.worst <= 1e-9 * std::max(1.0, lmax);
  return rep;
}

Eigen::MatrixXd circulant_unit_matrix(int m) {
  Eigen::MatrixXd B = Eigen::MatrixXd::Zero(m, m);
  for (int i = 0; i < m; ++i) {
    B(i, (i + m - 1) % m) += 1;
    B(i, (i + 1) % m) += 1;
  }
  return B;
}

UnitSystem oracle_unit_system(const SegmentTopo& topo, const Eigen::VectorXd& ell,
                              const std::vector<int>& zero_target_segments) {
  int m = topo.count();
  UnitSystem us;
  us.B = Eigen::MatrixXd::Zero(m, m);
  us.c = Eigen::VectorXd::Zero(m);
  for (int i = 0; i < m; ++i) {
    auto [p, n] = topo.prev_next(i);
    us.B(i, p) += 1;
    us.B(i, n) += 1;
    double d = std::count(zero_target_segments.begin(), zero_target_segments.end(), i) ? 0.0 : 1.0;
    us.c(i) = d - ell(i);
  }
  return us;
}

std::vector<double> oracle_odd_couple_fix(int r, double delta) {
  if (r < 2 || r % 2 != 0)
    throw Error(1, "odd-couple fix needs an odd number of holes between the partners");
  std::vector<double> g(r + 1, 0.0);  // g[1..r]
  g[1] = delta;
  for (int t = 2; t <= r; ++t) g[t] = (t % 2 == 0 ? delta : -delta);
  g.erase(g.begin());
  return g;
}

std::pair<double, double> oracle_fourfold_closure(const std::vector<double>& ell) {
  if (ell.size() % 4 != 0) throw Error(1, "fourfold closure needs 4 | segment count");
  double even = 0, odd = 0;
  for (size_t i = 0; 2 * i < ell.size(); ++i) {
    double s = (i % 2 == 0) ? 1.0 : -1.0;
    even += s * ell[2 * i];
    odd += s * ell[2 * i + 1];
  }
  return {even, odd};
}

}  // namespace seamless
