#include "conformal.hpp"

#include <Eigen/Sparse>
#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <set>

namespace seamless {

namespace {

constexpr double kPi = std::numbers::pi;

const std::vector<double>& even_zetas() {
  static const std::vector<double> z = [] {
    std::vector<double> v(64, 0.0);
    for (int n = 1; n < 64; ++n) {
      double s = 2 * n;
      double sum = 0;
      for (int k = 200; k >= 1; --k) sum += std::pow((double)k, -s);
      sum += std::pow(200.0, 1 - s) / (s - 1) - 0.5 * std::pow(200.0, -s) +
             s / 12.0 * std::pow(200.0, -s - 1);
      v[n] = sum;
    }
    return v;
  }();
  return z;
}

// Lobachevsky function via Cl2
double lob(double alpha) { return 0.5 * clausen2(2 * alpha); }

struct Angles {
  std::vector<double> at;  // per halfedge, angle at he_from
  std::vector<int> bad;    // faces violating the triangle inequality
};

}  // namespace

double clausen2(double theta) {
  double x = std::remainder(theta, 2 * kPi);
  double sign = 1;
  if (x < 0) {
    x = -x;
    sign = -1;
  }
  if (x == 0) return 0;
  const auto& zeta = even_zetas();
  double sum = x - x * std::log(x);
  double x2 = (x / (2 * kPi)) * (x / (2 * kPi));
  double pw = x * x2;
  for (int n = 1; n < 64; ++n) {
    double term = zeta[n] * pw / (n * (2 * n + 1));
    sum += term;
    if (term < 1e-18 * std::abs(sum)) break;
    pw *= x2;
  }
  return sign * sum;
}

AngleTargets build_targets(const Mesh& m, const std::vector<uint8_t>& corner) {
  AngleTargets t;
  t.theta.resize(m.nv());
  for (int v = 0; v < m.nv(); ++v) {
    if (m.is_boundary_vertex(v)) {
      if (m.cone_k[v] > 0) throw Error(1, "cone on the cut boundary");
      t.theta[v] = corner[v] ? kPi / 2 : kPi;
    } else {
      t.theta[v] = m.cone_k[v] > 0 ? m.cone_k[v] * kPi / 2 : 2 * kPi;
    }
  }
  return t;
}

std::vector<double> metric_lengths(const Mesh& m, const std::vector<double>& u) {
  std::vector<double> len(3 * m.nf());
  for (int h = 0; h < 3 * m.nf(); ++h) {
    int a = m.he_from(h), b = m.he_to(h);
    len[h] = m.edge_len3(a, b) * std::exp(0.5 * (u[a] + u[b]));
  }
  return len;
}

std::vector<double> corner_angles(const Mesh& m, const std::vector<double>& len,
                                  std::vector<int>* violating_faces) {
  std::vector<double> at(3 * m.nf());
  for (int f = 0; f < m.nf(); ++f) {
    double l0 = len[3 * f], l1 = len[3 * f + 1], l2 = len[3 * f + 2];
    bool bad = l0 >= l1 + l2 || l1 >= l2 + l0 || l2 >= l0 + l1;
    if (bad) {
      if (!violating_faces) throw Error(2, "triangle inequality violated in metric");
      violating_faces->push_back(f);
    }
    for (int i = 0; i < 3; ++i) {
      double A = len[3 * f + i];                 // edge leaving the corner
      double B = len[3 * f + (i + 2) % 3];       // edge arriving at the corner
      double C = len[3 * f + (i + 1) % 3];       // opposite edge
      double c = std::clamp((A * A + B * B - C * C) / (2 * A * B), -1.0, 1.0);
      at[3 * f + i] = std::acos(c);
    }
  }
  return at;
}

static std::vector<double> vertex_angle_sums(const Mesh& m, const std::vector<double>& at) {
  std::vector<double> sum(m.nv(), 0.0);
  for (int h = 0; h < 3 * m.nf(); ++h) sum[m.he_from(h)] += at[h];
  return sum;
}

std::vector<double> angle_residuals(const Mesh& m, const std::vector<double>& u,
                                    const AngleTargets& targets) {
  std::vector<int> bad;
  auto at = corner_angles(m, metric_lengths(m, u), &bad);
  if (!bad.empty()) throw Error(2, "triangle inequality violated in metric");
  auto sum = vertex_angle_sums(m, at);
  std::vector<double> r(m.nv());
  for (int v = 0; v < m.nv(); ++v) r[v] = targets.theta[v] - sum[v];
  return r;
}

double conformal_energy(const Mesh& m, const std::vector<double>& u, const AngleTargets& targets) {
  auto len = metric_lengths(m, u);
  std::vector<int> bad;
  auto at = corner_angles(m, len, &bad);
  if (!bad.empty()) return std::numeric_limits<double>::infinity();
  double e = 0;
  for (int h = 0; h < 3 * m.nf(); ++h) {
    double lam_opp = 2 * std::log(len[m.he_next(h)]);
    e += 0.5 * at[h] * lam_opp + lob(at[h]) - (kPi / 4) * 2 * std::log(len[h]);
  }
  for (int v = 0; v < m.nv(); ++v) e += 0.5 * targets.theta[v] * u[v];
  return e;
}

static void check_gauss_bonnet(const Mesh& m, const AngleTargets& t) {
  auto comp = m.face_component();
  int nc = comp.empty() ? 0 : *std::max_element(comp.begin(), comp.end()) + 1;
  std::vector<double> tsum(nc, 0.0), fcount(nc, 0.0);
  std::vector<int> vcomp(m.nv(), -1);
  for (int f = 0; f < m.nf(); ++f) {
    fcount[comp[f]] += 1;
    for (int i = 0; i < 3; ++i) vcomp[m.tri[f][i]] = comp[f];
  }
  for (int v = 0; v < m.nv(); ++v)
    if (vcomp[v] >= 0) tsum[vcomp[v]] += t.theta[v];
  for (int c = 0; c < nc; ++c)
    if (std::abs(tsum[c] - kPi * fcount[c]) > 1e-6)
      throw Error(1, "angle targets violate Gauss-Bonnet in component " + std::to_string(c));
}

std::vector<double> compute_metric(Mesh& m, std::vector<uint8_t>& corner,
                                   const ConformalOptions& opt) {
  std::vector<double> u(m.nv(), 0.0);

  for (int round = 0; round <= opt.max_refine_rounds; ++round) {
    AngleTargets targets = build_targets(m, corner);
    check_gauss_bonnet(m, targets);

    // pin one non-cone vertex per component to fix the scale gauge
    auto comp = m.face_component();
    int nc = comp.empty() ? 0 : *std::max_element(comp.begin(), comp.end()) + 1;
    std::vector<int> vcomp(m.nv(), -1);
    for (int f = 0; f < m.nf(); ++f)
      for (int i = 0; i < 3; ++i) vcomp[m.tri[f][i]] = comp[f];
    std::vector<int> pin(nc, -1);
    for (int v = 0; v < m.nv(); ++v) {
      int c = vcomp[v];
      if (c >= 0 && (pin[c] < 0 || (m.cone_k[v] == 0 && m.cone_k[pin[c]] != 0))) pin[c] = v;
    }
    std::vector<uint8_t> pinned(m.nv(), 0);
    for (int c = 0; c < nc; ++c) {
      if (pin[c] < 0) throw Error(2, "component without a vertex to pin");
      pinned[pin[c]] = 1;
      u[pin[c]] = 0;
    }

    std::vector<int> bad;
    bool need_refine = false;
    double energy = conformal_energy(m, u, targets);
    if (!std::isfinite(energy)) {
      corner_angles(m, metric_lengths(m, u), &bad);
      need_refine = true;
    }

    for (int it = 0; it < opt.max_newton && !need_refine; ++it) {
      auto len = metric_lengths(m, u);
      bad.clear();
      auto at = corner_angles(m, len, &bad);
      if (!bad.empty()) {
        need_refine = true;
        break;
      }
      auto sum = vertex_angle_sums(m, at);
      double defect = 0;
      for (int v = 0; v < m.nv(); ++v) defect = std::max(defect, std::abs(targets.theta[v] - sum[v]));
      if (defect <= opt.defect_tol) return u;

      // Hessian: quarter cotan Laplacian in the current metric
      std::vector<Eigen::Triplet<double>> trip;
      Eigen::VectorXd grad = Eigen::VectorXd::Zero(m.nv());
      for (int v = 0; v < m.nv(); ++v)
        grad(v) = pinned[v] ? 0.0 : 0.5 * (targets.theta[v] - sum[v]);
      std::vector<double> diag(m.nv(), 0.0);
      for (int h = 0; h < 3 * m.nf(); ++h) {
        int tw = m.twin(h);
        if (tw >= 0 && tw < h) continue;
        int a = m.he_from(h), b = m.he_to(h);
        double cot = std::cos(at[m.he_prev(h)]) / std::max(std::sin(at[m.he_prev(h)]), 1e-12);
        if (tw >= 0) {
          double ang = at[m.he_prev(tw)];
          cot += std::cos(ang) / std::max(std::sin(ang), 1e-12);
        }
        // clamp to keep the system an M-matrix; obtuse pairs would otherwise
        // make the solve leave the descent cone
        cot = std::max(cot, 0.0);
        double hij = -cot / 4.0;
        diag[a] -= hij;
        diag[b] -= hij;
        if (!pinned[a] && !pinned[b]) {
          trip.push_back({a, b, hij});
          trip.push_back({b, a, hij});
        }
      }
      double reg = 1e-12;
      for (int v = 0; v < m.nv(); ++v)
        trip.push_back({v, v, pinned[v] ? 1.0 : diag[v] + reg});
      Eigen::SparseMatrix<double> H(m.nv(), m.nv());
      H.setFromTriplets(trip.begin(), trip.end());

      Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> solver(H);
      Eigen::VectorXd dir;
      if (solver.info() == Eigen::Success) dir = solver.solve(-grad);
      if (solver.info() != Eigen::Success || !dir.allFinite() ||
          grad.dot(dir) >= 0)
        dir = -grad;

      double step = 1.0;
      std::vector<double> trial(u);
      bool accepted = false;
      for (int half = 0; half < opt.max_halvings; ++half) {
        for (int v = 0; v < m.nv(); ++v) trial[v] = u[v] + step * dir(v);
        double e2 = conformal_energy(m, trial, targets);
        bool better = e2 < energy;
        if (!better && std::isfinite(e2) &&
            e2 - energy <= 1e-13 * (std::abs(energy) + 1)) {
          // near the energy rounding floor: fall back to the defect itself
          std::vector<int> bad2;
          auto sum2 = vertex_angle_sums(
              m, corner_angles(m, metric_lengths(m, trial), &bad2));
          if (bad2.empty()) {
            double d2 = 0;
            for (int v = 0; v < m.nv(); ++v)
              d2 = std::max(d2, std::abs(targets.theta[v] - sum2[v]));
            better = d2 < defect;
          }
        }
        if (better) {
          u = trial;
          energy = e2;
          accepted = true;
          break;
        }
        step /= 2;
      }
      if (!accepted) {
        if (defect <= opt.defect_accept) return u;
        // stuck at the edge of the triangle-inequality region: any step makes
        // some face degenerate; split those faces and resume refined
        double s = 1e-6 / std::max(1.0, dir.norm());
        for (int v = 0; v < m.nv(); ++v) trial[v] = u[v] + s * dir(v);
        bad.clear();
        corner_angles(m, metric_lengths(m, trial), &bad);
        if (bad.empty())
          throw Error(2, "conformal Newton stalled at defect " + std::to_string(defect));
        need_refine = true;
        break;
      }
    }

    if (!need_refine) {
      auto res = angle_residuals(m, u, targets);
      double defect = 0;
      for (double r : res) defect = std::max(defect, std::abs(r));
      if (defect <= opt.defect_accept) return u;
      throw Error(2, "conformal solve did not converge; defect " + std::to_string(defect));
    }

    // split the longest metric edge of each violating face, interpolate u
    auto len = metric_lengths(m, u);
    std::sort(bad.begin(), bad.end());
    bad.erase(std::unique(bad.begin(), bad.end()), bad.end());
    std::vector<VPair> to_split;
    std::set<std::pair<int, int>> seen;
    for (int f : bad) {
      int hmax = 3 * f;
      for (int i = 1; i < 3; ++i)
        if (len[3 * f + i] > len[hmax]) hmax = 3 * f + i;
      int a = m.he_from(hmax), b = m.he_to(hmax);
      if (seen.insert({std::min(a, b), std::max(a, b)}).second) to_split.push_back({a, b});
    }
    for (auto [a, b] : to_split) {
      double unew = 0.5 * (u[a] + u[b]);
      if (m.seam.count({a, b}) || m.seam.count({b, a})) {
        VPair ab = m.seam.count({a, b}) ? VPair{a, b} : VPair{b, a};
        auto [c, d] = m.seam.at(ab);
        bool spanned = opt.track_span && opt.track_span->count(m.orig[a]) &&
                       opt.track_span->count(m.orig[b]);
        auto [m1, m2] = m.split_seam_pair(ab.first, ab.second, 0.5);
        if (spanned) opt.track_span->insert(m.orig[m1]);
        u.push_back(unew);
        u.push_back(0.5 * (u[c] + u[d]));
        corner.push_back(0);
        corner.push_back(0);
      } else {
        m.split_edge(a, b, 0.5);
        u.push_back(unew);
        corner.push_back(0);
      }
    }
    if (to_split.empty()) throw Error(2, "metric degenerate but no edge to split");
  }
  throw Error(2, "conformal refinement budget exhausted");
}

void refine_cone_neighborhoods(Mesh& m) {
  for (int v0 = 0, nv0 = m.nv(); v0 < nv0; ++v0) {
    int k = m.cone_k[v0];
    if (k < 5) continue;
    while (true) {
      // collect incident faces fresh each pass (mesh mutates)
      int deg = 0;
      int best_h = -1;
      double best_len = -1;
      for (int f = 0; f < m.nf(); ++f)
        for (int i = 0; i < 3; ++i)
          if (m.tri[f][i] == v0) {
            ++deg;
            int h = m.he_next(3 * f + i);  // ring edge opposite the cone
            double l = m.edge_len3(m.he_from(h), m.he_to(h));
            if (l > best_len) {
              best_len = l;
              best_h = h;
            }
          }
      if (deg >= k + 2) break;
      if (best_h < 0) throw Error(2, "cone without incident faces");
      m.split_edge(m.he_from(best_h), m.he_to(best_h), 0.5);
    }
  }
}

}  // namespace seamless
