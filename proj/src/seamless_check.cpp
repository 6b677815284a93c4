#include "seamless_check.hpp"

#include <cmath>
#include <map>
#include <numbers>
#include <vector>

#include <nlohmann/json.hpp>

#include "tolerances.hpp"

namespace seamless {
namespace {

constexpr double kPi = std::numbers::pi;

Vec2 rot_quarter(const Vec2& p, int k) {
  switch (((k % 4) + 4) % 4) {
    case 0: return p;
    case 1: return {-p.y(), p.x()};
    case 2: return {-p.x(), -p.y()};
    default: return {p.y(), -p.x()};
  }
}

double uv_diameter(const Mesh& m) {
  if (m.nv() == 0) return 0;
  Vec2 lo = m.uv[0], hi = m.uv[0];
  for (const Vec2& p : m.uv) {
    lo = lo.cwiseMin(p);
    hi = hi.cwiseMax(p);
  }
  return (hi - lo).norm();
}

// A run breaks at vertex v (a copy on our side of the seam) when the seam
// cannot continue rigidly through it: chart corners, cones, or junctions
// where the mate chain is interrupted.
struct RunWalker {
  const Mesh& m;
  const std::vector<uint8_t>* corner;
  std::map<int, int> out_of;  // boundary vertex -> its outgoing boundary halfedge
  std::map<int, int> into;    // boundary vertex -> its incoming boundary halfedge

  explicit RunWalker(const Mesh& m_, const std::vector<uint8_t>* corner_)
      : m(m_), corner(corner_) {
    for (int h = 0; h < 3 * m.nf(); ++h) {
      if (m.twin(h) >= 0) continue;
      out_of[m.he_from(h)] = h;
      into[m.he_to(h)] = h;
    }
  }

  bool vertex_breaks(int v) const {
    if (m.cone_k[v] > 0) return true;
    if (corner && v < (int)corner->size() && (*corner)[v]) return true;
    return false;
  }

  VPair mate(int h) const {
    return m.seam.at({m.he_from(h), m.he_to(h)});
  }

  // True when the run may continue from halfedge h into the next boundary
  // halfedge: the shared vertex is unremarkable on both copies and the mate
  // chain is contiguous (the next edge's mate ends where this edge's starts).
  bool continues(int h, int hn) const {
    int v = m.he_to(h);
    if (vertex_breaks(v)) return false;
    auto [c1, d1] = mate(h);
    auto [c2, d2] = mate(hn);
    if (d2 != c1) return false;
    if (vertex_breaks(c1)) return false;
    return true;
  }
};

Transition fit_transition(const Mesh& m, const std::vector<int>& run, double diam) {
  Transition t;
  t.first_halfedge = run.front();
  t.nedges = (int)run.size();

  // Average rotation over all edge pairs via summed cross/dot products, then
  // snap to the nearest quarter turn.
  double cross = 0, dot = 0;
  for (int h : run) {
    auto [c, d] = m.seam.at({m.he_from(h), m.he_to(h)});
    Vec2 ei = m.uv[m.he_to(h)] - m.uv[m.he_from(h)];
    Vec2 ej = m.uv[c] - m.uv[d];  // mate of a->b runs d->c
    cross += ej.x() * ei.y() - ej.y() * ei.x();
    dot += ej.dot(ei);
  }
  double ang = std::atan2(cross, dot);
  int k = (int)std::lround(ang / (kPi / 2));
  double dev = ang - k * (kPi / 2);
  t.rot_class = ((k % 4) + 4) % 4;
  t.pre_snap_dev = std::abs(dev);

  // Translation: average endpoint mismatch under the snapped rotation.
  Vec2 tr{0, 0};
  int n = 0;
  for (int h : run) {
    auto [c, d] = m.seam.at({m.he_from(h), m.he_to(h)});
    tr += m.uv[m.he_from(h)] - rot_quarter(m.uv[d], t.rot_class);
    tr += m.uv[m.he_to(h)] - rot_quarter(m.uv[c], t.rot_class);
    n += 2;
  }
  t.translation = tr / n;

  double res = 0;
  for (int h : run) {
    auto [c, d] = m.seam.at({m.he_from(h), m.he_to(h)});
    res = std::max(res, (m.uv[m.he_from(h)] -
                         (rot_quarter(m.uv[d], t.rot_class) + t.translation)).norm());
    res = std::max(res, (m.uv[m.he_to(h)] -
                         (rot_quarter(m.uv[c], t.rot_class) + t.translation)).norm());
  }
  t.max_residual = res;
  t.ok = t.pre_snap_dev <= tol::rotation_snap &&
         t.max_residual <= tol::congruence * diam;
  return t;
}

// Maximal seam runs, one per mated pair of boundary chains.
std::vector<std::vector<int>> canonical_runs(const Mesh& m,
                                             const std::vector<uint8_t>* corner) {
  RunWalker w(m, corner);
  std::vector<std::vector<int>> runs;
  std::vector<uint8_t> visited(3 * m.nf(), 0);
  for (int h0 = 0; h0 < 3 * m.nf(); ++h0) {
    if (m.twin(h0) >= 0 || visited[h0]) continue;

    // Walk backward to the start of the run (guard full boundary loops).
    int h = h0;
    while (true) {
      auto it = w.into.find(m.he_from(h));
      if (it == w.into.end()) break;
      int hp = it->second;
      if (hp == h0 || !w.continues(hp, h)) break;
      h = hp;
    }
    // Collect the run forward.
    std::vector<int> run;
    while (true) {
      run.push_back(h);
      auto it = w.out_of.find(m.he_to(h));
      if (it == w.out_of.end()) break;
      int hn = it->second;
      if (hn == run.front() || !w.continues(h, hn)) break;
      h = hn;
    }
    bool mate_seen = false;
    for (int hr : run) {
      visited[hr] = 1;
      auto [c, d] = w.mate(hr);
      int hm = m.halfedge(c, d);
      if (hm >= 0) {
        if (visited[hm]) mate_seen = true;
        visited[hm] = 1;
      }
    }
    if (mate_seen) continue;  // keep each mated pair of runs once
    runs.push_back(std::move(run));
  }
  return runs;
}

}  // namespace

CheckReport check_seamless(const Mesh& m, const std::vector<uint8_t>* corner) {
  CheckReport rep;
  rep.diam = uv_diameter(m);

  // --- seam transitions -----------------------------------------------------
  rep.seamless_ok = true;
  for (const auto& run : canonical_runs(m, corner)) {
    Transition t = fit_transition(m, run, rep.diam);
    rep.seamless_ok = rep.seamless_ok && t.ok;
    rep.transitions.push_back(t);
  }

  // --- injectivity ----------------------------------------------------------
  for (int f = 0; f < m.nf(); ++f) {
    Vec2 a = m.uv[m.tri[f][0]], b = m.uv[m.tri[f][1]], c = m.uv[m.tri[f][2]];
    double area2 = (b - a).x() * (c - a).y() - (b - a).y() * (c - a).x();
    if (!(area2 > 0)) rep.flipped.push_back(f);
  }
  rep.inject_ok = rep.flipped.empty();

  // --- realized angles ------------------------------------------------------
  // Sum the uv corner angles of all copies of each original vertex. Cones
  // must realize k quarter turns; every other vertex on the cut must realize
  // a full 2*pi (no spurious cones). Interior vertices of a flip-free planar
  // layout always close up, so only boundary vertices need checking.
  std::map<int, double> angle_by_orig;
  std::map<int, int> k_by_orig;
  std::map<int, bool> on_boundary;
  for (int f = 0; f < m.nf(); ++f) {
    for (int i = 0; i < 3; ++i) {
      int v = m.tri[f][i];
      Vec2 e1 = m.uv[m.tri[f][(i + 1) % 3]] - m.uv[v];
      Vec2 e2 = m.uv[m.tri[f][(i + 2) % 3]] - m.uv[v];
      double a = std::atan2(e1.x() * e2.y() - e1.y() * e2.x(), e1.dot(e2));
      angle_by_orig[m.orig[v]] += a;
      if (m.cone_k[v] > 0) k_by_orig[m.orig[v]] = m.cone_k[v];
      if (m.is_boundary_vertex(v)) on_boundary[m.orig[v]] = true;
    }
  }
  rep.cones_ok = true;
  for (auto& [o, realized] : angle_by_orig) {
    auto itk = k_by_orig.find(o);
    bool is_cone = itk != k_by_orig.end();
    if (!is_cone && !on_boundary[o]) continue;
    ConeReport c;
    c.orig = o;
    c.k = is_cone ? itk->second : 0;
    c.target = is_cone ? c.k * (kPi / 2) : 2 * kPi;
    c.realized = realized;
    c.ok = std::abs(c.realized - c.target) <= tol::cone_angle;
    rep.cones_ok = rep.cones_ok && c.ok;
    if (is_cone || !c.ok) rep.cones.push_back(c);
  }

  rep.ok = rep.seamless_ok && rep.inject_ok && rep.cones_ok;
  return rep;
}

std::string report_json(const CheckReport& r) {
  nlohmann::json j;
  j["pass"] = r.ok;
  j["seamless"] = r.seamless_ok;
  j["injective"] = r.inject_ok;
  j["cones_ok"] = r.cones_ok;
  j["diameter"] = r.diam;
  j["transitions"] = nlohmann::json::array();
  for (const Transition& t : r.transitions) {
    j["transitions"].push_back({{"first_halfedge", t.first_halfedge},
                                {"edges", t.nedges},
                                {"rotation_class", t.rot_class},
                                {"translation", {t.translation.x(), t.translation.y()}},
                                {"pre_snap_deviation", t.pre_snap_dev},
                                {"max_residual", t.max_residual},
                                {"ok", t.ok}});
  }
  j["cones"] = nlohmann::json::array();
  for (const ConeReport& c : r.cones) {
    j["cones"].push_back({{"vertex", c.orig},
                          {"k", c.k},
                          {"target", c.target},
                          {"realized", c.realized},
                          {"ok", c.ok}});
  }
  j["flipped"] = r.flipped;
  return j.dump(2);
}

}  // namespace seamless
