#include "padding.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <vector>

#include "tolerances.hpp"

namespace seamless {
namespace {

constexpr double kAxisDir[4][2] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};

Vec2 axis_dir(int a) {
  a = ((a % 4) + 4) % 4;
  return {kAxisDir[a][0], kAxisDir[a][1]};
}

// frame coordinates: u along the walk axis, v toward the chart interior;
// exact because the factors are 0 and +-1
double ucoord(const Vec2& p, int a) {
  Vec2 d = axis_dir(a);
  return p.x() * d.x() + p.y() * d.y();
}
double vcoord(const Vec2& p, int a) { return ucoord(p, a + 1); }

std::vector<int> piece_vertices(const Mesh& m, const BoundaryPiece& p) {
  std::vector<int> vs;
  vs.reserve(p.halfedges.size() + 1);
  for (int h : p.halfedges) vs.push_back(m.he_from(h));
  vs.push_back(m.he_to(p.halfedges.back()));
  return vs;
}

std::vector<int> vertex_component(const Mesh& m) {
  auto fc = m.face_component();
  std::vector<int> vc(m.nv(), -1);
  for (int f = 0; f < m.nf(); ++f)
    for (int i = 0; i < 3; ++i) vc[m.tri[f][i]] = fc[f];
  return vc;
}

// Splits edge (a,b) at parameter t from a, keeping the seam pairing, corner
// flags, tracked id sets and the vertex-component cache consistent.
int split_tracked(Flattening& fl, std::set<int>& extra, std::vector<int>* vc,
                  int a, int b, double t) {
  Mesh& m = fl.mc;
  int hab = m.halfedge(a, b), hba = m.halfedge(b, a);
  bool bab = hab >= 0 && m.twin(hab) < 0;
  bool bba = hba >= 0 && m.twin(hba) < 0;
  int res;
  if (bab || bba) {
    if (!bab) {
      std::swap(a, b);
      t = 1.0 - t;
    }
    auto key = m.seam.find({a, b});
    if (key == m.seam.end()) throw Error(2, "boundary edge without a seam mate");
    int mate_from = key->second.first;
    auto [m1, m2] = m.split_seam_pair(a, b, t);
    if (fl.tree_origs.count(m.orig[a]) && fl.tree_origs.count(m.orig[b]))
      fl.tree_origs.insert(m.orig[m1]);
    if (extra.count(m.orig[a]) && extra.count(m.orig[b])) extra.insert(m.orig[m1]);
    if (vc) {
      vc->push_back((*vc)[a]);
      vc->push_back((*vc)[mate_from]);
    }
    res = m1;
  } else {
    res = m.split_edge(a, b, t);
    if (vc) vc->push_back((*vc)[a]);
  }
  fl.corner.resize(m.nv(), 0);
  return res;
}

struct PieceGeom {
  int axis = 0;
  std::vector<int> verts;   // walk order
  double v0 = 0;            // outermost boundary level in the frame
  double ulo = 0, uhi = 0;  // window from first to last vertex
  double lam = 0;           // strip line level v0 + tau
};

std::vector<PieceGeom> segment_geometry(const Mesh& m, const BoundaryMap& bm, int s) {
  std::vector<PieceGeom> pgs;
  for (int pi : bm.seg_pieces[s]) {
    const auto& bp = bm.pieces[pi];
    PieceGeom pg;
    pg.axis = bp.axis;
    pg.verts = piece_vertices(m, bp);
    pg.v0 = std::numeric_limits<double>::infinity();
    for (int v : pg.verts) pg.v0 = std::min(pg.v0, vcoord(m.uv[v], pg.axis));
    pg.ulo = ucoord(m.uv[pg.verts.front()], pg.axis);
    pg.uhi = ucoord(m.uv[pg.verts.back()], pg.axis);
    if (!(pg.uhi > pg.ulo)) throw Error(2, "degenerate boundary piece window");
    pgs.push_back(std::move(pg));
  }
  if (pgs.empty() || pgs.size() > 2)
    throw Error(2, "segment with an unexpected piece structure");
  return pgs;
}

struct Strip {
  std::vector<PieceGeom> pieces;
  double tau = 0;
};

// Inserts the strip of segment `s`: picks tau, then splits every edge that
// crosses the strip line of either piece, so no triangle reaches across and
// no vertex other than the segment's own lies inside the strip.
Strip insert_strip(Flattening& fl, std::set<int>& extra, const BoundaryMap& bm, int s) {
  Mesh& m = fl.mc;
  int nv_entry = m.nv();
  Strip st;
  st.pieces = segment_geometry(m, bm, s);

  std::set<int> segset;
  double wobble = 0;
  for (const auto& pg : st.pieces) {
    double vmax = -std::numeric_limits<double>::infinity();
    for (int v : pg.verts) {
      segset.insert(v);
      vmax = std::max(vmax, vcoord(m.uv[v], pg.axis));
    }
    wobble = std::max(wobble, vmax - pg.v0);
  }

  auto vc = vertex_component(m);
  int comp = vc[st.pieces.front().verts.front()];
  Vec2 lo(std::numeric_limits<double>::infinity(), std::numeric_limits<double>::infinity());
  Vec2 hi = -lo;
  for (int v = 0; v < m.nv(); ++v)
    if (vc[v] == comp) {
      lo = lo.cwiseMin(m.uv[v]);
      hi = hi.cwiseMax(m.uv[v]);
    }
  double diam = (hi - lo).norm();
  double slack = 1e-6 * diam;

  auto in_window = [&](const PieceGeom& pg, double uu) {
    return uu >= pg.ulo - slack && uu <= pg.uhi + slack;
  };
  // points on the perpendicular boundary through a window end are harmless:
  // they keep their orientation against segment vertices under both passes
  auto near_window_end = [&](const PieceGeom& pg, double uu) {
    return std::abs(uu - pg.ulo) <= slack || std::abs(uu - pg.uhi) <= slack;
  };

  // half the clearance from the segment to anything else above it
  double cand = std::numeric_limits<double>::infinity();
  int argmin = -1;
  for (int v = 0; v < m.nv(); ++v) {
    if (vc[v] != comp || segset.count(v)) continue;
    for (const auto& pg : st.pieces) {
      double uu = ucoord(m.uv[v], pg.axis), vv = vcoord(m.uv[v], pg.axis);
      if (in_window(pg, uu) && !near_window_end(pg, uu) && vv > pg.v0 &&
          vv - pg.v0 < cand) {
        cand = vv - pg.v0;
        argmin = v;
      }
    }
  }
  double tau = cand / 2;
  auto [ps, ns] = bm.topo.prev_next(s);
  tau = std::min(tau, 0.25 * std::min(bm.seg_len(ps), bm.seg_len(ns)));

  // A crossing edge may not touch any cone fan: splitting it would refine or
  // later move a cone's one-ring and perturb the realized cone angle.
  auto face_has_cone = [&](int f) {
    return f >= 0 && (m.cone_k[m.tri[f][0]] > 0 || m.cone_k[m.tri[f][1]] > 0 ||
                      m.cone_k[m.tri[f][2]] > 0);
  };
  auto cone_touching = [&](int h) {
    return face_has_cone(h / 3) || (m.twin(h) >= 0 && face_has_cone(m.twin(h) / 3));
  };
  auto crossing = [&](const PieceGeom& pg, int a, int b, double& t) {
    double da = vcoord(m.uv[a], pg.axis) - pg.lam;
    double db = vcoord(m.uv[b], pg.axis) - pg.lam;
    // vertices a few ulps off the line are earlier split points, not crossings
    double eps = 1e-9 * (pg.lam - pg.v0);
    if (std::abs(da) <= eps || std::abs(db) <= eps) return false;
    if (!(da * db < 0)) return false;
    t = da / (da - db);
    double uu = ucoord(m.uv[a], pg.axis) * (1 - t) + ucoord(m.uv[b], pg.axis) * t;
    return in_window(pg, uu);
  };

  // Splitting a seam edge splits its mate at the mirrored parameter. The mate
  // vertex must not land strictly inside the strip (slit mates land exactly on
  // the other piece's line, which is fine).
  auto mate_lands_inside = [&](int h, double t) {
    if (m.twin(h) >= 0) return false;
    auto it = m.seam.find({m.he_from(h), m.he_to(h)});
    if (it == m.seam.end()) return false;
    Vec2 q = t * m.uv[it->second.first] + (1 - t) * m.uv[it->second.second];
    double marg = 1e-3 * (st.pieces[0].lam - st.pieces[0].v0);
    for (const auto& pg : st.pieces) {
      double uu = ucoord(q, pg.axis), vv = vcoord(q, pg.axis);
      if (in_window(pg, uu) && !near_window_end(pg, uu) && vv > pg.v0 + marg &&
          vv < pg.lam - marg)
        return true;
    }
    return false;
  };

  bool ok = false;
  const char* why = "thickness under the boundary wobble floor";
  for (int att = 0; att < 40 && !ok; ++att) {
    if (!(tau > 8 * wobble) || !(tau > 0)) break;
    for (auto& pg : st.pieces) pg.lam = pg.v0 + tau;
    ok = true;
    for (int v = 0; v < m.nv() && ok; ++v) {
      if (vc[v] != comp || segset.count(v)) continue;
      for (const auto& pg : st.pieces) {
        double uu = ucoord(m.uv[v], pg.axis), vv = vcoord(m.uv[v], pg.axis);
        if (in_window(pg, uu) && !near_window_end(pg, uu) && vv > pg.v0 && vv < pg.lam) {
          ok = false;
          why = "vertex inside the strip";
          break;
        }
      }
    }
    for (int h = 0; h < 3 * m.nf() && ok; ++h) {
      if (m.twin(h) >= 0 && m.twin(h) < h) continue;
      if (vc[m.he_from(h)] != comp) continue;
      double t;
      for (const auto& pg : st.pieces)
        if (crossing(pg, m.he_from(h), m.he_to(h), t)) {
          if (cone_touching(h)) {
            ok = false;
            why = "crossing edge touches a cone fan";
          } else if (mate_lands_inside(h, t)) {
            ok = false;
            why = "seam mate split lands inside the strip";
          }
          if (!ok) break;
        }
    }
    if (!ok) tau /= 2;
  }
  if (!ok)
    throw Error(2, std::string("no admissible strip thickness for padding: last reason: ") +
                       why + " seg=" + std::to_string(s) + " tau=" + std::to_string(tau) +
                       " wobble=" + std::to_string(wobble) + " cand=" + std::to_string(cand) +
                       " argmin=" + std::to_string(argmin) +
                       (argmin >= 0 ? " at(" + std::to_string(m.uv[argmin].x()) + "," +
                                          std::to_string(m.uv[argmin].y()) + ")"
                                    : ""));
  st.tau = tau;

  // split every crossing edge exactly on the line
  for (;;) {
    int sa = -1, sb = -1, sax = 0;
    double stt = 0, slam = 0;
    for (int h = 0; h < 3 * m.nf() && sa < 0; ++h) {
      if (m.twin(h) >= 0 && m.twin(h) < h) continue;
      int a = m.he_from(h), b = m.he_to(h);
      if (vc[a] != comp) continue;
      double t;
      for (const auto& pg : st.pieces)
        if (crossing(pg, a, b, t)) {
          sa = a;
          sb = b;
          stt = t;
          sax = pg.axis;
          slam = pg.lam;
          break;
        }
    }
    if (sa < 0) break;
    int mid = split_tracked(fl, extra, &vc, sa, sb, stt);
    // land the new vertex exactly on the line (kills rounding residue)
    m.uv[mid] += (slam - vcoord(m.uv[mid], sax)) * axis_dir(sax + 1);
  }

  // confinement: every face touching the segment stays inside the strip
  double near_tol = 1e-3 * tau;
  for (int f = 0; f < m.nf(); ++f) {
    bool touches = false;
    for (int i = 0; i < 3; ++i) touches = touches || segset.count(m.tri[f][i]) > 0;
    if (!touches) continue;
    for (int i = 0; i < 3; ++i) {
      int v = m.tri[f][i];
      if (segset.count(v)) continue;
      bool online = false;
      for (const auto& pg : st.pieces) {
        double uu = ucoord(m.uv[v], pg.axis), vv = vcoord(m.uv[v], pg.axis);
        online = online || std::abs(vv - pg.lam) <= near_tol ||
                 (near_window_end(pg, uu) && vv >= pg.v0 - near_tol &&
                  vv <= pg.lam + near_tol);
      }
      if (!online) {
        std::string msg = "padding strip confinement failed: seg=" + std::to_string(s) +
                          " nv_entry=" + std::to_string(nv_entry) + " f=" + std::to_string(f) +
                          " v=" + std::to_string(v) + " uv=(" + std::to_string(m.uv[v].x()) +
                          "," + std::to_string(m.uv[v].y()) + ") tri=(" +
                          std::to_string(m.tri[f][0]) + "," + std::to_string(m.tri[f][1]) +
                          "," + std::to_string(m.tri[f][2]) + ")";
        for (const auto& pg : st.pieces)
          msg += " [axis=" + std::to_string(pg.axis) + " v0=" + std::to_string(pg.v0) +
                 " lam=" + std::to_string(pg.lam) + " ulo=" + std::to_string(pg.ulo) +
                 " uhi=" + std::to_string(pg.uhi) + "]";
        throw Error(2, msg);
      }
    }
  }
  return st;
}

int find_by_anchor(const Mesh& m, const BoundaryMap& bm, int anchor_vertex) {
  for (int s = 0; s < bm.topo.count(); ++s) {
    int p0 = bm.seg_pieces[s].front();
    if (m.he_from(bm.pieces[p0].halfedges.front()) == anchor_vertex) return s;
  }
  throw Error(2, "segment anchor lost during padding");
}

}  // namespace

void isolate_cones(Flattening& fl) {
  Mesh& m = fl.mc;
  std::set<int> extra(fl.extra_origs.begin(), fl.extra_origs.end());
  auto bm = boundary_map(m, fl.corner, fl.tree_origs, fl.extra_origs, true);
  std::set<int> segverts;
  for (const auto& p : bm.pieces)
    if (!p.tree && p.segment >= 0)
      for (int h : p.halfedges) {
        segverts.insert(m.he_from(h));
        segverts.insert(m.he_to(h));
      }
  std::vector<VPair> es;
  for (int h = 0; h < 3 * m.nf(); ++h) {
    if (m.twin(h) >= 0 && m.twin(h) < h) continue;
    int a = m.he_from(h), b = m.he_to(h);
    if ((m.cone_k[a] > 0 && segverts.count(b)) || (m.cone_k[b] > 0 && segverts.count(a)))
      es.push_back({a, b});
  }
  for (auto [a, b] : es)
    if (m.has_edge(a, b))  // its seam mate may have split it already
      split_tracked(fl, extra, nullptr, a, b, 0.5);
  fl.extra_origs.assign(extra.begin(), extra.end());
}

BoundaryMap pad_charts(Flattening& fl, const Eigen::VectorXd& w) {
  Mesh& m = fl.mc;
  std::set<int> extra(fl.extra_origs.begin(), fl.extra_origs.end());
  auto bmap = [&]() {
    fl.extra_origs.assign(extra.begin(), extra.end());
    return boundary_map(m, fl.corner, fl.tree_origs, fl.extra_origs, true);
  };

  BoundaryMap bm0 = bmap();
  int ns = bm0.topo.count();
  if ((int)w.size() != ns) throw Error(2, "padding width count mismatch");
  for (int s = 0; s < ns; ++s)
    if (!(w(s) >= 0)) throw Error(2, "negative padding width");
  std::vector<int> anchor(ns);
  for (int s = 0; s < ns; ++s)
    anchor[s] = m.he_from(bm0.pieces[bm0.seg_pieces[s].front()].halfedges.front());

  isolate_cones(fl);
  extra.insert(fl.extra_origs.begin(), fl.extra_origs.end());

  // stretch pass: move each padded segment outward by its width
  for (int s = 0; s < ns; ++s) {
    if (!(w(s) > 0)) continue;
    BoundaryMap bm = bmap();
    int cur = find_by_anchor(m, bm, anchor[s]);
    Strip st = insert_strip(fl, extra, bm, cur);
    for (const auto& pg : st.pieces) {
      Vec2 out = -axis_dir(pg.axis + 1);
      for (int v : pg.verts) m.uv[v] += w(s) * out;
    }
  }

  // shift pass: constant speed in original 3d arc length along each segment,
  // anchored at the outer corners (the slit, if any, redistributes between
  // the two pieces, which keeps the transition across it an exact rotation)
  for (int s = 0; s < ns; ++s) {
    BoundaryMap bm = bmap();
    int cur = find_by_anchor(m, bm, anchor[s]);
    auto pgs = segment_geometry(m, bm, cur);

    double L3 = 0;
    std::vector<std::vector<double>> cum(pgs.size());
    for (size_t p = 0; p < pgs.size(); ++p) {
      const auto& vs = pgs[p].verts;
      cum[p].resize(vs.size());
      cum[p][0] = L3;
      for (size_t i = 0; i + 1 < vs.size(); ++i) {
        L3 += m.edge_len3(vs[i], vs[i + 1]);
        cum[p][i + 1] = L3;
      }
    }
    if (!(L3 > 0)) throw Error(2, "segment without 3d extent");
    double span = 0;
    for (const auto& pg : pgs) span += pg.uhi - pg.ulo;

    // lateral targets per vertex; endpoints stay exactly put
    std::vector<std::vector<double>> tgt(pgs.size());
    double max_move = 0;
    for (size_t p = 0; p < pgs.size(); ++p) {
      const auto& pg = pgs[p];
      tgt[p].resize(pg.verts.size());
      for (size_t i = 0; i < pg.verts.size(); ++i) {
        double frac = cum[p][i] / L3;
        double u = (p == 0) ? pg.ulo + span * frac : pg.uhi - span * (1.0 - frac);
        tgt[p][i] = u;
        max_move = std::max(max_move, std::abs(u - ucoord(m.uv[pg.verts[i]], pg.axis)));
      }
      for (size_t i = 0; i + 1 < tgt[p].size(); ++i)
        if (!(tgt[p][i] < tgt[p][i + 1]))
          throw Error(2, "segment vertex order not preserved by the shift");
    }
    if (max_move <= 1e-12 * std::max(span, 1.0)) continue;

    insert_strip(fl, extra, bm, cur);
    for (size_t p = 0; p < pgs.size(); ++p) {
      const auto& pg = pgs[p];
      for (size_t i = 0; i < pg.verts.size(); ++i) {
        bool first_end = p == 0 && i == 0;
        bool last_end = p + 1 == pgs.size() && i + 1 == pg.verts.size();
        if (first_end || last_end) continue;
        int v = pg.verts[i];
        double du = tgt[p][i] - ucoord(m.uv[v], pg.axis);
        m.uv[v] += du * axis_dir(pg.axis);
      }
    }
  }

  return bmap();
}

}  // namespace seamless
