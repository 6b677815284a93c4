#include "flatten.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <map>
#include <numbers>
#include <queue>
#include <set>

#include "conformal.hpp"
#include "tolerances.hpp"

namespace seamless {

namespace {

constexpr double kPi = std::numbers::pi;

// length of the cevian from the apex to the midpoint of the base
double midpoint_cevian(double base, double side1, double side2) {
  double sq = 0.5 * side1 * side1 + 0.5 * side2 * side2 - 0.25 * base * base;
  if (sq <= 0) throw Error(2, "degenerate triangle in metric edge split");
  return std::sqrt(sq);
}

}  // namespace

int split_edge_metric(Mesh& m, std::vector<double>& mlen, int a, int b) {
  if (m.halfedge(a, b) < 0) std::swap(a, b);
  int h1 = m.halfedge(a, b);
  if (h1 < 0) throw Error(1, "metric split of missing edge");
  int f1 = h1 / 3;
  double l_ab = mlen[h1];
  double l_bc = mlen[m.he_next(h1)];
  double l_ca = mlen[m.he_prev(h1)];
  double cm = midpoint_cevian(l_ab, l_bc, l_ca);

  int h2 = m.twin(h1);
  double l_ad = 0, l_db = 0, dm = 0;
  int f2 = -1;
  if (h2 >= 0) {
    f2 = h2 / 3;
    l_ad = mlen[m.he_next(h2)];
    l_db = mlen[m.he_prev(h2)];
    dm = midpoint_cevian(mlen[h2], l_ad, l_db);
  }

  int g1 = m.nf();  // faces appended by split_edge, in order
  int mid = m.split_edge(a, b, 0.5);
  mlen.resize(3 * m.nf(), 0.0);

  // f1 became {a,mid,c}; g1 = {mid,b,c}
  mlen[3 * f1] = 0.5 * l_ab;
  mlen[3 * f1 + 1] = cm;
  mlen[3 * f1 + 2] = l_ca;
  mlen[3 * g1] = 0.5 * l_ab;
  mlen[3 * g1 + 1] = l_bc;
  mlen[3 * g1 + 2] = cm;
  if (h2 >= 0) {
    // f2 became {mid,a,d}; g2 = {b,mid,d}
    int g2 = g1 + 1;
    mlen[3 * f2] = 0.5 * l_ab;
    mlen[3 * f2 + 1] = l_ad;
    mlen[3 * f2 + 2] = dm;
    mlen[3 * g2] = 0.5 * l_ab;
    mlen[3 * g2 + 1] = dm;
    mlen[3 * g2 + 2] = l_db;
  }
  return mid;
}

namespace {

// outgoing halfedges per vertex (rebuilt after refinement)
std::vector<std::vector<int>> out_halfedges(const Mesh& m) {
  std::vector<std::vector<int>> out(m.nv());
  for (int h = 0; h < 3 * m.nf(); ++h) out[m.he_from(h)].push_back(h);
  return out;
}

// Root of the cone tree of one boundary component: the metric middle of the
// longest corner-to-corner boundary run, never a corner itself.
int pick_boundary_root(const Mesh& m, const std::vector<uint8_t>& corner,
                       const std::vector<double>& mlen,
                       const std::vector<std::vector<int>>& loops) {
  double best_len = -1;
  std::vector<int> best_run;
  for (const auto& loop : loops) {
    int L = (int)loop.size();
    int s0 = -1;
    for (int i = 0; i < L && s0 < 0; ++i)
      if (corner[m.he_from(loop[i])]) s0 = i;
    if (s0 < 0) {
      // no corners on this loop: the whole loop is one run
      double len = 0;
      for (int h : loop) len += mlen[h];
      if (len > best_len) {
        best_len = len;
        best_run = loop;
      }
      continue;
    }
    std::vector<int> run;
    double len = 0;
    for (int i = 0; i <= L; ++i) {
      int h = loop[(s0 + i) % L];
      if (i > 0 && corner[m.he_from(h)]) {
        if (len > best_len) {
          best_len = len;
          best_run = run;
        }
        run.clear();
        len = 0;
      }
      if (i == L) break;
      run.push_back(h);
      len += mlen[h];
    }
  }
  if (best_run.size() < 2)
    throw Error(2, "no boundary run long enough to root a cone tree");
  double half = 0.5 * best_len, acc = 0;
  for (size_t i = 0; i + 1 < best_run.size(); ++i) {
    acc += mlen[best_run[i]];
    if (acc >= half) return m.he_to(best_run[i]);
  }
  return m.he_to(best_run[best_run.size() - 2]);
}

}  // namespace

std::vector<EdgePath> build_cone_trees(Mesh& m, std::vector<uint8_t>& corner,
                                       std::vector<double>& mlen) {
  std::vector<EdgePath> paths;
  auto comp = m.face_component();
  int nc = comp.empty() ? 0 : *std::max_element(comp.begin(), comp.end()) + 1;
  std::vector<int> vcomp(m.nv(), -1);
  for (int f = 0; f < m.nf(); ++f)
    for (int i = 0; i < 3; ++i) vcomp[m.tri[f][i]] = comp[f];

  std::vector<std::vector<int>> comp_cones(nc);
  for (int v = 0; v < m.nv(); ++v)
    if (m.cone_k[v] > 0 && vcomp[v] >= 0) comp_cones[vcomp[v]].push_back(v);

  auto all_loops = m.boundary_loops();

  for (int c = 0; c < nc; ++c) {
    if (comp_cones[c].empty()) continue;

    std::vector<std::vector<int>> loops;
    for (const auto& loop : all_loops)
      if (comp[loop[0] / 3] == c) loops.push_back(loop);
    int root = loops.empty() ? comp_cones[c][0]  // closed surface: first cone
                             : pick_boundary_root(m, corner, mlen, loops);

    std::vector<uint8_t> in_tree(m.nv(), 0);
    in_tree[root] = 1;
    std::vector<VPair> tree_edges;
    std::set<int> remaining(comp_cones[c].begin(), comp_cones[c].end());
    remaining.erase(root);

    const int max_rounds = 8;
    for (int round = 0; round <= max_rounds && !remaining.empty(); ++round) {
      in_tree.resize(m.nv(), 0);
      auto out = out_halfedges(m);
      bool stuck = false;
      while (!remaining.empty() && !stuck) {
        // shortest-path wavefront from the whole current tree
        const double inf = std::numeric_limits<double>::infinity();
        std::vector<double> dist(m.nv(), inf);
        std::vector<int> prev(m.nv(), -1);
        using QE = std::pair<double, int>;
        std::priority_queue<QE, std::vector<QE>, std::greater<QE>> pq;
        for (int v = 0; v < m.nv(); ++v)
          if (in_tree[v] && !(m.cone_k[v] > 0 && v != root)) {
            dist[v] = 0;
            pq.push({0.0, v});
          }
        int hit = -1;
        while (!pq.empty()) {
          auto [d, v] = pq.top();
          pq.pop();
          if (d > dist[v]) continue;
          if (remaining.count(v)) {
            hit = v;
            break;
          }
          // only free interior vertices may be crossed
          if (dist[v] > 0 &&
              (m.is_boundary_vertex(v) || m.cone_k[v] > 0 || in_tree[v]))
            continue;
          for (int h : out[v]) {
            int w = m.he_to(h);
            if (in_tree[w] && dist[w] == inf && !remaining.count(w)) continue;
            double nd = d + mlen[h];
            if (nd < dist[w] - 1e-15 * (1 + nd)) {
              dist[w] = nd;
              prev[w] = v;
              pq.push({nd, w});
            }
          }
        }
        if (hit < 0) {
          stuck = true;
          break;
        }
        EdgePath path;
        for (int v = hit; v >= 0; v = prev[v]) path.push_back(v);
        std::reverse(path.begin(), path.end());
        for (size_t i = 0; i + 1 < path.size(); ++i)
          tree_edges.push_back({path[i], path[i + 1]});
        for (int v : path) in_tree[v] = 1;
        remaining.erase(hit);
        paths.push_back(path);
      }
      if (remaining.empty()) break;
      if (round == max_rounds)
        throw Error(2, "cone tree search budget exhausted");

      // refine: split interior edges caught between blocked vertices
      std::set<VPair> protect;
      for (auto [a, b] : tree_edges) {
        protect.insert({std::min(a, b), std::max(a, b)});
      }
      auto blocked = [&](int v) {
        return m.is_boundary_vertex(v) || m.cone_k[v] > 0 || in_tree[v];
      };
      std::vector<VPair> to_split;
      std::set<VPair> seen;
      for (int h = 0; h < 3 * m.nf(); ++h) {
        if (m.twin(h) < 0) continue;
        int a = m.he_from(h), b = m.he_to(h);
        VPair key{std::min(a, b), std::max(a, b)};
        if (!blocked(a) || !blocked(b) || protect.count(key)) continue;
        if (seen.insert(key).second) to_split.push_back(key);
      }
      if (to_split.empty())
        throw Error(2, "cone unreachable and nothing left to refine");
      for (auto [a, b] : to_split) {
        split_edge_metric(m, mlen, a, b);
        corner.push_back(0);
      }
    }
  }
  return paths;
}

double layout_charts(Mesh& m, const std::vector<uint8_t>& corner,
                     const std::vector<double>& mlen) {
  auto angles = corner_angles(m, mlen);
  auto comp = m.face_component();
  int nc = comp.empty() ? 0 : *std::max_element(comp.begin(), comp.end()) + 1;

  m.uv.assign(m.nv(), Vec2::Zero());
  std::vector<uint8_t> placed(m.nv(), 0);
  std::vector<uint8_t> fdone(m.nf(), 0);
  double worst = 0;

  for (int c = 0; c < nc; ++c) {
    // gauge: lowest boundary halfedge of the component, corner start preferred
    int hg = -1;
    for (int pass = 0; pass < 2 && hg < 0; ++pass)
      for (int h = 0; h < 3 * m.nf() && hg < 0; ++h)
        if (m.twin(h) < 0 && comp[h / 3] == c &&
            (pass == 1 || corner[m.he_from(h)]))
          hg = h;
    if (hg < 0) throw Error(2, "component without boundary cannot be laid out");

    m.uv[m.he_from(hg)] = Vec2(0, 0);
    m.uv[m.he_to(hg)] = Vec2(mlen[hg], 0);
    placed[m.he_from(hg)] = placed[m.he_to(hg)] = 1;

    double drift = 0;
    std::deque<int> queue{hg / 3};
    fdone[hg / 3] = 1;
    while (!queue.empty()) {
      int f = queue.front();
      queue.pop_front();
      int h = -1;
      for (int i = 0; i < 3; ++i)
        if (placed[m.he_from(3 * f + i)] && placed[m.he_to(3 * f + i)]) {
          h = 3 * f + i;
          break;
        }
      if (h < 0) throw Error(2, "layout reached a face with no placed edge");
      int a = m.he_from(h), b = m.he_to(h), v = m.he_to(m.he_next(h));
      double ang = angles[h];
      double s = std::sin(ang), co = std::cos(ang);
      Vec2 ab = m.uv[b] - m.uv[a];
      Vec2 target =
          m.uv[a] + Vec2(co * ab.x() - s * ab.y(), s * ab.x() + co * ab.y()) *
                        (mlen[m.he_prev(h)] / mlen[h]);
      if (placed[v]) {
        drift = std::max(drift, (target - m.uv[v]).norm());
      } else {
        m.uv[v] = target;
        placed[v] = 1;
      }
      for (int i = 0; i < 3; ++i) {
        int tw = m.twin(3 * f + i);
        if (tw >= 0 && !fdone[tw / 3]) {
          fdone[tw / 3] = 1;
          queue.push_back(tw / 3);
        }
      }
    }

    Vec2 lo(std::numeric_limits<double>::infinity(),
            std::numeric_limits<double>::infinity());
    Vec2 hi = -lo;
    for (int f = 0; f < m.nf(); ++f)
      if (comp[f] == c)
        for (int i = 0; i < 3; ++i) {
          lo = lo.cwiseMin(m.uv[m.tri[f][i]]);
          hi = hi.cwiseMax(m.uv[m.tri[f][i]]);
        }
    double diam = (hi - lo).norm();
    if (drift > tol::layout_drift * std::max(diam, 1e-30))
      throw Error(2, "layout drift " + std::to_string(drift) +
                         " exceeds tolerance for component diameter " +
                         std::to_string(diam));
    worst = std::max(worst, drift);
  }
  return worst;
}

std::vector<uint8_t> corner_flags(const Mesh& m, const std::vector<int>& node_origs) {
  std::set<int> nodes(node_origs.begin(), node_origs.end());
  std::vector<uint8_t> corner(m.nv(), 0);
  for (int v = 0; v < m.nv(); ++v)
    if (m.is_boundary_vertex(v) && nodes.count(m.orig[v])) corner[v] = 1;
  return corner;
}

Flattening flatten_charts(const CutMesh& cm, const std::vector<double>& u) {
  Flattening fl;
  fl.mc = cm.cut;
  fl.node_origs = cm.node_origs;
  fl.extra_origs = cm.extra_origs;
  fl.corner = corner_flags(fl.mc, fl.node_origs);
  fl.mlen = metric_lengths(fl.mc, u);

  auto paths = build_cone_trees(fl.mc, fl.corner, fl.mlen);
  std::vector<VPair> edges;
  for (const auto& p : paths) {
    for (int v : p) fl.tree_origs.insert(fl.mc.orig[v]);
    for (size_t i = 0; i + 1 < p.size(); ++i) edges.push_back({p[i], p[i + 1]});
  }
  if (!edges.empty()) fl.mc.cut_along_edges(edges);
  fl.corner = corner_flags(fl.mc, fl.node_origs);
  if ((int)fl.mlen.size() != 3 * fl.mc.nf())
    throw Error(2, "metric lengths out of step with the cut mesh");

  fl.drift = layout_charts(fl.mc, fl.corner, fl.mlen);
  return fl;
}

BoundaryMap boundary_map(const Mesh& mc, const std::vector<uint8_t>& corner,
                         const std::set<int>& tree_origs,
                         const std::vector<int>& extra_origs, bool use_uv,
                         const std::vector<double>* mlen) {
  if (!use_uv && !mlen) throw Error(2, "boundary map needs uv or metric lengths");
  BoundaryMap bm;
  auto elen = [&](int h) {
    return use_uv ? (mc.uv[mc.he_to(h)] - mc.uv[mc.he_from(h)]).norm()
                  : (*mlen)[h];
  };
  auto is_tree = [&](int h) {
    return tree_origs.count(mc.orig[mc.he_from(h)]) &&
           tree_origs.count(mc.orig[mc.he_to(h)]) > 0;
  };

  auto loops = mc.boundary_loops();
  auto fcomp = mc.face_component();
  std::stable_sort(loops.begin(), loops.end(),
                   [&](const auto& x, const auto& y) {
                     return fcomp[x[0] / 3] < fcomp[y[0] / 3];
                   });

  std::map<int, int> seg_of_he;
  std::vector<double> seg_len;
  for (const auto& loop : loops) {
    int L = (int)loop.size();
    int s0 = -1;
    for (int i = 0; i < L && s0 < 0; ++i)
      if (corner[mc.he_from(loop[i])]) s0 = i;
    if (s0 < 0) {
      // closed-surface chart: the whole loop is one tree slit, no segments
      BoundaryPiece p;
      p.halfedges = loop;
      p.tree = true;
      bm.pieces.push_back(std::move(p));
      continue;
    }

    int first_piece = (int)bm.pieces.size();
    for (int i = 0; i < L; ++i) {
      int h = loop[(s0 + i) % L];
      bool tree = is_tree(h);
      bool cut_here = i == 0 || corner[mc.he_from(h)] ||
                      bm.pieces.back().tree != tree;
      if (cut_here) {
        BoundaryPiece p;
        p.tree = tree;
        if (!tree) {
          if (corner[mc.he_from(h)] || i == 0) {
            p.segment = (int)seg_len.size();  // fresh segment at a corner
            seg_len.push_back(0);
            bm.seg_pieces.push_back({});
            bm.seg_axis.push_back(0);
          } else {
            p.segment = bm.seg_pieces.empty()
                            ? -1
                            : (int)seg_len.size() - 1;  // continuation
          }
          if (p.segment < 0) throw Error(2, "segment continuation without a segment");
          bm.seg_pieces[p.segment].push_back((int)bm.pieces.size());
        }
        bm.pieces.push_back(std::move(p));
      }
      auto& p = bm.pieces.back();
      p.halfedges.push_back(h);
      if (!p.tree) {
        seg_len[p.segment] += elen(h);
        seg_of_he[h] = p.segment;
      }
    }

    // exact axis classes: snap the first piece from uv, then advance by one
    // quarter turn per corner and (4 - k) quarters per cone on a tree slit
    int axis = 0;
    for (int pi = first_piece; pi < (int)bm.pieces.size(); ++pi) {
      auto& p = bm.pieces[pi];
      if (pi == first_piece) {
        Vec2 chord = mc.uv[mc.he_to(p.halfedges.back())] -
                     mc.uv[mc.he_from(p.halfedges.front())];
        double ang = std::atan2(chord.y(), chord.x());
        int cls = (int)std::lround(ang / (kPi / 2));
        if (std::abs(std::remainder(ang - cls * kPi / 2, 2 * kPi)) >
            tol::rotation_snap)
          throw Error(2, "first boundary piece is not axis-aligned");
        axis = ((cls % 4) + 4) % 4;
      } else {
        if (corner[mc.he_from(p.halfedges.front())]) axis += 1;
        if (bm.pieces[pi - 1].tree) {
          const auto& ex = bm.pieces[pi - 1].halfedges;
          for (size_t i = 0; i + 1 < ex.size(); ++i) {
            int v = mc.he_to(ex[i]);
            if (mc.cone_k[v] > 0) axis += 4 - mc.cone_k[v];
          }
        }
      }
      axis = ((axis % 4) + 4) % 4;
      p.axis = axis;
      if (!p.tree) {
        Vec2 chord = mc.uv[mc.he_to(p.halfedges.back())] -
                     mc.uv[mc.he_from(p.halfedges.front())];
        double ang = std::atan2(chord.y(), chord.x());
        if (std::abs(std::remainder(ang - axis * kPi / 2, 2 * kPi)) >
            tol::rotation_snap)
          throw Error(2, "boundary piece direction disagrees with its axis class");
        if (bm.seg_pieces[p.segment].front() == pi)
          bm.seg_axis[p.segment] = axis;
      }
    }

    // cyclic segment order of this chart
    std::vector<int> cycle;
    for (int pi = first_piece; pi < (int)bm.pieces.size(); ++pi) {
      const auto& p = bm.pieces[pi];
      if (!p.tree && (cycle.empty() || cycle.back() != p.segment))
        cycle.push_back(p.segment);
    }
    if (!cycle.empty()) bm.topo.components.push_back(std::move(cycle));
  }

  bm.seg_len = Eigen::Map<Eigen::VectorXd>(seg_len.data(), (long)seg_len.size());

  // mate relations from the seam pairing; every segment maps onto one mate
  int ns = (int)seg_len.size();
  std::vector<int> mate(ns, -1);
  for (auto& [he, s] : seg_of_he) {
    int a = mc.he_from(he), b = mc.he_to(he);
    auto sit = mc.seam.find({a, b});
    if (sit == mc.seam.end()) throw Error(2, "segment edge without a seam mate");
    int mh = mc.halfedge(sit->second.first, sit->second.second);
    auto it = seg_of_he.find(mh);
    if (it == seg_of_he.end()) throw Error(2, "seam mate is not a segment edge");
    if (mate[s] >= 0 && mate[s] != it->second)
      throw Error(2, "segment mate image is not a single segment");
    mate[s] = it->second;
  }
  for (int s = 0; s < ns; ++s) {
    if (mate[s] < 0) throw Error(2, "segment without a mate");
    if (mate[mate[s]] != s) throw Error(2, "asymmetric segment mates");
    if (s < mate[s]) bm.topo.mates.push_back({s, {mate[s]}});
  }

  // Identify the two segments running along the component-splitting path.
  // Because that path ends at degree-4 nodes, every node sector is a corner
  // and all mate relations are simple pairs, so the padding solve needs no
  // zero-pinning; the pair is exposed for diagnostics only.
  if (!extra_origs.empty()) {
    std::set<int> extra(extra_origs.begin(), extra_origs.end());
    std::vector<uint8_t> on_extra(ns, 1);
    for (auto& [he, s] : seg_of_he)
      if (!extra.count(mc.orig[mc.he_from(he)]) ||
          !extra.count(mc.orig[mc.he_to(he)]))
        on_extra[s] = 0;
    for (int s = 0; s < ns; ++s)
      if (on_extra[s]) bm.extra_segments.push_back(s);
    if (bm.extra_segments.size() != 2)
      throw Error(2, "expected exactly two splitting-path segments");
  }
  return bm;
}

}  // namespace seamless
