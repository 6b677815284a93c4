#include "cutgraph.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <functional>
#include <limits>
#include <map>
#include <queue>
#include <set>
#include <tuple>
#include <unordered_map>

namespace seamless {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// undirected vertex adjacency; interior_only drops boundary edges
std::vector<std::vector<int>> adjacency(const Mesh& m, bool interior_only) {
  std::vector<std::set<int>> adj(m.nv());
  for (int h = 0; h < 3 * m.nf(); ++h) {
    if (interior_only && m.twin(h) < 0) continue;
    adj[m.he_from(h)].insert(m.he_to(h));
    adj[m.he_to(h)].insert(m.he_from(h));
  }
  std::vector<std::vector<int>> out(m.nv());
  for (int v = 0; v < m.nv(); ++v) out[v].assign(adj[v].begin(), adj[v].end());
  return out;
}

struct DijkstraTree {
  std::vector<double> dist;
  std::vector<int> parent;
};

// full shortest-path tree over vertices passing `allowed`; ties to lower index
DijkstraTree dijkstra_tree(const Mesh& m, const std::vector<std::vector<int>>& adj, int root,
                           const std::function<bool(int)>& allowed) {
  DijkstraTree t{std::vector<double>(m.nv(), kInf), std::vector<int>(m.nv(), -1)};
  std::priority_queue<std::pair<double, int>, std::vector<std::pair<double, int>>, std::greater<>>
      pq;
  t.dist[root] = 0;
  pq.push({0, root});
  while (!pq.empty()) {
    auto [d, v] = pq.top();
    pq.pop();
    if (d > t.dist[v]) continue;
    for (int w : adj[v]) {
      if (!allowed(w)) continue;
      double nd = d + m.edge_len3(v, w);
      if (nd < t.dist[w] - 1e-15) {
        t.dist[w] = nd;
        t.parent[w] = v;
        pq.push({nd, w});
      }
    }
  }
  return t;
}

// shortest path s -> first vertex passing `target`; interior vertices must
// pass `allowed`. Empty on failure.
EdgePath dijkstra_path(const Mesh& m, const std::vector<std::vector<int>>& adj, int s,
                       const std::function<bool(int)>& allowed,
                       const std::function<bool(int)>& target) {
  std::vector<double> dist(m.nv(), kInf);
  std::vector<int> parent(m.nv(), -1);
  std::priority_queue<std::pair<double, int>, std::vector<std::pair<double, int>>, std::greater<>>
      pq;
  dist[s] = 0;
  pq.push({0, s});
  while (!pq.empty()) {
    auto [d, v] = pq.top();
    pq.pop();
    if (d > dist[v]) continue;
    if (v != s && target(v)) {
      EdgePath p;
      for (int x = v; x >= 0; x = parent[x]) p.push_back(x);
      std::reverse(p.begin(), p.end());
      return p;
    }
    if (v != s && !allowed(v)) continue;  // targets are absorbing
    for (int w : adj[v]) {
      if (!allowed(w) && !target(w)) continue;
      double nd = d + m.edge_len3(v, w);
      if (nd < dist[w] - 1e-15) {
        dist[w] = nd;
        parent[w] = v;
        pq.push({nd, w});
      }
    }
  }
  return {};
}

std::vector<VPair> path_edges(const EdgePath& p) {
  std::vector<VPair> e;
  for (size_t i = 0; i + 1 < p.size(); ++i) e.push_back({p[i], p[i + 1]});
  return e;
}

void set_corners(CutMesh& cm) {
  std::set<int> nodes(cm.node_origs.begin(), cm.node_origs.end());
  cm.corner.assign(cm.cut.nv(), 0);
  for (int v = 0; v < cm.cut.nv(); ++v)
    if (cm.cut.is_boundary_vertex(v) && nodes.count(cm.cut.orig[v])) cm.corner[v] = 1;
}

// per-vertex component id via incident faces
std::vector<int> vertex_components(const Mesh& m) {
  auto fc = m.face_component();
  std::vector<int> vc(m.nv(), -1);
  for (int f = 0; f < m.nf(); ++f)
    for (int i = 0; i < 3; ++i) vc[m.tri[f][i]] = fc[f];
  return vc;
}

void flag_obstacles(Mesh& m) {
  for (int v = 0; v < m.nv(); ++v)
    m.flag[v] = (m.is_boundary_vertex(v) || m.cone_k[v] != 0) ? 1 : 0;
}

// do the faces stay connected when the given edges are cut?
bool faces_stay_connected(const Mesh& m, const std::vector<VPair>& edges) {
  std::set<VPair> cut;
  for (auto [a, b] : edges) {
    cut.insert({a, b});
    cut.insert({b, a});
  }
  if (m.nf() == 0) return true;
  std::vector<char> seen(m.nf(), 0);
  std::vector<int> stack = {0};
  seen[0] = 1;
  int count = 1;
  while (!stack.empty()) {
    int f = stack.back();
    stack.pop_back();
    for (int i = 0; i < 3; ++i) {
      int h = 3 * f + i, t = m.twin(h);
      if (t < 0 || seen[t / 3]) continue;
      if (cut.count({m.he_from(h), m.he_to(h)})) continue;
      seen[t / 3] = 1;
      stack.push_back(t / 3);
      ++count;
    }
  }
  return count == m.nf();
}

}  // namespace

std::vector<EdgePath> homology_loops(Mesh& m) {
  int g = m.genus();
  std::vector<EdgePath> loops;
  if (g == 0) return loops;

  std::fill(m.flag.begin(), m.flag.end(), 0);
  for (int v = 0; v < m.nv(); ++v)
    if (m.cone_k[v]) m.flag[v] = 1;

  std::vector<VPair> accepted;
  for (int it = 0; it < g; ++it) {
    auto allowed = [&](int v) { return m.flag[v] == 0; };
    bool found = false;
    for (int attempt = 0; attempt < 6 && !found; ++attempt) {
      auto adj = adjacency(m, false);
      int root = -1, skip = attempt;
      for (int v = 0; v < m.nv() && root < 0; ++v)
        if (allowed(v) && skip-- == 0) root = v;
      if (root < 0) break;
      DijkstraTree t = dijkstra_tree(m, adj, root, allowed);

      struct Cand {
        double len;
        int u, v;
      };
      std::vector<Cand> cands;
      for (int u = 0; u < m.nv(); ++u) {
        if (t.dist[u] == kInf) continue;
        for (int v : adj[u]) {
          if (v <= u || t.dist[v] == kInf || !allowed(v)) continue;
          if (t.parent[u] == v || t.parent[v] == u) continue;
          cands.push_back({t.dist[u] + t.dist[v] + m.edge_len3(u, v), u, v});
        }
      }
      std::sort(cands.begin(), cands.end(), [](const Cand& a, const Cand& b) {
        return std::tie(a.len, a.u, a.v) < std::tie(b.len, b.u, b.v);
      });
      for (const Cand& c : cands) {
        // trim the two tree paths to their deepest common vertex
        std::set<int> anc;
        for (int x = c.u; x >= 0; x = t.parent[x]) anc.insert(x);
        int meet = c.v;
        while (!anc.count(meet)) meet = t.parent[meet];
        EdgePath cyc;
        for (int x = c.u; x != meet; x = t.parent[x]) cyc.push_back(x);
        cyc.push_back(meet);
        std::reverse(cyc.begin(), cyc.end());  // meet .. u
        EdgePath side;
        for (int x = c.v; x != meet; x = t.parent[x]) side.push_back(x);
        cyc.insert(cyc.end(), side.begin(), side.end());  // meet..u, v..(meet exclusive)
        cyc.push_back(meet);
        check_path(m, cyc, true);

        std::vector<VPair> all = accepted;
        auto ce = path_edges(cyc);
        all.insert(all.end(), ce.begin(), ce.end());
        if (!faces_stay_connected(m, all)) continue;  // separating: cheap reject
        Mesh tentative = m;
        tentative.cut_along_edges(all);
        if (tentative.component_count() != 1) continue;
        if (tentative.genus() != g - (it + 1)) continue;

        for (size_t i = 0; i + 1 < cyc.size(); ++i) m.flag[cyc[i]] = 1;
        accepted.insert(accepted.end(), ce.begin(), ce.end());
        loops.push_back(cyc);
        found = true;
        break;
      }
      if (!found) refine_for_paths(m, accepted);
    }
    if (!found) throw Error(2, "failed to find a genus-reducing loop");
    refine_for_paths(m, accepted);
  }
  return loops;
}

std::vector<int> order_holes(const Mesh& lc) {
  auto bl = lc.boundary_loops();
  int H = (int)bl.size();
  if (H % 2) throw Error(2, "odd number of holes after the loop cut");
  int g = H / 2;

  std::vector<std::set<int>> sig(H);
  std::vector<Vec3> centroid(H, Vec3::Zero());
  std::vector<int> minv(H, 1 << 30);
  for (int i = 0; i < H; ++i) {
    for (int h : bl[i]) {
      int v = lc.he_from(h);
      sig[i].insert(lc.orig[v]);
      centroid[i] += lc.pos[v];
      minv[i] = std::min(minv[i], v);
    }
    centroid[i] /= (double)bl[i].size();
  }

  std::vector<std::array<int, 2>> pairs;
  std::vector<char> used(H, 0);
  for (int i = 0; i < H; ++i) {
    if (used[i]) continue;
    int j = -1;
    for (int k = i + 1; k < H; ++k)
      if (!used[k] && sig[k] == sig[i]) j = k;
    if (j < 0) throw Error(2, "hole without a partner copy");
    used[i] = used[j] = 1;
    int a = minv[i] <= minv[j] ? i : j;  // copy 0 = lower min vertex id
    pairs.push_back({a, a == i ? j : i});
  }

  // greedy pair order by centroid proximity, seeded at the lowest signature
  std::vector<int> porder;
  std::vector<char> taken(pairs.size(), 0);
  int cur = 0;
  for (size_t p = 1; p < pairs.size(); ++p)
    if (*sig[pairs[p][0]].begin() < *sig[pairs[cur][0]].begin()) cur = (int)p;
  porder.push_back(cur);
  taken[cur] = 1;
  while (porder.size() < pairs.size()) {
    int best = -1;
    double bd = kInf;
    for (size_t p = 0; p < pairs.size(); ++p) {
      if (taken[p]) continue;
      double d = (centroid[pairs[p][0]] - centroid[pairs[porder.back()][0]]).norm();
      if (d < bd) {
        bd = d;
        best = (int)p;
      }
    }
    porder.push_back(best);
    taken[best] = 1;
  }

  auto A = [&](int t) { return pairs[porder[t]][0]; };
  auto B = [&](int t) { return pairs[porder[t]][1]; };
  std::vector<int> chain;
  if (g == 1) {
    chain = {A(0), B(0)};
  } else if (g == 2) {
    chain = {A(0), A(1), B(1), B(0)};
  } else {
    // interleave one pair so some partner couple encloses an odd hole count
    chain = {A(0), A(1), A(2), B(1), B(2)};
    for (int t = 3; t < g; ++t) {
      chain.push_back(A(t));
      chain.push_back(B(t));
    }
    chain.push_back(B(0));
  }
  return chain;
}

void build_connectors(CutMesh& out, const std::vector<int>& hole_order, bool open_chain) {
  Mesh& m = out.cut;
  auto bl = m.boundary_loops();
  int H = (int)hole_order.size();
  if (H < 2) throw Error(2, "hole chain too short");

  // designated connector endpoints per chain position, recorded before any cut
  std::vector<int> in_v(H, -1), out_v(H, -1);
  auto verts_of = [&](int pos) {
    std::vector<int> vs;
    for (int h : bl[hole_order[pos]]) vs.push_back(m.he_from(h));
    return vs;
  };
  auto find_orig = [&](const std::vector<int>& vs, int o) {
    for (int v : vs)
      if (m.orig[v] == o) return v;
    throw Error(2, "designated point missing on partner hole");
  };

  std::map<std::set<int>, std::vector<int>> positions;
  for (int i = 0; i < H; ++i) {
    std::set<int> s;
    for (int v : verts_of(i)) s.insert(m.orig[v]);
    positions[s].push_back(i);
  }
  for (auto& [s, ps] : positions) {
    if (ps.size() != 2) throw Error(2, "hole signature not paired");
    int i = ps[0], j = ps[1];
    auto vi = verts_of(i), vj = verts_of(j);
    int xi = vi[0];
    for (int v : vi)
      if (m.orig[v] < m.orig[xi]) xi = v;
    int x = m.orig[xi];
    if (i == 0 && j == H - 1 && !open_chain) {  // terminal pair: one shared point
      out_v[i] = xi;
      in_v[j] = find_orig(vj, x);
      out.node_origs.push_back(x);
    } else if (i == 0 && j == H - 1) {
      // terminal pair, open chain: two different points, each left at degree 3
      // until the component-splitting path ends at their free copies
      int L = (int)vi.size();
      int px = (int)(std::find(vi.begin(), vi.end(), xi) - vi.begin());
      int zi = vi[(px + L / 2) % L];
      int z = m.orig[zi];
      out_v[i] = xi;
      in_v[j] = find_orig(vj, z);
      out.node_origs.push_back(x);
      out.node_origs.push_back(z);
      out.open_origs = {x, z};
    } else {
      int L = (int)vi.size();
      int px = (int)(std::find(vi.begin(), vi.end(), xi) - vi.begin());
      int yi = vi[(px + L / 2) % L];
      int y = m.orig[yi];
      in_v[i] = xi;
      out_v[i] = yi;
      in_v[j] = find_orig(vj, x);
      out_v[j] = find_orig(vj, y);
      out.node_origs.push_back(x);
      out.node_origs.push_back(y);
    }
  }

  for (int i = 0; i + 1 < H; ++i) {
    int s = out_v[i], e = in_v[i + 1];
    if (s < 0 || e < 0) throw Error(2, "hole chain endpoints incomplete");
    EdgePath p;
    for (int round = 0; round < 8 && p.empty(); ++round) {
      auto adj = adjacency(m, true);
      auto allowed = [&](int v) { return !m.is_boundary_vertex(v) && m.cone_k[v] == 0; };
      auto target = [&](int v) { return v == e; };
      p = dijkstra_path(m, adj, s, allowed, target);
      if (p.empty()) {
        flag_obstacles(m);
        refine_for_paths(m);
      }
    }
    if (p.empty()) throw Error(2, "no connector path between consecutive holes");
    m.cut_along_edges(path_edges(p));
  }
  set_corners(out);
}

std::vector<int> assign_rho(const Mesh& m) {
  std::vector<int> rho(3 * m.nf(), 0);
  auto adj = adjacency(m, true);
  for (int c = 0; c < m.nv(); ++c) {
    if (!m.cone_k[c]) continue;
    auto allowed = [&](int v) { return !m.is_boundary_vertex(v) && m.cone_k[v] == 0; };
    auto target = [&](int v) { return m.is_boundary_vertex(v); };
    EdgePath p = dijkstra_path(m, adj, c, allowed, target);
    if (p.empty()) throw Error(2, "cone has no interior route to the boundary");
    int units = 4 - m.cone_k[c];
    for (size_t i = 0; i + 1 < p.size(); ++i) {
      int h = m.halfedge(p[i], p[i + 1]);
      if (h < 0 || m.twin(h) < 0) throw Error(2, "cone route crosses the boundary");
      rho[h] += units;
      rho[m.twin(h)] -= units;
    }
  }
  return rho;
}

namespace {

// cut a copy along `path` and test the two-component corner/curvature rule
bool validate_extra_cut(const CutMesh& out, const EdgePath& path, Mesh* result) {
  Mesh t = out.cut;
  t.cut_along_edges(path_edges(path));
  if (t.component_count() != 2) return false;
  auto bl = t.boundary_loops();
  if (bl.size() != 2) return false;
  auto fc = t.face_component();
  if (fc[bl[0][0] / 3] == fc[bl[1][0] / 3]) return false;
  if (t.euler() != 2) return false;

  std::set<int> nodes(out.node_origs.begin(), out.node_origs.end());
  nodes.insert(out.cut.orig[path.front()]);
  nodes.insert(out.cut.orig[path.back()]);
  auto vc = vertex_components(t);
  int n[2] = {0, 0}, units[2] = {0, 0};
  for (int v = 0; v < t.nv(); ++v) {
    if (t.is_boundary_vertex(v) && nodes.count(t.orig[v])) n[vc[v]]++;
    if (t.cone_k[v]) units[vc[v]] += 4 - t.cone_k[v];
  }
  for (int i = 0; i < 2; ++i) {
    if (n[i] + units[i] != 4) return false;
    if (n[i] % 4 == 0) return false;
  }
  *result = std::move(t);
  return true;
}

}  // namespace

void find_extra_path(CutMesh& out) {
  Mesh& m = out.cut;
  if (out.open_origs[0] < 0 || out.open_origs[1] < 0)
    throw Error(2, "splitting path requested without open chain endpoints");

  for (int round = 0; round < 6; ++round) {
    auto loops = m.boundary_loops();
    if (loops.size() != 1)
      throw Error(2, "open-chain cut is not a single-boundary disk");
    const auto& loop = loops[0];
    int L = (int)loop.size();
    std::vector<int> vs(L);
    std::map<int, int> pos_of;
    for (int i = 0; i < L; ++i) {
      vs[i] = m.he_from(loop[i]);
      pos_of[vs[i]] = i;
    }
    std::set<int> nodes(out.node_origs.begin(), out.node_origs.end());

    std::vector<int> starts, targets, cones;
    for (int v = 0; v < m.nv(); ++v) {
      if (m.is_boundary_vertex(v) && m.orig[v] == out.open_origs[0])
        starts.push_back(v);
      if (m.is_boundary_vertex(v) && m.orig[v] == out.open_origs[1])
        targets.push_back(v);
      if (m.cone_k[v]) cones.push_back(v);
    }
    if (starts.empty() || targets.empty())
      throw Error(2, "open chain endpoints lost their boundary copies");
    int nc = (int)cones.size();
    if (nc > 24) throw Error(1, "too many cones to enumerate curvature splits");

    auto adj = adjacency(m, true);
    int budget = 400;  // barrier routings per round

    // The path joins a boundary copy of one open endpoint to a copy of the
    // other. The copy pair fixes the corner split (the two boundary arcs
    // between the copies); a cone subset with the matching curvature sum is
    // then forced onto each side by vertex-disjoint barrier paths from every
    // cone to its arc, which the splitting path cannot cross.
    auto try_round = [&]() -> bool {
      for (int v1 : starts) {
        for (int v2 : targets) {
          int p1 = pos_of.at(v1), p2 = pos_of.at(v2);
          std::vector<uint8_t> arc(m.nv(), 0);  // 1 = first side, 2 = second
          int n[3] = {0, 2, 2};                 // both endpoints count per side
          for (int i = (p1 + 1) % L; i != p2; i = (i + 1) % L) {
            arc[vs[i]] = 1;
            if (nodes.count(m.orig[vs[i]])) ++n[1];
          }
          for (int i = (p2 + 1) % L; i != p1; i = (i + 1) % L) {
            arc[vs[i]] = 2;
            if (nodes.count(m.orig[vs[i]])) ++n[2];
          }
          if (n[1] % 4 == 0 || n[2] % 4 == 0) continue;

          for (unsigned mask = 0; mask < (1u << nc); ++mask) {
            int sum = 0;
            for (int ci = 0; ci < nc; ++ci)
              if (mask >> ci & 1) sum += 4 - m.cone_k[cones[ci]];
            if (sum != 4 - n[1]) continue;
            if (budget-- <= 0) return false;

            std::vector<uint8_t> blocked(m.nv(), 0);
            for (int c : cones) blocked[c] = 1;
            std::vector<VPair> barrier_edges;
            bool ok = true;
            for (int ci = 0; ci < nc && ok; ++ci) {
              int side = (mask >> ci & 1) ? 1 : 2;
              auto allowed = [&](int v) {
                return !m.is_boundary_vertex(v) && !blocked[v];
              };
              auto tgt = [&](int v) { return arc[v] == side; };
              EdgePath bp = dijkstra_path(m, adj, cones[ci], allowed, tgt);
              if (bp.empty()) {
                ok = false;
                break;
              }
              for (int v : bp) blocked[v] = 1;
              for (size_t i = 0; i + 1 < bp.size(); ++i)
                barrier_edges.push_back({bp[i], bp[i + 1]});
            }
            if (!ok) continue;

            // the corridor between two barriers can have zero combinatorial
            // width; splitting edges caught between blocked vertices opens it
            for (int attempt = 0; attempt < 4; ++attempt) {
              auto allowed = [&](int v) {
                return !m.is_boundary_vertex(v) && !blocked[v] && !m.cone_k[v];
              };
              auto tgt = [&](int v) { return v == v2; };
              EdgePath p = dijkstra_path(m, adj, v1, allowed, tgt);
              if (!p.empty()) {
                Mesh result;
                if (!validate_extra_cut(out, p, &result)) break;
                out.cut = std::move(result);
                out.extra_origs.clear();
                for (int x : p) out.extra_origs.push_back(out.cut.orig[x]);
                set_corners(out);
                return true;
              }
              for (int v = 0; v < m.nv(); ++v)
                m.flag[v] = (blocked[v] || m.is_boundary_vertex(v)) ? 1 : 0;
              if (refine_for_paths(m, barrier_edges) == 0) break;
              adj = adjacency(m, true);
              blocked.resize(m.nv(), 0);
            }
          }
        }
      }
      return false;
    };
    if (try_round()) return;
    flag_obstacles(m);
    refine_for_paths(m);
  }
  throw Error(2, "no component-splitting path found within the search budget");
}

CutMesh build_cutgraph(const Mesh& closed) {
  CutMesh cm;
  cm.cut = closed;
  cm.cut.check_closed();
  int g = cm.cut.genus();
  if (g == 0) {
    cm.corner.assign(cm.cut.nv(), 0);
    return cm;
  }

  bool fourfold = true;
  for (int v = 0; v < cm.cut.nv(); ++v)
    if (cm.cut.cone_k[v] && (4 - cm.cut.cone_k[v]) % 4 != 0) fourfold = false;

  cm.loops = homology_loops(cm.cut);
  std::vector<VPair> loop_edges;
  for (const auto& L : cm.loops) {
    auto e = path_edges(L);
    loop_edges.insert(loop_edges.end(), e.begin(), e.end());
  }
  cm.cut.cut_along_edges(loop_edges);

  auto order = order_holes(cm.cut);
  build_connectors(cm, order, !fourfold);
  if (!fourfold) find_extra_path(cm);
  validate_cutgraph(cm);
  return cm;
}

Segments extract_segments(const Mesh& m, const std::vector<uint8_t>& corner,
                          const std::vector<int>& extra_origs) {
  Segments S;
  auto bl = m.boundary_loops();
  std::map<VPair, int> seg_of;
  for (const auto& loop : bl) {
    int L = (int)loop.size();
    int k0 = -1;
    for (int k = 0; k < L && k0 < 0; ++k)
      if (corner[m.he_from(loop[k])]) k0 = k;
    if (k0 < 0) throw Error(2, "boundary loop without corners");
    std::vector<int> comp;
    std::vector<int> cur;
    for (int t = 0; t < L; ++t) {
      int h = loop[(k0 + t) % L];
      if (t > 0 && corner[m.he_from(h)]) {
        comp.push_back((int)S.halfedges.size());
        S.halfedges.push_back(cur);
        cur.clear();
      }
      cur.push_back(h);
    }
    comp.push_back((int)S.halfedges.size());
    S.halfedges.push_back(cur);
    S.topo.components.push_back(comp);
  }
  int nseg = (int)S.halfedges.size();
  S.length3.resize(nseg);
  for (int s = 0; s < nseg; ++s) {
    double len = 0;
    for (int h : S.halfedges[s]) {
      seg_of[{m.he_from(h), m.he_to(h)}] = s;
      len += m.edge_len3(m.he_from(h), m.he_to(h));
    }
    S.length3(s) = len;
  }

  for (int s = 0; s < nseg; ++s) {
    int mate = -1;
    for (int h : S.halfedges[s]) {
      VPair key{m.he_from(h), m.he_to(h)};
      auto it = m.seam.find(key);
      if (it == m.seam.end()) throw Error(2, "boundary edge without a seam mate");
      auto ms = seg_of.find(it->second);
      if (ms == seg_of.end()) throw Error(2, "seam mate outside any segment");
      if (mate < 0) mate = ms->second;
      if (ms->second != mate) throw Error(2, "segment maps to more than one mate");
    }
    if (mate == s) throw Error(2, "segment is its own mate");
    if ((int)S.halfedges[mate].size() != (int)S.halfedges[s].size())
      throw Error(2, "mated segments with different edge counts");
    if (s < mate) S.topo.mates.push_back({s, {mate}});
  }

  if (!extra_origs.empty()) {
    std::set<int> X(extra_origs.begin(), extra_origs.end());
    for (int s = 0; s < nseg; ++s) {
      bool all = true;
      for (int h : S.halfedges[s])
        if (!X.count(m.orig[m.he_from(h)]) || !X.count(m.orig[m.he_to(h)])) all = false;
      if (all) S.extra_segments.push_back(s);
    }
    if (S.extra_segments.size() != 2)
      throw Error(2, "expected exactly two segments along the splitting path");
  }
  return S;
}

void validate_cutgraph(const CutMesh& cm) {
  const Mesh& m = cm.cut;
  auto bl = m.boundary_loops();
  if (bl.empty()) {
    if (!cm.node_origs.empty()) throw Error(2, "nodes recorded without a cut");
    return;  // genus 0: empty cutgraph
  }
  int C = m.component_count();
  int expected = cm.extra_origs.empty() ? 1 : 2;
  if (C != expected) throw Error(2, "unexpected number of cut components");
  if ((int)bl.size() != C || m.euler() != C)
    throw Error(2, "cut components are not disks");
  auto fc = m.face_component();
  std::set<int> loop_comps;
  for (const auto& loop : bl) loop_comps.insert(fc[loop[0] / 3]);
  if ((int)loop_comps.size() != C) throw Error(2, "cut components are not disks");

  for (int v = 0; v < m.nv(); ++v)
    if (m.cone_k[v] && m.is_boundary_vertex(v)) throw Error(2, "cone lies on the cut");

  std::set<int> nodes(cm.node_origs.begin(), cm.node_origs.end());
  std::map<int, int> node_copies;
  for (int v = 0; v < m.nv(); ++v) {
    bool is_corner = m.is_boundary_vertex(v) && nodes.count(m.orig[v]);
    if ((cm.corner[v] != 0) != is_corner) throw Error(2, "corner flags out of date");
    if (is_corner) node_copies[m.orig[v]]++;
  }
  for (int o : cm.node_origs)
    if (node_copies[o] != 4) throw Error(2, "node without four boundary copies");

  auto vc = vertex_components(m);
  std::vector<int> n(C, 0), units(C, 0);
  for (int v = 0; v < m.nv(); ++v) {
    if (cm.corner[v]) n[vc[v]]++;
    if (m.cone_k[v]) units[vc[v]] += 4 - m.cone_k[v];
  }
  for (int i = 0; i < C; ++i) {
    if (n[i] + units[i] != 4)
      throw Error(2, "component corner count violates the angle condition");
    if (C == 2 && n[i] % 4 == 0)
      throw Error(2, "component corner count is a multiple of four");
  }
}

}  // namespace seamless
