#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <set>

#include "cutgraph.hpp"
#include "meshgen.hpp"

using namespace seamless;

namespace {

Mesh torus_with(const std::vector<int>& ks, unsigned seed = 0) {
  Mesh m = make_torus_grid(14, 10);
  if (!ks.empty()) apply_cones(m, place_cones(m, ks, seed));
  return m;
}

// faces around an interior vertex in rotational order
std::vector<int> fan_halfedges(const Mesh& m, int v) {
  int h0 = -1;
  for (int h = 0; h < 3 * m.nf() && h0 < 0; ++h)
    if (m.he_from(h) == v) h0 = h;
  std::vector<int> out;
  int h = h0;
  do {
    out.push_back(h);
    int p = m.twin(m.he_prev(h));
    if (p < 0) return {};  // boundary vertex: no closed fan
    h = p;
  } while (h != h0);
  return out;
}

}  // namespace

TEST_CASE("homology loops on a torus") {
  Mesh m = torus_with({2, 6});
  int g = m.genus();
  REQUIRE(g == 1);
  auto loops = homology_loops(m);
  REQUIRE(loops.size() == 1);
  check_path(m, loops[0], true);
  for (int v : loops[0]) CHECK(m.cone_k[v] == 0);
  Mesh c = m;
  std::vector<VPair> e;
  for (size_t i = 0; i + 1 < loops[0].size(); ++i) e.push_back({loops[0][i], loops[0][i + 1]});
  c.cut_along_edges(e);
  CHECK(c.component_count() == 1);
  CHECK(c.genus() == 0);
  CHECK(c.boundary_loops().size() == 2);
}

TEST_CASE("homology loops on a genus-2 surface are vertex-disjoint") {
  Mesh m = make_genus_solid(2);
  apply_cones(m, place_cones(m, {6, 6, 6, 6}, 1));
  auto loops = homology_loops(m);
  REQUIRE(loops.size() == 2);
  std::set<int> seen;
  std::vector<VPair> e;
  for (auto& L : loops) {
    check_path(m, L, true);
    for (size_t i = 0; i + 1 < L.size(); ++i) {
      CHECK(seen.insert(L[i]).second);
      CHECK(m.cone_k[L[i]] == 0);
      e.push_back({L[i], L[i + 1]});
    }
  }
  Mesh c = m;
  c.cut_along_edges(e);
  CHECK(c.component_count() == 1);
  CHECK(c.genus() == 0);
  CHECK(c.boundary_loops().size() == 4);
}

TEST_CASE("hole chain starts and ends on partner copies") {
  for (int g : {2, 3}) {
    Mesh m = make_genus_solid(g);
    auto loops = homology_loops(m);
    std::vector<VPair> e;
    for (auto& L : loops)
      for (size_t i = 0; i + 1 < L.size(); ++i) e.push_back({L[i], L[i + 1]});
    m.cut_along_edges(e);
    auto chain = order_holes(m);
    auto bl = m.boundary_loops();
    REQUIRE((int)chain.size() == 2 * g);
    std::set<int> uniq(chain.begin(), chain.end());
    CHECK((int)uniq.size() == 2 * g);
    auto sig = [&](int hole) {
      std::set<int> s;
      for (int h : bl[hole]) s.insert(m.orig[m.he_from(h)]);
      return s;
    };
    CHECK(sig(chain.front()) == sig(chain.back()));
    if (g >= 3) {
      // some partner couple must enclose an odd number of holes
      bool odd = false;
      for (int i = 0; i < 2 * g; ++i)
        for (int j = i + 1; j < 2 * g; ++j)
          if (sig(chain[i]) == sig(chain[j]) && (j - i - 1) % 2 == 1) odd = true;
      CHECK(odd);
    }
  }
}

TEST_CASE("fourfold torus: single disk with one degree-4 node") {
  Mesh m = torus_with({});
  CutMesh cm = build_cutgraph(m);
  CHECK(cm.extra_origs.empty());
  CHECK(cm.cut.component_count() == 1);
  CHECK(cm.cut.euler() == 1);
  CHECK(cm.node_origs.size() == 1);
  int corners = 0;
  for (auto c : cm.corner) corners += c;
  CHECK(corners == 4);
  Segments s = extract_segments(cm.cut, cm.corner, cm.extra_origs);
  CHECK(s.topo.count() == 4);
  CHECK(s.topo.components.size() == 1);
  CHECK(s.topo.mates.size() == 2);
  CHECK(s.extra_segments.empty());
  // mated segments carry identical edge sets on the surface
  for (auto& mr : s.topo.mates) {
    CHECK(s.halfedges[mr.i].size() == s.halfedges[mr.js[0]].size());
    CHECK(s.length3(mr.i) == doctest::Approx(s.length3(mr.js[0])).epsilon(1e-12));
  }
}

TEST_CASE("torus with cones 2 and 6 splits into two admissible components") {
  Mesh m = torus_with({2, 6});
  CutMesh cm = build_cutgraph(m);
  CHECK(!cm.extra_origs.empty());
  CHECK(cm.cut.component_count() == 2);
  CHECK(cm.cut.euler() == 2);
  Segments s = extract_segments(cm.cut, cm.corner, cm.extra_origs);
  CHECK(s.topo.count() == 8);
  REQUIRE(s.topo.components.size() == 2);
  int n0 = (int)s.topo.components[0].size();
  int n1 = (int)s.topo.components[1].size();
  CHECK(n0 + n1 == 8);
  CHECK(n0 % 4 != 0);
  CHECK(n1 % 4 != 0);
  CHECK(s.topo.mates.size() == 4);
  CHECK(s.extra_segments.size() == 2);
  // the splitting-path pair must be a mate pair split across the two components
  int p0 = s.extra_segments[0], p1 = s.extra_segments[1];
  bool mated = false;
  for (auto& mr : s.topo.mates)
    if ((mr.i == p0 && mr.js[0] == p1) || (mr.i == p1 && mr.js[0] == p0)) mated = true;
  CHECK(mated);
  auto in_comp = [&](int seg, int comp) {
    auto& c = s.topo.components[comp];
    return std::find(c.begin(), c.end(), seg) != c.end();
  };
  CHECK(in_comp(p0, 0) != in_comp(p1, 0));
}

TEST_CASE("genus 2, fourfold cones 8+8") {
  Mesh m = make_genus_solid(2);
  apply_cones(m, place_cones(m, {8, 8}, 0));
  CutMesh cm = build_cutgraph(m);
  CHECK(cm.extra_origs.empty());
  CHECK(cm.cut.component_count() == 1);
  int corners = 0;
  for (auto c : cm.corner) corners += c;
  CHECK(corners == 12);
  Segments s = extract_segments(cm.cut, cm.corner, cm.extra_origs);
  CHECK(s.topo.count() == 12);
  CHECK(s.topo.mates.size() == 6);
}

TEST_CASE("genus 2, four cones of five quarters") {
  Mesh m = make_genus_solid(2);
  apply_cones(m, place_cones(m, {6, 6, 6, 6}, 1));
  CutMesh cm = build_cutgraph(m);
  CHECK(cm.cut.component_count() == 2);
  Segments s = extract_segments(cm.cut, cm.corner, cm.extra_origs);
  CHECK(s.topo.count() == 16);
  int n0 = (int)s.topo.components[0].size();
  int n1 = (int)s.topo.components[1].size();
  CHECK(n0 + n1 == 16);
  CHECK(n0 % 4 != 0);
  CHECK(n1 % 4 != 0);
  CHECK(s.extra_segments.size() == 2);
}

TEST_CASE("construction is deterministic") {
  Mesh m1 = torus_with({2, 6});
  Mesh m2 = torus_with({2, 6});
  CutMesh a = build_cutgraph(m1);
  CutMesh b = build_cutgraph(m2);
  CHECK(a.cut.tri == b.cut.tri);
  CHECK(a.node_origs == b.node_origs);
  CHECK(a.extra_origs == b.extra_origs);
}

TEST_CASE("rotation field: vertex fans see exactly the cone curvature") {
  Mesh m = torus_with({3, 3, 6}, 2);
  CutMesh cm = build_cutgraph(m);
  auto rho = assign_rho(cm.cut);
  const Mesh& d = cm.cut;
  int sign = 0;
  for (int v = 0; v < d.nv(); ++v) {
    if (d.is_boundary_vertex(v)) continue;
    auto fan = fan_halfedges(d, v);
    REQUIRE(!fan.empty());
    int sum = 0;
    for (int h : fan) sum += rho[d.he_prev(h)];
    int units = d.cone_k[v] ? 4 - d.cone_k[v] : 0;
    if (units == 0) {
      CHECK(sum == 0);
    } else {
      CHECK(std::abs(sum) == std::abs(units));
      int s = (sum > 0) == (units > 0) ? 1 : -1;
      if (sign == 0) sign = s;
      CHECK(s == sign);  // one global orientation convention
    }
  }
  CHECK(sign != 0);
}

TEST_CASE("rotation field: 1000 random dual loops match enclosed curvature") {
  Mesh m = torus_with({3, 3, 6}, 2);
  CutMesh cm = build_cutgraph(m);
  const Mesh& d = cm.cut;
  auto rho = assign_rho(d);

  // face adjacency across interior edges, and primal vertex adjacency
  std::vector<std::vector<std::pair<int, int>>> fadj(d.nf());  // (face, crossing he)
  std::vector<std::set<int>> vadj(d.nv());
  for (int h = 0; h < 3 * d.nf(); ++h) {
    if (d.twin(h) >= 0) fadj[h / 3].push_back({d.twin(h) / 3, h});
    vadj[d.he_from(h)].insert(d.he_to(h));
    vadj[d.he_to(h)].insert(d.he_from(h));
  }
  int mesh_comps = d.component_count();
  int nonzero = 0;

  // returns true when the dual cycle was usable; checks the rotation sum
  auto check_cycle = [&](const std::vector<int>& cyc) {
    if (cyc.size() < 3) return false;
    int sum = 0;
    std::set<long long> crossed;
    for (size_t i = 0; i < cyc.size(); ++i) {
      int fa = cyc[i], fb = cyc[(i + 1) % cyc.size()];
      int he = -1;
      for (auto& [f, h] : fadj[fa])
        if (f == fb) he = h;
      if (he < 0) return false;
      sum += rho[he];
      int a = d.he_from(he), b = d.he_to(he);
      if (!crossed.insert((long long)std::min(a, b) * (1 << 30) + std::max(a, b)).second)
        return false;  // pinch: loop crosses one primal edge twice
    }
    // removing the crossed primal edges disconnects the vertices; the part
    // that cannot reach the mesh boundary is the region the loop encloses
    std::vector<int> comp(d.nv(), -1);
    int nc = 0;
    for (int v0 = 0; v0 < d.nv(); ++v0) {
      if (comp[v0] >= 0) continue;
      std::vector<int> stack = {v0};
      comp[v0] = nc;
      while (!stack.empty()) {
        int v = stack.back();
        stack.pop_back();
        for (int w : vadj[v]) {
          if (crossed.count((long long)std::min(v, w) * (1 << 30) + std::max(v, w))) continue;
          if (comp[w] < 0) {
            comp[w] = nc;
            stack.push_back(w);
          }
        }
      }
      nc++;
    }
    if (nc != mesh_comps + 1) return false;
    std::vector<char> touches(nc, 0);
    for (int v = 0; v < d.nv(); ++v)
      if (d.is_boundary_vertex(v)) touches[comp[v]] = 1;
    int inside = -1;
    for (int c = 0; c < nc; ++c)
      if (!touches[c]) inside = c;
    if (inside < 0) return false;
    int enclosed = 0;
    for (int v = 0; v < d.nv(); ++v)
      if (d.cone_k[v] && comp[v] == inside) enclosed += 4 - d.cone_k[v];
    CHECK(std::abs(sum) == std::abs(enclosed));
    if (enclosed != 0) nonzero++;
    return true;
  };

  // every cone fan is a dual loop with known nonzero enclosure
  for (int v = 0; v < d.nv(); ++v) {
    if (!d.cone_k[v]) continue;
    std::vector<int> cyc;
    for (int h : fan_halfedges(d, v)) cyc.push_back(h / 3);
    CHECK(check_cycle(cyc));
  }
  CHECK(nonzero >= 3);

  std::mt19937 rng(123);
  int checked = 0;
  while (checked < 1000) {
    // random walk on faces until one repeats; the tail is a simple dual loop
    std::vector<int> walk = {(int)(rng() % d.nf())};
    std::vector<int> at(d.nf(), -1);
    at[walk[0]] = 0;
    std::vector<int> cyc;
    for (int step = 0; step < 2000 && cyc.empty(); ++step) {
      auto& nb = fadj[walk.back()];
      if (nb.empty()) break;
      int f = nb[rng() % nb.size()].first;
      if (at[f] >= 0) {
        cyc.assign(walk.begin() + at[f], walk.end());
        break;
      }
      at[f] = (int)walk.size();
      walk.push_back(f);
    }
    if (check_cycle(cyc)) checked++;
  }
  CHECK(checked == 1000);
}
