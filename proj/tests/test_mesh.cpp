#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <set>

#include "meshgen.hpp"
#include "obj_io.hpp"

using namespace seamless;

static void check_connectivity(const Mesh& m) {
  for (int h = 0; h < 3 * m.nf(); ++h) {
    int tw = m.twin(h);
    if (tw >= 0) {
      CHECK(m.twin(tw) == h);
      CHECK(m.he_from(h) == m.he_to(tw));
      CHECK(m.he_to(h) == m.he_from(tw));
    }
    CHECK(m.halfedge(m.he_from(h), m.he_to(h)) == h);
  }
}

TEST_CASE("torus grid topology") {
  Mesh m = make_torus_grid(12, 8);
  CHECK(m.nv() == 96);
  CHECK(m.nf() == 192);
  CHECK(m.euler() == 0);
  CHECK(m.genus() == 1);
  CHECK(m.component_count() == 1);
  CHECK(m.boundary_loops().empty());
  check_connectivity(m);
}

TEST_CASE("icosphere and voxel solids") {
  Mesh s = make_icosphere(2);
  CHECK(s.euler() == 2);
  CHECK(s.genus() == 0);
  for (int g = 0; g <= 3; ++g) {
    Mesh m = make_genus_solid(g);
    CHECK(m.genus() == g);
    CHECK(m.component_count() == 1);
    check_connectivity(m);
  }
}

TEST_CASE("subdivision preserves topology") {
  Mesh m = subdivide(make_genus_solid(2));
  CHECK(m.genus() == 2);
  check_connectivity(m);
}

TEST_CASE("split interior edge") {
  Mesh m = make_torus_grid(8, 6);
  int a = m.tri[0][0], b = m.tri[0][1];
  int nv0 = m.nv(), nf0 = m.nf();
  int v = m.split_edge(a, b, 0.25);
  CHECK(v == nv0);
  CHECK(m.nf() == nf0 + 2);
  CHECK(m.euler() == 0);
  CHECK(m.genus() == 1);
  CHECK((m.pos[v] - (0.75 * m.pos[a] + 0.25 * m.pos[b])).norm() < 1e-15);
  CHECK(m.has_edge(a, v));
  CHECK(m.has_edge(v, b));
  CHECK(!m.has_edge(a, b));
  CHECK(m.orig[v] >= nv0);
  check_connectivity(m);
  // batch of further splits without rebuild
  for (int i = 0; i < 20; ++i) {
    int f = (7 * i + 3) % m.nf();
    m.split_edge(m.tri[f][0], m.tri[f][1], 0.5);
  }
  CHECK(m.genus() == 1);
  check_connectivity(m);
}

TEST_CASE("cut torus along a loop gives a cylinder") {
  Mesh m = make_torus_grid(10, 7);
  std::vector<VPair> edges;
  for (int j = 0; j < 7; ++j) edges.push_back({j, (j + 1) % 7});
  m.cut_along_edges(edges);
  CHECK(m.genus() == 0);
  CHECK(m.boundary_loops().size() == 2);
  CHECK(m.component_count() == 1);
  CHECK(m.seam.size() == 14);
  for (const auto& [k, v] : m.seam) {
    CHECK(m.is_boundary_edge(k.first, k.second));
    CHECK(m.seam.at(v) == k);
    CHECK(m.orig[k.first] == m.orig[v.second]);
    CHECK(m.orig[k.second] == m.orig[v.first]);
  }
  check_connectivity(m);
}

TEST_CASE("seam pair split keeps pairing and geometry") {
  Mesh m = make_torus_grid(10, 7);
  std::vector<VPair> edges;
  for (int j = 0; j < 7; ++j) edges.push_back({j, (j + 1) % 7});
  m.cut_along_edges(edges);
  auto it = m.seam.begin();
  auto [a, b] = it->first;
  auto [m1, m2] = m.split_seam_pair(a, b, 0.3);
  CHECK(m.orig[m1] == m.orig[m2]);
  CHECK((m.pos[m1] - m.pos[m2]).norm() == 0.0);
  CHECK(m.seam.count({a, m1}) == 1);
  CHECK(m.seam.count({m1, b}) == 1);
  CHECK(m.seam.size() == 16);
  for (const auto& [k, v] : m.seam) CHECK(m.seam.at(v) == k);
  check_connectivity(m);
}

TEST_CASE("path validation") {
  Mesh m = make_torus_grid(8, 6);
  CHECK_NOTHROW(check_path(m, {0, 1, 2}, false));
  CHECK_THROWS_AS(check_path(m, {0, 2}, false), Error);
  CHECK_THROWS_AS(check_path(m, {0, 1, 0}, false), Error);
}

TEST_CASE("obj round trip with uv and cuts") {
  Mesh m = make_torus_grid(6, 5);
  std::vector<VPair> edges;
  for (int j = 0; j < 5; ++j) edges.push_back({j, (j + 1) % 5});
  m.cut_along_edges(edges);
  m.uv.resize(m.nv());
  for (int v = 0; v < m.nv(); ++v) m.uv[v] = {0.1 * v, -0.05 * v + 1.0 / 3.0};
  std::string path = "roundtrip_tmp.obj";
  save_obj_uv(m, path);
  Mesh r = load_obj(path, true);
  std::remove(path.c_str());
  REQUIRE(r.nv() == m.nv());
  REQUIRE(r.nf() == m.nf());
  CHECK(r.genus() == 0);
  CHECK(r.boundary_loops().size() == 2);
  // geometric ids glue the cut back together
  std::set<int> origs(r.orig.begin(), r.orig.end());
  CHECK((int)origs.size() == 6 * 5);
  double derr = 0;
  for (int f = 0; f < m.nf(); ++f)
    for (int i = 0; i < 3; ++i) {
      derr = std::max(derr, (r.pos[r.tri[f][i]] - m.pos[m.tri[f][i]]).norm());
      derr = std::max(derr, (r.uv[r.tri[f][i]] - m.uv[m.tri[f][i]]).norm());
    }
  CHECK(derr == 0.0);
}
