#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <map>
#include <numbers>
#include <random>
#include <set>

#include "conformal.hpp"
#include "cutgraph.hpp"
#include "flatten.hpp"
#include "meshgen.hpp"
#include "tolerances.hpp"

using namespace seamless;
constexpr double pi = std::numbers::pi;

static std::vector<double> uv_vertex_angle_sums(const Mesh& m) {
  std::vector<double> sum(m.nv(), 0.0);
  for (int h = 0; h < 3 * m.nf(); ++h) {
    Vec2 e1 = m.uv[m.he_to(h)] - m.uv[m.he_from(h)];
    Vec2 e2 = m.uv[m.he_to(m.he_next(h))] - m.uv[m.he_from(h)];
    sum[m.he_from(h)] +=
        std::atan2(e1.x() * e2.y() - e1.y() * e2.x(), e1.dot(e2));
  }
  return sum;
}

static std::vector<double> metric_vertex_angle_sums(const Mesh& m,
                                                    const std::vector<double>& mlen) {
  auto at = corner_angles(m, mlen);
  std::vector<double> sum(m.nv(), 0.0);
  for (int h = 0; h < 3 * m.nf(); ++h) sum[m.he_from(h)] += at[h];
  return sum;
}

TEST_CASE("metric edge splits keep every vertex angle sum and stay flat") {
  Mesh m = make_icosphere(1);
  std::mt19937 rng(5);
  std::uniform_real_distribution<double> U(-0.2, 0.2);
  std::vector<double> u(m.nv());
  for (auto& x : u) x = U(rng);
  auto mlen = metric_lengths(m, u);
  auto before = metric_vertex_angle_sums(m, mlen);

  int nv0 = m.nv();
  for (int trial = 0; trial < 6; ++trial) {
    int h = (7919 * (trial + 1)) % (3 * m.nf());
    int mid = split_edge_metric(m, mlen, m.he_from(h), m.he_to(h));
    auto sums = metric_vertex_angle_sums(m, mlen);
    // the split point lies on a straight edge: exactly flat
    CHECK(sums[mid] == doctest::Approx(2 * pi).epsilon(1e-12));
    for (int v = 0; v < nv0; ++v)
      CHECK(sums[v] == doctest::Approx(before[v]).epsilon(1e-9));
  }
}

static CutMesh cut_torus(const std::vector<int>& ks, int nu = 14, int nv = 10) {
  Mesh m = make_torus_grid(nu, nv);
  if (!ks.empty()) apply_cones(m, place_cones(m, ks, 0));
  return build_cutgraph(m);
}

TEST_CASE("cone trees: cones are leaves, roots sit inside boundary runs") {
  CutMesh cm = cut_torus({2, 6});
  auto mlen = metric_lengths(cm.cut, std::vector<double>(cm.cut.nv(), 0.0));
  auto corner = cm.corner;
  Mesh& m = cm.cut;
  auto paths = build_cone_trees(m, corner, mlen);
  REQUIRE(paths.size() == 2);

  std::map<int, int> visits;  // vertex -> appearances across paths
  for (const auto& p : paths) {
    REQUIRE(p.size() >= 2);
    CHECK(m.cone_k[p.back()] > 0);  // every path ends at a cone
    for (size_t i = 0; i + 1 < p.size(); ++i) {
      CHECK(m.cone_k[p[i]] == 0);  // cones never passed through
      CHECK(!corner[p[i]]);
      if (i > 0) CHECK(!m.is_boundary_vertex(p[i]));
      CHECK(m.has_edge(p[i], p[i + 1]));
    }
    for (int v : p) ++visits[v];
  }
  int ncones = 0;
  for (int v = 0; v < m.nv(); ++v)
    if (m.cone_k[v] > 0) ++ncones;
  REQUIRE(ncones == 2);
  for (const auto& p : paths) {
    CHECK(visits[p.back()] == 1);                 // leaves
    CHECK(m.is_boundary_vertex(p.front()));      // rooted on the boundary
    CHECK(!corner[p.front()]);
  }
}

TEST_CASE("flat square chart is reproduced exactly") {
  Mesh m;
  int n = 5;
  for (int j = 0; j <= n; ++j)
    for (int i = 0; i <= n; ++i) m.pos.push_back({(double)i, (double)j, 0.0});
  auto id = [&](int i, int j) { return j * (n + 1) + i; };
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) {
      m.tri.push_back({id(i, j), id(i + 1, j), id(i + 1, j + 1)});
      m.tri.push_back({id(i, j), id(i + 1, j + 1), id(i, j + 1)});
    }
  m.init_ids();
  m.build();
  std::vector<uint8_t> corner(m.nv(), 0);
  auto mlen = metric_lengths(m, std::vector<double>(m.nv(), 0.0));
  double drift = layout_charts(m, corner, mlen);
  CHECK(drift < 1e-12);
  for (int h = 0; h < 3 * m.nf(); ++h) {
    double l = (m.uv[m.he_to(h)] - m.uv[m.he_from(h)]).norm();
    CHECK(l == doctest::Approx(mlen[h]).epsilon(1e-12));
  }
  for (int f = 0; f < m.nf(); ++f) {
    Vec2 e1 = m.uv[m.tri[f][1]] - m.uv[m.tri[f][0]];
    Vec2 e2 = m.uv[m.tri[f][2]] - m.uv[m.tri[f][0]];
    CHECK(e1.x() * e2.y() - e1.y() * e2.x() > 0);
  }
}

static Flattening flatten_torus(CutMesh& cm) {
  auto u = compute_metric(cm.cut, cm.corner);
  return flatten_charts(cm, u);
}

TEST_CASE("torus with a (2,6) cone pair flattens into two rectilinear charts") {
  CutMesh cm = cut_torus({2, 6});
  Flattening fl = flatten_torus(cm);
  const Mesh& m = fl.mc;
  REQUIRE(!m.uv.empty());
  CHECK(m.component_count() == 2);

  double scale = 0;
  for (int h = 0; h < 3 * m.nf(); ++h) scale = std::max(scale, fl.mlen[h]);

  // the layout realizes the metric isometrically, orientation preserved
  for (int h = 0; h < 3 * m.nf(); ++h) {
    double l = (m.uv[m.he_to(h)] - m.uv[m.he_from(h)]).norm();
    CHECK(std::abs(l - fl.mlen[h]) < 1e-6 * scale);
  }
  for (int f = 0; f < m.nf(); ++f) {
    Vec2 e1 = m.uv[m.tri[f][1]] - m.uv[m.tri[f][0]];
    Vec2 e2 = m.uv[m.tri[f][2]] - m.uv[m.tri[f][0]];
    CHECK(e1.x() * e2.y() - e1.y() * e2.x() > 0);
  }

  // each cone's copies close up to exactly its prescribed angle
  auto sums = uv_vertex_angle_sums(m);
  std::map<int, double> by_orig;
  std::map<int, int> k_of;
  for (int v = 0; v < m.nv(); ++v)
    if (m.cone_k[v] > 0) {
      by_orig[m.orig[v]] += sums[v];
      k_of[m.orig[v]] = m.cone_k[v];
    }
  REQUIRE(by_orig.size() == 2);
  for (auto& [o, s] : by_orig)
    CHECK(s == doctest::Approx(k_of[o] * pi / 2).epsilon(1e-7));

  auto bm = boundary_map(m, fl.corner, fl.tree_origs, fl.extra_origs, true);
  REQUIRE(bm.topo.components.size() == 2);
  REQUIRE(bm.topo.count() == 8);
  int n0 = (int)bm.topo.components[0].size();
  int n1 = (int)bm.topo.components[1].size();
  CHECK(n0 + n1 == 8);
  CHECK(n0 % 4 != 0);
  CHECK(n1 % 4 != 0);
  CHECK(bm.topo.mates.size() == 4);
  REQUIRE(bm.extra_segments.size() == 2);
  // the two splitting-path segments are each other's mates
  int p0 = bm.extra_segments[0], p1 = bm.extra_segments[1];
  bool extra_mated = false;
  for (const auto& mr : bm.topo.mates)
    if ((mr.i == p0 && mr.js == std::vector<int>{p1}) ||
        (mr.i == p1 && mr.js == std::vector<int>{p0}))
      extra_mated = true;
  CHECK(extra_mated);
  // each chart interrupts exactly one segment with its cone-tree slit
  for (int c = 0; c < 2; ++c) {
    int split_segs = 0;
    for (int s : bm.topo.components[c])
      if (bm.seg_pieces[s].size() > 1) ++split_segs;
    CHECK(split_segs == 1);
  }

  // metric lengths feed a solvable width equalization
  auto bmm = boundary_map(m, fl.corner, fl.tree_origs, fl.extra_origs, false,
                          &fl.mlen);
  auto sys = build_system(bmm.topo, bmm.seg_len);
  // all node sectors are corners (degree-4 nodes), so every mate relation is
  // a simple pair and the constant shift is exactly in the system kernel
  Eigen::VectorXd ones = Eigen::VectorXd::Ones(bmm.topo.count());
  CHECK((sys.A * ones).cwiseAbs().maxCoeff() == 0.0);
  auto w = solve_nonnegative(sys, {});
  auto rep = verify_equalized(bmm.topo, bmm.seg_len, w);
  CHECK(rep.ok);
  for (int s = 0; s < bmm.topo.count(); ++s) CHECK(w[s] >= 0.0);
}

TEST_CASE("flat torus without cones: one square chart, closure identities") {
  CutMesh cm = cut_torus({});
  Flattening fl = flatten_torus(cm);
  CHECK(fl.tree_origs.empty());
  auto bm = boundary_map(fl.mc, fl.corner, fl.tree_origs, fl.extra_origs, true);
  REQUIRE(bm.topo.components.size() == 1);
  REQUIRE(bm.topo.count() == 4);
  CHECK(bm.topo.mates.size() == 2);
  CHECK(bm.topo.zero_pinned.empty());
  std::vector<double> ell;
  for (int s : bm.topo.components[0]) ell.push_back(bm.seg_len[s]);
  auto [even, odd] = oracle_fourfold_closure(ell);
  double scale = bm.seg_len.maxCoeff();
  CHECK(std::abs(even) < 1e-9 * scale);
  CHECK(std::abs(odd) < 1e-9 * scale);
  // identity transitions: mated segments have equal length already
  for (const auto& mr : bm.topo.mates)
    CHECK(bm.seg_len[mr.i] ==
          doctest::Approx(bm.seg_len[mr.js[0]]).epsilon(1e-9));
}

TEST_CASE("closed genus-0 surface flattens through a cone-rooted tree") {
  Mesh m = make_icosphere(2);
  apply_cones(m, place_cones(m, {2, 2, 2, 2}, 0));
  CutMesh cm = build_cutgraph(m);
  CHECK(cm.cut.boundary_loops().empty());
  Flattening fl = flatten_torus(cm);
  CHECK(fl.mc.component_count() == 1);
  REQUIRE(fl.mc.boundary_loops().size() == 1);

  double scale = 0;
  for (int h = 0; h < 3 * fl.mc.nf(); ++h) scale = std::max(scale, fl.mlen[h]);
  for (int h = 0; h < 3 * fl.mc.nf(); ++h) {
    double l = (fl.mc.uv[fl.mc.he_to(h)] - fl.mc.uv[fl.mc.he_from(h)]).norm();
    CHECK(std::abs(l - fl.mlen[h]) < 1e-6 * scale);
  }
  auto sums = uv_vertex_angle_sums(fl.mc);
  std::map<int, double> by_orig;
  std::map<int, int> k_of;
  for (int v = 0; v < fl.mc.nv(); ++v)
    if (fl.mc.cone_k[v] > 0) {
      by_orig[fl.mc.orig[v]] += sums[v];
      k_of[fl.mc.orig[v]] = fl.mc.cone_k[v];
    }
  REQUIRE(by_orig.size() == 4);
  for (auto& [o, s] : by_orig)
    CHECK(s == doctest::Approx(k_of[o] * pi / 2).epsilon(1e-7));

  auto bm = boundary_map(fl.mc, fl.corner, fl.tree_origs, fl.extra_origs, true);
  CHECK(bm.topo.count() == 0);  // no prescribed corners: boundary is all slit
  REQUIRE(bm.pieces.size() == 1);
  CHECK(bm.pieces[0].tree);
}

TEST_CASE("flattening is deterministic") {
  CutMesh a = cut_torus({3, 3, 6});
  CutMesh b = cut_torus({3, 3, 6});
  Flattening fa = flatten_torus(a);
  Flattening fb = flatten_torus(b);
  REQUIRE(fa.mc.nv() == fb.mc.nv());
  for (int v = 0; v < fa.mc.nv(); ++v) {
    CHECK(fa.mc.uv[v].x() == fb.mc.uv[v].x());
    CHECK(fa.mc.uv[v].y() == fb.mc.uv[v].y());
  }
}
