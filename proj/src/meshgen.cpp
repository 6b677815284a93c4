#include "meshgen.hpp"

#include <cmath>
#include <map>
#include <numbers>
#include <queue>

namespace seamless {

namespace {
constexpr double kPi = std::numbers::pi;
}

Mesh make_torus_grid(int nu, int nv, double R, double r) {
  Mesh m;
  for (int i = 0; i < nu; ++i)
    for (int j = 0; j < nv; ++j) {
      double a = 2 * kPi * i / nu, b = 2 * kPi * j / nv;
      m.pos.push_back({(R + r * std::cos(b)) * std::cos(a),
                       (R + r * std::cos(b)) * std::sin(a), r * std::sin(b)});
    }
  auto id = [&](int i, int j) { return (i % nu) * nv + (j % nv); };
  for (int i = 0; i < nu; ++i)
    for (int j = 0; j < nv; ++j) {
      m.tri.push_back({id(i, j), id(i + 1, j), id(i + 1, j + 1)});
      m.tri.push_back({id(i, j), id(i + 1, j + 1), id(i, j + 1)});
    }
  m.init_ids();
  m.build();
  return m;
}

Mesh make_icosphere(int subdivisions) {
  const double t = (1.0 + std::sqrt(5.0)) / 2.0;
  Mesh m;
  m.pos = {{-1, t, 0}, {1, t, 0}, {-1, -t, 0}, {1, -t, 0}, {0, -1, t}, {0, 1, t},
           {0, -1, -t}, {0, 1, -t}, {t, 0, -1}, {t, 0, 1}, {-t, 0, -1}, {-t, 0, 1}};
  m.tri = {{0, 11, 5}, {0, 5, 1},  {0, 1, 7},   {0, 7, 10}, {0, 10, 11},
           {1, 5, 9},  {5, 11, 4}, {11, 10, 2}, {10, 7, 6}, {7, 1, 8},
           {3, 9, 4},  {3, 4, 2},  {3, 2, 6},   {3, 6, 8},  {3, 8, 9},
           {4, 9, 5},  {2, 4, 11}, {6, 2, 10},  {8, 6, 7},  {9, 8, 1}};
  for (auto& p : m.pos) p.normalize();
  m.init_ids();
  m.build();
  for (int s = 0; s < subdivisions; ++s) {
    m = subdivide(m);
    for (auto& p : m.pos) p.normalize();
  }
  return m;
}

Mesh subdivide(const Mesh& m) {
  Mesh out;
  out.pos = m.pos;
  std::map<VPair, int> mid;
  auto midpoint = [&](int a, int b) {
    VPair k{std::min(a, b), std::max(a, b)};
    auto [it, fresh] = mid.emplace(k, (int)out.pos.size());
    if (fresh) out.pos.push_back((m.pos[a] + m.pos[b]) / 2);
    return it->second;
  };
  for (const auto& t : m.tri) {
    int ab = midpoint(t[0], t[1]), bc = midpoint(t[1], t[2]), ca = midpoint(t[2], t[0]);
    out.tri.push_back({t[0], ab, ca});
    out.tri.push_back({t[1], bc, ab});
    out.tri.push_back({t[2], ca, bc});
    out.tri.push_back({ab, bc, ca});
  }
  out.init_ids();
  out.build();
  return out;
}

Mesh make_genus_solid(int genus) {
  int nx = genus > 0 ? 4 * genus + 1 : 2, ny = genus > 0 ? 5 : 2, nz = 2;
  auto solid = [&](int x, int y, int z) {
    if (x < 0 || y < 0 || z < 0 || x >= nx || y >= ny || z >= nz) return false;
    for (int i = 0; i < genus; ++i)
      if (x == 4 * i + 2 && y == 2) return false;
    return true;
  };
  Mesh m;
  std::map<std::array<int, 3>, int> vid;
  auto corner = [&](int x, int y, int z) {
    auto [it, fresh] = vid.emplace(std::array<int, 3>{x, y, z}, (int)m.pos.size());
    if (fresh) m.pos.push_back({(double)x, (double)y, (double)z});
    return it->second;
  };
  auto quad = [&](std::array<std::array<int, 3>, 4> c) {
    int v0 = corner(c[0][0], c[0][1], c[0][2]), v1 = corner(c[1][0], c[1][1], c[1][2]);
    int v2 = corner(c[2][0], c[2][1], c[2][2]), v3 = corner(c[3][0], c[3][1], c[3][2]);
    m.tri.push_back({v0, v1, v2});
    m.tri.push_back({v0, v2, v3});
  };
  for (int x = 0; x < nx; ++x)
    for (int y = 0; y < ny; ++y)
      for (int z = 0; z < nz; ++z) {
        if (!solid(x, y, z)) continue;
        int X = x + 1, Y = y + 1, Z = z + 1;
        if (!solid(x + 1, y, z)) quad({{{X, y, z}, {X, Y, z}, {X, Y, Z}, {X, y, Z}}});
        if (!solid(x - 1, y, z)) quad({{{x, y, z}, {x, y, Z}, {x, Y, Z}, {x, Y, z}}});
        if (!solid(x, y + 1, z)) quad({{{x, Y, z}, {x, Y, Z}, {X, Y, Z}, {X, Y, z}}});
        if (!solid(x, y - 1, z)) quad({{{x, y, z}, {X, y, z}, {X, y, Z}, {x, y, Z}}});
        if (!solid(x, y, z + 1)) quad({{{x, y, Z}, {X, y, Z}, {X, Y, Z}, {x, Y, Z}}});
        if (!solid(x, y, z - 1)) quad({{{x, y, z}, {x, Y, z}, {X, Y, z}, {X, y, z}}});
      }
  m.init_ids();
  m.build();
  m.check_closed();
  if (m.genus() != genus) throw Error(2, "voxel solid has wrong genus");
  return m;
}

Prescription place_cones(const Mesh& m, const std::vector<int>& ks, unsigned seed) {
  Prescription p;
  if (ks.empty()) return p;
  std::vector<std::vector<int>> adj(m.nv());
  for (int f = 0; f < m.nf(); ++f)
    for (int i = 0; i < 3; ++i) adj[m.tri[f][i]].push_back(m.tri[f][(i + 1) % 3]);
  std::vector<int> placed;
  placed.push_back((int)(seed % (unsigned)m.nv()));
  for (size_t c = 1; c < ks.size(); ++c) {
    std::vector<int> dist(m.nv(), -1);
    std::queue<int> q;
    for (int v : placed) {
      dist[v] = 0;
      q.push(v);
    }
    while (!q.empty()) {
      int v = q.front();
      q.pop();
      for (int w : adj[v])
        if (dist[w] < 0) {
          dist[w] = dist[v] + 1;
          q.push(w);
        }
    }
    int best = -1;
    for (int v = 0; v < m.nv(); ++v)
      if (best < 0 || dist[v] > dist[best]) best = v;
    placed.push_back(best);
  }
  for (size_t i = 0; i < ks.size(); ++i) p.cones.push_back({placed[i], ks[i]});
  return p;
}

std::vector<std::vector<int>> cone_sets_for_genus(int genus) {
  switch (genus) {
    case 0:
      return {{2, 2, 2, 2}, {3, 3, 3, 3, 2, 2}, {3, 3, 3, 3, 3, 3, 3, 3},
              {2, 2, 2, 3, 3}, {3, 3, 3, 3, 3, 3, 2}};
    case 1:
      return {{}, {2, 6}, {3, 3, 6}, {2, 2, 6, 6}, {2, 3, 7}};
    case 2:
      return {{8, 8}, {12}, {6, 6, 6, 6}, {5, 5, 5, 5, 5, 5, 5, 5}, {7, 7, 5, 5}};
    case 3:
      return {{8, 8, 8, 8}, {6, 6, 6, 6, 6, 6, 6, 6}, {2, 6, 6, 6, 6, 6, 6, 6, 6, 6},
              {10, 6, 6, 6, 6, 6}, {5, 5, 5, 5, 7, 7, 7, 7}};
    default:
      throw Error(1, "no curated cone sets for genus " + std::to_string(genus));
  }
}

}  // namespace seamless
