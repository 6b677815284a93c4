#include "mesh.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <unordered_set>

namespace seamless {

namespace {

struct DSU {
  std::vector<int> p;
  explicit DSU(int n) : p(n) { std::iota(p.begin(), p.end(), 0); }
  int find(int x) {
    while (p[x] != x) x = p[x] = p[p[x]];
    return x;
  }
  void join(int a, int b) { p[find(a)] = find(b); }
};

}  // namespace

void Mesh::init_ids() {
  orig.resize(nv());
  std::iota(orig.begin(), orig.end(), 0);
  next_orig_ = nv();
  cone_k.assign(nv(), 0);
  flag.assign(nv(), 0);
}

void Mesh::build() {
  if ((int)orig.size() != nv()) init_ids();
  cone_k.resize(nv(), 0);
  flag.resize(nv(), 0);
  twin_.assign(3 * nf(), -1);
  boundary_vertex_.assign(nv(), 0);
  hmap_.clear();
  hmap_.reserve(3 * nf() * 2);
  for (int f = 0; f < nf(); ++f) {
    const auto& t = tri[f];
    if (t[0] == t[1] || t[1] == t[2] || t[2] == t[0])
      throw Error(1, "degenerate triangle " + std::to_string(f));
    for (int i = 0; i < 3; ++i) {
      int a = t[i], b = t[(i + 1) % 3];
      auto [it, fresh] = hmap_.emplace(ekey(a, b), 3 * f + i);
      if (!fresh) throw Error(1, "non-manifold edge (duplicated halfedge)");
    }
  }
  for (int h = 0; h < 3 * nf(); ++h) {
    auto it = hmap_.find(ekey(he_to(h), he_from(h)));
    twin_[h] = (it == hmap_.end()) ? -1 : it->second;
  }
  for (int h = 0; h < 3 * nf(); ++h)
    if (twin_[h] < 0) {
      boundary_vertex_[he_from(h)] = 1;
      boundary_vertex_[he_to(h)] = 1;
    }
}

void Mesh::check_closed() const {
  for (int h = 0; h < 3 * nf(); ++h)
    if (twin_[h] < 0) throw Error(1, "mesh has boundary");
}

int Mesh::halfedge(int a, int b) const {
  auto it = hmap_.find(ekey(a, b));
  return it == hmap_.end() ? -1 : it->second;
}

bool Mesh::is_boundary_edge(int a, int b) const {
  int h = halfedge(a, b);
  if (h >= 0) return twin_[h] < 0;
  h = halfedge(b, a);
  return h >= 0 && twin_[h] < 0;
}

int Mesh::boundary_next(int h) const {
  int k = he_next(h);
  while (twin_[k] >= 0) k = he_next(twin_[k]);
  return k;
}

long Mesh::euler() const {
  long nb = 0;
  for (int h = 0; h < 3 * nf(); ++h)
    if (twin_[h] < 0) ++nb;
  long e = (3L * nf() + nb) / 2;
  return (long)nv() - e + nf();
}

std::vector<std::vector<int>> Mesh::boundary_loops() const {
  std::vector<std::vector<int>> loops;
  std::vector<uint8_t> seen(3 * nf(), 0);
  for (int h = 0; h < 3 * nf(); ++h) {
    if (twin_[h] >= 0 || seen[h]) continue;
    std::vector<int> loop;
    int k = h;
    do {
      seen[k] = 1;
      loop.push_back(k);
      k = boundary_next(k);
    } while (k != h);
    loops.push_back(std::move(loop));
  }
  return loops;
}

std::vector<int> Mesh::face_component() const {
  DSU d(nf());
  for (int h = 0; h < 3 * nf(); ++h)
    if (twin_[h] >= 0) d.join(h / 3, twin_[h] / 3);
  std::vector<int> comp(nf(), -1);
  std::vector<int> remap;
  for (int f = 0; f < nf(); ++f) {
    int r = d.find(f);
    if (comp[r] < 0) {
      comp[r] = (int)remap.size();
      remap.push_back(r);
    }
    comp[f] = comp[r];
  }
  return comp;
}

int Mesh::component_count() const {
  auto c = face_component();
  return c.empty() ? 0 : *std::max_element(c.begin(), c.end()) + 1;
}

int Mesh::genus() const {
  long nb = 0;
  for (int h = 0; h < 3 * nf(); ++h)
    if (twin_[h] < 0) ++nb;
  long chi = euler();
  long b = (long)boundary_loops().size();
  long g2 = 2 - chi - b;
  if (g2 < 0 || g2 % 2) throw Error(2, "inconsistent Euler characteristic");
  return (int)(g2 / 2);
}

std::vector<std::vector<int>> Mesh::vertex_faces() const {
  std::vector<std::vector<int>> vf(nv());
  for (int f = 0; f < nf(); ++f)
    for (int i = 0; i < 3; ++i) vf[tri[f][i]].push_back(f);
  return vf;
}

int Mesh::split_edge(int a, int b, double t) {
  int h1 = halfedge(a, b);
  if (h1 < 0) {
    std::swap(a, b);
    t = 1.0 - t;
    h1 = halfedge(a, b);
  }
  if (h1 < 0) throw Error(1, "split of missing edge");

  int m = nv();
  pos.push_back(pos[a] * (1 - t) + pos[b] * t);
  orig.push_back(fresh_orig());
  cone_k.push_back(0);
  flag.push_back(0);
  if (!uv.empty()) uv.push_back(uv[a] * (1 - t) + uv[b] * t);

  int f1 = h1 / 3;
  int c = he_to(he_next(h1));
  int h2 = twin_[h1];
  int t_bc = twin_[he_next(h1)];
  int t_ca = twin_[he_prev(h1)];

  hmap_.erase(ekey(a, b));
  hmap_.erase(ekey(b, a));

  tri[f1] = {a, m, c};
  int g1 = nf();
  tri.push_back({m, b, c});
  twin_.resize(3 * nf(), -1);
  hmap_[ekey(a, m)] = 3 * f1;
  hmap_[ekey(m, c)] = 3 * f1 + 1;
  hmap_[ekey(c, a)] = 3 * f1 + 2;
  hmap_[ekey(m, b)] = 3 * g1;
  hmap_[ekey(b, c)] = 3 * g1 + 1;
  hmap_[ekey(c, m)] = 3 * g1 + 2;
  twin_[3 * f1 + 1] = 3 * g1 + 2;
  twin_[3 * g1 + 2] = 3 * f1 + 1;
  twin_[3 * g1 + 1] = t_bc;
  if (t_bc >= 0) twin_[t_bc] = 3 * g1 + 1;
  twin_[3 * f1 + 2] = t_ca;
  if (t_ca >= 0) twin_[t_ca] = 3 * f1 + 2;

  boundary_vertex_.push_back(h2 < 0 ? 1 : 0);
  if (h2 < 0) {
    twin_[3 * f1] = -1;
    twin_[3 * g1] = -1;
    return m;
  }

  int f2 = h2 / 3;
  int d = he_to(he_next(h2));
  int t_ad = twin_[he_next(h2)];
  int t_db = twin_[he_prev(h2)];
  tri[f2] = {m, a, d};
  int g2 = nf();
  tri.push_back({b, m, d});
  twin_.resize(3 * nf(), -1);
  hmap_[ekey(m, a)] = 3 * f2;
  hmap_[ekey(a, d)] = 3 * f2 + 1;
  hmap_[ekey(d, m)] = 3 * f2 + 2;
  hmap_[ekey(b, m)] = 3 * g2;
  hmap_[ekey(m, d)] = 3 * g2 + 1;
  hmap_[ekey(d, b)] = 3 * g2 + 2;
  twin_[3 * f2 + 1] = t_ad;
  if (t_ad >= 0) twin_[t_ad] = 3 * f2 + 1;
  twin_[3 * f2 + 2] = 3 * g2 + 1;
  twin_[3 * g2 + 1] = 3 * f2 + 2;
  twin_[3 * g2 + 2] = t_db;
  if (t_db >= 0) twin_[t_db] = 3 * g2 + 2;
  twin_[3 * f1] = 3 * f2;
  twin_[3 * f2] = 3 * f1;
  twin_[3 * g1] = 3 * g2;
  twin_[3 * g2] = 3 * g1;
  return m;
}

VPair Mesh::split_seam_pair(int a, int b, double t) {
  auto it = seam.find({a, b});
  if (it == seam.end()) throw Error(2, "boundary edge is not seam-paired");
  auto [c, d] = it->second;
  int m1 = split_edge(a, b, t);
  int m2 = split_edge(c, d, 1.0 - t);
  orig[m2] = orig[m1];
  pos[m2] = pos[m1];
  seam.erase({a, b});
  seam.erase({c, d});
  seam[{a, m1}] = {m2, d};
  seam[{m2, d}] = {a, m1};
  seam[{m1, b}] = {c, m2};
  seam[{c, m2}] = {m1, b};
  return {m1, m2};
}

void Mesh::cut_along_edges(const std::vector<VPair>& edges) {
  std::unordered_set<long long> marked;
  std::vector<std::pair<int, int>> marked_hes;
  for (auto [a, b] : edges) {
    int h = halfedge(a, b);
    if (h < 0 || twin_[h] < 0) throw Error(1, "cut edge missing or on boundary");
    marked.insert(ekey(std::min(a, b), std::max(a, b)));
    marked_hes.push_back({h, twin_[h]});
  }

  // group face corners around each vertex into sectors separated by cuts
  DSU d(3 * nf());
  for (int h = 0; h < 3 * nf(); ++h) {
    int tw = twin_[h];
    if (tw < 0) continue;
    int a = he_from(h), b = he_to(h);
    if (marked.count(ekey(std::min(a, b), std::max(a, b)))) continue;
    int fa = h / 3, fb = tw / 3;
    auto slot = [&](int f, int v) {
      for (int i = 0; i < 3; ++i)
        if (tri[f][i] == v) return 3 * f + i;
      throw Error(2, "corner lookup failed");
    };
    d.join(slot(fa, a), slot(fb, a));
    d.join(slot(fa, b), slot(fb, b));
  }

  // stash existing seam entries as halfedge ids so re-labelling is safe
  std::vector<std::pair<int, int>> old_seams;
  for (const auto& [k, v] : seam) {
    int h1 = halfedge(k.first, k.second);
    int h2 = halfedge(v.first, v.second);
    if (h1 < 0 || h2 < 0) throw Error(2, "stale seam entry");
    if (k < v) old_seams.push_back({h1, h2});
  }

  std::map<std::pair<int, int>, int> sector_id;  // (vertex, root) -> new id
  std::vector<uint8_t> vertex_seen(nv(), 0);
  for (int f = 0; f < nf(); ++f)
    for (int i = 0; i < 3; ++i) {
      int v = tri[f][i];
      int r = d.find(3 * f + i);
      auto [it, fresh] = sector_id.emplace(std::make_pair(v, r), -1);
      if (fresh) {
        if (!vertex_seen[v]) {
          vertex_seen[v] = 1;
          it->second = v;
        } else {
          it->second = nv();
          pos.push_back(pos[v]);
          orig.push_back(orig[v]);
          cone_k.push_back(cone_k[v]);
          flag.push_back(flag[v]);
          if (!uv.empty()) uv.push_back(uv[v]);
        }
      }
    }
  for (int f = 0; f < nf(); ++f)
    for (int i = 0; i < 3; ++i) {
      int v = tri[f][i];
      tri[f][i] = sector_id.at({v, d.find(3 * f + i)});
    }

  seam.clear();
  auto he_pair = [&](int h) { return VPair{he_from(h), he_to(h)}; };
  for (auto [h1, h2] : old_seams) {
    seam[he_pair(h1)] = he_pair(h2);
    seam[he_pair(h2)] = he_pair(h1);
  }
  for (auto [h1, h2] : marked_hes) {
    seam[he_pair(h1)] = he_pair(h2);
    seam[he_pair(h2)] = he_pair(h1);
  }
  build();
}

void check_path(const Mesh& m, const EdgePath& p, bool closed) {
  if (p.size() < 2) throw Error(1, "path too short");
  std::unordered_set<int> seen;
  size_t n = p.size();
  for (size_t i = 0; i + 1 < n; ++i)
    if (!m.has_edge(p[i], p[i + 1])) throw Error(1, "path leaves mesh edges");
  if (closed && p.front() != p.back()) throw Error(1, "loop not closed");
  for (size_t i = 0; i < n - (closed ? 1 : 0); ++i)
    if (!seen.insert(p[i]).second) throw Error(1, "path not simple");
}

int refine_for_paths(Mesh& m, const std::vector<VPair>& keep) {
  std::set<VPair> protect;
  for (auto [a, b] : keep) {
    protect.insert({a, b});
    protect.insert({b, a});
  }
  std::vector<VPair> targets;
  for (int h = 0; h < 3 * m.nf(); ++h) {
    int a = m.he_from(h), b = m.he_to(h);
    if (a < b && m.twin(h) >= 0 && m.flag[a] && m.flag[b] && !protect.count({a, b}))
      targets.push_back({a, b});
  }
  for (auto [a, b] : targets) {
    int v = m.split_edge(a, b, 0.5);
    m.flag[v] = 0;
  }
  return (int)targets.size();
}

}  // namespace seamless
