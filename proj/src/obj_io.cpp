#include "obj_io.hpp"

#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

namespace seamless {

namespace {

// "12", "12/3", "12//4", "12/3/4" -> (v, vt) zero-based, vt = -1 if absent
std::pair<int, int> parse_ref(const std::string& tok) {
  int v = 0, vt = -1;
  size_t s1 = tok.find('/');
  v = std::stoi(tok.substr(0, s1));
  if (s1 != std::string::npos) {
    size_t s2 = tok.find('/', s1 + 1);
    std::string mid = tok.substr(s1 + 1, s2 == std::string::npos ? std::string::npos : s2 - s1 - 1);
    if (!mid.empty()) vt = std::stoi(mid);
  }
  return {v - 1, vt - 1};
}

}  // namespace

Mesh load_obj(const std::string& path, bool with_uv) {
  std::ifstream in(path);
  if (!in) throw Error(3, "cannot open " + path);
  std::vector<Vec3> vs;
  std::vector<Vec2> vts;
  std::vector<std::array<std::pair<int, int>, 3>> faces;
  std::string line;
  while (std::getline(in, line)) {
    std::istringstream ss(line);
    std::string kw;
    if (!(ss >> kw) || kw[0] == '#') continue;
    if (kw == "v") {
      Vec3 p;
      if (!(ss >> p[0] >> p[1] >> p[2])) throw Error(3, "bad v line in " + path);
      vs.push_back(p);
    } else if (kw == "vt") {
      Vec2 p;
      if (!(ss >> p[0] >> p[1])) throw Error(3, "bad vt line in " + path);
      vts.push_back(p);
    } else if (kw == "f") {
      std::vector<std::pair<int, int>> refs;
      std::string tok;
      while (ss >> tok) refs.push_back(parse_ref(tok));
      if (refs.size() != 3) throw Error(3, "non-triangle face in " + path);
      faces.push_back({refs[0], refs[1], refs[2]});
    }
  }

  Mesh m;
  if (!with_uv) {
    m.pos = vs;
    for (auto& f : faces) m.tri.push_back({f[0].first, f[1].first, f[2].first});
    m.init_ids();
    m.build();
    return m;
  }

  std::map<std::pair<int, int>, int> wedge;
  for (auto& f : faces) {
    std::array<int, 3> t;
    for (int i = 0; i < 3; ++i) {
      auto [v, vt] = f[i];
      if (v < 0 || v >= (int)vs.size() || vt < 0 || vt >= (int)vts.size())
        throw Error(3, "face reference out of range in " + path);
      auto [it, fresh] = wedge.emplace(f[i], (int)m.pos.size());
      if (fresh) {
        m.pos.push_back(vs[v]);
        m.uv.push_back(vts[vt]);
        m.orig.push_back(v);
      }
      t[i] = it->second;
    }
    m.tri.push_back(t);
  }
  m.build();
  return m;
}

void save_obj_uv(const Mesh& m, const std::string& path) {
  if ((int)m.uv.size() != m.nv()) throw Error(2, "mesh has no uv to save");
  FILE* f = std::fopen(path.c_str(), "w");
  if (!f) throw Error(3, "cannot write " + path);
  std::map<int, int> geom;  // orig -> 1-based v index
  std::vector<int> vline(m.nv());
  for (int v = 0; v < m.nv(); ++v) {
    auto [it, fresh] = geom.emplace(m.orig[v], (int)geom.size() + 1);
    vline[v] = it->second;
    if (fresh) std::fprintf(f, "v %.17g %.17g %.17g\n", m.pos[v][0], m.pos[v][1], m.pos[v][2]);
  }
  for (int v = 0; v < m.nv(); ++v)
    std::fprintf(f, "vt %.17g %.17g\n", m.uv[v][0], m.uv[v][1]);
  for (const auto& t : m.tri)
    std::fprintf(f, "f %d/%d %d/%d %d/%d\n", vline[t[0]], t[0] + 1, vline[t[1]], t[1] + 1,
                 vline[t[2]], t[2] + 1);
  std::fclose(f);
}

}  // namespace seamless
