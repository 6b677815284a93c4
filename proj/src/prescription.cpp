#include "prescription.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <numbers>
#include <set>

#include <nlohmann/json.hpp>

namespace seamless {

double curvature_of_k(int k) {
  if (k < 2) throw Error(1, "cone k must be >= 2");
  return (4 - k) * std::numbers::pi / 2;
}

double Prescription::curvature(int i) const { return curvature_of_k(cones[i].k); }

int Prescription::total_units() const {
  int s = 0;
  for (const auto& c : cones) s += 4 - c.k;
  return s;
}

bool Prescription::fourfold() const {
  for (const auto& c : cones)
    if (c.k % 4 != 0) return false;
  return true;
}

bool Prescription::has_vertex(int v) const {
  for (const auto& c : cones)
    if (c.vertex == v) return true;
  return false;
}

AdmissibilityReport check_admissible(const Prescription& p, int genus) {
  AdmissibilityReport r;
  std::set<int> verts;
  for (const auto& c : p.cones) {
    if (c.k < 2) {
      r.message = "cone k=" + std::to_string(c.k) + " below minimum 2";
      return r;
    }
    if (!verts.insert(c.vertex).second) {
      r.message = "duplicate cone vertex " + std::to_string(c.vertex);
      return r;
    }
  }
  if (p.cones.size() == 2) {
    int a = p.cones[0].k, b = p.cones[1].k;
    if (std::min(a, b) == 3 && std::max(a, b) == 5) {
      r.message = "cone pair k=(3,5) admits no seamless parametrization";
      return r;
    }
  }
  r.residual_units = p.total_units() - (8 - 8 * genus);
  if (r.residual_units != 0) {
    r.message = "curvature sum off by " + std::to_string(r.residual_units) +
                " units of pi/2 (Gauss-Bonnet)";
    return r;
  }
  r.ok = true;
  r.message = "ok";
  return r;
}

std::optional<std::vector<int>> subset_with_curvature_sum(const Prescription& p,
                                                          int target_units) {
  int n = (int)p.cones.size();
  if (n <= 24) {
    std::optional<std::vector<int>> best;
    for (unsigned long long mask = 0; mask < (1ULL << n); ++mask) {
      int s = 0;
      for (int i = 0; i < n; ++i)
        if (mask >> i & 1) s += 4 - p.cones[i].k;
      if (s != target_units) continue;
      std::vector<int> sub;
      for (int i = 0; i < n; ++i)
        if (mask >> i & 1) sub.push_back(i);
      if (!best || sub.size() < best->size() || (sub.size() == best->size() && sub < *best))
        best = sub;
    }
    return best;
  }
  // subset-sum DP keeping, per reachable sum, the lexicographically best
  // smallest-cardinality subset
  std::map<int, std::vector<int>> reach;
  reach[0] = {};
  for (int i = 0; i < n; ++i) {
    int c = 4 - p.cones[i].k;
    std::map<int, std::vector<int>> next = reach;
    for (const auto& [s, sub] : reach) {
      std::vector<int> cand = sub;
      cand.push_back(i);
      auto it = next.find(s + c);
      if (it == next.end() || cand.size() < it->second.size() ||
          (cand.size() == it->second.size() && cand < it->second))
        next[s + c] = cand;
    }
    reach = std::move(next);
  }
  auto it = reach.find(target_units);
  if (it == reach.end()) return std::nullopt;
  return it->second;
}

Prescription load_cones_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(3, "cannot open " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const std::exception& e) {
    throw Error(3, std::string("bad cone json: ") + e.what());
  }
  Prescription p;
  for (const auto& e : j) p.cones.push_back({e.at("vertex").get<int>(), e.at("k").get<int>()});
  return p;
}

void apply_cones(Mesh& m, const Prescription& p) {
  std::fill(m.cone_k.begin(), m.cone_k.end(), 0);
  for (const auto& c : p.cones) {
    if (c.vertex < 0 || c.vertex >= m.nv())
      throw Error(1, "cone vertex " + std::to_string(c.vertex) + " out of range");
    m.cone_k[c.vertex] = c.k;
  }
}

}  // namespace seamless
