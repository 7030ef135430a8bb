#pragma once

#include <algorithm>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "ncpot/common.hpp"

namespace ncpot {

struct Edge {
  std::string name;
  int src = 0, tgt = 0;
  int deg = 1;  // weight grading (positive for graded-analysis inputs)
};

// Finite quiver; the one-vertex quiver with n loops models the free algebra.
class Quiver {
 public:
  std::vector<std::string> verts;
  std::vector<Edge> edges;

  Quiver() = default;
  Quiver(std::vector<std::string> vs, std::vector<Edge> es)
      : verts(std::move(vs)), edges(std::move(es)) {
    rebuild();
  }

  static Quiver free_algebra(const std::vector<std::string>& gens, int deg = 1) {
    Quiver q;
    q.verts = {"v0"};
    for (auto& g : gens) q.edges.push_back({g, 0, 0, deg});
    q.rebuild();
    return q;
  }

  void rebuild() {
    vidx_.clear();
    eidx_.clear();
    for (size_t i = 0; i < verts.size(); ++i) {
      if (!vidx_.emplace(verts[i], (int)i).second)
        throw std::runtime_error("duplicate vertex " + verts[i]);
    }
    for (size_t i = 0; i < edges.size(); ++i) {
      if (!eidx_.emplace(edges[i].name, (int)i).second)
        throw std::runtime_error("duplicate edge " + edges[i].name);
      if (edges[i].src < 0 || edges[i].src >= (int)verts.size() ||
          edges[i].tgt < 0 || edges[i].tgt >= (int)verts.size())
        throw std::runtime_error("edge endpoint out of range: " + edges[i].name);
    }
    // rank of each edge in name-sorted order; used for canonical rotations
    std::vector<int> order(edges.size());
    for (size_t i = 0; i < edges.size(); ++i) order[i] = (int)i;
    std::sort(order.begin(), order.end(), [&](int a, int b) {
      return edges[a].name < edges[b].name;
    });
    name_rank_.assign(edges.size(), 0);
    for (size_t r = 0; r < order.size(); ++r) name_rank_[order[r]] = (int)r;
  }

  int nverts() const { return (int)verts.size(); }
  int nedges() const { return (int)edges.size(); }
  int vertex_index(const std::string& v) const {
    auto it = vidx_.find(v);
    if (it == vidx_.end()) throw std::runtime_error("unknown vertex " + v);
    return it->second;
  }
  int edge_index(const std::string& e) const {
    auto it = eidx_.find(e);
    if (it == eidx_.end()) throw std::runtime_error("unknown edge " + e);
    return it->second;
  }
  bool has_edge(const std::string& e) const { return eidx_.count(e) != 0; }
  int name_rank(int e) const { return name_rank_[e]; }

 private:
  std::map<std::string, int> vidx_, eidx_;
  std::vector<int> name_rank_;
};

// Path: composable edge sequence, left-to-right (word "ab" needs tgt(a)=src(b)).
// Empty sequence = trivial path 1_{vtx}.
struct Path {
  int vtx = 0;  // source vertex (only authoritative when es is empty)
  std::vector<int> es;

  bool trivial() const { return es.empty(); }
};

inline int path_source(const Quiver& q, const Path& p) {
  return p.es.empty() ? p.vtx : q.edges[p.es.front()].src;
}
inline int path_target(const Quiver& q, const Path& p) {
  return p.es.empty() ? p.vtx : q.edges[p.es.back()].tgt;
}
inline int path_degree(const Quiver& q, const Path& p) {
  int d = 0;
  for (int e : p.es) d += q.edges[e].deg;
  return d;
}
inline bool path_composable(const Quiver& q, const Path& p) {
  for (size_t i = 0; i + 1 < p.es.size(); ++i)
    if (q.edges[p.es[i]].tgt != q.edges[p.es[i + 1]].src) return false;
  return true;
}
inline bool path_closed(const Quiver& q, const Path& p) {
  return path_source(q, p) == path_target(q, p);
}

// can p be followed by r?
inline bool paths_chain(const Quiver& q, const Path& p, const Path& r) {
  return path_target(q, p) == path_source(q, r);
}
inline Path path_concat(const Quiver& q, const Path& p, const Path& r) {
  Path out;
  out.vtx = path_source(q, p);
  out.es = p.es;
  out.es.insert(out.es.end(), r.es.begin(), r.es.end());
  (void)q;
  return out;
}

// total order on paths of one quiver: length, then edge names, then vertex
struct PathCmp {
  const Quiver* q = nullptr;
  bool operator()(const Path& a, const Path& b) const {
    if (a.es.size() != b.es.size()) return a.es.size() < b.es.size();
    for (size_t i = 0; i < a.es.size(); ++i) {
      int ra = q->name_rank(a.es[i]), rb = q->name_rank(b.es[i]);
      if (ra != rb) return ra < rb;
    }
    if (a.es.empty()) return a.vtx < b.vtx;
    return false;
  }
};

inline bool path_eq(const Quiver& q, const Path& a, const Path& b) {
  PathCmp c{&q};
  return !c(a, b) && !c(b, a);
}

inline std::string path_str(const Quiver& q, const Path& p) {
  if (p.es.empty()) return "1_" + q.verts[p.vtx];
  std::string s;
  for (size_t i = 0; i < p.es.size(); ++i) {
    if (i) s += ".";
    s += q.edges[p.es[i]].name;
  }
  return s;
}

// lexicographically minimal rotation (by edge-name rank sequence) of a closed
// nonempty path; ties broken by first occurrence.
inline Path canonical_rotation(const Quiver& q, const Path& p) {
  if (p.es.empty()) return p;
  size_t n = p.es.size();
  size_t best = 0;
  for (size_t s = 1; s < n; ++s) {
    for (size_t k = 0; k < n; ++k) {
      int rs = q.name_rank(p.es[(s + k) % n]);
      int rb = q.name_rank(p.es[(best + k) % n]);
      if (rs != rb) {
        if (rs < rb) best = s;
        break;
      }
    }
  }
  Path out;
  out.es.reserve(n);
  for (size_t k = 0; k < n; ++k) out.es.push_back(p.es[(best + k) % n]);
  out.vtx = q.edges[out.es.front()].src;
  return out;
}

}  // namespace ncpot
