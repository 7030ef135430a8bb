#pragma once

#include <functional>
#include <map>
#include <optional>

#include "ncpot/quiver.hpp"

namespace ncpot {

// Noncommutative polynomial: finite Path -> Scalar map over one quiver.
class NCPoly {
 public:
  const Quiver* q = nullptr;
  std::map<Path, Scalar, PathCmp> terms;

  NCPoly() = default;
  explicit NCPoly(const Quiver& quiver) : q(&quiver), terms(PathCmp{&quiver}) {}

  static NCPoly zero(const Quiver& quiver) { return NCPoly(quiver); }
  static NCPoly unit(const Quiver& quiver) {
    NCPoly p(quiver);
    for (int i = 0; i < quiver.nverts(); ++i) p.add(Path{i, {}}, Scalar(1));
    return p;
  }
  static NCPoly gen(const Quiver& quiver, int edge) {
    NCPoly p(quiver);
    p.add(Path{quiver.edges[edge].src, {edge}}, Scalar(1));
    return p;
  }
  static NCPoly gen(const Quiver& quiver, const std::string& edge) {
    return gen(quiver, quiver.edge_index(edge));
  }
  static NCPoly word(const Quiver& quiver, const std::vector<std::string>& edges,
                     Scalar c = Scalar(1)) {
    Path p;
    for (auto& e : edges) p.es.push_back(quiver.edge_index(e));
    if (!p.es.empty()) p.vtx = quiver.edges[p.es.front()].src;
    NCPoly out(quiver);
    if (!path_composable(quiver, p))
      throw std::runtime_error("non-composable word");
    out.add(p, c);
    return out;
  }

  bool is_zero() const { return terms.empty(); }

  void add(const Path& p, const Scalar& c) {
    if (c.is_zero()) return;
    auto [it, fresh] = terms.emplace(p, c);
    if (!fresh) {
      it->second += c;
      if (it->second.is_zero()) terms.erase(it);
    }
  }

  NCPoly& operator+=(const NCPoly& o) {
    for (auto& [p, c] : o.terms) add(p, c);
    return *this;
  }
  NCPoly& operator-=(const NCPoly& o) {
    for (auto& [p, c] : o.terms) add(p, -c);
    return *this;
  }
  friend NCPoly operator+(NCPoly a, const NCPoly& b) { return a += b; }
  friend NCPoly operator-(NCPoly a, const NCPoly& b) { return a -= b; }
  friend NCPoly operator*(const Scalar& s, const NCPoly& a) {
    NCPoly out(*a.q);
    for (auto& [p, c] : a.terms) out.add(p, s * c);
    return out;
  }
  friend NCPoly operator-(const NCPoly& a) { return Scalar(-1) * a; }

  friend bool operator==(const NCPoly& a, const NCPoly& b) {
    if (a.terms.size() != b.terms.size()) return false;
    auto ia = a.terms.begin(), ib = b.terms.begin();
    for (; ia != a.terms.end(); ++ia, ++ib) {
      if (!path_eq(*a.q, ia->first, ib->first) || !(ia->second == ib->second))
        return false;
    }
    return true;
  }

  std::string str() const {
    if (terms.empty()) return "0";
    std::string s;
    for (auto& [p, c] : terms) {
      if (!s.empty()) s += " + ";
      s += c.str() + "*" + path_str(*q, p);
    }
    return s;
  }
};

// path-algebra product: bilinear extension of concatenation; non-composable
// pairs multiply to zero
inline NCPoly multiply(const NCPoly& a, const NCPoly& b) {
  if (a.q != b.q) throw std::runtime_error("quiver mismatch in multiply");
  NCPoly out(*a.q);
  for (auto& [pa, ca] : a.terms)
    for (auto& [pb, cb] : b.terms)
      if (paths_chain(*a.q, pa, pb))
        out.add(path_concat(*a.q, pa, pb), ca * cb);
  return out;
}
inline NCPoly operator*(const NCPoly& a, const NCPoly& b) { return multiply(a, b); }

// Element of F_cyc: closed paths up to rotation, canonical representatives.
// (Classical, sign-free version; Koszul-signed cycles live in super.hpp.)
class CyclicPoly {
 public:
  const Quiver* q = nullptr;
  std::map<Path, Scalar, PathCmp> terms;  // keys are canonical rotations

  CyclicPoly() = default;
  explicit CyclicPoly(const Quiver& quiver)
      : q(&quiver), terms(PathCmp{&quiver}) {}

  bool is_zero() const { return terms.empty(); }

  void add_canonical(const Path& p, const Scalar& c) {
    if (c.is_zero()) return;
    auto [it, fresh] = terms.emplace(p, c);
    if (!fresh) {
      it->second += c;
      if (it->second.is_zero()) terms.erase(it);
    }
  }

  CyclicPoly& operator+=(const CyclicPoly& o) {
    for (auto& [p, c] : o.terms) add_canonical(p, c);
    return *this;
  }
  CyclicPoly& operator-=(const CyclicPoly& o) {
    for (auto& [p, c] : o.terms) add_canonical(p, -c);
    return *this;
  }
  friend CyclicPoly operator+(CyclicPoly a, const CyclicPoly& b) { return a += b; }
  friend CyclicPoly operator-(CyclicPoly a, const CyclicPoly& b) { return a -= b; }
  friend CyclicPoly operator*(const Scalar& s, const CyclicPoly& a) {
    CyclicPoly out(*a.q);
    for (auto& [p, c] : a.terms) out.add_canonical(p, s * c);
    return out;
  }
  friend bool operator==(const CyclicPoly& a, const CyclicPoly& b) {
    if (a.terms.size() != b.terms.size()) return false;
    auto ia = a.terms.begin(), ib = b.terms.begin();
    for (; ia != a.terms.end(); ++ia, ++ib) {
      if (!path_eq(*a.q, ia->first, ib->first) || !(ia->second == ib->second))
        return false;
    }
    return true;
  }
  std::string str() const {
    if (terms.empty()) return "0";
    std::string s;
    for (auto& [p, c] : terms) {
      if (!s.empty()) s += " + ";
      s += c.str() + "*(" + path_str(*q, p) + ")";
    }
    return s;
  }
};

// kill open paths, identify rotations of closed ones
inline CyclicPoly project_cyclic(const NCPoly& a) {
  CyclicPoly out(*a.q);
  for (auto& [p, c] : a.terms) {
    if (!path_closed(*a.q, p)) continue;
    out.add_canonical(canonical_rotation(*a.q, p), c);
  }
  return out;
}

// section of project_cyclic via the canonical representatives
inline NCPoly lift_cyclic(const CyclicPoly& c) {
  NCPoly out(*c.q);
  for (auto& [p, s] : c.terms) out.add(p, s);
  return out;
}

inline CyclicPoly cyclic_word(const Quiver& q,
                              const std::vector<std::string>& edges,
                              Scalar c = Scalar(1)) {
  return project_cyclic(NCPoly::word(q, edges, c));
}

// element of F^{⊗r}: fixed-rank tuples of paths
class TensorPoly {
 public:
  const Quiver* q = nullptr;
  int rank = 1;
  struct KeyCmp {
    const Quiver* q;
    bool operator()(const std::vector<Path>& a,
                    const std::vector<Path>& b) const {
      PathCmp c{q};
      for (size_t i = 0; i < a.size() && i < b.size(); ++i) {
        if (c(a[i], b[i])) return true;
        if (c(b[i], a[i])) return false;
      }
      return a.size() < b.size();
    }
  };
  std::map<std::vector<Path>, Scalar, KeyCmp> terms;

  TensorPoly() = default;
  TensorPoly(const Quiver& quiver, int r)
      : q(&quiver), rank(r), terms(KeyCmp{&quiver}) {}

  bool is_zero() const { return terms.empty(); }
  void add(const std::vector<Path>& key, const Scalar& c) {
    if (c.is_zero()) return;
    auto [it, fresh] = terms.emplace(key, c);
    if (!fresh) {
      it->second += c;
      if (it->second.is_zero()) terms.erase(it);
    }
  }
  friend TensorPoly operator+(TensorPoly a, const TensorPoly& b) {
    for (auto& [k, c] : b.terms) a.add(k, c);
    return a;
  }
  friend TensorPoly operator-(TensorPoly a, const TensorPoly& b) {
    for (auto& [k, c] : b.terms) a.add(k, -c);
    return a;
  }
  friend bool operator==(const TensorPoly& a, const TensorPoly& b) {
    if (a.rank != b.rank || a.terms.size() != b.terms.size()) return false;
    auto ia = a.terms.begin(), ib = b.terms.begin();
    TensorPoly::KeyCmp c{a.q};
    for (; ia != a.terms.end(); ++ia, ++ib) {
      if (c(ia->first, ib->first) || c(ib->first, ia->first) ||
          !(ia->second == ib->second))
        return false;
    }
    return true;
  }
  std::string str() const {
    if (terms.empty()) return "0";
    std::string s;
    for (auto& [k, c] : terms) {
      if (!s.empty()) s += " + ";
      s += c.str() + "*";
      for (size_t i = 0; i < k.size(); ++i) {
        if (i) s += "(x)";
        s += path_str(*q, k[i]);
      }
    }
    return s;
  }
};

// is every monomial homogeneous of one common degree?  returns it if so
inline std::optional<int> homogeneous_degree(const CyclicPoly& c) {
  std::optional<int> d;
  for (auto& [p, s] : c.terms) {
    int pd = path_degree(*c.q, p);
    if (!d) d = pd;
    else if (*d != pd) return std::nullopt;
  }
  return d ? d : std::optional<int>(0);
}
inline std::optional<int> homogeneous_degree(const NCPoly& c) {
  std::optional<int> d;
  for (auto& [p, s] : c.terms) {
    int pd = path_degree(*c.q, p);
    if (!d) d = pd;
    else if (*d != pd) return std::nullopt;
  }
  return d ? d : std::optional<int>(0);
}

}  // namespace ncpot
