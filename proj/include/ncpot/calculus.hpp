#pragma once

#include <optional>

#include "ncpot/poly.hpp"

namespace ncpot {

// Cyclic derivative d/dx of a cyclic polynomial: for each occurrence of x in a
// cycle u.x.v, contribute the open path v.u (read onward from just after the
// occurrence).  The result runs tgt(x) -> src(x).
inline NCPoly cyclic_derive(const CyclicPoly& f, int x) {
  NCPoly out(*f.q);
  const Quiver& q = *f.q;
  for (auto& [p, c] : f.terms) {
    size_t n = p.es.size();
    for (size_t s = 0; s < n; ++s) {
      if (p.es[s] != x) continue;
      Path w;
      w.es.reserve(n - 1);
      for (size_t k = 1; k < n; ++k) w.es.push_back(p.es[(s + k) % n]);
      w.vtx = q.edges[x].tgt;
      out.add(w, c);
    }
  }
  return out;
}
inline NCPoly cyclic_derive(const CyclicPoly& f, const std::string& x) {
  return cyclic_derive(f, f.q->edge_index(x));
}

inline TensorPoly to_tensor(const NCPoly& a) {
  TensorPoly out(*a.q, 1);
  for (auto& [p, c] : a.terms) out.add({p}, c);
  return out;
}

// Free higher derivative d/dx : F^{(x)r} -> F^{(x)(r+1)}.  Leibniz over all
// tensor slots: each occurrence u.x.v inside a slot splits it into u (x) v in
// place.
inline TensorPoly higher_derive(const TensorPoly& f, int x) {
  TensorPoly out(*f.q, f.rank + 1);
  const Quiver& q = *f.q;
  for (auto& [key, c] : f.terms) {
    for (size_t slot = 0; slot < key.size(); ++slot) {
      const Path& p = key[slot];
      for (size_t s = 0; s < p.es.size(); ++s) {
        if (p.es[s] != x) continue;
        Path u, v;
        u.vtx = path_source(q, p);
        u.es.assign(p.es.begin(), p.es.begin() + s);
        v.vtx = q.edges[x].tgt;
        v.es.assign(p.es.begin() + s + 1, p.es.end());
        std::vector<Path> nk;
        nk.reserve(key.size() + 1);
        for (size_t i = 0; i < slot; ++i) nk.push_back(key[i]);
        nk.push_back(u);
        nk.push_back(v);
        for (size_t i = slot + 1; i < key.size(); ++i) nk.push_back(key[i]);
        out.add(nk, c);
      }
    }
  }
  return out;
}
inline TensorPoly higher_derive(const TensorPoly& f, const std::string& x) {
  return higher_derive(f, f.q->edge_index(x));
}

// swap the two factors of a rank-2 tensor
inline TensorPoly tensor_flip(const TensorPoly& f) {
  if (f.rank != 2) throw std::runtime_error("tensor_flip needs rank 2");
  TensorPoly out(*f.q, 2);
  for (auto& [key, c] : f.terms) out.add({key[1], key[0]}, c);
  return out;
}

// cyclic slot shift (p1,...,pr) -> (pr,p1,...,p_{r-1})
inline TensorPoly tensor_shift(const TensorPoly& f) {
  TensorPoly out(*f.q, f.rank);
  for (auto& [key, c] : f.terms) {
    std::vector<Path> nk;
    nk.reserve(key.size());
    nk.push_back(key.back());
    for (size_t i = 0; i + 1 < key.size(); ++i) nk.push_back(key[i]);
    out.add(nk, c);
  }
  return out;
}

// multiply all slots back together (counit of the splitting maps)
inline NCPoly tensor_contract(const TensorPoly& f) {
  NCPoly out(*f.q);
  const Quiver& q = *f.q;
  for (auto& [key, c] : f.terms) {
    Path acc = key.front();
    bool ok = true;
    for (size_t i = 1; i < key.size(); ++i) {
      if (!paths_chain(q, acc, key[i])) { ok = false; break; }
      acc = path_concat(q, acc, key[i]);
    }
    if (ok) out.add(acc, c);
  }
  return out;
}

// Hessian entry H[i][j] = d/dx_i (dPhi/dx_j), a rank-2 tensor.
inline std::vector<std::vector<TensorPoly>> hessian(const CyclicPoly& f) {
  int n = f.q->nedges();
  std::vector<std::vector<TensorPoly>> H(n);
  std::vector<NCPoly> first;
  first.reserve(n);
  for (int j = 0; j < n; ++j) first.push_back(cyclic_derive(f, j));
  for (int i = 0; i < n; ++i) {
    H[i].reserve(n);
    for (int j = 0; j < n; ++j) H[i].push_back(higher_derive(to_tensor(first[j]), i));
  }
  return H;
}

// sum_x x.(dPhi/dx) projects back to (word length)*Phi; useful as a self-check
inline CyclicPoly euler_contract(const CyclicPoly& f) {
  CyclicPoly out(*f.q);
  for (int x = 0; x < f.q->nedges(); ++x) {
    NCPoly xe(*f.q);
    xe.add(Path{f.q->edges[x].src, {x}}, Scalar(1));
    out += project_cyclic(xe * cyclic_derive(f, x));
  }
  return out;
}

// Poincare-lemma integration: given f_x with sum_x [x, f_x] = 0, recover Phi
// with dPhi/dx = f_x.  Each closed word of x.f_x of length L is weighted 1/L;
// returns nullopt when the precondition fails (verified by re-deriving).
inline std::optional<CyclicPoly> poincare_integrate(
    const Quiver& q, const std::vector<NCPoly>& fs) {
  if ((int)fs.size() != q.nedges())
    throw std::runtime_error("poincare_integrate: one component per edge");
  CyclicPoly phi(q);
  for (int x = 0; x < q.nedges(); ++x) {
    NCPoly xe(q);
    xe.add(Path{q.edges[x].src, {x}}, Scalar(1));
    NCPoly prod = xe * fs[x];
    for (auto& [p, c] : prod.terms) {
      if (!path_closed(q, p) || p.es.empty()) continue;
      phi.add_canonical(canonical_rotation(q, p),
                        c * Scalar(Rat(1, (long)p.es.size())));
    }
  }
  for (int x = 0; x < q.nedges(); ++x)
    if (!(cyclic_derive(phi, x) == fs[x])) return std::nullopt;
  return phi;
}

}  // namespace ncpot
