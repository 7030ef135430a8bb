#pragma once

#include <algorithm>
#include <functional>
#include <map>
#include <optional>
#include <sstream>
#include <vector>

#include "ncpot/calculus.hpp"

namespace ncpot {

// ----------------- truncated power series over exact rationals -----------------

struct RatSeries {
  int N = 0;            // truncation order (inclusive)
  std::vector<Rat> c;   // coefficients 0..N

  RatSeries() = default;
  explicit RatSeries(int order) : N(order), c(order + 1, Rat(0)) {}
  static RatSeries one(int order) {
    RatSeries s(order);
    s.c[0] = 1;
    return s;
  }
  static RatSeries monomial(int order, int deg, const Rat& a = Rat(1)) {
    RatSeries s(order);
    if (deg <= order) s.c[deg] = a;
    return s;
  }

  bool is_zero() const {
    for (auto& a : c)
      if (a != 0) return false;
    return true;
  }

  friend RatSeries operator+(const RatSeries& a, const RatSeries& b) {
    RatSeries out(a.N);
    for (int i = 0; i <= a.N; ++i) out.c[i] = a.c[i] + b.c[i];
    return out;
  }
  friend RatSeries operator-(const RatSeries& a, const RatSeries& b) {
    RatSeries out(a.N);
    for (int i = 0; i <= a.N; ++i) out.c[i] = a.c[i] - b.c[i];
    return out;
  }
  friend RatSeries operator*(const RatSeries& a, const RatSeries& b) {
    RatSeries out(a.N);
    for (int i = 0; i <= a.N; ++i) {
      if (a.c[i] == 0) continue;
      for (int j = 0; i + j <= a.N; ++j)
        if (b.c[j] != 0) out.c[i + j] += a.c[i] * b.c[j];
    }
    return out;
  }
  RatSeries& operator+=(const RatSeries& o) { return *this = *this + o; }
  RatSeries& operator*=(const RatSeries& o) { return *this = *this * o; }
  friend bool operator==(const RatSeries& a, const RatSeries& b) {
    return a.N == b.N && a.c == b.c;
  }

  // multiplicative inverse; requires nonzero constant term
  RatSeries inverse() const {
    if (c[0] == 0) throw std::runtime_error("series inverse: zero constant term");
    RatSeries out(N);
    Rat i0 = 1 / c[0];
    out.c[0] = i0;
    for (int n = 1; n <= N; ++n) {
      Rat s(0);
      for (int k = 1; k <= n; ++k) s += c[k] * out.c[n - k];
      out.c[n] = -i0 * s;
    }
    return out;
  }

  // substitute t -> t^s
  RatSeries dilate(int s) const {
    RatSeries out(N);
    for (int i = 0; i <= N && (long)i * s <= N; ++i) out.c[i * s] = c[i];
    return out;
  }

  std::string str() const {
    std::ostringstream os;
    bool first = true;
    for (int i = 0; i <= N; ++i) {
      if (c[i] == 0) continue;
      if (!first) os << " + ";
      os << c[i].get_str() << "*t^" << i;
      first = false;
    }
    if (first) os << "0";
    return os.str();
  }
};

// ----------------- matrix-valued truncated series -----------------

struct MatrixSeries {
  int I = 0;  // square size
  int N = 0;  // truncation order
  std::vector<RatSeries> e;  // row-major

  MatrixSeries() = default;
  MatrixSeries(int size, int order)
      : I(size), N(order), e(size * size, RatSeries(order)) {}
  static MatrixSeries identity(int size, int order) {
    MatrixSeries m(size, order);
    for (int i = 0; i < size; ++i) m.at(i, i) = RatSeries::one(order);
    return m;
  }
  RatSeries& at(int i, int j) { return e[i * I + j]; }
  const RatSeries& at(int i, int j) const { return e[i * I + j]; }

  friend MatrixSeries operator+(const MatrixSeries& a, const MatrixSeries& b) {
    MatrixSeries out(a.I, a.N);
    for (size_t k = 0; k < a.e.size(); ++k) out.e[k] = a.e[k] + b.e[k];
    return out;
  }
  friend MatrixSeries operator-(const MatrixSeries& a, const MatrixSeries& b) {
    MatrixSeries out(a.I, a.N);
    for (size_t k = 0; k < a.e.size(); ++k) out.e[k] = a.e[k] - b.e[k];
    return out;
  }
  friend MatrixSeries operator*(const MatrixSeries& a, const MatrixSeries& b) {
    MatrixSeries out(a.I, a.N);
    for (int i = 0; i < a.I; ++i)
      for (int k = 0; k < a.I; ++k) {
        if (a.at(i, k).is_zero()) continue;
        for (int j = 0; j < a.I; ++j)
          out.at(i, j) += a.at(i, k) * b.at(k, j);
      }
    return out;
  }
  friend bool operator==(const MatrixSeries& a, const MatrixSeries& b) {
    return a.I == b.I && a.N == b.N && a.e == b.e;
  }

  // coefficient matrix at degree n
  std::vector<Rat> coeff(int n) const {
    std::vector<Rat> out(I * I);
    for (int k = 0; k < I * I; ++k) out[k] = e[k].c[n];
    return out;
  }

  // inverse when the constant-term matrix is invertible: solve
  // H_0 = P_0^{-1}, H_n = -P_0^{-1} sum_{k>=1} P_k H_{n-k}
  MatrixSeries inverse() const {
    // invert the constant matrix by exact Gauss-Jordan
    int n = I;
    std::vector<Rat> a = coeff(0);
    std::vector<Rat> inv(n * n, Rat(0));
    for (int i = 0; i < n; ++i) inv[i * n + i] = 1;
    for (int col = 0; col < n; ++col) {
      int piv = -1;
      for (int r = col; r < n; ++r)
        if (a[r * n + col] != 0) { piv = r; break; }
      if (piv < 0)
        throw std::runtime_error("matrix series inverse: singular constant term");
      if (piv != col)
        for (int j = 0; j < n; ++j) {
          std::swap(a[piv * n + j], a[col * n + j]);
          std::swap(inv[piv * n + j], inv[col * n + j]);
        }
      Rat d = 1 / a[col * n + col];
      for (int j = 0; j < n; ++j) { a[col * n + j] *= d; inv[col * n + j] *= d; }
      for (int r = 0; r < n; ++r) {
        if (r == col || a[r * n + col] == 0) continue;
        Rat f = a[r * n + col];
        for (int j = 0; j < n; ++j) {
          a[r * n + j] -= f * a[col * n + j];
          inv[r * n + j] -= f * inv[col * n + j];
        }
      }
    }
    // coefficientwise recursion
    std::vector<std::vector<Rat>> H(N + 1, std::vector<Rat>(n * n, Rat(0)));
    H[0] = inv;
    for (int d = 1; d <= N; ++d) {
      std::vector<Rat> s(n * n, Rat(0));
      for (int k = 1; k <= d; ++k) {
        std::vector<Rat> Pk = coeff(k);
        for (int i = 0; i < n; ++i)
          for (int l = 0; l < n; ++l) {
            if (Pk[i * n + l] == 0) continue;
            for (int j = 0; j < n; ++j)
              s[i * n + j] += Pk[i * n + l] * H[d - k][l * n + j];
          }
      }
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
          Rat v(0);
          for (int l = 0; l < n; ++l) v += inv[i * n + l] * s[l * n + j];
          H[d][i * n + j] = -v;
        }
    }
    MatrixSeries out(I, N);
    for (int d = 0; d <= N; ++d)
      for (int k = 0; k < n * n; ++k) out.e[k].c[d] = H[d][k];
    return out;
  }

  // determinant via det = exp(tr log(1 + Q)) for matrices with constant term 1
  // (Q then has positive valuation, so the logarithm is a finite sum mod t^{N+1})
  RatSeries det_unital() const {
    MatrixSeries Q = *this - identity(I, N);
    for (int k = 0; k < I * I; ++k)
      if (Q.e[k].c[0] != 0)
        throw std::runtime_error("det_unital: constant term is not the identity");
    // log(1+Q) = sum_{k>=1} (-1)^{k+1} Q^k / k
    MatrixSeries L(I, N), Qk = Q;
    for (int k = 1; k <= N; ++k) {
      bool allzero = true;
      for (auto& s : Qk.e)
        if (!s.is_zero()) { allzero = false; break; }
      if (allzero) break;
      Rat f = Rat((k % 2) ? 1 : -1, k);
      f.canonicalize();
      for (int idx = 0; idx < I * I; ++idx)
        for (int d = 0; d <= N; ++d) L.e[idx].c[d] += f * Qk.e[idx].c[d];
      Qk = Qk * Q;
    }
    RatSeries tr(N);
    for (int i = 0; i < I; ++i) tr += L.at(i, i);
    // exp(tr), tr has zero constant term
    RatSeries out = RatSeries::one(N), pw = RatSeries::one(N);
    Rat fact(1);
    for (int k = 1; k <= N; ++k) {
      pw = pw * tr;
      if (pw.is_zero()) break;
      fact *= k;
      for (int d = 0; d <= N; ++d) out.c[d] += pw.c[d] / fact;
    }
    return out;
  }
};

// matrix Hilbert series of the edge space: h(V;t)_{ij} = sum over edges i->j
// of t^{deg e}
inline MatrixSeries edge_series(const Quiver& q, int order) {
  MatrixSeries h(q.nverts(), order);
  for (auto& ed : q.edges)
    if (ed.deg <= order) h.at(ed.src, ed.tgt).c[ed.deg] += 1;
  return h;
}

// Cartan polynomial p(V,Phi;t) = 1 - h(V;t) + t^m h(V;1/t)^T - t^m 1.
// The dual (relation) term is transposed: degree-(m - deg x) classes pair an
// edge x: i -> j with chains running j -> i (Serre duality swaps the two
// vertices).  For quivers with symmetric edge counts the transpose is
// invisible; for asymmetric ones (e.g. cyclic-symmetry orbifold quivers) the
// untransposed variant produces series with negative coefficients and is not
// inverse to any graded quotient.
inline MatrixSeries cartan_polynomial(const Quiver& q, int m, int order) {
  if (m <= 2) throw std::invalid_argument("cartan_polynomial: degree must exceed 2");
  for (auto& ed : q.edges)
    if (ed.deg <= 0 || ed.deg >= m)
      throw std::invalid_argument("cartan_polynomial: edge degrees must lie in (0, m)");
  MatrixSeries p = MatrixSeries::identity(q.nverts(), order);
  for (auto& ed : q.edges) {
    if (ed.deg <= order) p.at(ed.src, ed.tgt).c[ed.deg] -= 1;
    if (m - ed.deg <= order) p.at(ed.tgt, ed.src).c[m - ed.deg] += 1;
  }
  for (int v = 0; v < q.nverts(); ++v)
    if (m <= order) p.at(v, v).c[m] -= 1;
  return p;
}

inline MatrixSeries hilbert_from_cartan(const MatrixSeries& p) {
  return p.inverse();
}

// ----------------- sparse row echelon over F_p and over Q -----------------

template <class K>
struct SparseEchelon {
  using Row = std::map<int, K>;
  std::map<int, Row> pivots;  // leading column -> row with leading coeff 1
  bool reduced = false;

  void reduce_row(Row& r) const {
    while (!r.empty()) {
      auto it = pivots.find(r.begin()->first);
      if (it == pivots.end()) return;
      K f = r.begin()->second;
      for (auto& [col, val] : it->second) {
        auto jt = r.find(col);
        K nv = (jt == r.end() ? K(0) : jt->second) - f * val;
        if (nv.is_zero()) {
          if (jt != r.end()) r.erase(jt);
        } else if (jt == r.end()) {
          r.emplace(col, nv);
        } else {
          jt->second = nv;
        }
      }
    }
  }

  // returns true if the row increased the rank
  bool insert(Row r) {
    reduce_row(r);
    if (r.empty()) return false;
    K inv = K(1) / r.begin()->second;
    for (auto& [c, v] : r) v = v * inv;
    int lead = r.begin()->first;
    pivots.emplace(lead, std::move(r));
    reduced = false;
    return true;
  }

  int rank() const { return (int)pivots.size(); }

  // back-substitute so pivot rows only involve non-pivot columns; rows with
  // larger leading column are processed first, so one pass suffices
  void finalize() {
    if (reduced) return;
    for (auto it = pivots.rbegin(); it != pivots.rend(); ++it) {
      Row& r = it->second;
      bool changed = true;
      while (changed) {
        changed = false;
        for (auto& [col, val] : r) {
          if (col == it->first) continue;
          auto pt = pivots.find(col);
          if (pt == pivots.end()) continue;
          K f = val;
          r.erase(col);
          for (auto& [c2, v2] : pt->second) {
            if (c2 == col) continue;
            auto kt = r.find(c2);
            K nv = (kt == r.end() ? K(0) : kt->second) - f * v2;
            if (nv.is_zero()) {
              if (kt != r.end()) r.erase(kt);
            } else if (kt == r.end()) {
              r.emplace(c2, nv);
            } else {
              kt->second = nv;
            }
          }
          changed = true;
          break;
        }
      }
    }
    reduced = true;
  }

  // express column `col` in terms of non-pivot columns (requires finalize())
  Row solve(int col) const {
    auto it = pivots.find(col);
    if (it == pivots.end()) return Row{{col, K(1)}};
    Row out;
    for (auto& [c, v] : it->second)
      if (c != col) out.emplace(c, -v);
    return out;
  }
};

// rational coefficients wrapped with the interface SparseEchelon expects
struct QCoef {
  Rat v;
  QCoef() : v(0) {}
  explicit QCoef(long n) : v(n) {}
  explicit QCoef(const Rat& r) : v(r) {}
  bool is_zero() const { return v == 0; }
  friend QCoef operator*(const QCoef& a, const QCoef& b) { return QCoef(Rat(a.v * b.v)); }
  friend QCoef operator-(const QCoef& a, const QCoef& b) { return QCoef(Rat(a.v - b.v)); }
  friend QCoef operator/(const QCoef& a, const QCoef& b) { return QCoef(Rat(a.v / b.v)); }
  friend QCoef operator-(const QCoef& a) { return QCoef(Rat(-a.v)); }
};

// pick the Monte-Carlo rank prime once per process, seeded from the environment
inline void ensure_rank_prime() {
  static bool done = [] {
    std::mt19937_64 rng(global_seed() ^ 0x9e3779b97f4a7c15ull);
    Fp::p = random_prime_62(rng);
    return true;
  }();
  (void)done;
}

inline Rat scalar_to_rat(const Scalar& s) {
  if (!s.is_rat())
    throw std::runtime_error("graded analysis requires exact rational coefficients");
  return s.ratval();
}

// ----------------- graded quotient algebra -----------------

struct GradedQuotient {
  const Quiver* q = nullptr;
  CyclicPoly phi;
  int m = 0;             // homogeneous degree of the potential
  int N = 0;             // truncation order
  long memory_bound = 4000000;  // max words in a single graded piece

  std::vector<NCPoly> relations;                 // dPhi/dx per edge
  std::vector<std::vector<Path>> words;          // words of (T_R V)_n, sorted
  std::vector<std::map<Path, int, PathCmp>> windex;
  std::vector<SparseEchelon<Fp>> ech;            // relation span I_n, per degree

  GradedQuotient(const Quiver& quiver, const CyclicPoly& pot, int order,
                 long membound = 4000000)
      : q(&quiver), phi(pot), N(order), memory_bound(membound) {
    ensure_rank_prime();
    auto deg = homogeneous_degree(pot);
    if (!deg) throw std::invalid_argument("graded quotient: potential must be homogeneous");
    m = *deg;
    if (m <= 2) throw std::invalid_argument("graded quotient: potential degree must exceed 2");
    for (auto& e : q->edges)
      if (e.deg <= 0) throw std::invalid_argument("graded quotient: edge degrees must be positive");
    for (int x = 0; x < q->nedges(); ++x) relations.push_back(cyclic_derive(phi, x));
    build_words();
    build_ideal();
  }

  void build_words() {
    words.assign(N + 1, {});
    windex.assign(N + 1, std::map<Path, int, PathCmp>(PathCmp{q}));
    for (int v = 0; v < q->nverts(); ++v) words[0].push_back(Path{v, {}});
    for (int n = 1; n <= N; ++n) {
      for (int e = 0; e < q->nedges(); ++e) {
        int d = q->edges[e].deg;
        if (d > n) continue;
        for (auto& p : words[n - d]) {
          if (p.es.empty() ? p.vtx != q->edges[e].src
                           : q->edges[p.es.back()].tgt != q->edges[e].src)
            continue;
          Path w = p;
          w.es.push_back(e);
          words[n].push_back(w);
        }
      }
      if ((long)words[n].size() > memory_bound)
        throw std::runtime_error("graded quotient: degree " + std::to_string(n) +
                                 " exceeds the configured memory bound");
      std::sort(words[n].begin(), words[n].end(), PathCmp{q});
    }
    for (int n = 0; n <= N; ++n)
      for (int i = 0; i < (int)words[n].size(); ++i)
        windex[n].emplace(words[n][i], i);
  }

  // the span I_n = sum V^a . R_Phi . V^b as a row echelon per degree
  void build_ideal() {
    ech.assign(N + 1, {});
    for (int x = 0; x < q->nedges(); ++x) {
      const NCPoly& r = relations[x];
      if (r.is_zero()) continue;
      int dr = m - q->edges[x].deg;
      int rs = q->edges[x].tgt, rt = q->edges[x].src;  // relation runs tgt(x)->src(x)
      for (int n = dr; n <= N; ++n) {
        for (int a = 0; a + dr <= n; ++a) {
          int b = n - dr - a;
          for (auto& u : words[a]) {
            if (path_target(*q, u) != rs) continue;
            for (auto& v : words[b]) {
              if (path_source(*q, v) != rt) continue;
              SparseEchelon<Fp>::Row row;
              for (auto& [tp, tc] : r.terms) {
                Path w = u;
                w.es.insert(w.es.end(), tp.es.begin(), tp.es.end());
                w.es.insert(w.es.end(), v.es.begin(), v.es.end());
                if (w.es.empty()) w.vtx = u.vtx;
                int col = windex[n].at(w);
                Fp c = Fp::from_rat(scalar_to_rat(tc));
                auto [it, fresh] = row.emplace(col, c);
                if (!fresh) {
                  it->second = it->second + c;
                  if (it->second.is_zero()) row.erase(it);
                }
              }
              ech[n].insert(std::move(row));
            }
          }
        }
      }
    }
    for (int n = 0; n <= N; ++n) ech[n].finalize();
  }

  // recompute a rank exactly over the rationals (certification pass)
  int exact_rank(int n) const {
    SparseEchelon<QCoef> ex;
    for (int x = 0; x < q->nedges(); ++x) {
      const NCPoly& r = relations[x];
      if (r.is_zero()) continue;
      int dr = m - q->edges[x].deg;
      if (dr > n) continue;
      int rs = q->edges[x].tgt, rt = q->edges[x].src;
      for (int a = 0; a + dr <= n; ++a) {
        int b = n - dr - a;
        for (auto& u : words[a]) {
          if (path_target(*q, u) != rs) continue;
          for (auto& v : words[b]) {
            if (path_source(*q, v) != rt) continue;
            SparseEchelon<QCoef>::Row row;
            for (auto& [tp, tc] : r.terms) {
              Path w = u;
              w.es.insert(w.es.end(), tp.es.begin(), tp.es.end());
              w.es.insert(w.es.end(), v.es.begin(), v.es.end());
              if (w.es.empty()) w.vtx = u.vtx;
              int col = windex[n].at(w);
              QCoef c(scalar_to_rat(tc));
              auto [it, fresh] = row.emplace(col, c);
              if (!fresh) {
                it->second = QCoef(Rat(it->second.v + c.v));
                if (it->second.is_zero()) row.erase(it);
              }
            }
            ex.insert(std::move(row));
          }
        }
      }
    }
    return ex.rank();
  }

  // number of quotient basis words in degree n, split by (src, tgt)
  bool is_basis_word(int n, int col) const {
    return ech[n].pivots.find(col) == ech[n].pivots.end();
  }

  // reduce an arbitrary word of degree n to quotient-basis coordinates
  std::map<int, Fp> reduce_word(int n, const Path& w) const {
    int col = windex[n].at(w);
    auto row = ech[n].solve(col);
    return row;
  }
};

// dim(1_i A 1_j)_n as a matrix series; when `exact`, ranks are certified by an
// independent rational elimination
inline MatrixSeries graded_dims(const GradedQuotient& G, int order,
                                bool exact = false) {
  if (order > G.N) throw std::invalid_argument("graded_dims: order exceeds truncation");
  const Quiver& q = *G.q;
  MatrixSeries h(q.nverts(), order);
  for (int n = 0; n <= order; ++n) {
    if (exact) {
      int re = G.exact_rank(n);
      if (re != G.ech[n].rank())
        throw std::runtime_error("graded_dims: modular rank differs from exact rank");
    }
    for (int col = 0; col < (int)G.words[n].size(); ++col) {
      if (!G.is_basis_word(n, col)) continue;
      const Path& w = G.words[n][col];
      h.at(path_source(q, w), path_target(q, w)).c[n] += 1;
    }
  }
  return h;
}

struct CheckReport {
  bool pass = true;
  std::string detail;
};

// the necessary graded Calabi-Yau Hilbert identity: oracle dims = p^{-1}
inline CheckReport cy_hilbert_check(const GradedQuotient& G, int order,
                                    bool exact = false) {
  CheckReport rep;
  MatrixSeries oracle = graded_dims(G, order, exact);
  MatrixSeries pred = hilbert_from_cartan(cartan_polynomial(*G.q, G.m, order));
  for (int n = 0; n <= order && rep.pass; ++n)
    for (int i = 0; i < oracle.I && rep.pass; ++i)
      for (int j = 0; j < oracle.I; ++j)
        if (oracle.at(i, j).c[n] != pred.at(i, j).c[n]) {
          rep.pass = false;
          std::ostringstream os;
          os << "degree " << n << " block (" << i << "," << j << "): dim "
             << oracle.at(i, j).c[n].get_str() << " but Cartan inverse predicts "
             << pred.at(i, j).c[n].get_str();
          rep.detail = os.str();
          break;
        }
  if (rep.pass) rep.detail = "Hilbert identity holds to order " + std::to_string(order);
  return rep;
}

// zeta-type Euler characteristic: prod_{s=1..S} 1/det p(V,Phi;t^s)
inline RatSeries zeta_characteristic(const Quiver& q, int m, int order, int S) {
  MatrixSeries p = cartan_polynomial(q, m, order);
  RatSeries out = RatSeries::one(order);
  for (int s = 1; s <= S; ++s) {
    if (s > order) break;  // t^s-dilated factors are 1 mod t^{order+1}
    MatrixSeries ps(p.I, order);
    for (int k = 0; k < p.I * p.I; ++k) ps.e[k] = p.e[k].dilate(s);
    out = out * ps.det_unital().inverse();
  }
  return out;
}

// ----------------- extended cotangent complex, degreewise -----------------
//
// 0 -> (A (x) A)^R -> Der_R(F|A) -> Omega^1_R(F|A) -> A (x)_R A -> A -> 0
//
// with the adjoint map, the Hessian contraction, the de Rham pairing and
// multiplication.  All legs are reduced to quotient-basis words; maps are
// materialized per total degree and ranks computed over F_p.

struct CotangentReport {
  bool complex_ok = true;   // consecutive compositions vanish
  bool exact_ok = true;     // homology vanishes in every checked degree
  bool euler_ok = true;     // p(V,Phi;t) * h(A;t) = 1
  std::string detail;
};

namespace detail {

// sparse vector arithmetic over Fp
using Vec = std::map<int, Fp>;

inline void axpy(Vec& out, const Fp& c, const Vec& v) {
  if (c.is_zero()) return;
  for (auto& [k, x] : v) {
    auto [it, fresh] = out.emplace(k, c * x);
    if (!fresh) {
      it->second = it->second + c * x;
      if (it->second.is_zero()) out.erase(it);
    }
  }
}

}  // namespace detail

inline CotangentReport cotangent_complex_check(const GradedQuotient& G, int order) {
  using detail::Vec;
  CotangentReport rep;
  const Quiver& q = *G.q;
  if (order < G.m)
    rep.detail = "warning: truncation below potential degree; ";

  // quotient basis per degree: global index and per-degree word lists
  // basis[n] = list of word columns that survive in A_n
  std::vector<std::vector<int>> basis(order + 1);
  for (int n = 0; n <= order; ++n)
    for (int col = 0; col < (int)G.words[n].size(); ++col)
      if (G.is_basis_word(n, col)) basis[n].push_back(col);
  // position of a surviving column within basis[n]
  std::vector<std::map<int, int>> bpos(order + 1);
  for (int n = 0; n <= order; ++n)
    for (int i = 0; i < (int)basis[n].size(); ++i) bpos[n][basis[n][i]] = i;

  // reduce the concatenation u . w . v (possibly empty pieces) of total degree n
  auto reduce_path = [&](int n, const Path& w) -> Vec {
    Vec out;
    auto row = G.reduce_word(n, w);
    for (auto& [col, c] : row) out.emplace(bpos[n].at(col), c);
    return out;
  };
  auto concat3 = [&](const Path& a, const Path& b, const Path& c) {
    Path w = a;
    w.es.insert(w.es.end(), b.es.begin(), b.es.end());
    w.es.insert(w.es.end(), c.es.begin(), c.es.end());
    if (a.es.empty()) w.vtx = a.vtx;
    return w;
  };

  // second derivatives d/dx_i (dPhi/dx_j) as lists of splittings
  // terms: (u, v, coeff) with u: tgt(x_i) -> src(x_j), v: tgt(x_j) -> src(x_i)
  struct Split { Path u, v; Rat c; };
  std::vector<std::vector<std::vector<Split>>> hess(
      q.nedges(), std::vector<std::vector<Split>>(q.nedges()));
  for (int i = 0; i < q.nedges(); ++i) {
    const NCPoly& r = G.relations[i];
    for (auto& [p, c] : r.terms) {
      for (size_t s = 0; s < p.es.size(); ++s) {
        int y = p.es[s];
        Split sp;
        sp.u.vtx = path_source(q, p);
        sp.u.es.assign(p.es.begin(), p.es.begin() + s);
        sp.v.vtx = q.edges[y].tgt;
        sp.v.es.assign(p.es.begin() + s + 1, p.es.end());
        sp.c = scalar_to_rat(c);
        hess[i][y].push_back(sp);
      }
    }
  }

  // per total degree: enumerate the five spaces and the four maps
  for (int n = 0; n <= order; ++n) {
    // C3 = (A (x) A)^R: pairs (P, Q) with matching OUTER vertices
    // (src P = tgt Q), deg P + deg Q = n - m; this is what makes the inner
    // derivation ad(P (x) Q) kill the vertex idempotents
    struct Pair { int da, ia, ib; };  // degree of P, index of P, index of Q
    std::vector<Pair> C3, C0;
    if (n >= G.m)
      for (int a = 0; a + G.m <= n; ++a) {
        int b = n - G.m - a;
        for (int ia = 0; ia < (int)basis[a].size(); ++ia)
          for (int ib = 0; ib < (int)basis[b].size(); ++ib) {
            const Path& P = G.words[a][basis[a][ia]];
            const Path& Q = G.words[b][basis[b][ib]];
            if (path_source(q, P) == path_target(q, Q)) C3.push_back({a, ia, ib});
          }
      }
    for (int a = 0; a <= n; ++a) {
      int b = n - a;
      for (int ia = 0; ia < (int)basis[a].size(); ++ia)
        for (int ib = 0; ib < (int)basis[b].size(); ++ib) {
          const Path& P = G.words[a][basis[a][ia]];
          const Path& Q = G.words[b][basis[b][ib]];
          if (path_target(q, P) == path_source(q, Q)) C0.push_back({a, ia, ib});
        }
    }
    // C2: (P, x, Q), src P = src x, tgt Q = tgt x, deg P + deg Q = n - (m - deg x)
    // C1: (P, x, Q), tgt P = src x, src Q = tgt x, deg P + deg x + deg Q = n
    struct Trip { int x, da, ia, ib; };
    std::vector<Trip> C2, C1;
    for (int x = 0; x < q.nedges(); ++x) {
      int shift = G.m - q.edges[x].deg;
      for (int a = 0; a + shift <= n; ++a) {
        int b = n - shift - a;
        for (int ia = 0; ia < (int)basis[a].size(); ++ia) {
          const Path& P = G.words[a][basis[a][ia]];
          if (path_source(q, P) != q.edges[x].src) continue;
          for (int ib = 0; ib < (int)basis[b].size(); ++ib) {
            const Path& Q = G.words[b][basis[b][ib]];
            if (path_target(q, Q) != q.edges[x].tgt) continue;
            C2.push_back({x, a, ia, ib});
          }
        }
      }
      for (int a = 0; a + q.edges[x].deg <= n; ++a) {
        int b = n - q.edges[x].deg - a;
        for (int ia = 0; ia < (int)basis[a].size(); ++ia) {
          const Path& P = G.words[a][basis[a][ia]];
          if (path_target(q, P) != q.edges[x].src) continue;
          for (int ib = 0; ib < (int)basis[b].size(); ++ib) {
            const Path& Q = G.words[b][basis[b][ib]];
            if (path_source(q, Q) != q.edges[x].tgt) continue;
            C1.push_back({x, a, ia, ib});
          }
        }
      }
    }
    int dA = (int)basis[n].size();

    // index maps for codomains
    auto tkey = [](int x, int a, int ia, int ib) {
      return std::array<int, 4>{x, a, ia, ib};
    };
    std::map<std::array<int, 4>, int> i2, i1;
    for (int k = 0; k < (int)C2.size(); ++k)
      i2[tkey(C2[k].x, C2[k].da, C2[k].ia, C2[k].ib)] = k;
    for (int k = 0; k < (int)C1.size(); ++k)
      i1[tkey(C1[k].x, C1[k].da, C1[k].ia, C1[k].ib)] = k;
    std::map<std::array<int, 3>, int> i0;
    for (int k = 0; k < (int)C0.size(); ++k)
      i0[{C0[k].da, C0[k].ia, C0[k].ib}] = k;

    // emit a C2 / C1 vector from (vec over A_a) x edge x (vec over A_b)
    auto emit = [&](std::map<std::array<int, 4>, int>& idx, int x, int a,
                    const Vec& va, int b, const Vec& vb, const Fp& c, Vec& out) {
      for (auto& [ia, ca] : va)
        for (auto& [ib, cb] : vb) {
          auto it = idx.find(std::array<int, 4>{x, a, ia, ib});
          if (it == idx.end()) continue;  // typing filtered the component out
          Fp v = c * ca * cb;
          auto [jt, fresh] = out.emplace(it->second, v);
          if (!fresh) {
            jt->second = jt->second + v;
            if (jt->second.is_zero()) out.erase(jt);
          }
        }
    };

    // map j: C3 -> C2, (P,Q) |-> sum_y [ (yP, y, Q) - (P, y, Qy) ]
    std::vector<Vec> Mj(C3.size());
    for (int k = 0; k < (int)C3.size(); ++k) {
      auto [a, ia, ib] = std::tuple{C3[k].da, C3[k].ia, C3[k].ib};
      int b = n - G.m - a;
      const Path& P = G.words[a][basis[a][ia]];
      const Path& Q = G.words[b][basis[b][ib]];
      for (int y = 0; y < q.nedges(); ++y) {
        int dy = q.edges[y].deg;
        // term y.P: needs tgt y = src P and tgt Q = tgt y for C2 typing
        if (q.edges[y].tgt == path_source(q, P) &&
            path_target(q, Q) == q.edges[y].tgt) {
          Path yP{q.edges[y].src, {y}};
          yP.es.insert(yP.es.end(), P.es.begin(), P.es.end());
          Vec va = reduce_path(a + dy, yP);
          Vec vb{{ib, Fp(1)}};
          emit(i2, y, a + dy, va, b, vb, Fp(1), Mj[k]);
        }
        // term Q.y: needs tgt Q = src y and src P = src y for C2 typing
        if (path_target(q, Q) == q.edges[y].src &&
            path_source(q, P) == q.edges[y].src) {
          Path Qy = Q;
          Qy.es.push_back(y);
          if (Q.es.empty()) Qy.vtx = Q.vtx;
          Vec vb = reduce_path(b + dy, Qy);
          Vec va{{ia, Fp(1)}};
          emit(i2, y, a, va, b + dy, vb, -Fp(1), Mj[k]);
        }
      }
    }

    // map H: C2 -> C1, (P,x,Q) |-> sum_y sum_{(u,v) in d2Phi/dx dy} (Qu, y, vP)
    std::vector<Vec> Mh(C2.size());
    for (int k = 0; k < (int)C2.size(); ++k) {
      auto [x, a, ia, ib] = std::tuple{C2[k].x, C2[k].da, C2[k].ia, C2[k].ib};
      int b = n - (G.m - q.edges[x].deg) - a;
      const Path& P = G.words[a][basis[a][ia]];
      const Path& Q = G.words[b][basis[b][ib]];
      for (int y = 0; y < q.nedges(); ++y) {
        for (auto& sp : hess[x][y]) {
          // Q.u : tgt Q = tgt x = src u;  v.P : tgt v = src x = src P
          Path Qu = concat3(Q, sp.u, Path{0, {}});
          Path vP = concat3(sp.v, P, Path{0, {}});
          int du = b + path_degree(q, sp.u);
          int dv = path_degree(q, sp.v) + a;
          Vec va = reduce_path(du, Qu);
          Vec vb = reduce_path(dv, vP);
          emit(i1, y, du, va, dv, vb, Fp::from_rat(sp.c), Mh[k]);
        }
      }
    }

    // map jv: C1 -> C0, (P,y,Q) |-> (P, yQ) - (Py, Q)
    std::vector<Vec> Mv(C1.size());
    for (int k = 0; k < (int)C1.size(); ++k) {
      auto [y, a, ia, ib] = std::tuple{C1[k].x, C1[k].da, C1[k].ia, C1[k].ib};
      int dy = q.edges[y].deg;
      int b = n - dy - a;
      const Path& P = G.words[a][basis[a][ia]];
      const Path& Q = G.words[b][basis[b][ib]];
      {
        Path yQ{q.edges[y].src, {y}};
        yQ.es.insert(yQ.es.end(), Q.es.begin(), Q.es.end());
        Vec vb = reduce_path(b + dy, yQ);
        for (auto& [jb, cb] : vb) {
          auto it = i0.find({a, ia, jb});
          if (it == i0.end()) continue;
          auto [jt, fresh] = Mv[k].emplace(it->second, cb);
          if (!fresh) {
            jt->second = jt->second + cb;
            if (jt->second.is_zero()) Mv[k].erase(jt);
          }
        }
      }
      {
        Path Py = P;
        Py.es.push_back(y);
        if (P.es.empty()) Py.vtx = P.vtx;
        Vec va = reduce_path(a + dy, Py);
        for (auto& [ja, ca] : va) {
          auto it = i0.find({a + dy, ja, ib});
          if (it == i0.end()) continue;
          Fp v = -ca;
          auto [jt, fresh] = Mv[k].emplace(it->second, v);
          if (!fresh) {
            jt->second = jt->second + v;
            if (jt->second.is_zero()) Mv[k].erase(jt);
          }
        }
      }
    }

    // map mult: C0 -> A_n
    std::vector<Vec> Mm(C0.size());
    for (int k = 0; k < (int)C0.size(); ++k) {
      auto [a, ia, ib] = std::tuple{C0[k].da, C0[k].ia, C0[k].ib};
      int b = n - a;
      const Path& P = G.words[a][basis[a][ia]];
      const Path& Q = G.words[b][basis[b][ib]];
      Mm[k] = reduce_path(n, concat3(P, Q, Path{0, {}}));
    }

    // compositions must vanish
    auto compose_zero = [&](const std::vector<Vec>& first,
                            const std::vector<Vec>& second) {
      for (auto& row : first) {
        Vec acc;
        for (auto& [k, c] : row) detail::axpy(acc, c, second[k]);
        if (!acc.empty()) return false;
      }
      return true;
    };
    if (rep.complex_ok) {
      if (!compose_zero(Mj, Mh) || !compose_zero(Mh, Mv) ||
          !compose_zero(Mv, Mm)) {
        rep.complex_ok = false;
        rep.detail += "composition fails at degree " + std::to_string(n) + "; ";
      }
    }

    // ranks and exactness
    auto rank_of = [&](const std::vector<Vec>& rows) {
      SparseEchelon<Fp> e;
      for (auto& r : rows) e.insert(r);
      return e.rank();
    };
    int rj = rank_of(Mj), rh = rank_of(Mh), rv = rank_of(Mv), rm = rank_of(Mm);
    bool ex = (rj == (int)C3.size()) &&                // j injective
              (rj + rh == (int)C2.size()) &&          // exact at Der
              (rh + rv == (int)C1.size()) &&          // exact at Omega^1
              (rv + rm == (int)C0.size()) &&          // exact at A (x) A
              (rm == dA);                             // mult surjective
    if (!ex && rep.exact_ok) {
      rep.exact_ok = false;
      rep.detail += "homology nonzero at degree " + std::to_string(n) + "; ";
    }
  }

  // Euler characteristic: p(V,Phi;t) * h(A;t) = 1 as matrix series
  MatrixSeries h = graded_dims(G, order);
  MatrixSeries p = cartan_polynomial(q, G.m, order);
  if (!(p * h == MatrixSeries::identity(q.nverts(), order))) {
    rep.euler_ok = false;
    rep.detail += "Euler characteristic identity p*h = 1 fails; ";
  }
  if (rep.detail.empty()) rep.detail = "complex, exactness and Euler checks pass";
  return rep;
}

}  // namespace ncpot
