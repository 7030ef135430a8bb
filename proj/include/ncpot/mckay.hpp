#pragma once

#include <array>
#include <cmath>
#include <set>

#include "ncpot/graded.hpp"
#include "ncpot/repscheme.hpp"

namespace ncpot {

// ---------------------------------------------------------------------------
// Group input.  Either an abelian diagonal presentation (generators are
// exponent triples (k1,k2,k3) for diag(w^k1, w^k2, w^k3), w a primitive n-th
// root of unity, with k1+k2+k3 = 0 mod n so the matrix lands in SL3), or an
// explicit element list with a user-supplied irreducible-representation table.
// ---------------------------------------------------------------------------

struct ExplicitIrrep {
  std::string label;
  int dim = 1;
  std::vector<Mat> mats;  // one per group element, same order as elements
};

struct GroupData {
  bool abelian = true;
  // abelian presentation
  int order = 1;  // n: the root-of-unity order
  std::vector<std::array<int, 3>> generators;
  // explicit presentation
  std::vector<Mat> elements;  // 3x3 complex
  std::vector<ExplicitIrrep> irreps;

  static GroupData abelian_group(int n, std::vector<std::array<int, 3>> gens) {
    GroupData g;
    g.abelian = true;
    g.order = n;
    g.generators = std::move(gens);
    return g;
  }
  static GroupData trivial() { return abelian_group(1, {}); }
};

// Continued-fraction rational reconstruction of a float known to be rational.
// The default tolerance is far below the typical best approximation error of
// a generic real by fractions with denominator <= maxden, so irrational
// inputs are rejected rather than silently fitted.
inline Rat rat_from_double(double x, double tol = 1e-10, long maxden = 5000) {
  if (std::abs(x - std::llround(x)) <= tol) return Rat((long)std::llround(x));
  long p0 = 0, q0 = 1, p1 = 1, q1 = 0;
  double v = x;
  for (int it = 0; it < 64; ++it) {
    double fl = std::floor(v);
    long a = (long)fl;
    long p2 = a * p1 + p0, q2 = a * q1 + q0;
    if (q2 > maxden || q2 < 0) break;
    p0 = p1; q0 = q1; p1 = p2; q1 = q2;
    if (q1 > 0 && std::abs((double)p1 / (double)q1 - x) <= tol) return rat(p1, q1);
    double frac = v - fl;
    if (frac < 1e-14) break;
    v = 1.0 / frac;
  }
  throw std::runtime_error("cannot reconstruct a rational value from " +
                           std::to_string(x));
}

// ---------------------------------------------------------------------------
// McKay quiver: vertices = irreducible representations (trivial one first,
// label "o"), #edges i->j = multiplicity of L_j inside V (x) L_i, each edge
// carrying a chosen intertwiner L_j -> V (x) L_i stored as a (3*dim_i) x dim_j
// matrix (V-slot is the outer row index).
// ---------------------------------------------------------------------------

struct McKayQuiver {
  Quiver quiver;
  int trivial = 0;  // vertex of the trivial representation
  std::vector<int> vdim;          // irrep dimension per vertex
  std::vector<Mat> intertwiners;  // per edge
  // group data retained for Molien series
  bool abelian = true;
  int n = 1;                                 // abelian: root-of-unity order
  std::vector<std::array<int, 3>> elems;     // abelian: subgroup of (Z/n)^3
  std::vector<std::array<int, 3>> chars;     // abelian: exponent triple per vertex
  long group_order = 1;
  std::vector<std::vector<Cplx>> char_table;  // per vertex, per element
  std::vector<Cplx> vchar;                    // character of V per element
};

// ---- abelian branch -------------------------------------------------------

namespace detail {

inline std::vector<int> abelian_char_values(
    int n, const std::array<int, 3>& m,
    const std::vector<std::array<int, 3>>& elems) {
  std::vector<int> out;
  out.reserve(elems.size());
  for (auto& g : elems)
    out.push_back((m[0] * g[0] + m[1] * g[1] + m[2] * g[2]) % n);
  return out;
}

}  // namespace detail

inline McKayQuiver build_quiver_abelian(const GroupData& G) {
  int n = G.order;
  if (n <= 0) throw std::runtime_error("abelian group: order must be positive");
  for (auto& g : G.generators) {
    if ((((g[0] + g[1] + g[2]) % n) + n) % n != 0)
      throw std::runtime_error(
          "abelian generator weights must sum to 0 mod n (SL3 condition)");
  }
  // subgroup of (Z/n)^3 generated by the weight triples
  std::set<std::array<int, 3>> seen;
  std::vector<std::array<int, 3>> elems = {{0, 0, 0}};
  seen.insert({0, 0, 0});
  for (size_t head = 0; head < elems.size(); ++head) {
    for (auto& g : G.generators) {
      std::array<int, 3> h = {(elems[head][0] + g[0] % n + n) % n,
                              (elems[head][1] + g[1] % n + n) % n,
                              (elems[head][2] + g[2] % n + n) % n};
      if (seen.insert(h).second) elems.push_back(h);
    }
  }
  // characters: exponent triples mod n, identified by their values on the
  // subgroup; first occurrence in lex order is the canonical representative
  std::map<std::vector<int>, int> cls;
  std::vector<std::array<int, 3>> chars;
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c) {
        std::array<int, 3> m = {a, b, c};
        auto vals = detail::abelian_char_values(n, m, elems);
        if (cls.emplace(std::move(vals), (int)chars.size()).second)
          chars.push_back(m);
      }
  if (chars.size() != elems.size())
    throw std::runtime_error("abelian character count mismatch");
  auto class_of = [&](const std::array<int, 3>& m) {
    return cls.at(detail::abelian_char_values(n, m, elems));
  };

  McKayQuiver out;
  out.abelian = true;
  out.n = n;
  out.elems = elems;
  out.chars = chars;
  out.group_order = (long)elems.size();
  out.trivial = 0;  // (0,0,0) is lex-first and represents the trivial character
  std::vector<std::string> vnames;
  for (size_t i = 0; i < chars.size(); ++i) {
    if ((int)i == out.trivial) vnames.push_back("o");
    else
      vnames.push_back("v" + std::to_string(chars[i][0]) + "_" +
                       std::to_string(chars[i][1]) + "_" +
                       std::to_string(chars[i][2]));
  }
  std::vector<Edge> edges;
  std::vector<Mat> inter;
  // edge i -> j for each coordinate c with chi_j = rho_c * chi_i
  for (size_t i = 0; i < chars.size(); ++i)
    for (int c = 0; c < 3; ++c) {
      std::array<int, 3> m = chars[i];
      m[c] = (m[c] + 1) % n;
      int j = class_of(m);
      edges.push_back({"x" + std::to_string(c + 1) + "_" + vnames[i], (int)i,
                       j, 1});
      Mat phi = Mat::Zero(3, 1);  // L_j -> V (x) L_i, dims 1
      phi(c, 0) = 1.0;
      inter.push_back(phi);
    }
  out.quiver = Quiver(vnames, edges);
  out.intertwiners = std::move(inter);
  out.vdim.assign(chars.size(), 1);
  // character tables (used by the float Molien cross-oracle)
  out.char_table.resize(chars.size());
  out.vchar.resize(elems.size());
  for (size_t gi = 0; gi < elems.size(); ++gi) {
    auto& g = elems[gi];
    Cplx v = 0.0;
    for (int c = 0; c < 3; ++c)
      v += std::polar(1.0, 2.0 * M_PI * g[c] / n);
    out.vchar[gi] = v;
  }
  for (size_t i = 0; i < chars.size(); ++i) {
    out.char_table[i].resize(elems.size());
    for (size_t gi = 0; gi < elems.size(); ++gi) {
      auto& g = elems[gi];
      int e = (chars[i][0] * g[0] + chars[i][1] * g[1] + chars[i][2] * g[2]) % n;
      out.char_table[i][gi] = std::polar(1.0, 2.0 * M_PI * e / n);
    }
  }
  return out;
}

// ---- explicit branch ------------------------------------------------------

inline McKayQuiver build_quiver_explicit(const GroupData& G, double tol = 1e-9) {
  const auto& els = G.elements;
  long N = (long)els.size();
  if (N == 0) throw std::runtime_error("explicit group: empty element list");
  // determinant-1 condition and multiplication table / closure
  for (auto& g : els) {
    if (g.rows() != 3 || g.cols() != 3)
      throw std::runtime_error("explicit group: elements must be 3x3");
    if (std::abs(g.determinant() - Cplx(1.0, 0.0)) > tol)
      throw std::runtime_error("explicit group: determinant != 1");
  }
  auto find_elem = [&](const Mat& m) {
    for (long k = 0; k < N; ++k)
      if ((els[k] - m).norm() <= 1e-6) return k;
    throw std::runtime_error("explicit group: not closed under multiplication");
  };
  std::vector<std::vector<long>> mult(N, std::vector<long>(N));
  for (long a = 0; a < N; ++a)
    for (long b = 0; b < N; ++b) mult[a][b] = find_elem(els[a] * els[b]);
  long id = find_elem(Mat::Identity(3, 3));
  std::vector<long> inv(N);
  for (long a = 0; a < N; ++a) {
    inv[a] = -1;
    for (long b = 0; b < N; ++b)
      if (mult[a][b] == id) { inv[a] = b; break; }
    if (inv[a] < 0) throw std::runtime_error("explicit group: missing inverse");
  }

  // validate the supplied irreps: homomorphism + character orthogonality
  long dimsum = 0;
  for (auto& R : G.irreps) {
    if ((long)R.mats.size() != N)
      throw std::runtime_error("irrep " + R.label + ": one matrix per element");
    for (auto& m : R.mats)
      if (m.rows() != R.dim || m.cols() != R.dim)
        throw std::runtime_error("irrep " + R.label + ": wrong matrix size");
    if ((R.mats[id] - Mat::Identity(R.dim, R.dim)).norm() > 1e-6)
      throw std::runtime_error("irrep " + R.label + ": identity not mapped to Id");
    for (long a = 0; a < N; ++a)
      for (long b = 0; b < N; ++b)
        if ((R.mats[a] * R.mats[b] - R.mats[mult[a][b]]).norm() > 1e-6)
          throw std::runtime_error("irrep " + R.label + ": not a homomorphism");
    dimsum += (long)R.dim * R.dim;
  }
  if (dimsum != N)
    throw std::runtime_error("irrep dimensions do not satisfy sum d_i^2 = |G|");
  size_t ni = G.irreps.size();
  std::vector<std::vector<Cplx>> chars(ni, std::vector<Cplx>(N));
  for (size_t i = 0; i < ni; ++i)
    for (long g = 0; g < N; ++g) chars[i][g] = G.irreps[i].mats[g].trace();
  for (size_t i = 0; i < ni; ++i)
    for (size_t j = 0; j < ni; ++j) {
      Cplx ip = 0.0;
      for (long g = 0; g < N; ++g) ip += chars[i][g] * std::conj(chars[j][g]);
      ip /= (double)N;
      if (std::abs(ip - (i == j ? 1.0 : 0.0)) > 1e-6)
        throw std::runtime_error("irrep characters fail Schur orthogonality");
    }

  int trivial = -1;
  for (size_t i = 0; i < ni; ++i) {
    bool triv = G.irreps[i].dim == 1;
    for (long g = 0; triv && g < N; ++g)
      if (std::abs(chars[i][g] - Cplx(1.0, 0.0)) > 1e-6) triv = false;
    if (triv) { trivial = (int)i; break; }
  }
  if (trivial < 0) throw std::runtime_error("trivial representation not supplied");

  McKayQuiver out;
  out.abelian = false;
  out.group_order = N;
  out.trivial = trivial;
  out.char_table = chars;
  out.vchar.resize(N);
  for (long g = 0; g < N; ++g) out.vchar[g] = els[g].trace();
  std::vector<std::string> vnames;
  for (auto& R : G.irreps) vnames.push_back(R.label);
  vnames[trivial] = "o";
  for (auto& R : G.irreps) out.vdim.push_back(R.dim);

  std::vector<Edge> edges;
  std::vector<Mat> inter;
  for (size_t i = 0; i < ni; ++i)
    for (size_t j = 0; j < ni; ++j) {
      // a_ij = <chi_V chi_i, chi_j>
      Cplx ip = 0.0;
      for (long g = 0; g < N; ++g)
        ip += out.vchar[g] * chars[i][g] * std::conj(chars[j][g]);
      ip /= (double)N;
      double re = ip.real();
      long a = std::llround(re);
      if (std::abs(ip - Cplx((double)a, 0.0)) > 1e-4 || a < 0)
        throw std::runtime_error("edge multiplicity is not a nonnegative integer");
      if (a == 0) continue;
      // basis of the intertwiner space Hom_G(L_j, V (x) L_i): average the
      // elementary matrices with the projector
      //   P(M) = (1/|G|) sum_g (V(g) (x) R_i(g)) M R_j(g^{-1})
      int di = G.irreps[i].dim, dj = G.irreps[j].dim;
      int rows = 3 * di;
      std::vector<Mat> images;  // projector image of each elementary matrix
      for (int r = 0; r < rows; ++r)
        for (int s = 0; s < dj; ++s) {
          Mat E = Mat::Zero(rows, dj);
          E(r, s) = 1.0;
          Mat P = Mat::Zero(rows, dj);
          for (long g = 0; g < N; ++g) {
            const Mat& Ri = G.irreps[i].mats[g];
            const Mat& Vg = els[g];
            // (V(g) (x) R_i(g)) has block (p,q) equal to Vg(p,q)*R_i(g)
            Mat left = Mat::Zero(rows, rows);
            for (int p = 0; p < 3; ++p)
              for (int qq = 0; qq < 3; ++qq)
                left.block(p * di, qq * di, di, di) = Vg(p, qq) * Ri;
            P += left * E * G.irreps[j].mats[inv[g]];
          }
          P /= (double)N;
          images.push_back(std::move(P));
        }
      // Prefer an exact basis: when every projector image is rational (real
      // with recognizable entries), row-reduce over Q so the stored
      // intertwiners -- and hence the triangle coefficients -- stay exact.
      // Groups with genuinely irrational invariant data fall back to a float
      // SVD basis.
      std::vector<Mat> basis;
      bool exact_ok = true;
      std::vector<std::vector<Rat>> rowsQ;
      for (auto& P : images) {
        std::vector<Rat> row(rows * dj);
        for (int r = 0; exact_ok && r < rows; ++r)
          for (int s = 0; s < dj; ++s) {
            Cplx v = P(r, s);
            if (std::abs(v.imag()) > 1e-10) { exact_ok = false; break; }
            try { row[r * dj + s] = rat_from_double(v.real()); }
            catch (...) { exact_ok = false; break; }
          }
        if (!exact_ok) break;
        rowsQ.push_back(std::move(row));
      }
      if (exact_ok) {
        // dense row echelon over Q; the nonzero rows form the basis
        size_t lead = 0;
        for (size_t col2 = 0; col2 < (size_t)(rows * dj) && lead < rowsQ.size();
             ++col2) {
          size_t piv = lead;
          while (piv < rowsQ.size() && rowsQ[piv][col2] == 0) ++piv;
          if (piv == rowsQ.size()) continue;
          std::swap(rowsQ[lead], rowsQ[piv]);
          Rat d = rowsQ[lead][col2];
          for (auto& v : rowsQ[lead]) v /= d;
          for (size_t r2 = 0; r2 < rowsQ.size(); ++r2)
            if (r2 != lead && rowsQ[r2][col2] != 0) {
              Rat f = rowsQ[r2][col2];
              for (int c2 = 0; c2 < rows * dj; ++c2)
                rowsQ[r2][c2] -= f * rowsQ[lead][c2];
            }
          ++lead;
        }
        for (size_t r2 = 0; r2 < lead; ++r2) {
          Mat phi = Mat::Zero(rows, dj);
          for (int r = 0; r < rows; ++r)
            for (int s = 0; s < dj; ++s)
              phi(r, s) = rowsQ[r2][r * dj + s].get_d();
          basis.push_back(phi);
        }
      } else {
        Mat stacked(rows * dj, rows * dj);
        for (size_t c2 = 0; c2 < images.size(); ++c2)
          stacked.col(c2) =
              Eigen::Map<Mat>(images[c2].data(), rows * dj, 1);
        Eigen::JacobiSVD<Mat> svd(stacked, Eigen::ComputeThinU);
        for (int k = 0; k < svd.singularValues().size(); ++k) {
          if (svd.singularValues()(k) < 1e-8) break;
          Mat phi = Eigen::Map<const Mat>(svd.matrixU().col(k).data(), rows, dj);
          // deterministic gauge: largest-magnitude entry scaled to exactly 1
          int br = 0, bs = 0;
          double best = -1.0;
          for (int r = 0; r < rows; ++r)
            for (int s = 0; s < dj; ++s)
              if (std::abs(phi(r, s)) > best + 1e-12) {
                best = std::abs(phi(r, s));
                br = r; bs = s;
              }
          phi /= phi(br, bs);
          basis.push_back(phi);
        }
      }
      if ((long)basis.size() != a)
        throw std::runtime_error("intertwiner basis size disagrees with "
                                 "character multiplicity");
      for (size_t k = 0; k < basis.size(); ++k) {
        edges.push_back({"x_" + vnames[i] + "_" + vnames[j] + "_" +
                             std::to_string(k),
                         (int)i, (int)j, 1});
        inter.push_back(basis[k]);
      }
    }
  out.quiver = Quiver(vnames, edges);
  out.intertwiners = std::move(inter);
  return out;
}

inline McKayQuiver build_quiver(const GroupData& G) {
  return G.abelian ? build_quiver_abelian(G) : build_quiver_explicit(G);
}

// ---------------------------------------------------------------------------
// Triangle coefficients.  For a 3-cycle a:i->j, b:j->k, c:k->i the composite
//   L_i --phi_c--> V(x)L_k --Id(x)phi_b--> V2(x)L_j --Id(x)phi_a--> V3(x)L_i
// is contracted with the volume form (standard epsilon tensor, slots read in
// path order) to a scalar operator on L_i; lambda = its trace.
// ---------------------------------------------------------------------------

inline Mat triangle_composite(const McKayQuiver& Q, int ea, int eb, int ec) {
  const Quiver& q = Q.quiver;
  int i = q.edges[ea].src, j = q.edges[ea].tgt, k = q.edges[eb].tgt;
  if (q.edges[eb].src != j || q.edges[ec].src != k || q.edges[ec].tgt != i)
    throw std::runtime_error("triangle_composite: edges do not close");
  int di = Q.vdim[i], dj = Q.vdim[j], dk = Q.vdim[k];
  const Mat &A = Q.intertwiners[ea], &B = Q.intertwiners[eb],
            &C = Q.intertwiners[ec];
  // M2(p,q,r; row in L_i, col in L_i), slot p from C, q from B, r from A
  // epsilon contracted in reversed slot order so that the first edge of the
  // path feeds the first epsilon slot
  auto eps = [](int a, int b, int c) -> double {
    if (a == b || b == c || a == c) return 0.0;
    return ((b - a + 3) % 3 == 1) ? 1.0 : -1.0;
  };
  Mat S = Mat::Zero(di, di);
  for (int p = 0; p < 3; ++p) {
    // C block at slot p: dk x di
    Mat Cp = C.block(p * dk, 0, dk, di);
    for (int qq = 0; qq < 3; ++qq) {
      Mat Bq = B.block(qq * dj, 0, dj, dk);
      for (int r = 0; r < 3; ++r) {
        double e = eps(r, qq, p);
        if (e == 0.0) continue;
        Mat Ar = A.block(r * di, 0, di, dj);
        S += e * (Ar * Bq * Cp);
      }
    }
  }
  return S;
}

inline Cplx triangle_lambda(const McKayQuiver& Q, int ea, int eb, int ec,
                            double tol = 1e-8) {
  int i = Q.quiver.edges[ea].src;
  Mat S = triangle_composite(Q, ea, eb, ec);
  Cplx tr = S.trace();
  Mat off = S - (tr / (double)Q.vdim[i]) * Mat::Identity(S.rows(), S.cols());
  if (off.norm() > tol * (1.0 + std::abs(tr)))
    throw std::runtime_error("triangle composite is not scalar (bad intertwiners)");
  return tr;
}

// Potential supported on oriented triangles, one term per cyclic class.
inline CyclicPoly triangle_coefficients(const McKayQuiver& Q, double tol = 1e-8) {
  const Quiver& q = Q.quiver;
  CyclicPoly phi(q);
  int ne = q.nedges();
  for (int a = 0; a < ne; ++a)
    for (int b = 0; b < ne; ++b) {
      if (q.edges[a].tgt != q.edges[b].src) continue;
      for (int c = 0; c < ne; ++c) {
        if (q.edges[b].tgt != q.edges[c].src) continue;
        if (q.edges[c].tgt != q.edges[a].src) continue;
        Path p{q.edges[a].src, {a, b, c}};
        Path canon = canonical_rotation(q, p);
        if (canon.es != p.es) continue;  // one representative per class
        Cplx l0 = triangle_lambda(Q, a, b, c, tol);
        Cplx l1 = triangle_lambda(Q, b, c, a, tol);
        Cplx l2 = triangle_lambda(Q, c, a, b, tol);
        if (std::abs(l0 - l1) > tol * (1.0 + std::abs(l0)) ||
            std::abs(l0 - l2) > tol * (1.0 + std::abs(l0)))
          throw std::runtime_error("triangle coefficient depends on rotation");
        if (std::abs(l0) <= tol) continue;
        if (std::abs(l0.imag()) > tol * (1.0 + std::abs(l0)))
          throw std::runtime_error("non-real triangle coefficient");
        phi.add_canonical(canon, Scalar(rat_from_double(l0.real())));
      }
    }
  return phi;
}

// ---------------------------------------------------------------------------
// Molien series.  Exact monomial counting in the abelian case; the general
// complex character sum (rounded to integers) otherwise.
//   isotypic_i(t) = (1/|G|) sum_g  conj(chi_i(g)) / det(1 - t g|_V)
// counts the multiplicity of L_i in Sym^n V.
// ---------------------------------------------------------------------------

inline std::vector<long> molien_isotypic(const McKayQuiver& Q, int vertex,
                                         int N) {
  if (!Q.abelian)
    throw std::runtime_error(
        "molien_isotypic: explicit groups need the element list overload");
  // monomials x^a y^b z^c span Sym^n V; the monomial transforms by the
  // character with exponent triple (a,b,c); count matches per class
  std::vector<long> out(N + 1, 0);
  auto want = detail::abelian_char_values(Q.n, Q.chars[vertex], Q.elems);
  for (int n = 0; n <= N; ++n) {
    long cnt = 0;
    for (int a = 0; a <= n; ++a)
      for (int b = 0; a + b <= n; ++b) {
        int c = n - a - b;
        std::array<int, 3> m = {a % Q.n, b % Q.n, c % Q.n};
        if (detail::abelian_char_values(Q.n, m, Q.elems) == want) ++cnt;
      }
    out[n] = cnt;
  }
  return out;
}

// The explicit branch needs the group elements; this overload takes them.
inline std::vector<long> molien_isotypic(const McKayQuiver& Q,
                                         const std::vector<Mat>& gmats,
                                         int vertex, int N) {
  if (Q.abelian) return molien_isotypic(Q, vertex, N);
  long Ng = Q.group_order;
  std::vector<Cplx> acc(N + 1, Cplx(0.0, 0.0));
  for (long g = 0; g < Ng; ++g) {
    Eigen::ComplexEigenSolver<Mat> es(gmats[g], false);
    Cplx l1 = es.eigenvalues()(0), l2 = es.eigenvalues()(1),
         l3 = es.eigenvalues()(2);
    // 1/((1-t l1)(1-t l2)(1-t l3)) = sum_n h_n(l) t^n
    std::vector<Cplx> h(N + 1, Cplx(0.0, 0.0));
    // complete homogeneous symmetric polynomials via the recursion with
    // elementary symmetric functions
    Cplx e1 = l1 + l2 + l3, e2 = l1 * l2 + l1 * l3 + l2 * l3, e3 = l1 * l2 * l3;
    h[0] = 1.0;
    for (int n = 1; n <= N; ++n) {
      Cplx v = e1 * h[n - 1];
      if (n >= 2) v -= e2 * h[n - 2];
      if (n >= 3) v += e3 * h[n - 3];
      h[n] = v;
    }
    Cplx w = std::conj(Q.char_table[vertex][g]);
    for (int n = 0; n <= N; ++n) acc[n] += w * h[n];
  }
  std::vector<long> out(N + 1, 0);
  for (int n = 0; n <= N; ++n) {
    Cplx v = acc[n] / (double)Ng;
    long r = std::llround(v.real());
    if (std::abs(v - Cplx((double)r, 0.0)) > 1e-6)
      throw std::runtime_error("Molien coefficient is not an integer");
    out[n] = r;
  }
  return out;
}

inline std::vector<long> molien_series(const McKayQuiver& Q, int N) {
  return molien_isotypic(Q, Q.trivial, N);
}
inline std::vector<long> molien_series(const McKayQuiver& Q,
                                       const std::vector<Mat>& gmats, int N) {
  return molien_isotypic(Q, gmats, Q.trivial, N);
}

// ---------------------------------------------------------------------------
// Full cross-check: the quotient by the triangle potential must reproduce the
// invariant ring at the (o,o) corner, the isotypic components at (o,i), and
// pass the Calabi-Yau Hilbert identity.
// ---------------------------------------------------------------------------

inline CheckReport mckay_check(const McKayQuiver& Q, const CyclicPoly& phi,
                               int N, bool exact = false,
                               const std::vector<Mat>& gmats = {}) {
  CheckReport rep;
  rep.pass = true;
  GradedQuotient G(Q.quiver, phi, N);
  MatrixSeries h = graded_dims(G, N, exact);
  for (int i = 0; i < Q.quiver.nverts() && rep.pass; ++i) {
    std::vector<long> iso = Q.abelian ? molien_isotypic(Q, i, N)
                                      : molien_isotypic(Q, gmats, i, N);
    for (int n = 0; n <= N; ++n) {
      Rat dim = h.at(Q.trivial, i).c[n];
      if (dim != Rat(iso[n])) {
        rep.pass = false;
        rep.detail = "vertex " + Q.quiver.verts[i] + " degree " +
                     std::to_string(n) + ": quotient dimension " +
                     dim.get_str() + " but Molien series gives " +
                     std::to_string(iso[n]);
        break;
      }
    }
  }
  if (rep.pass) {
    CheckReport cy = cy_hilbert_check(G, N, exact);
    if (!cy.pass) {
      rep.pass = false;
      rep.detail = "CY Hilbert identity failed: " + cy.detail;
    }
  }
  if (rep.pass) rep.detail = "all Molien and CY Hilbert checks match";
  return rep;
}

}  // namespace ncpot
