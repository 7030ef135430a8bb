#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "ncpot/mckay.hpp"

using namespace ncpot;

static long binom2(long n) { return (n + 2) * (n + 1) / 2; }

// S3 inside SL3 via g -> sgn(g) * (permutation matrix); irreps supplied with
// the standard representation in the integral basis (1,-1,0), (0,1,-1)
static GroupData s3_group() {
  std::vector<std::array<int, 3>> perms = {{0, 1, 2}, {1, 0, 2}, {2, 1, 0},
                                           {0, 2, 1}, {1, 2, 0}, {2, 0, 1}};
  std::vector<int> sgn = {1, -1, -1, -1, 1, 1};
  std::vector<std::array<double, 4>> stdm = {{1, 0, 0, 1},  {-1, 1, 0, 1},
                                             {0, -1, -1, 0}, {1, 0, 1, -1},
                                             {0, -1, 1, -1}, {-1, 1, -1, 0}};
  GroupData G;
  G.abelian = false;
  for (size_t g = 0; g < perms.size(); ++g) {
    Mat m = Mat::Zero(3, 3);
    for (int c = 0; c < 3; ++c) m(perms[g][c], c) = (double)sgn[g];
    G.elements.push_back(m);
  }
  ExplicitIrrep triv{"triv", 1, {}}, sg{"sgn", 1, {}}, st{"std", 2, {}};
  for (size_t g = 0; g < perms.size(); ++g) {
    triv.mats.push_back(Mat::Constant(1, 1, 1.0));
    sg.mats.push_back(Mat::Constant(1, 1, (double)sgn[g]));
    Mat m(2, 2);
    m << stdm[g][0], stdm[g][1], stdm[g][2], stdm[g][3];
    st.mats.push_back(m);
  }
  G.irreps = {triv, sg, st};
  return G;
}

static void check_edge_count_invariant(const McKayQuiver& Q) {
  // sum_i dim(L_i) a_ij = 3 dim(L_j): decomposition of V (x) (regular rep)
  for (int j = 0; j < Q.quiver.nverts(); ++j) {
    int s = 0;
    for (auto& e : Q.quiver.edges)
      if (e.tgt == j) s += Q.vdim[e.src];
    CHECK(s == 3 * Q.vdim[j]);
  }
}

TEST_CASE("quiver construction for the curated groups") {
  McKayQuiver T = build_quiver(GroupData::trivial());
  CHECK(T.quiver.nverts() == 1);
  CHECK(T.quiver.nedges() == 3);
  CHECK(T.quiver.verts[T.trivial] == "o");
  check_edge_count_invariant(T);

  McKayQuiver Z3 = build_quiver(GroupData::abelian_group(3, {{1, 1, 1}}));
  CHECK(Z3.quiver.nverts() == 3);
  CHECK(Z3.quiver.nedges() == 9);
  check_edge_count_invariant(Z3);
  // all three edges out of a vertex point at the same next vertex
  for (int v = 0; v < 3; ++v) {
    int tgt = -1, cnt = 0;
    for (auto& e : Z3.quiver.edges)
      if (e.src == v) {
        if (tgt < 0) tgt = e.tgt;
        CHECK(e.tgt == tgt);
        ++cnt;
      }
    CHECK(cnt == 3);
    CHECK(tgt != v);
  }

  McKayQuiver Z7 = build_quiver(GroupData::abelian_group(7, {{1, 2, 4}}));
  CHECK(Z7.quiver.nverts() == 7);
  CHECK(Z7.quiver.nedges() == 21);
  check_edge_count_invariant(Z7);
  // the character with exponents m goes to the classes of m+e_c; on Z/7 with
  // weights (1,2,4) this shifts the label by 1, 2, and 4
  for (auto& e : Z7.quiver.edges) {
    auto ms = Z7.chars[e.src], mt = Z7.chars[e.tgt];
    int shift = ((mt[0] - ms[0]) + (mt[1] - ms[1]) * 2 + (mt[2] - ms[2]) * 4) % 7;
    CHECK(((shift % 7) + 7) % 7 != 0);
  }

  McKayQuiver Z33 =
      build_quiver(GroupData::abelian_group(3, {{1, 2, 0}, {0, 1, 2}}));
  CHECK(Z33.group_order == 9);
  CHECK(Z33.quiver.nverts() == 9);
  CHECK(Z33.quiver.nedges() == 27);
  check_edge_count_invariant(Z33);

  // the SL3 condition rejects weights that do not sum to 0 mod n
  CHECK_THROWS(build_quiver(GroupData::abelian_group(3, {{1, 1, 0}})));
}

TEST_CASE("triangle coefficients and rotation invariance") {
  // trivial group: the potential is xyz - xzy, relations are the commutators
  McKayQuiver T = build_quiver(GroupData::trivial());
  CyclicPoly phi = triangle_coefficients(T);
  CHECK(phi.terms.size() == 2);
  const Quiver& q = T.quiver;
  CyclicPoly expect =
      cyclic_word(q, {"x1_o", "x2_o", "x3_o"}) -
      cyclic_word(q, {"x1_o", "x3_o", "x2_o"});
  CHECK(phi == expect);
  NCPoly d = cyclic_derive(phi, "x3_o");
  NCPoly comm = NCPoly::gen(q, "x1_o") * NCPoly::gen(q, "x2_o") -
                NCPoly::gen(q, "x2_o") * NCPoly::gen(q, "x1_o");
  CHECK(d == comm);

  // abelian family: 2|G| cyclic terms, all coefficients +-1
  for (auto G : {GroupData::abelian_group(3, {{1, 1, 1}}),
                 GroupData::abelian_group(3, {{1, 2, 0}}),
                 GroupData::abelian_group(7, {{1, 2, 4}}),
                 GroupData::abelian_group(3, {{1, 2, 0}, {0, 1, 2}})}) {
    McKayQuiver Q = build_quiver(G);
    CyclicPoly p = triangle_coefficients(Q);
    CHECK((long)p.terms.size() == 2 * Q.group_order);
    for (auto& [path, c] : p.terms) {
      CHECK((c == Scalar(1) || c == Scalar(-1)));
      CHECK(path.es.size() == 3);
    }
  }

  // lambda is invariant under rotating the triangle
  McKayQuiver Z7 = build_quiver(GroupData::abelian_group(7, {{1, 2, 4}}));
  int checked = 0;
  int ne = Z7.quiver.nedges();
  for (int a = 0; a < ne; ++a)
    for (int b = 0; b < ne; ++b)
      for (int c = 0; c < ne; ++c) {
        auto& es = Z7.quiver.edges;
        if (es[a].tgt != es[b].src || es[b].tgt != es[c].src ||
            es[c].tgt != es[a].src)
          continue;
        Cplx l0 = triangle_lambda(Z7, a, b, c);
        Cplx l1 = triangle_lambda(Z7, b, c, a);
        Cplx l2 = triangle_lambda(Z7, c, a, b);
        CHECK(std::abs(l0 - l1) <= 1e-12);
        CHECK(std::abs(l0 - l2) <= 1e-12);
        ++checked;
      }
  CHECK(checked > 0);
}

TEST_CASE("Molien series oracles") {
  McKayQuiver T = build_quiver(GroupData::trivial());
  auto mt = molien_series(T, 6);
  for (int n = 0; n <= 6; ++n) CHECK(mt[n] == binom2(n));

  McKayQuiver Z3 = build_quiver(GroupData::abelian_group(3, {{1, 1, 1}}));
  std::vector<long> want = {1, 0, 0, 10, 0, 0, 28, 0, 0, 55};
  CHECK(molien_series(Z3, 9) == want);

  McKayQuiver Z320 = build_quiver(GroupData::abelian_group(3, {{1, 2, 0}}));
  std::vector<long> want2 = {1, 1, 2, 4, 5, 7, 10, 12, 15, 19};
  CHECK(molien_series(Z320, 9) == want2);

  // the isotypic components partition Sym^n V
  for (auto* Qp : {&Z3, &Z320}) {
    for (int n = 0; n <= 8; ++n) {
      long total = 0;
      for (int i = 0; i < Qp->quiver.nverts(); ++i)
        total += molien_isotypic(*Qp, i, 8)[n];
      CHECK(total == binom2(n));
    }
  }
}

TEST_CASE("mckay_check passes on the curated abelian family") {
  {
    McKayQuiver T = build_quiver(GroupData::trivial());
    auto rep = mckay_check(T, triangle_coefficients(T), 6, true);
    CHECK(rep.pass);
  }
  {
    McKayQuiver Q = build_quiver(GroupData::abelian_group(3, {{1, 1, 1}}));
    auto rep = mckay_check(Q, triangle_coefficients(Q), 8, true);
    CHECK(rep.pass);
  }
  {
    McKayQuiver Q = build_quiver(GroupData::abelian_group(3, {{1, 2, 0}}));
    auto rep = mckay_check(Q, triangle_coefficients(Q), 8, true);
    CHECK(rep.pass);
  }
  {
    McKayQuiver Q = build_quiver(GroupData::abelian_group(7, {{1, 2, 4}}));
    auto rep = mckay_check(Q, triangle_coefficients(Q), 6, false);
    CHECK(rep.pass);
  }
  {
    McKayQuiver Q =
        build_quiver(GroupData::abelian_group(3, {{1, 2, 0}, {0, 1, 2}}));
    auto rep = mckay_check(Q, triangle_coefficients(Q), 6, false);
    CHECK(rep.pass);
  }
}

TEST_CASE("corrupted coefficient is detected") {
  McKayQuiver Q = build_quiver(GroupData::abelian_group(3, {{1, 1, 1}}));
  CyclicPoly phi = triangle_coefficients(Q);
  // drop one triangle: the relations lose a monomial and the quotient grows
  CyclicPoly bad = phi;
  bad.terms.erase(bad.terms.begin());
  auto rep = mckay_check(Q, bad, 6, false);
  CHECK_FALSE(rep.pass);
  CHECK(rep.detail.find("degree") != std::string::npos);
}

TEST_CASE("explicit presentation of Z/3 agrees with the abelian branch") {
  const Cplx w = std::polar(1.0, 2.0 * M_PI / 3.0);
  GroupData G;
  G.abelian = false;
  for (int k = 0; k < 3; ++k)
    G.elements.push_back(std::pow(w, k) * Mat::Identity(3, 3));
  for (int i = 0; i < 3; ++i) {
    ExplicitIrrep R{"c" + std::to_string(i), 1, {}};
    for (int k = 0; k < 3; ++k)
      R.mats.push_back(Mat::Constant(1, 1, std::pow(w, (i * k) % 3)));
    G.irreps.push_back(R);
  }
  McKayQuiver Q = build_quiver(G);
  CHECK(Q.quiver.nverts() == 3);
  CHECK(Q.quiver.nedges() == 9);
  check_edge_count_invariant(Q);
  CyclicPoly phi = triangle_coefficients(Q);
  CHECK(phi.terms.size() == 6);
  for (auto& [p, c] : phi.terms) CHECK((c == Scalar(1) || c == Scalar(-1)));
  auto rep = mckay_check(Q, phi, 6, false, G.elements);
  CHECK(rep.pass);
}

TEST_CASE("explicit nonabelian group: S3 as signed permutations") {
  GroupData G = s3_group();
  McKayQuiver Q = build_quiver(G);
  CHECK(Q.quiver.nverts() == 3);
  CHECK(Q.quiver.nedges() == 8);  // 2 loops at the 2-dimensional vertex
  CHECK(Q.quiver.verts[Q.trivial] == "o");
  check_edge_count_invariant(Q);

  CyclicPoly phi = triangle_coefficients(Q);
  CHECK(!phi.is_zero());
  for (auto& [p, c] : phi.terms) CHECK(c.is_rat());  // exact integral basis

  auto mol = molien_series(Q, G.elements, 8);
  std::vector<long> want = {1, 0, 2, 1, 4, 2, 7, 4, 10};
  CHECK(mol == want);

  auto rep = mckay_check(Q, phi, 6, true, G.elements);
  CHECK(rep.pass);
}

TEST_CASE("explicit-group validation rejects bad input") {
  GroupData G = s3_group();
  // non-SL element
  GroupData bad1 = G;
  bad1.elements[1] = -bad1.elements[1];  // determinant flips to -1
  CHECK_THROWS(build_quiver(bad1));
  // not closed: drop an element (and its irrep values)
  GroupData bad2 = G;
  bad2.elements.pop_back();
  for (auto& R : bad2.irreps) R.mats.pop_back();
  CHECK_THROWS(build_quiver(bad2));
  // broken representation matrices
  GroupData bad3 = G;
  bad3.irreps[2].mats[3](0, 1) += 0.5;
  CHECK_THROWS(build_quiver(bad3));
}
