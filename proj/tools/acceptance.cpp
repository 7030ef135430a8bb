// Acceptance gate: one PASS/FAIL line per criterion, with wall-clock budgets
// pinned next to each check.
//
// Criterion 3 note.  The conifold half holds.  The cyclic-quiver half is
// mathematically false as stated: the full-cycle potential presents a
// finite-dimensional quotient while the Cartan inverse is an infinite lacunary
// series; the first disagreements sit at degree 4 (k=3, block (0,1)) and
// degree 6 (k=4, block (0,2)).  The line below reports this as a FAIL with the
// reproduced counterexample rather than relabelling it; the process exits 0
// only when every other criterion passes AND the cyclic-quiver failure matches
// the documented counterexample exactly.

#include <chrono>
#include <iostream>
#include <random>

#include "ncpot/builtins.hpp"
#include "ncpot/super.hpp"

using namespace ncpot;
using namespace ncpot::builtins;

namespace {

struct Gate {
  int criteria_pass = 0, criteria_fail = 0;
  bool expected_red_ok = false;  // criterion 3 reproduces its counterexample

  void line(int num, bool pass, double secs, double budget,
            const std::string& note) {
    bool ok = pass && (budget <= 0 || secs <= budget);
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.2f", secs);
    std::cout << "criterion " << num << ": " << (ok ? "PASS" : "FAIL") << " ("
              << buf << " s)";
    if (!note.empty()) std::cout << " -- " << note;
    std::cout << "\n";
    (ok ? criteria_pass : criteria_fail)++;
  }
};

double secs_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
      .count();
}

// homogeneous random potential of the given degree (closed words only)
CyclicPoly random_homog_potential(const Quiver& q, std::mt19937_64& rng,
                                  int deg, int maxterms) {
  NCPoly out(q);
  std::uniform_int_distribution<int> coef(-3, 3);
  for (int t = 0; t < maxterms; ++t) {
    Path p;
    p.es.push_back((int)(rng() % q.nedges()));
    p.vtx = q.edges[p.es[0]].src;
    bool ok = true;
    for (int k = 1; k < deg; ++k) {
      std::vector<int> opts;
      for (int e = 0; e < q.nedges(); ++e)
        if (q.edges[e].src == q.edges[p.es.back()].tgt) opts.push_back(e);
      if (opts.empty()) { ok = false; break; }
      p.es.push_back(opts[rng() % opts.size()]);
    }
    if (ok && path_closed(q, p)) out.add(p, Scalar(coef(rng)));
  }
  return project_cyclic(out);
}

Path random_cycle_hat(const SuperQuiver& sq, std::mt19937_64& rng, int maxlen,
                      bool notau) {
  const Quiver& q = sq.hat;
  int lim = notau ? 2 * sq.nx() + sq.nv() : q.nedges();
  for (;;) {
    int L = 1 + (int)(rng() % maxlen);
    Path p;
    p.es.push_back((int)(rng() % lim));
    p.vtx = q.edges[p.es[0]].src;
    bool ok = true;
    for (int k = 1; k < L; ++k) {
      std::vector<int> opts;
      for (int e = 0; e < lim; ++e)
        if (q.edges[e].src == q.edges[p.es.back()].tgt) opts.push_back(e);
      if (opts.empty()) { ok = false; break; }
      p.es.push_back(opts[rng() % opts.size()]);
    }
    if (ok && path_closed(q, p)) return p;
  }
}

NCPoly random_nc_hat(const SuperQuiver& sq, std::mt19937_64& rng, int maxterms,
                     int maxlen) {
  const Quiver& q = sq.hat;
  NCPoly out(q);
  std::uniform_int_distribution<int> nt(1, maxterms), coef(-3, 3);
  int T = nt(rng);
  for (int t = 0; t < T; ++t) {
    int L = 1 + (int)(rng() % maxlen);
    Path p;
    p.es.push_back((int)(rng() % q.nedges()));
    p.vtx = q.edges[p.es[0]].src;
    for (int k = 1; k < L; ++k) {
      std::vector<int> opts;
      for (int e = 0; e < q.nedges(); ++e)
        if (q.edges[e].src == q.edges[p.es.back()].tgt) opts.push_back(e);
      if (opts.empty()) break;
      p.es.push_back(opts[rng() % opts.size()]);
    }
    out.add(p, Scalar(coef(rng)));
  }
  return out;
}

Mat random_mat(int r, int c, std::mt19937_64& rng) {
  std::normal_distribution<double> nd(0.0, 1.0);
  Mat m(r, c);
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < c; ++j) m(i, j) = Cplx(nd(rng), nd(rng));
  return m;
}

}  // namespace

int main() {
  Gate gate;
  std::mt19937_64 rng(global_seed());
  using clock = std::chrono::steady_clock;

  // shared curated objects
  Quiver f3 = free3();
  CyclicPoly basic = basic_potential(f3);
  Quiver coni = conifold();

  // ---- criterion 1: basic derivatives, exact, < 1 s ----------------------
  {
    auto t0 = clock::now();
    auto word = [&](std::vector<std::string> es) {
      return NCPoly::word(f3, es);
    };
    bool ok = cyclic_derive(basic, "x") == word({"y", "z"}) - word({"z", "y"});
    ok = ok && cyclic_derive(basic, "y") == word({"z", "x"}) - word({"x", "z"});
    ok = ok && cyclic_derive(basic, "z") == word({"x", "y"}) - word({"y", "x"});
    gate.line(1, ok, secs_since(t0), 1.0, "derivatives of xyz - yxz");
  }

  // ---- criterion 2: polynomial-algebra Hilbert identity, deg 8, < 10 s ---
  {
    auto t0 = clock::now();
    GradedQuotient G(f3, basic, 8);
    MatrixSeries h = graded_dims(G, 8, /*exact=*/true);
    MatrixSeries p = hilbert_from_cartan(cartan_polynomial(f3, 3, 8));
    bool ok = true;
    long expect[] = {1, 3, 6, 10, 15, 21, 28, 36, 45};
    for (int n = 0; n <= 8; ++n)
      ok = ok && h.at(0, 0).c[n] == expect[n] && p.at(0, 0).c[n] == expect[n];
    gate.line(2, ok, secs_since(t0), 10.0, "dims == (1-3t+3t^2-t^3)^{-1}");
  }

  // ---- criterion 3: conifold + cyclic quivers, deg 6, < 30 s -------------
  {
    auto t0 = clock::now();
    GradedQuotient Gc(coni, conifold_potential(coni), 6);
    bool coni_ok = cy_hilbert_check(Gc, 6, true).pass;

    // cyclic quivers: the identity is false; require the documented
    // counterexample (k=3 first mismatch at degree 4, k=4 at degree 6)
    bool red_as_documented = true;
    for (int k : {3, 4}) {
      int d = (k == 3) ? 4 : 6;
      Quiver cy = cyclic_quiver(k);
      GradedQuotient G(cy, cycle_potential(cy), 6);
      auto rep = cy_hilbert_check(G, 6, true);
      MatrixSeries pr = hilbert_from_cartan(cartan_polynomial(cy, k, 6));
      MatrixSeries h = graded_dims(G, 6, true);
      red_as_documented = red_as_documented && !rep.pass &&
                          rep.detail.find("degree " + std::to_string(d)) !=
                              std::string::npos &&
                          pr.at(0, d % k).c[d] == 1 && h.at(0, d % k).c[d] == 0;
    }
    gate.expected_red_ok = coni_ok && red_as_documented &&
                           secs_since(t0) <= 30.0;
    gate.line(3, false, secs_since(t0), 30.0,
              std::string("conifold ") + (coni_ok ? "passes" : "FAILS") +
                  "; cyclic-quiver Hilbert identity is false as stated "
                  "(finite-dimensional quotient vs lacunary Cartan inverse; "
                  "first mismatches: k=3 degree 4, k=4 degree 6" +
                  (red_as_documented ? ", reproduced exactly)" : ", NOT reproduced)"));
  }

  // ---- criterion 4: Sklyanin family, deg 5, < 60 s -----------------------
  {
    auto t0 = clock::now();
    GradedQuotient Gq(f3, sklyanin_quadratic(f3), 5);
    MatrixSeries hq = graded_dims(Gq, 5, true);
    bool ok = true;
    long expect[] = {1, 3, 6, 10, 15, 21};
    for (int n = 0; n <= 5; ++n) ok = ok && hq.at(0, 0).c[n] == expect[n];

    Quiver cq = cubic_quiver();
    GradedQuotient Gcu(cq, sklyanin_cubic(cq), 5);
    ok = ok && cy_hilbert_check(Gcu, 5, true).pass;
    gate.line(4, ok, secs_since(t0), 60.0,
              "quadratic (1,2,1) binomial dims; cubic (1,1) CY series");
  }

  // ---- criterion 5: x^3 control fails cy-check, < 5 s --------------------
  {
    auto t0 = clock::now();
    GradedQuotient Gx(f3, x3_potential(f3), 4);
    auto rep = cy_hilbert_check(Gx, 4, true);
    bool ok = !rep.pass && rep.detail.find("degree 2") != std::string::npos;
    gate.line(5, ok, secs_since(t0), 5.0,
              "negative control rejected at degree 2");
  }

  // ---- criteria 6 + 8 share the 20 seeded random potentials --------------
  std::vector<std::shared_ptr<Quiver>> rquivers;
  std::vector<CyclicPoly> rpots;
  {
    std::mt19937_64 prng(global_seed() + 6);
    std::vector<Quiver> pool = {Quiver::free_algebra({"x", "y"}), f3, coni,
                                cyclic_quiver(3)};
    while ((int)rpots.size() < 20) {
      auto qp = std::make_shared<Quiver>(pool[rpots.size() % pool.size()]);
      int deg = 3 + (int)(prng() % 3);  // degrees 3..5
      CyclicPoly phi = random_homog_potential(*qp, prng, deg, 4);
      if (phi.is_zero()) continue;
      rquivers.push_back(qp);
      rpots.push_back(phi);
    }
  }

  // ---- criterion 6: DG suite over the 20 potentials, < 60 s --------------
  {
    auto t0 = clock::now();
    std::mt19937_64 drng(global_seed() + 66);
    bool ok = true;
    int d2_checked = 0, bv_checked = 0;
    for (size_t i = 0; i < rpots.size() && ok; ++i) {
      SuperQuiver sq(*rquivers[i]);
      SDerivation d = dg_differential(sq, rpots[i]);
      for (int e = 0; e < sq.hat.nedges() && ok; ++e)
        ok = d(d(NCPoly::gen(sq.hat, e))).is_zero();
      for (int it = 0; it < 5 && ok; ++it, ++d2_checked)
        ok = d(d(random_nc_hat(sq, drng, 3, 6))).is_zero();
      try {
        brst_potential(sq, rpots[i]);  // asserts master + unit
      } catch (const std::runtime_error&) {
        ok = false;
      }
      for (int it = 0; it < 5 && ok; ++it) {
        SymPoly u(sq);
        std::vector<Path> fac;
        int deg = 0;
        for (int kk = 0; kk < 2; ++kk) {
          Path p = random_cycle_hat(sq, drng, 4, /*notau=*/true);
          if (deg + (int)p.es.size() > 4) break;
          deg += (int)p.es.size();
          fac.push_back(p);
        }
        if (fac.empty()) continue;
        u.add_product(fac, Scalar(1 + (int)(drng() % 3)));
        if (u.is_zero()) continue;
        ++bv_checked;
        ok = bv_operator(sq, bv_operator(sq, u)).is_zero();
      }
    }
    gate.line(6, ok && d2_checked >= 100 && bv_checked >= 80, secs_since(t0),
              60.0, "d^2, master, unit, Delta^2 on 20 seeded potentials");
  }

  // ---- criterion 7: xi_{delta.tau + t.tau^2} closed form, exact ----------
  {
    auto t0 = clock::now();
    bool ok = true;
    for (const Quiver& q : {f3, coni}) {
      SuperQuiver sq(q);
      CyclicPoly H(sq.hat);
      for (int i = 0; i < sq.nx(); ++i) {
        const Edge& e = sq.base.edges[i];
        scyclic_add(H, sq, Path{e.src, {sq.x(i), sq.xs(i), sq.tau(e.src)}},
                    Scalar(1));
        scyclic_add(H, sq, Path{e.tgt, {sq.xs(i), sq.x(i), sq.tau(e.tgt)}},
                    Scalar(-1));
      }
      for (int v = 0; v < sq.nv(); ++v)
        scyclic_add(H, sq, Path{v, {sq.t(v), sq.tau(v), sq.tau(v)}}, Scalar(1));
      SDerivation xi = hamiltonian_derivation(sq, H);
      auto tau = [&](int v) { return NCPoly::gen(sq.hat, sq.tau(v)); };
      for (int i = 0; i < sq.nx() && ok; ++i) {
        const Edge& e = sq.base.edges[i];
        NCPoly x = NCPoly::gen(sq.hat, sq.x(i)), th = NCPoly::gen(sq.hat, sq.xs(i));
        ok = xi.im[sq.x(i)] == x * tau(e.tgt) - tau(e.src) * x &&
             xi.im[sq.xs(i)] == th * tau(e.src) + tau(e.tgt) * th;
      }
      for (int v = 0; v < sq.nv() && ok; ++v) {
        NCPoly t = NCPoly::gen(sq.hat, sq.t(v));
        ok = xi.im[sq.tau(v)] == tau(v) * tau(v) &&
             xi.im[sq.t(v)] == delta_vertex(sq, v) + t * tau(v) - tau(v) * t;
      }
    }
    gate.line(7, ok, secs_since(t0), 0.0,
              "xi = ad tau + delta d/dt - tau^2 d/dtau on all generators");
  }

  // ---- criterion 8: cotangent complex, < 120 s ---------------------------
  {
    auto t0 = clock::now();
    bool ok = true;
    for (size_t i = 0; i < rpots.size() && ok; ++i) {
      GradedQuotient G(*rquivers[i], rpots[i], 4);
      ok = cotangent_complex_check(G, 4).complex_ok;
    }
    // exactness to degree 5 on the CY family of criteria 2 and 4
    {
      GradedQuotient G(f3, basic, 5);
      auto r = cotangent_complex_check(G, 5);
      ok = ok && r.complex_ok && r.exact_ok && r.euler_ok;
    }
    {
      GradedQuotient G(coni, conifold_potential(coni), 5);
      auto r = cotangent_complex_check(G, 5);
      ok = ok && r.complex_ok && r.exact_ok && r.euler_ok;
    }
    {
      GradedQuotient G(f3, sklyanin_quadratic(f3), 5);
      auto r = cotangent_complex_check(G, 5);
      ok = ok && r.complex_ok && r.exact_ok && r.euler_ok;
    }
    {
      Quiver cq = cubic_quiver();
      GradedQuotient G(cq, sklyanin_cubic(cq), 5);
      auto r = cotangent_complex_check(G, 5);
      ok = ok && r.complex_ok && r.exact_ok && r.euler_ok;
    }
    {
      GradedQuotient Gx(f3, x3_potential(f3), 4);
      auto r = cotangent_complex_check(Gx, 4);
      ok = ok && r.complex_ok && !r.exact_ok;
    }
    gate.line(8, ok, secs_since(t0), 120.0,
              "compositions vanish; exact on the family; control has homology");
  }

  // ---- criterion 9: McKay, deg 9, < 5 min --------------------------------
  {
    auto t0 = clock::now();
    bool ok = true;
    // trivial group: commutator potential and C[x,y,z] dims
    {
      McKayQuiver T = build_quiver(GroupData::trivial());
      CyclicPoly phi = triangle_coefficients(T);
      CyclicPoly expect = cyclic_word(T.quiver, {"x1_o", "x2_o", "x3_o"}) -
                          cyclic_word(T.quiver, {"x1_o", "x3_o", "x2_o"});
      ok = phi == expect && mckay_check(T, phi, 9, /*exact=*/true).pass;
    }
    std::vector<GroupData> family = {
        GroupData::abelian_group(3, {{1, 1, 1}}),
        GroupData::abelian_group(3, {{1, 2, 0}}),
        GroupData::abelian_group(7, {{1, 2, 4}}),
        GroupData::abelian_group(3, {{1, 2, 0}, {0, 1, 2}})};
    for (auto& G : family) {
      if (!ok) break;
      McKayQuiver Q = build_quiver(G);
      CyclicPoly phi = triangle_coefficients(Q);
      ok = mckay_check(Q, phi, 9, /*exact=*/false).pass;
      // rotation invariance of lambda for every oriented triangle
      int ne = Q.quiver.nedges();
      for (int a = 0; a < ne && ok; ++a)
        for (int b = 0; b < ne && ok; ++b)
          for (int c = 0; c < ne && ok; ++c) {
            auto& es = Q.quiver.edges;
            if (es[a].tgt != es[b].src || es[b].tgt != es[c].src ||
                es[c].tgt != es[a].src)
              continue;
            Cplx l0 = triangle_lambda(Q, a, b, c);
            ok = std::abs(l0 - triangle_lambda(Q, b, c, a)) <= 1e-10 &&
                 std::abs(l0 - triangle_lambda(Q, c, a, b)) <= 1e-10;
          }
    }
    gate.line(9, ok, secs_since(t0), 300.0,
              "Molien matches to degree 9; lambda rotation-invariant");
  }

  // ---- criterion 10: rep-scheme numerics, < 30 s -------------------------
  {
    auto t0 = clock::now();
    std::mt19937_64 rrng(global_seed() + 10);
    bool ok = true;

    // finite differences: 50 seeded pairs with d <= 4, rel err <= 1e-6
    const double h = 1e-5;
    int pairs = 0;
    auto rand_pot = [&](const Quiver& q) {
      NCPoly out(q);
      std::uniform_int_distribution<int> len(2, 4), coef(-3, 3);
      for (int t = 0; t < 4; ++t) {
        Path p;
        p.es.push_back((int)(rrng() % q.nedges()));
        p.vtx = q.edges[p.es[0]].src;
        int L = len(rrng);
        for (int k = 1; k < L; ++k) {
          std::vector<int> opts;
          for (int e = 0; e < q.nedges(); ++e)
            if (q.edges[e].src == q.edges[p.es.back()].tgt) opts.push_back(e);
          if (opts.empty()) break;
          p.es.push_back(opts[rrng() % opts.size()]);
        }
        if (path_closed(q, p)) out.add(p, Scalar(coef(rrng)));
      }
      return project_cyclic(out);
    };
    while (pairs < 50 && ok) {
      const Quiver& q = (pairs % 3 == 2) ? coni : f3;
      std::vector<int> dims(q.nverts());
      for (auto& d : dims) d = 1 + (int)(rrng() % 4);
      CyclicPoly phi = rand_pot(q);
      if (phi.is_zero()) continue;
      RepPoint rep = random_rep(q, dims, rrng);
      std::vector<Mat> grad = trace_gradient(phi, rep);
      bool interesting = false;
      for (int e = 0; e < q.nedges() && ok; ++e) {
        Mat E = random_mat(rep.mats[e].rows(), rep.mats[e].cols(), rrng);
        RepPoint up = rep, dn = rep;
        up.mats[e] += h * E;
        dn.mats[e] -= h * E;
        Cplx fd = (trace_potential(phi, up) - trace_potential(phi, dn)) / (2.0 * h);
        Cplx pr = (grad[e] * E).trace();
        ok = std::abs(fd - pr) <= 1e-6 * std::max(1.0, std::abs(pr));
        if (std::abs(pr) > 1e-8) interesting = true;
      }
      if (interesting) ++pairs;
    }
    ok = ok && pairs == 50;

    // conjugation invariance <= 1e-9
    for (int trial = 0; trial < 10 && ok; ++trial) {
      std::vector<int> dims = {3};
      CyclicPoly phi = rand_pot(f3);
      if (phi.is_zero()) continue;
      RepPoint rep = random_rep(f3, dims, rrng);
      std::vector<Mat> g = {random_mat(3, 3, rrng) + 3.0 * Mat::Identity(3, 3)};
      Cplx a = trace_potential(phi, rep);
      Cplx b = trace_potential(phi, conjugate(rep, g));
      ok = std::abs(a - b) <= 1e-9 * (1.0 + std::abs(a));
    }

    // commuting triple residual <= 1e-12
    if (ok) {
      RepPoint diag(f3, {3});
      std::normal_distribution<double> nd(0.0, 1.0);
      for (auto name : {"x", "y", "z"}) {
        Mat m = Mat::Zero(3, 3);
        for (int i = 0; i < 3; ++i) m(i, i) = Cplx(nd(rrng), nd(rrng));
        diag.set(name, m);
      }
      ok = critical_residual(basic, diag) <= 1e-12;
    }

    // sl2 triple residual for Phi_1 <= 1e-10
    if (ok) {
      CyclicPoly phi1 = basic;
      for (auto name : {"x", "y", "z"})
        phi1 += Scalar(Rat(1, 2)) * cyclic_word(f3, {name, name});
      const Cplx I(0.0, 1.0);
      Mat s1(2, 2), s2(2, 2), s3(2, 2);
      s1 << 0, 1, 1, 0;
      s2 << 0, -I, I, 0;
      s3 << 1, 0, 0, -1;
      RepPoint sl2(f3, {2});
      sl2.set("x", (I / 2.0) * s1);
      sl2.set("y", (I / 2.0) * s2);
      sl2.set("z", (I / 2.0) * s3);
      ok = critical_residual(phi1, sl2) <= 1e-10;
    }
    gate.line(10, ok, secs_since(t0), 30.0,
              "fd<=1e-6 (50 pairs), conj<=1e-9, commuting<=1e-12, sl2<=1e-10");
  }

  // ---- criterion 11: zeta formula, N = 8, exact, < 5 s -------------------
  {
    auto t0 = clock::now();
    RatSeries z = zeta_characteristic(f3, 3, 8, 8);
    RatSeries expect = RatSeries::one(8);
    for (int s = 1; s <= 8; ++s) {
      RatSeries f = RatSeries::one(8);
      f.c[s] -= 1;
      RatSeries fi = f.inverse();
      expect = expect * fi * fi * fi;
    }
    gate.line(11, z == expect, secs_since(t0), 5.0,
              "zeta == prod_s (1-t^s)^{-3} mod t^9");
  }

  std::cout << gate.criteria_pass << "/11 criteria pass; criterion 3 is the "
            << "documented mathematical failure ("
            << (gate.expected_red_ok ? "counterexample reproduced"
                                     : "COUNTEREXAMPLE NOT REPRODUCED")
            << ")\n";
  bool gate_ok = gate.criteria_pass == 10 && gate.criteria_fail == 1 &&
                 gate.expected_red_ok;
  return gate_ok ? 0 : 1;
}
