#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "ncpot/repscheme.hpp"

using namespace ncpot;

static Quiver F3() { return Quiver::free_algebra({"x", "y", "z"}); }

static Quiver Conifold() {
  return Quiver({"0", "1"}, {{"a1", 0, 1, 1},
                             {"a2", 0, 1, 1},
                             {"b1", 1, 0, 1},
                             {"b2", 1, 0, 1}});
}

static Mat random_mat(int r, int c, std::mt19937_64& rng) {
  std::normal_distribution<double> nd(0.0, 1.0);
  Mat m(r, c);
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < c; ++j) m(i, j) = Cplx(nd(rng), nd(rng));
  return m;
}

static CyclicPoly random_potential(const Quiver& q, std::mt19937_64& rng,
                                   int maxterms, int maxlen) {
  NCPoly out(q);
  std::uniform_int_distribution<int> nt(1, maxterms), len(2, maxlen),
      coef(-3, 3), ed(0, q.nedges() - 1);
  int T = nt(rng);
  for (int t = 0; t < T; ++t) {
    int L = len(rng);
    Path p;
    p.es.push_back(ed(rng));
    p.vtx = q.edges[p.es[0]].src;
    for (int k = 1; k < L; ++k) {
      std::vector<int> opts;
      for (int e = 0; e < q.nedges(); ++e)
        if (q.edges[e].src == q.edges[p.es.back()].tgt) opts.push_back(e);
      if (opts.empty()) break;
      p.es.push_back(opts[rng() % opts.size()]);
    }
    if (path_closed(q, p)) out.add(p, Scalar(coef(rng)));
  }
  return project_cyclic(out);
}

TEST_CASE("evaluation is a unital algebra homomorphism") {
  std::mt19937_64 rng(global_seed());
  Quiver f3 = F3();
  Quiver coni = Conifold();
  for (const Quiver* qp : {&f3, &coni}) {
    const Quiver& q = *qp;
    std::vector<int> dims(q.nverts());
    for (auto& d : dims) d = 2 + (int)(rng() % 2);
    RepPoint rep = random_rep(q, dims, rng);

    NCPoly one = NCPoly::unit(q);
    CHECK(evaluate(one, rep).isApprox(Mat::Identity(rep.total_dim(),
                                                    rep.total_dim())));

    for (int trial = 0; trial < 10; ++trial) {
      NCPoly a(q), b(q);
      for (int t = 0; t < 3; ++t) {
        CyclicPoly ca = random_potential(q, rng, 1, 3);
        CyclicPoly cb = random_potential(q, rng, 1, 3);
        a += lift_cyclic(ca);
        b += lift_cyclic(cb);
      }
      Mat lhs = evaluate(a * b, rep);
      Mat rhs = evaluate(a, rep) * evaluate(b, rep);
      CHECK((lhs - rhs).norm() <= 1e-9 * (1.0 + rhs.norm()));
    }
  }

  // single generator lands in its own block with the stored matrix
  std::vector<int> dims = {2, 3};
  RepPoint rep = random_rep(coni, dims, rng);
  Mat ea = evaluate(NCPoly::gen(coni, "a1"), rep);
  CHECK(ea.block(0, 2, 2, 3).isApprox(rep.at("a1")));
  CHECK(ea.block(0, 0, 2, 2).norm() == 0.0);

  // shape mismatch is rejected
  CHECK_THROWS(rep.set("a1", Mat::Zero(3, 3)));
}

TEST_CASE("trace potential matches dense-trace oracles") {
  std::mt19937_64 rng(global_seed() + 1);
  Quiver q = F3();

  // class of a single loop at dimension one
  RepPoint r1(q, {1});
  r1.set("x", Mat::Constant(1, 1, Cplx(3.0, 0.0)));
  CyclicPoly cx = cyclic_word(q, {"x", "x"});  // x^2 at d=1 -> 9
  CHECK(trace_potential(cx, r1) == Cplx(9.0, 0.0));
  CyclicPoly fx = project_cyclic(NCPoly::gen(q, "x"));
  CHECK(trace_potential(fx, r1) == Cplx(3.0, 0.0));

  // the class of a commutator is zero before any evaluation happens
  NCPoly comm = NCPoly::gen(q, "x") * NCPoly::gen(q, "y") -
                NCPoly::gen(q, "y") * NCPoly::gen(q, "x");
  CyclicPoly ccomm = project_cyclic(comm);
  CHECK(ccomm.is_zero());
  RepPoint r3 = random_rep(q, {3}, rng);
  CHECK(trace_potential(ccomm, r3) == Cplx(0.0, 0.0));

  // xyz - yxz against a dense oracle, several random triples
  CyclicPoly basic =
      cyclic_word(q, {"x", "y", "z"}) - cyclic_word(q, {"y", "x", "z"});
  for (int trial = 0; trial < 5; ++trial) {
    RepPoint rep = random_rep(q, {3}, rng);
    const Mat &X = rep.at("x"), &Y = rep.at("y"), &Z = rep.at("z");
    Cplx oracle = (X * Y * Z).trace() - (Y * X * Z).trace();
    Cplx got = trace_potential(basic, rep);
    CHECK(std::abs(got - oracle) <= 1e-12 * (1.0 + std::abs(oracle)));
  }

  // conifold: closed word evaluates to the direct matrix product
  Quiver coni = Conifold();
  RepPoint rc = random_rep(coni, {2, 2}, rng);
  Mat direct = rc.at("a1") * rc.at("b1");
  Mat viaeval = evaluate_path(rc, Path{0, {coni.edge_index("a1"),
                                           coni.edge_index("b1")}});
  CHECK(viaeval.isApprox(direct));
  CyclicPoly cw = cyclic_word(coni, {"a1", "b1"});
  CHECK(std::abs(trace_potential(cw, rc) - direct.trace()) <= 1e-12);
}

TEST_CASE("trace is invariant under simultaneous conjugation") {
  std::mt19937_64 rng(global_seed() + 2);
  Quiver f3 = F3();
  Quiver coni = Conifold();
  for (const Quiver* qp : {&f3, &coni}) {
    const Quiver& q = *qp;
    std::vector<int> dims(q.nverts());
    for (auto& d : dims) d = 2 + (int)(rng() % 3);
    for (int trial = 0; trial < 10; ++trial) {
      CyclicPoly phi = random_potential(q, rng, 4, 5);
      RepPoint rep = random_rep(q, dims, rng);
      std::vector<Mat> g;
      for (int v = 0; v < q.nverts(); ++v) {
        Mat m = random_mat(dims[v], dims[v], rng) +
                3.0 * Mat::Identity(dims[v], dims[v]);
        g.push_back(m);
      }
      Cplx t0 = trace_potential(phi, rep);
      Cplx t1 = trace_potential(phi, conjugate(rep, g));
      CHECK(std::abs(t1 - t0) <= 1e-9 * (1.0 + std::abs(t0)));
    }
  }
}

TEST_CASE("finite-difference check of the trace gradient") {
  std::mt19937_64 rng(global_seed() + 3);
  Quiver f3 = F3();
  Quiver coni = Conifold();
  const double h = 1e-5;
  int pairs = 0;
  while (pairs < 50) {
    const Quiver& q = (pairs % 3 == 2) ? coni : f3;
    std::vector<int> dims(q.nverts());
    for (auto& d : dims) d = 1 + (int)(rng() % 4);  // d <= 4
    CyclicPoly phi = random_potential(q, rng, 4, 4);
    if (phi.is_zero()) continue;
    RepPoint rep = random_rep(q, dims, rng);
    std::vector<Mat> grad = trace_gradient(phi, rep);
    bool interesting = false;
    for (int e = 0; e < q.nedges(); ++e) {
      Mat E = random_mat(rep.mats[e].rows(), rep.mats[e].cols(), rng);
      RepPoint up = rep, dn = rep;
      up.mats[e] += h * E;
      dn.mats[e] -= h * E;
      Cplx fd =
          (trace_potential(phi, up) - trace_potential(phi, dn)) / (2.0 * h);
      Cplx pair = (grad[e] * E).trace();
      double scale = std::max(1.0, std::abs(pair));
      CHECK(std::abs(fd - pair) <= 1e-6 * scale);
      if (std::abs(pair) > 1e-8) interesting = true;
    }
    if (interesting) ++pairs;
  }
  CHECK(pairs == 50);
}

TEST_CASE("gradient closed forms") {
  std::mt19937_64 rng(global_seed() + 4);
  Quiver q = F3();
  CyclicPoly basic =
      cyclic_word(q, {"x", "y", "z"}) - cyclic_word(q, {"y", "x", "z"});
  RepPoint rep = random_rep(q, {3}, rng);
  const Mat &Y = rep.at("y"), &Z = rep.at("z");
  std::vector<Mat> g = trace_gradient(basic, rep);
  CHECK((g[q.edge_index("x")] - (Y * Z - Z * Y)).norm() <= 1e-12);

  // an edge that does not occur has zero gradient
  CyclicPoly onlyy = cyclic_word(q, {"y", "y"});
  std::vector<Mat> gy = trace_gradient(onlyy, rep);
  CHECK(gy[q.edge_index("x")].norm() == 0.0);
  CHECK(gy[q.edge_index("z")].norm() == 0.0);

  // Yang-Mills, abelian structure constants, two generators:
  //   dPsi/dx_j = sum_i [x_i, [x_i, x_j]]
  Quiver q2 = Quiver::free_algebra({"x1", "x2"});
  CyclicPoly psi = yang_mills_potential(q2);
  NCPoly x1 = NCPoly::gen(q2, "x1"), x2 = NCPoly::gen(q2, "x2");
  auto br = [](const NCPoly& a, const NCPoly& b) { return a * b - b * a; };
  CHECK(cyclic_derive(psi, "x1") == br(x1, br(x1, x1)) + br(x2, br(x2, x1)));
  CHECK(cyclic_derive(psi, "x2") == br(x1, br(x1, x2)) + br(x2, br(x2, x2)));
  RepPoint r2 = random_rep(q2, {3}, rng);
  const Mat &X1 = r2.at("x1"), &X2 = r2.at("x2");
  std::vector<Mat> gym = trace_gradient(psi, r2);
  Mat expect = X2 * (X2 * X1 - X1 * X2) - (X2 * X1 - X1 * X2) * X2;
  CHECK((gym[q2.edge_index("x1")] - expect).norm() <= 1e-10 * (1.0 + expect.norm()));
}

TEST_CASE("critical residual: commuting, random, and sl2 points") {
  std::mt19937_64 rng(global_seed() + 5);
  Quiver q = F3();
  CyclicPoly basic =
      cyclic_word(q, {"x", "y", "z"}) - cyclic_word(q, {"y", "x", "z"});

  // commuting (diagonal) triple: residual at machine precision
  RepPoint diag(q, {3});
  for (auto name : {"x", "y", "z"}) {
    Mat m = Mat::Zero(3, 3);
    std::normal_distribution<double> nd(0.0, 1.0);
    for (int i = 0; i < 3; ++i) m(i, i) = Cplx(nd(rng), nd(rng));
    diag.set(name, m);
  }
  CHECK(critical_residual(basic, diag) <= 1e-12);

  // random non-commuting triple: strictly positive
  RepPoint rnd = random_rep(q, {3}, rng);
  CHECK(critical_residual(basic, rnd) > 1e-3);

  // Phi_1 = xyz - yxz + (x^2+y^2+z^2)/2 and the spin-1/2 triple
  CyclicPoly phi1 = basic;
  for (auto name : {"x", "y", "z"})
    phi1 += Scalar(Rat(1, 2)) * cyclic_word(q, {name, name});
  const Cplx I(0.0, 1.0);
  Mat s1(2, 2), s2(2, 2), s3(2, 2);
  s1 << 0, 1, 1, 0;
  s2 << 0, -I, I, 0;
  s3 << 1, 0, 0, -1;
  RepPoint sl2(q, {2});
  sl2.set("x", (I / 2.0) * s1);
  sl2.set("y", (I / 2.0) * s2);
  sl2.set("z", (I / 2.0) * s3);
  CHECK(critical_residual(phi1, sl2) <= 1e-10);
  // and the same point is far from critical for the potential without the
  // quadratic part
  CHECK(critical_residual(basic, sl2) > 0.4);
}

TEST_CASE("multiplicative extension over products of cyclic classes") {
  std::mt19937_64 rng(global_seed() + 6);
  Quiver q = F3();
  RepPoint rep = random_rep(q, {2}, rng);
  CyclicPoly f1 = cyclic_word(q, {"x", "y"});
  CyclicPoly f2 = cyclic_word(q, {"z", "z"});
  CyclicPoly f3c = cyclic_word(q, {"x", "y", "z"});
  Cplx prod = trace_product({f1, f2, f3c}, rep);
  Cplx direct = trace_potential(f1, rep) * trace_potential(f2, rep) *
                trace_potential(f3c, rep);
  CHECK(prod == direct);
  CHECK(trace_product({}, rep) == Cplx(1.0, 0.0));
}

TEST_CASE("star projection and descent convenience") {
  std::mt19937_64 rng(global_seed() + 7);
  Quiver q2 = Quiver::free_algebra({"x1", "x2"});
  CyclicPoly psi = yang_mills_potential(q2);

  // at a skew-hermitian point the Yang-Mills gradient is already
  // skew-hermitian, so the star projection changes nothing
  RepPoint skew(q2, {3});
  for (auto name : {"x1", "x2"}) {
    Mat m = random_mat(3, 3, rng);
    skew.set(name, skew_hermitian_part(m));
  }
  double plain = critical_residual(psi, skew, false);
  double star = critical_residual(psi, skew, true);
  CHECK(std::abs(plain - star) <= 1e-12 * (1.0 + plain));

  // star projection needs square gradient blocks
  Quiver coni = Conifold();
  CyclicPoly cphi = cyclic_word(coni, {"a1", "b1", "a2", "b2"}) -
                    cyclic_word(coni, {"a1", "b2", "a2", "b1"});
  RepPoint rc = random_rep(coni, {2, 3}, rng);
  CHECK_THROWS(critical_residual(cphi, rc, true));

  // descent reduces the residual of a perturbed commuting triple
  Quiver q = F3();
  CyclicPoly basic =
      cyclic_word(q, {"x", "y", "z"}) - cyclic_word(q, {"y", "x", "z"});
  RepPoint start(q, {2});
  std::normal_distribution<double> nd(0.0, 1.0);
  for (auto name : {"x", "y", "z"}) {
    Mat m = Mat::Zero(2, 2);
    for (int i = 0; i < 2; ++i) m(i, i) = Cplx(nd(rng), nd(rng));
    m += 0.05 * random_mat(2, 2, rng);
    start.set(name, m);
  }
  double before = critical_residual(basic, start);
  DescentResult res = critical_descent(basic, start, 60, 5e-2, 1e-10);
  CHECK(res.residual < before);
  CHECK(res.residual <= 0.5 * before);
}
