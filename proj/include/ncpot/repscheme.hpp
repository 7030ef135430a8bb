#pragma once

#include <Eigen/Dense>
#include <Eigen/SVD>
#include <functional>
#include <random>
#include <vector>

#include "ncpot/calculus.hpp"

namespace ncpot {

using Mat = Eigen::MatrixXcd;

// Point of the representation scheme: a dimension vector plus one complex
// matrix per edge of shape d(src) x d(tgt).  Row-vector convention: a word
// a.b (tgt a = src b) evaluates to the matrix product M_a * M_b, so that
// evaluation is an algebra homomorphism for the left-to-right word order used
// throughout (Path es order = traversal order).
struct RepPoint {
  const Quiver* q = nullptr;
  std::vector<int> dims;   // per vertex
  std::vector<Mat> mats;   // per edge

  RepPoint() = default;
  RepPoint(const Quiver& quiver, std::vector<int> d)
      : q(&quiver), dims(std::move(d)) {
    if ((int)dims.size() != quiver.nverts())
      throw std::runtime_error("RepPoint: one dimension per vertex");
    for (int dv : dims)
      if (dv <= 0) throw std::runtime_error("RepPoint: dimensions must be positive");
    mats.reserve(quiver.nedges());
    for (auto& e : quiver.edges)
      mats.push_back(Mat::Zero(dims[e.src], dims[e.tgt]));
  }

  int total_dim() const {
    int s = 0;
    for (int dv : dims) s += dv;
    return s;
  }
  int offset(int v) const {
    int s = 0;
    for (int i = 0; i < v; ++i) s += dims[i];
    return s;
  }

  void set(const std::string& edge, const Mat& m) {
    int e = q->edge_index(edge);
    if (m.rows() != dims[q->edges[e].src] || m.cols() != dims[q->edges[e].tgt])
      throw std::runtime_error("RepPoint: shape mismatch for edge " + edge);
    mats[e] = m;
  }
  const Mat& at(const std::string& edge) const { return mats[q->edge_index(edge)]; }

  void check_shapes() const {
    for (int e = 0; e < q->nedges(); ++e)
      if (mats[e].rows() != dims[q->edges[e].src] ||
          mats[e].cols() != dims[q->edges[e].tgt])
        throw std::runtime_error("RepPoint: shape mismatch for edge " +
                                 q->edges[e].name);
  }
};

// Evaluate one path: matrices multiply in the written word order.
// Trivial path at v -> I_d(v).
inline Mat evaluate_path(const RepPoint& rep, const Path& p) {
  int sv = path_source(*rep.q, p);
  Mat m = Mat::Identity(rep.dims[sv], rep.dims[sv]);
  for (int e : p.es) m = m * rep.mats[e];
  return m;
}

// Evaluate a noncommutative polynomial as a block matrix on ⊕_v C^{d(v)}:
// each path lands in the (target, source) block, trivial paths in the
// diagonal identity blocks.
inline Mat evaluate(const NCPoly& a, const RepPoint& rep) {
  if (a.q != rep.q) throw std::runtime_error("evaluate: quiver mismatch");
  int D = rep.total_dim();
  Mat out = Mat::Zero(D, D);
  const Quiver& q = *a.q;
  for (auto& [p, c] : a.terms) {
    Mat m = evaluate_path(rep, p);
    int r = rep.offset(path_source(q, p));
    int col = rep.offset(path_target(q, p));
    out.block(r, col, m.rows(), m.cols()) += c.as_complex() * m;
  }
  return out;
}

// Tr Φ̂(ρ): sum over cyclic classes of coeff * trace of the evaluated cycle.
// Rotation-independent since trace is cyclic.
inline Cplx trace_potential(const CyclicPoly& phi, const RepPoint& rep) {
  if (phi.q != rep.q) throw std::runtime_error("trace_potential: quiver mismatch");
  Cplx t = 0.0;
  for (auto& [p, c] : phi.terms) t += c.as_complex() * evaluate_path(rep, p).trace();
  return t;
}

// Multiplicative extension to products of cyclic classes:
// a1 a2 ... ar  ↦  Tr â1 · Tr â2 · ... · Tr âr.
inline Cplx trace_product(const std::vector<CyclicPoly>& fs, const RepPoint& rep) {
  Cplx t = 1.0;
  for (auto& f : fs) t *= trace_potential(f, rep);
  return t;
}

// Gradient of the trace potential: G_x = evaluate(∂Φ/∂x, ρ), a matrix of
// shape d(tgt x) × d(src x), so that for any perturbation E at edge x
//   d/ds|₀ Tr Φ̂(ρ + s·E at x) = Tr(G_x · E).
inline std::vector<Mat> trace_gradient(const CyclicPoly& phi, const RepPoint& rep) {
  if (phi.q != rep.q) throw std::runtime_error("trace_gradient: quiver mismatch");
  const Quiver& q = *phi.q;
  std::vector<Mat> out;
  out.reserve(q.nedges());
  for (int x = 0; x < q.nedges(); ++x) {
    NCPoly d = cyclic_derive(phi, x);
    // the derivative runs tgt(x) -> src(x)
    Mat g = Mat::Zero(rep.dims[q.edges[x].tgt], rep.dims[q.edges[x].src]);
    for (auto& [p, c] : d.terms) g += c.as_complex() * evaluate_path(rep, p);
    out.push_back(std::move(g));
  }
  return out;
}

// project a square matrix onto its skew-hermitian part
inline Mat skew_hermitian_part(const Mat& m) { return 0.5 * (m - m.adjoint()); }

// Residual of the critical-point equations: max over edges of the operator
// norm (largest singular value) of G_x.  With `star`, gradients are first
// projected onto the skew-hermitian subspace (⋆-representation restriction;
// requires square gradient blocks).
inline double critical_residual(const CyclicPoly& phi, const RepPoint& rep,
                                bool star = false) {
  double r = 0.0;
  std::vector<Mat> grads = trace_gradient(phi, rep);
  for (Mat& g : grads) {
    if (star) {
      if (g.rows() != g.cols())
        throw std::runtime_error("star projection needs square blocks");
      g = skew_hermitian_part(g);
    }
    if (g.size() == 0) continue;
    Eigen::JacobiSVD<Mat> svd(g);
    if (svd.singularValues().size() > 0)
      r = std::max(r, svd.singularValues()(0));
  }
  return r;
}

// change of basis g = (g_v): edge matrices transform M_x -> g_src^{-1} M_x g_tgt
inline RepPoint conjugate(const RepPoint& rep, const std::vector<Mat>& g) {
  const Quiver& q = *rep.q;
  if ((int)g.size() != q.nverts())
    throw std::runtime_error("conjugate: one matrix per vertex");
  std::vector<Mat> ginv;
  ginv.reserve(g.size());
  for (int v = 0; v < q.nverts(); ++v) {
    if (g[v].rows() != rep.dims[v] || g[v].cols() != rep.dims[v])
      throw std::runtime_error("conjugate: shape mismatch");
    ginv.push_back(g[v].inverse());
  }
  RepPoint out = rep;
  for (int e = 0; e < q.nedges(); ++e)
    out.mats[e] = ginv[q.edges[e].src] * rep.mats[e] * g[q.edges[e].tgt];
  return out;
}

// random representation point with iid complex-normal entries
inline RepPoint random_rep(const Quiver& q, const std::vector<int>& dims,
                           std::mt19937_64& rng, double scale = 1.0) {
  RepPoint rep(q, dims);
  std::normal_distribution<double> nd(0.0, scale);
  for (auto& m : rep.mats)
    for (int i = 0; i < m.rows(); ++i)
      for (int j = 0; j < m.cols(); ++j) m(i, j) = Cplx(nd(rng), nd(rng));
  return rep;
}

// Convenience search for approximate critical points: gradient descent with
// backtracking on  s(ρ) = Σ_x ||G_x||_F²  (a smooth nonnegative function
// vanishing exactly on the critical locus).  No convergence guarantee is
// claimed; the return value reports the residual actually reached.
struct DescentResult {
  RepPoint rep;
  double residual = 0.0;
  int iterations = 0;
};

inline double sumsq_gradient(const CyclicPoly& phi, const RepPoint& rep,
                             bool star) {
  double s = 0.0;
  std::vector<Mat> grads = trace_gradient(phi, rep);
  for (Mat& g : grads) {
    if (star) g = skew_hermitian_part(g);
    s += g.squaredNorm();
  }
  return s;
}

inline DescentResult critical_descent(const CyclicPoly& phi, RepPoint rep,
                                      int max_iter = 200, double step0 = 1e-2,
                                      double tol = 1e-8, bool star = false) {
  const Quiver& q = *phi.q;
  double fd = 1e-6;
  DescentResult res{rep, 0.0, 0};
  for (int it = 0; it < max_iter; ++it) {
    double s0 = sumsq_gradient(phi, rep, star);
    res.iterations = it;
    if (std::sqrt(s0) <= tol) break;
    // finite-difference gradient of s over all real coordinates
    std::vector<Mat> dir;
    dir.reserve(q.nedges());
    for (int e = 0; e < q.nedges(); ++e) {
      Mat d = Mat::Zero(rep.mats[e].rows(), rep.mats[e].cols());
      for (int i = 0; i < d.rows(); ++i)
        for (int j = 0; j < d.cols(); ++j) {
          RepPoint pert = rep;
          pert.mats[e](i, j) += fd;
          double dre = (sumsq_gradient(phi, pert, star) - s0) / fd;
          pert.mats[e](i, j) = rep.mats[e](i, j) + Cplx(0.0, fd);
          double dim_ = (sumsq_gradient(phi, pert, star) - s0) / fd;
          d(i, j) = Cplx(dre, dim_);
        }
      dir.push_back(std::move(d));
    }
    double step = step0;
    bool moved = false;
    for (int bt = 0; bt < 30; ++bt) {
      RepPoint cand = rep;
      for (int e = 0; e < q.nedges(); ++e) cand.mats[e] -= step * dir[e];
      if (sumsq_gradient(phi, cand, star) < s0) {
        rep = std::move(cand);
        moved = true;
        break;
      }
      step *= 0.5;
    }
    if (!moved) break;
  }
  res.rep = rep;
  res.residual = critical_residual(phi, res.rep, star);
  return res;
}

// Yang–Mills potential on the free algebra C<x_1..x_n>:
//   Ψ = -1/4 Σ_{i,j} (x_i x_j - x_j x_i)²  +  1/3 Σ_{p,q,r} c_{pqr} x_p x_q x_r
// with c a totally skew tensor of structure constants (pass all zeros for the
// abelian case).  Coefficients stay exact when c is rational.
inline CyclicPoly yang_mills_potential(
    const Quiver& q,
    const std::function<Scalar(int, int, int)>& c = nullptr) {
  int n = q.nedges();
  CyclicPoly psi(q);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      NCPoly comm = NCPoly::gen(q, i) * NCPoly::gen(q, j) -
                    NCPoly::gen(q, j) * NCPoly::gen(q, i);
      psi += Scalar(Rat(-1, 4)) * project_cyclic(comm * comm);
    }
  if (c) {
    for (int p = 0; p < n; ++p)
      for (int qq = 0; qq < n; ++qq)
        for (int r = 0; r < n; ++r) {
          Scalar cc = c(p, qq, r);
          if (cc.is_zero()) continue;
          psi += Scalar(Rat(1, 3)) * cc *
                 project_cyclic(NCPoly::gen(q, p) * NCPoly::gen(q, qq) *
                                NCPoly::gen(q, r));
        }
  }
  return psi;
}

}  // namespace ncpot
