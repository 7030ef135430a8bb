#pragma once

#include "ncpot/mckay.hpp"

// Curated quivers and potentials shared by the CLI, the bundled example
// generator, and the acceptance suite.

namespace ncpot::builtins {

inline Quiver free3() { return Quiver::free_algebra({"x", "y", "z"}); }

// commutator potential xyz - yxz; quotient = C[x,y,z]
inline CyclicPoly basic_potential(const Quiver& q) {
  return cyclic_word(q, {"x", "y", "z"}) - cyclic_word(q, {"y", "x", "z"});
}

// non-CY control: x^3 presents C<x,y,z>/((x^2))
inline CyclicPoly x3_potential(const Quiver& q) {
  return cyclic_word(q, {"x", "x", "x"});
}

// quadratic deformation family member (a,b,c) = (1,2,1)
inline CyclicPoly sklyanin_quadratic(const Quiver& q) {
  return cyclic_word(q, {"x", "y", "z"}) +
         cyclic_word(q, {"y", "x", "z"}, Scalar(2)) +
         cyclic_word(q, {"x", "x", "x"}) + cyclic_word(q, {"y", "y", "y"}) +
         cyclic_word(q, {"z", "z", "z"});
}

// cubic family: two degree-1 generators and one degree-2 generator
inline Quiver cubic_quiver() {
  return Quiver({"o"}, {{"x", 0, 0, 1}, {"y", 0, 0, 1}, {"z", 0, 0, 2}});
}

// 1/2 z^2 + z[x,y] + p(x^2y^2 + xyxy) + q(x^4 + y^4) at (p,q) = (1,1)
inline CyclicPoly sklyanin_cubic(const Quiver& q) {
  return cyclic_word(q, {"z", "z"}, Scalar(Rat(1, 2))) +
         cyclic_word(q, {"x", "y", "z"}) - cyclic_word(q, {"y", "x", "z"}) +
         cyclic_word(q, {"x", "x", "y", "y"}) +
         cyclic_word(q, {"x", "y", "x", "y"}) +
         cyclic_word(q, {"x", "x", "x", "x"}) +
         cyclic_word(q, {"y", "y", "y", "y"});
}

inline Quiver conifold() {
  return Quiver({"0", "1"}, {{"a1", 0, 1, 1},
                             {"a2", 0, 1, 1},
                             {"b1", 1, 0, 1},
                             {"b2", 1, 0, 1}});
}
inline CyclicPoly conifold_potential(const Quiver& q) {
  return cyclic_word(q, {"a1", "b1", "a2", "b2"}) -
         cyclic_word(q, {"a1", "b2", "a2", "b1"});
}

// cyclic quiver on k vertices, one arrow i -> i+1; the full-cycle potential
inline Quiver cyclic_quiver(int k) {
  std::vector<std::string> vs;
  std::vector<Edge> es;
  for (int i = 0; i < k; ++i) vs.push_back(std::to_string(i));
  for (int i = 0; i < k; ++i)
    es.push_back({"x" + std::to_string(i), i, (i + 1) % k, 1});
  return Quiver(vs, es);
}
inline CyclicPoly cycle_potential(const Quiver& q) {
  Path p;
  p.vtx = 0;
  for (int i = 0; i < q.nedges(); ++i) p.es.push_back(i);
  NCPoly f(q);
  f.add(p, Scalar(1));
  return project_cyclic(f);
}

}  // namespace ncpot::builtins
