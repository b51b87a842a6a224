#pragma once

#include <random>

#include "ncf/ncalg.hpp"

namespace fixtures {

using ncf::NcPoly;
using ncf::Presentation;

inline NcPoly g(int i) { return NcPoly::gen(i); }
inline NcPoly c(const ncf::Rational& q) { return NcPoly::constant(q); }

inline Presentation free_algebra(int gens, int bound) {
  Presentation p;
  p.name = "free";
  const char* names[] = {"x", "y", "z", "w", "v"};
  for (int i = 0; i < gens; ++i) p.gens.push_back({names[i], 0});
  p.bound = bound;
  return p;
}

inline Presentation polynomial_ring(int gens, int bound) {
  Presentation p = free_algebra(gens, bound);
  p.name = "poly";
  for (int a = 0; a < gens; ++a) {
    for (int b = a + 1; b < gens; ++b) p.relations.push_back(ncf::commutator(g(a), g(b)));
  }
  return p;
}

// x:0, d:1 with d*x - x*d - 1
inline Presentation weyl(int bound) {
  Presentation p;
  p.name = "weyl";
  p.gens = {{"x", 0}, {"d", 1}};
  p.relations = {g(1) * g(0) - g(0) * g(1) - c(1)};
  p.bound = bound;
  return p;
}

// z, u with z^2 - 1, 2uz - 1, 2zu - 1
inline Presentation double_point(int bound) {
  Presentation p;
  p.name = "double_point";
  p.gens = {{"z", 0}, {"u", 0}};
  p.relations = {g(0) * g(0) - c(1), c(2) * g(1) * g(0) - c(1), c(2) * g(0) * g(1) - c(1)};
  p.bound = bound;
  return p;
}

inline ncf::LieAlgebroidPresentation weyl_algebroid(int bound) {
  ncf::LieAlgebroidPresentation lp;
  lp.base = free_algebra(1, bound);
  lp.base.name = "line";
  lp.l_names = {"d"};
  lp.anchor = {{c(1)}};
  return lp;
}

inline ncf::LieAlgebroidPresentation heisenberg_algebroid(int bound) {
  ncf::LieAlgebroidPresentation lp;
  lp.base.name = "point";
  lp.base.bound = bound;
  lp.l_names = {"p", "q"};
  lp.anchor = {{}, {}};
  lp.brackets = {{0, 1, {NcPoly{}, NcPoly{}}, c(1)}};
  return lp;
}

/// Random polynomial with small integer coefficients, degree <= maxdeg.
inline NcPoly random_poly(std::mt19937& rng, int gens, int maxdeg, int terms) {
  std::uniform_int_distribution<int> coeff(-3, 3);
  std::uniform_int_distribution<int> len(0, maxdeg);
  std::uniform_int_distribution<int> letter(0, gens - 1);
  NcPoly p;
  for (int t = 0; t < terms; ++t) {
    ncf::Word w(len(rng));
    for (auto& l : w) l = letter(rng);
    p.add_term(w, coeff(rng));
  }
  return p;
}

}  // namespace fixtures
