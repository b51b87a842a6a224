#pragma once

// Characters from powers of a primitive root built by repeated
// multiplication, and the transform P K Q as a direct quadruple sum; shares
// nothing with circle() or pairing().

#include <vector>

#include "ncf/fmkernel.hpp"

namespace oracle {

using ncf::Cyclotomic;
using ncf::FiniteAbGroup;
using ncf::Kernel;

struct Characters {
  const FiniteAbGroup& G;
  int e;
  std::vector<Cyclotomic> pow;

  explicit Characters(const FiniteAbGroup& g) : G(g), e(g.exponent()), pow(e, Cyclotomic(e, 1)) {
    for (int k = 1; k < e; ++k) pow[k] = pow[k - 1] * Cyclotomic::root(e, 1);
  }

  Cyclotomic operator()(std::size_t x, std::size_t c) const {
    const auto xs = G.element(x);
    const auto cs = G.element(c);
    long k = 0;
    for (std::size_t j = 0; j < xs.size(); ++j) k += xs[j] * cs[j] * (e / G.moduli()[j]);
    return pow[((k % e) + e) % e];
  }
};

inline Kernel transform(const Kernel& K) {
  const FiniteAbGroup& G = K.rows().group;
  const Characters chi(G);
  const std::size_t n = G.order();
  Kernel out(K.rows().dual_space(), K.rows().dual_space());
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      Cyclotomic s(chi.e);
      for (std::size_t u = 0; u < n; ++u) {
        for (std::size_t v = 0; v < n; ++v) {
          if (K.at(u, v).is_zero()) continue;
          s += chi(a, u) * K.at(u, v) * chi(b, v).inverse();
        }
      }
      out.at(a, b) = s * ncf::Rational(1, static_cast<long>(n));
    }
  }
  return out;
}

}  // namespace oracle
