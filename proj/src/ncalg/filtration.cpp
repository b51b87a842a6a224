#include "ncf/ncalg.hpp"

#include "ncf/errors.hpp"

namespace ncf {

NcPoly commutator(const NcPoly& p, const NcPoly& q, const Algebra& alg) {
  return alg.to_poly(alg.commutator(alg.from_poly(p), alg.from_poly(q)));
}

namespace {

// True if a*b is zero by degree, or cannot be computed without truncation.
bool skip_product(const Algebra& alg, const Vec& a, const Vec& b) {
  if (!alg.truncates()) return !alg.computable(a, b);
  return alg.min_degree(a) + alg.min_degree(b) > alg.bound();
}

Subspace next_lcs(const Algebra& alg, const Subspace& prev, bool prev_is_full) {
  Subspace next(alg.dim());
  next.defer_canonical();
  for (std::size_t j = 0; j < alg.dim(); ++j) {
    const Vec b = alg.basis_vec(j);
    for (const auto& [p, v] : prev.rows()) {
      if (prev_is_full && p <= j) continue;  // [b_j, b_k] = -[b_k, b_j]
      if (skip_product(alg, b, v) || skip_product(alg, v, b)) continue;
      next.insert(alg.commutator(b, v));
    }
  }
  next.canonicalize();
  return next;
}

}  // namespace

Subspace lcs_term(const Algebra& alg, int i) {
  if (i < 0) throw InvalidArgument("lower central series index must be nonnegative");
  Subspace r = Subspace::full(alg.dim());
  for (int k = 1; k <= i && !r.is_zero(); ++k) r = next_lcs(alg, r, k == 1);
  return r;
}

Subspace ideal_product(const Algebra& alg, const Subspace& I, const Subspace& J) {
  Subspace out(alg.dim());
  out.defer_canonical();
  for (const auto& [pa, a] : I.rows()) {
    for (const auto& [pb, b] : J.rows()) {
      if (skip_product(alg, a, b)) continue;
      out.insert(alg.mul(a, b));
    }
  }
  out.canonicalize();
  return out;
}

std::vector<Subspace> nc_filtration_tower(const Algebra& alg, int top) {
  std::vector<Subspace> F{Subspace::full(alg.dim())};
  std::vector<Subspace> ideals{Subspace::full(alg.dim())};  // I_0 unused
  Subspace r = Subspace::full(alg.dim());
  for (int k = 1; k <= top; ++k) {
    r = r.is_zero() ? r : next_lcs(alg, r, k == 1);
    ideals.push_back(two_sided_ideal(alg, r.basis()));
  }
  for (int d = 1; d <= top; ++d) {
    Subspace f = ideals[d];
    f.defer_canonical();
    for (int k = 1; k < d; ++k) {
      if (ideals[k].is_zero() || F[d - k].is_zero()) continue;
      f.insert_all(ideal_product(alg, ideals[k], F[d - k]));
    }
    f.canonicalize();
    F.push_back(std::move(f));
  }
  return F;
}

Subspace nc_filtration(const Algebra& alg, int d) {
  if (d < 0) throw InvalidArgument("filtration index must be nonnegative");
  return nc_filtration_tower(alg, d).back();
}

AlgebraPtr quotient_rd(const Algebra& alg, int d) {
  if (d < 0) throw InvalidArgument("r_d needs d >= 0");
  return quotient(alg, nc_filtration(alg, d + 1));
}

CertifiedQuotient certified_rd(Presentation P, int d) {
  if (d < 0) throw InvalidArgument("r_d needs d >= 0");
  CertifiedQuotient out;
  for (bool truncate = false;;) {
    ++out.rounds;
    out.algebra = build_truncated(P, truncate);
    const Subspace F = nc_filtration(*out.algebra, d + 1);
    if (F.is_zero()) {
      if (truncate) break;
      if (!out.algebra->exact()) break;
      // exact: truncated products are honest from here on
      truncate = true;
      continue;
    }
    for (const auto& v : F.basis()) P.relations.push_back(out.algebra->to_poly(v));
  }
  out.certified = out.algebra->truncates() && out.algebra->exact();
  return out;
}

Subspace weight_filtration(const Algebra& alg, int i) {
  if (!alg.has_words() || !alg.presentation()) throw InvalidArgument("weight filtration needs a word algebra");
  const auto& pres = *alg.presentation();
  const WordSpace& ws = alg.reduction().space;
  Subspace s(alg.dim());
  s.defer_canonical();
  for (std::size_t k = 0; k < ws.size(); ++k) {
    const Word w = ws.word(k);
    if (pres.word_weight(w) <= i) s.insert(alg.from_word(w));
  }
  s.canonicalize();
  return s;
}

}  // namespace ncf
