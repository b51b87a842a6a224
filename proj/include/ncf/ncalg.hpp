#pragma once

#include <string>
#include <vector>

#include "ncf/algebra.hpp"

namespace ncf {

/// pq - qp for inputs in normal form.
NcPoly commutator(const NcPoly& p, const NcPoly& q, const Algebra& alg);

/// R_0 = A, R_{i+1} = [A, R_i].
Subspace lcs_term(const Algebra& alg, int i);

/// Sum over compositions i_1 + ... + i_m = d (positive parts) of
/// A R_{i_1} A ... A R_{i_m} A. F^0 is the whole algebra. In a
/// non-truncating algebra only products that fit under the bound are used.
Subspace nc_filtration(const Algebra& alg, int d);

/// All F^0 .. F^top at once; shares the lower central series work.
std::vector<Subspace> nc_filtration_tower(const Algebra& alg, int top);

/// Span of all products a*b, a in I, b in J.
Subspace ideal_product(const Algebra& alg, const Subspace& I, const Subspace& J);

/// A / F^{d+1}.
AlgebraPtr quotient_rd(const Algebra& alg, int d);

struct CertifiedQuotient {
  AlgebraPtr algebra;
  bool certified = false;  // result exact, so it is the honest r_d
  int rounds = 0;
};

/// r_d of the algebra presented by P when the truncated algebra is not
/// exact: relations grow by the part of F^{d+1} computable without
/// truncation until it vanishes, then the result is checked for exactness.
CertifiedQuotient certified_rd(Presentation P, int d);

struct Bracket {
  int i = 0;
  int j = 0;
  std::vector<NcPoly> coeffs;  // [l_i, l_j] = sum_k coeffs[k] l_k + omega
  NcPoly omega;
};

/// Lie algebroid on a free module with basis l_1..l_r over a commutative
/// base, plus the scalar part of a central extension.
struct LieAlgebroidPresentation {
  Presentation base;
  std::vector<std::string> l_names;
  std::vector<std::vector<NcPoly>> anchor;  // anchor[i][a] = sigma(l_i)(x_a)
  std::vector<Bracket> brackets;            // i < j; missing pairs are zero
  int rank() const { return static_cast<int>(l_names.size()); }
};

/// Throws JacobiFailure (with the offending identity) if the anchor is not
/// a derivation of the base, is not a Lie homomorphism, or the Jacobi
/// identity fails in the extended algebroid.
void check_algebroid(const LieAlgebroidPresentation& lp);

/// Presentation of the enveloping algebra: base generators (weight 0) and
/// l-generators (weight 1).
Presentation enveloping_presentation(const LieAlgebroidPresentation& lp, int bound);

struct PbwReport {
  std::vector<std::size_t> graded_dims;    // dim A_i / A_{i-1}
  std::vector<std::size_t> expected_dims;  // C(r+i-1, i) * #base monomials of degree <= D-i
  int first_failure = -1;
  bool ok() const { return first_failure < 0; }
};

PbwReport pbw_dimension_check(const LieAlgebroidPresentation& lp, int bound);

/// Span of normal forms of words of weight <= i.
Subspace weight_filtration(const Algebra& alg, int i);

}  // namespace ncf
