#include <doctest.h>

#include "../support/fixtures.hpp"
#include "../support/free_oracle.hpp"
#include "ncf/errors.hpp"
#include "ncf/ncalg.hpp"

using namespace ncf;
using namespace fixtures;

namespace {

std::vector<std::string> labels_of(const Algebra& a) { return a.labels(); }

Subspace as_word_coords(const Algebra& alg, const oracle::FreeTruncated& f, const Subspace& s) {
  Subspace out(f.words.size());
  for (const auto& v : s.basis()) {
    out.insert(v.remap([&](std::size_t i) -> std::optional<std::size_t> { return f.index.at(alg.words()[i]); }));
  }
  return out;
}

}  // namespace

TEST_CASE("normal forms of the basic examples") {
  auto W = build_truncated(weyl(3));
  CHECK(format_poly(W->to_poly(W->from_poly(g(1) * g(0))), {"x", "d"}) == "x*d + 1");
  CHECK(normal_form(NcPoly{}, weyl(3)).is_zero());
  CHECK(normal_form(g(0) * g(0), double_point(2)) == c(1));
  CHECK(normal_form(g(0) * g(0), double_point(4)) == c(1));
}

TEST_CASE("truncated bases") {
  CHECK(labels_of(*build_truncated(free_algebra(1, 3))) ==
        std::vector<std::string>{"1", "x", "x*x", "x*x*x"});
  CHECK(build_truncated(polynomial_ring(2, 2))->dim() == 6);
  CHECK(labels_of(*build_truncated(weyl(2))) ==
        std::vector<std::string>{"1", "x", "d", "x*x", "x*d", "d*d"});
  // at bound 3 the closure finds 2u - z, leaving {1, z}
  CHECK(labels_of(*build_truncated(double_point(3))) == std::vector<std::string>{"1", "z"});
}

TEST_CASE("degenerate and overflowing presentations") {
  Presentation bad = free_algebra(1, 2);
  bad.relations = {g(0), g(0) - c(1)};
  CHECK_THROWS_AS(build_truncated(bad), InconsistentPresentation);
  auto strict = build_truncated(weyl(2), false);
  CHECK_THROWS_AS(strict->mul(strict->from_poly(g(1) * g(1)), strict->from_poly(g(0))), DegreeOverflow);
  CHECK_THROWS_AS(normal_form(g(0) * g(0) * g(0), weyl(2), false), DegreeOverflow);
  CHECK(normal_form(g(0) * g(0) * g(0), weyl(2)).is_zero());
  Presentation unknown = free_algebra(1, 2);
  unknown.relations = {g(3)};
  CHECK_THROWS_AS(build_truncated(unknown), UnknownGenerator);
}

TEST_CASE("commutators") {
  auto W = build_truncated(weyl(3));
  CHECK(commutator(g(0), g(0), *W).is_zero());
  CHECK(commutator(g(1), g(0), *W) == c(1));
  auto F = build_truncated(free_algebra(2, 3));
  CHECK(commutator(g(0), g(1), *F) == g(0) * g(1) - g(1) * g(0));
}

TEST_CASE("lower central series") {
  auto P = build_truncated(polynomial_ring(2, 3));
  CHECK(lcs_term(*P, 1).is_zero());
  auto F = build_truncated(free_algebra(2, 2));
  CHECK(lcs_term(*F, 0).dim() == F->dim());
  auto r1 = lcs_term(*F, 1);
  CHECK(r1.dim() == 1);
  CHECK(r1.contains(F->from_poly(g(0) * g(1) - g(1) * g(0))));
}

TEST_CASE("filtration on commutative and free algebras") {
  auto P = build_truncated(polynomial_ring(2, 3));
  CHECK(nc_filtration(*P, 1).is_zero());
  auto F = build_truncated(free_algebra(2, 3));
  auto f1 = nc_filtration(*F, 1);
  CHECK(f1 == two_sided_ideal(*F, {F->from_poly(commutator(g(0), g(1)))}));
  CHECK(nc_filtration(*F, 4).is_zero());
  CHECK(nc_filtration(*F, 0).dim() == F->dim());
}

TEST_CASE("filtration dims agree with literal enumeration") {
  for (int D = 1; D <= 4; ++D) {
    auto F = build_truncated(free_algebra(2, D));
    oracle::FreeTruncated ref(2, D);
    const auto tower = nc_filtration_tower(*F, 4);
    for (int d = 0; d <= 4; ++d) {
      CAPTURE(D);
      CAPTURE(d);
      const Subspace expect = ref.filtration(d);
      CHECK(tower[d].dim() == expect.dim());
      CHECK(as_word_coords(*F, ref, tower[d]) == expect);
      CHECK(tower[d] == nc_filtration(*F, d));
    }
  }
  // frozen from the enumeration above
  auto F4 = build_truncated(free_algebra(2, 4));
  std::vector<std::size_t> dims;
  for (const auto& s : nc_filtration_tower(*F4, 4)) dims.push_back(s.dim());
  CHECK(dims == std::vector<std::size_t>{31, 16, 10, 3, 0});
}

TEST_CASE("filtration is decreasing and multiplicative") {
  for (auto pres : {free_algebra(2, 4), weyl(4), free_algebra(3, 3)}) {
    auto A = build_truncated(pres);
    const auto F = nc_filtration_tower(*A, A->bound() + 1);
    for (int d = 0; d + 1 < static_cast<int>(F.size()); ++d) CHECK(F[d].contains(F[d + 1]));
    for (int i = 1; i < static_cast<int>(F.size()); ++i) {
      for (int j = 1; i + j < static_cast<int>(F.size()); ++j) {
        CHECK(F[i + j].contains(ideal_product(*A, F[i], F[j])));
      }
    }
  }
}

TEST_CASE("r_d quotients") {
  auto F = build_truncated(free_algebra(2, 3));
  auto r0 = quotient_rd(*F, 0);
  CHECK(r0->commutative());
  CHECK(r0->dim() == build_truncated(polynomial_ring(2, 3))->dim());
  auto r1 = quotient_rd(*F, 1);
  oracle::FreeTruncated ref(2, 3);
  CHECK(r1->dim() == ref.words.size() - ref.filtration(2).dim());
  CHECK(r1->dim() == 13);
  CHECK(nc_filtration(*r1, 2).is_zero());
  auto P = build_truncated(polynomial_ring(2, 3));
  CHECK(quotient_rd(*P, 2)->dim() == P->dim());
  for (int d = 0; d <= 3; ++d) {
    auto rd = quotient_rd(*build_truncated(free_algebra(2, 4)), d);
    CHECK(quotient_rd(*rd, d)->labels() == rd->labels());
    if (d > 0) {
      CHECK(quotient_rd(*rd, d - 1)->labels() ==
            quotient_rd(*build_truncated(free_algebra(2, 4)), d - 1)->labels());
    }
    // gr of the NC filtration is commutative: [a, b] lies in F^1
    const auto f1 = nc_filtration(*rd, 1);
    for (std::size_t i = 0; i < rd->dim(); ++i) {
      for (std::size_t j = 0; j < rd->dim(); ++j) {
        CHECK(f1.contains(rd->commutator(rd->basis_vec(i), rd->basis_vec(j))));
      }
    }
  }
}

TEST_CASE("word quotient and structure-constant quotient agree") {
  auto F = build_truncated(free_algebra(2, 4));
  const Subspace f2 = nc_filtration(*F, 2);
  auto via_words = quotient(*F, f2);
  Algebra::Data d = F->data();
  d.reduction.reset();
  d.presentation.reset();
  d.words.clear();
  Algebra plain(d);
  auto via_table = quotient(plain, f2);
  REQUIRE(via_words->dim() == via_table->dim());
  for (std::size_t i = 0; i < via_words->dim(); ++i) {
    for (std::size_t j = 0; j < via_words->dim(); ++j) {
      CHECK(via_words->product(i, j) == via_table->product(i, j));
    }
  }
  // the quotient presentation rebuilds the same algebra
  CHECK(build_truncated(*via_words->presentation())->labels() == via_words->labels());
}

TEST_CASE("normal form is an idempotent projector compatible with products") {
  std::mt19937 rng(2024);
  for (auto pres : {weyl(4), double_point(4), free_algebra(2, 4), polynomial_ring(3, 4)}) {
    auto A = build_truncated(pres);
    for (int trial = 0; trial < 40; ++trial) {
      NcPoly p = random_poly(rng, static_cast<int>(pres.gens.size()), 2, 3);
      NcPoly q = random_poly(rng, static_cast<int>(pres.gens.size()), 2, 3);
      const NcPoly np = A->to_poly(A->from_poly(p));
      CHECK(A->to_poly(A->from_poly(np)) == np);
      CHECK(A->from_poly(p + q) == A->from_poly(p) + A->from_poly(q));
      CHECK(A->from_poly(p * q) == A->mul(A->from_poly(p), A->from_poly(q)));
    }
    CHECK(A->associative_within_bound());
  }
}

TEST_CASE("random homogeneous presentations give associative truncations") {
  std::mt19937 rng(99);
  for (int trial = 0; trial < 8; ++trial) {
    Presentation p = free_algebra(2, 4);
    std::uniform_int_distribution<int> coeff(-2, 2);
    NcPoly rel;
    for (const Word& w : {Word{0, 0}, Word{0, 1}, Word{1, 0}, Word{1, 1}}) rel.add_term(w, coeff(rng));
    if (rel.is_zero()) continue;
    p.relations = {rel};
    auto A = build_truncated(p);
    CHECK(A->associative_within_bound());
    for (std::size_t i = 0; i < A->dim(); ++i) {
      CHECK(A->mul(A->unit(), A->basis_vec(i)) == A->basis_vec(i));
      CHECK(A->mul(A->basis_vec(i), A->unit()) == A->basis_vec(i));
    }
  }
}

TEST_CASE("enveloping presentations") {
  LieAlgebroidPresentation abelian;
  abelian.base.bound = 3;
  abelian.l_names = {"l"};
  abelian.anchor = {{}};
  auto U = build_truncated(enveloping_presentation(abelian, 3));
  CHECK(U->dim() == 4);
  CHECK(U->commutative());

  Presentation w = enveloping_presentation(weyl_algebroid(3), 3);
  REQUIRE(w.relations.size() == 1);
  CHECK(format_poly(w.relations[0], w.names()) == "d*x - x*d - 1");

  Presentation h = enveloping_presentation(heisenberg_algebroid(2), 2);
  REQUIRE(h.relations.size() == 1);
  CHECK(format_poly(h.relations[0], h.names()) == "-q*p + p*q - 1");
  CHECK(build_truncated(h)->dim() == 6);
}

TEST_CASE("Jacobi failures are reported") {
  LieAlgebroidPresentation lp;
  lp.base.bound = 2;
  lp.l_names = {"a", "b", "c"};
  lp.anchor = {{}, {}, {}};
  // [a,b] = a, [b,c] = b, [a,c] = 0 breaks Jacobi
  lp.brackets = {{0, 1, {c(1), NcPoly{}, NcPoly{}}, NcPoly{}}, {1, 2, {NcPoly{}, c(1), NcPoly{}}, NcPoly{}}};
  CHECK_THROWS_AS(enveloping_presentation(lp, 2), JacobiFailure);
  // sl2-like [h,e]=2e, [h,f]=-2f, [e,f]=h satisfies it
  LieAlgebroidPresentation sl2 = lp;
  sl2.l_names = {"h", "e", "f"};
  sl2.brackets = {{0, 1, {NcPoly{}, c(2), NcPoly{}}, NcPoly{}},
                  {0, 2, {NcPoly{}, NcPoly{}, c(-2)}, NcPoly{}},
                  {1, 2, {c(1), NcPoly{}, NcPoly{}}, NcPoly{}}};
  CHECK_NOTHROW(check_algebroid(sl2));
  // anchor not a Lie homomorphism: [d1, d2] = 0 but anchors do not commute
  LieAlgebroidPresentation bad;
  bad.base = polynomial_ring(1, 3);
  bad.l_names = {"d1", "d2"};
  bad.anchor = {{c(1)}, {g(0)}};
  CHECK_THROWS_AS(check_algebroid(bad), JacobiFailure);
}

TEST_CASE("PBW dimension check") {
  auto weyl_rep = pbw_dimension_check(weyl_algebroid(3), 3);
  CHECK(weyl_rep.ok());
  CHECK(weyl_rep.graded_dims == std::vector<std::size_t>{4, 3, 2, 1});
  auto heis = pbw_dimension_check(heisenberg_algebroid(3), 3);
  CHECK(heis.ok());
  CHECK(heis.graded_dims == std::vector<std::size_t>{1, 2, 3, 4});
  LieAlgebroidPresentation zero;
  zero.base = polynomial_ring(1, 3);
  auto z = pbw_dimension_check(zero, 3);
  CHECK(z.ok());
  CHECK(z.graded_dims == std::vector<std::size_t>{4, 0, 0, 0});
}

TEST_CASE("exactness of truncations") {
  CHECK(build_truncated(double_point(3))->exact());
  CHECK_FALSE(build_truncated(free_algebra(1, 3))->exact());
  CHECK(build_truncated(with_truncation_relations(free_algebra(2, 2)))->exact());
  CHECK_FALSE(build_truncated(weyl(3))->exact());
}

TEST_CASE("certified r_d when truncation is not exact") {
  // x nilpotent of order 3 and z an involution: the commutative quotient has
  // basis x^a z^e, a <= 2, e <= 1
  Presentation P = with_truncation_relations(free_algebra(1, 2));
  P.gens.push_back({"z", 0});
  P.relations.push_back(g(1) * g(1) - c(1));
  P.bound = 6;
  auto q = certified_rd(P, 0);
  CHECK(q.certified);
  CHECK(q.algebra->dim() == 6);
  CHECK(q.algebra->commutative());
}
