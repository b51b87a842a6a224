#include <doctest.h>

#include <random>

#include "../support/fixtures.hpp"
#include "ncf/errors.hpp"
#include "ncf/etale.hpp"

using namespace ncf;
using namespace fixtures;

namespace {

const std::vector<NcPoly> split_a = {c(-1), NcPoly{}, c(1)};

Presentation point() { return Presentation{"Q", {}, {}, 1}; }

// Q[e]/(e^2) -> Q with beta(z) = 1, beta(u) = 1/2
EtaleDiagram dual_numbers_diagram() {
  Presentation Ap{"dual", {{"e", 0}}, {g(0) * g(0)}, 2};
  AlgebraPtr T = build_truncated(Ap);
  CentralExtension ce = central_extension(T, two_sided_ideal(*T, {T->from_poly(g(0))}));
  const Presentation S = standard_etale(point(), split_a, 3);
  AlgebraMorphism beta{S, ce.quotient, {ce.quotient->unit(), ce.quotient->unit() * Rational(1, 2)}};
  return EtaleDiagram{point(), S, {}, beta, AlgebraMorphism{point(), T, {}}, ce};
}

Vec random_in(const Subspace& I, std::mt19937& rng) {
  std::uniform_int_distribution<int> coeff(-2, 2);
  Vec v;
  for (const auto& b : I.basis()) v.add_scaled(b, coeff(rng));
  return v;
}

}  // namespace

TEST_CASE("standard etale presentations") {
  const Presentation S = standard_etale(point(), split_a, 3);
  CHECK(S.names() == std::vector<std::string>{"z", "u"});
  REQUIRE(S.relations.size() == 3);
  CHECK(format_poly(S.relations[0], S.names()) == "z*z - 1");
  CHECK(format_poly(S.relations[1], S.names()) == "2*u*z - 1");
  CHECK(format_poly(S.relations[2], S.names()) == "2*z*u - 1");
  CHECK(normal_form(g(0) * g(0), S) == c(1));

  const Presentation lin = standard_etale(point(), {NcPoly{}, c(1)}, 2);
  CHECK(format_poly(lin.relations[0], lin.names()) == "z");
  CHECK(format_poly(lin.relations[1], lin.names()) == "u - 1");
  CHECK(build_truncated(lin)->dim() == 1);

  // over Q[c]/(c^2) with a = (c - 1, 0, 1)
  Presentation base{"dual", {{"c", 0}}, {g(0) * g(0)}, 4};
  const Presentation Sc = standard_etale(base, {g(0) - c(1), NcPoly{}, c(1)}, 4);
  CHECK_NOTHROW(build_truncated(Sc));
  CHECK(normal_form(g(1) * g(1), Sc) == normal_form(c(1) - g(0), Sc));

  CHECK_THROWS_AS(standard_etale(point(), {c(1)}, 2), InvalidArgument);
}

TEST_CASE("central extension validation") {
  auto diag = dual_numbers_diagram();
  CHECK_FALSE(diag.gamma.witness());
  CHECK(diag.gamma.kernel.dim() == 1);
  CHECK(diag.gamma.quotient->dim() == 1);

  // e does not commute with x
  Presentation Ap{"nc", {{"x", 0}, {"e", 0}}, {g(1) * g(1), g(0) * g(0)}, 3};
  Ap = with_truncation_relations(Ap);
  AlgebraPtr T = build_truncated(Ap);
  CentralExtension bad = central_extension(T, two_sided_ideal(*T, {T->from_poly(g(1))}));
  CHECK_THROWS_AS(bad.validate(), NotCentralExtension);

  // I = (e) with e central but e*e != 0
  Presentation Bp{"sq", {{"e", 0}}, {g(0) * g(0) * g(0)}, 3};
  AlgebraPtr B = build_truncated(Bp);
  CentralExtension sq = central_extension(B, two_sided_ideal(*B, {B->from_poly(g(0))}));
  auto w = sq.witness();
  REQUIRE(w);
  CHECK(w->find("I^2") != std::string::npos);
}

TEST_CASE("lift of the double point along dual numbers") {
  auto diag = dual_numbers_diagram();
  const Algebra& T = *diag.gamma.total;
  const Vec e = T.from_poly(g(0));
  const Vec x = T.unit() + e;
  const Vec y = T.unit() * Rational(1, 2);
  auto L = lift_standard(diag, split_a, x, y);
  // p = -y((1+e)^2 - 1) = -e, F = 2(x + p) = 2, q = y(1 - 2y) = 0
  CHECK(L.p == -e);
  CHECK(L.q.is_zero());
  CHECK(L.epsilon.images[0] == T.unit());
  CHECK(L.epsilon.images[1] == y);
  CHECK_FALSE(L.relation_failure);
  CHECK(L.unique());
  CHECK(L.matches_solver);

  // already a solution: no correction
  auto exact = lift_standard(diag, split_a, T.unit(), y);
  CHECK(exact.p.is_zero());
  CHECK(exact.q.is_zero());

  CHECK_THROWS_AS(lift_standard(diag, split_a, T.unit() * Rational(2), y), PreimageMismatch);
}

TEST_CASE("lift with zero kernel") {
  Presentation Ap = double_point(3);
  AlgebraPtr T = build_truncated(Ap);
  CentralExtension ce = central_extension(T, Subspace(T->dim()));
  const Presentation S = standard_etale(point(), split_a, 3);
  AlgebraMorphism beta{S, ce.quotient, {ce.quotient->from_poly(g(0)), ce.quotient->from_poly(g(1))}};
  EtaleDiagram diag{point(), S, {}, beta, AlgebraMorphism{point(), T, {}}, ce};
  auto L = lift_standard(diag, split_a, T->from_poly(g(0)), T->from_poly(g(1)));
  CHECK(L.p.is_zero());
  CHECK(L.q.is_zero());
  CHECK(L.unique());
}

TEST_CASE("closed form lifts over generated families") {
  std::mt19937 rng(19);
  for (bool rational : {true, false}) {
    FamilySpec spec;
    spec.rational_base = rational;
    spec.d = 1;
    auto fam = generate_family(spec, 20, rational ? 101 : 202);
    CAPTURE(rational);
    REQUIRE(fam.diagrams.size() == 20);
    const std::size_t n = fam.R.gens.size();
    for (const auto& diag : fam.diagrams) {
      CHECK_FALSE(diag.commute_witness());
      CHECK_FALSE(diag.gamma.witness());
      const Vec x = *diag.gamma.gamma.solve(diag.beta.images[n]) + random_in(diag.gamma.kernel, rng);
      const Vec y = *diag.gamma.gamma.solve(diag.beta.images[n + 1]) + random_in(diag.gamma.kernel, rng);
      auto L = lift_standard(diag, fam.a, x, y);
      CHECK_FALSE(L.relation_failure);
      CHECK(L.unique());
      CHECK(L.matches_solver);
      CHECK(diag.gamma.gamma.apply(L.p).is_zero());
      CHECK(diag.gamma.gamma.apply(L.q).is_zero());
    }
    CHECK(check_formally_etale(fam.diagrams).verified_over_family());
  }
}

TEST_CASE("families are deterministic in the seed") {
  FamilySpec spec;
  auto a = generate_family(spec, 5, 7);
  auto b = generate_family(spec, 5, 7);
  REQUIRE(a.diagrams.size() == b.diagrams.size());
  CHECK(a.rejected == b.rejected);
  for (std::size_t i = 0; i < a.diagrams.size(); ++i) {
    CHECK(a.diagrams[i].gamma.total->presentation()->relations ==
          b.diagrams[i].gamma.total->presentation()->relations);
    CHECK(a.diagrams[i].delta.images == b.diagrams[i].delta.images);
  }
}

TEST_CASE("free extension is not etale") {
  FamilySpec spec;
  auto fam = generate_family(spec, 6, 33);
  std::size_t nontrivial = 0;
  for (const auto& base : fam.diagrams) {
    // S = R<w>, beta(w) = x
    Presentation S = fam.R;
    S.gens.push_back({"w", 0});
    const Vec bx = base.beta.images[0];
    AlgebraMorphism beta{S, base.beta.target, {base.beta.images[0], base.beta.images[1], bx}};
    EtaleDiagram diag{fam.R, S, inclusion_images(fam.R), beta, base.delta, base.gamma};
    auto rep = check_formally_etale({diag});
    REQUIRE(rep.cases.size() == 1);
    CHECK(rep.cases[0].exists);
    CHECK(rep.cases[0].solution_dim == base.gamma.kernel.dim());
    if (base.gamma.kernel.dim() > 0) {
      ++nontrivial;
      CHECK_FALSE(rep.verified_over_family());
    }

    // identity R -> R
    EtaleDiagram id{fam.R, fam.R, inclusion_images(fam.R),
                    AlgebraMorphism{fam.R, base.beta.target, {base.beta.images[0], base.beta.images[1]}},
                    base.delta, base.gamma};
    CHECK(check_formally_etale({id}).verified_over_family());
  }
  CHECK(nontrivial > 0);
}

TEST_CASE("non-commuting diagram is reported") {
  FamilySpec spec;
  auto fam = generate_family(spec, 1, 5);
  REQUIRE(fam.diagrams.size() == 1);
  auto diag = fam.diagrams[0];
  diag.beta.images[0] = diag.beta.images[0] + diag.beta.target->unit();
  auto rep = check_formally_etale({diag});
  CHECK(rep.cases[0].commute_failure);
  CHECK_FALSE(rep.verified_over_family());
}

TEST_CASE("derivations transfer along an etale map") {
  // R = Q[t], S = R<z,u> with z^2 = t, M = Q[z]/((z-1)^2) on the basis 1, e = z - 1
  Presentation R{"line", {{"t", 0}}, {}, 4};
  const Presentation S = standard_etale(R, {-g(0), NcPoly{}, c(1)}, 4);
  CentralModule M;
  M.dim = 2;
  const Vec one = Vec::unit(0), e = Vec::unit(1);
  M.action = {{one + e * Rational(2), e},
              {one + e, e},
              {one * Rational(1, 2) - e * Rational(1, 2), e * Rational(1, 2)}};
  auto rep = derivation_transfer_check(R, S, inclusion_images(R), M);
  CHECK(rep.der_S == 2);
  CHECK(rep.der_R == 2);
  CHECK(rep.bijective());

  CentralModule zero;
  zero.action = {{}, {}, {}};
  auto z = derivation_transfer_check(R, S, inclusion_images(R), zero);
  CHECK(z.der_S == 0);
  CHECK(z.der_R == 0);
  CHECK(z.bijective());

  CentralModule Mr;
  Mr.dim = 2;
  Mr.action = {M.action[0]};
  auto id = derivation_transfer_check(R, R, inclusion_images(R), Mr);
  CHECK(id.der_S == 2);
  CHECK(id.bijective());

  // free extension: Der(S) is bigger
  Presentation W = R;
  W.gens.push_back({"w", 0});
  CentralModule Mw;
  Mw.dim = 2;
  Mw.action = {M.action[0], M.action[1]};
  auto free = derivation_transfer_check(R, W, inclusion_images(R), Mw);
  CHECK(free.der_S == 4);
  CHECK_FALSE(free.injective);

  CentralModule broken = M;
  broken.action[2] = {one, e};
  CHECK_THROWS_AS(derivation_transfer_check(R, S, inclusion_images(R), broken), InvalidArgument);
}

TEST_CASE("central extensions in N_d stay in N_d") {
  for (int d = 0; d <= 2; ++d) {
    FamilySpec spec;
    spec.d = d;
    spec.base_bound = d == 2 ? 3 : 2;
    auto fam = generate_family(spec, 10, 500 + d);
    CAPTURE(d);
    REQUIRE(fam.diagrams.size() == 10);
    for (const auto& diag : fam.diagrams) CHECK(nd_closure_check(diag, d).in_nd());
  }
  FamilySpec rat;
  rat.rational_base = true;
  for (const auto& diag : generate_family(rat, 10, 3).diagrams) CHECK(nd_closure_check(diag, 0).in_nd());
}

TEST_CASE("A' outside N_d is caught") {
  // A' = free on x, y mod F^3 and degree > 3, which has [x,[x,y]] != 0
  Presentation P = with_truncation_relations(free_algebra(2, 2));
  AlgebraPtr T = build_truncated(P);
  CentralExtension ce = central_extension(T, Subspace(T->dim()));
  EtaleDiagram diag{point(), standard_etale(point(), split_a, 3), {}, AlgebraMorphism{}, AlgebraMorphism{}, ce};
  CHECK_FALSE(nd_closure_check(diag, 0).in_nd());
}

TEST_CASE("topological invariance") {
  // commutative X: the lift is the commutative extension itself
  auto flat = topological_invariance_harness(with_truncation_relations(polynomial_ring(1, 2)), 0, {-1, 0, 1}, 6);
  CHECK(flat.certified);
  CHECK(flat.in_nd);
  CHECK(flat.abelianization_matches);
  CHECK(flat.abelian_dim == 6);

  Presentation free = with_truncation_relations(free_algebra(2, 2));
  Presentation X = *quotient_rd(*build_truncated(free), 1)->presentation();
  auto rep = topological_invariance_harness(X, 1, {-1, 0, 1}, 6);
  CHECK(rep.certified);
  CHECK(rep.in_nd);
  CHECK(rep.abelianization_matches);
  CHECK(rep.expected_abelian_dim == 12);
  CHECK(rep.rd_dims == std::vector<std::size_t>{12, 14, 14});

  Presentation bad = X;
  bad.relations.push_back(c(1));
  CHECK_THROWS_AS(topological_invariance_harness(bad, 1, {-1, 0, 1}, 4), LiftInconsistent);
}
