#include <doctest.h>

#include <random>

#include "../support/fm_oracle.hpp"
#include "ncf/errors.hpp"
#include "ncf/fmkernel.hpp"

using namespace ncf;

namespace {

std::vector<FiniteAbGroup> test_groups() {
  std::vector<FiniteAbGroup> gs;
  for (long n = 2; n <= 12; ++n) gs.emplace_back(std::vector<long>{n});
  gs.emplace_back(std::vector<long>{2, 4});
  gs.emplace_back(std::vector<long>{3, 3});
  gs.emplace_back(std::vector<long>{2, 2, 2});
  return gs;
}

}  // namespace

TEST_CASE("groups and characters") {
  FiniteAbGroup G({2, 4});
  CHECK(G.order() == 8);
  CHECK(G.exponent() == 4);
  CHECK(G.str() == "Z2xZ4");
  CHECK(G.index({1, 3}) == 7);
  CHECK(G.element(7) == std::vector<long>{1, 3});
  CHECK(G.index({-1, 5}) == G.index({1, 1}));
  CHECK(G.order_of(G.index({0, 2})) == 2);
  CHECK(G.neg(G.index({1, 1})) == G.index({1, 3}));
  CHECK_THROWS_AS(FiniteAbGroup({3, 0}), ZeroModulus);

  Space Z3{FiniteAbGroup({3}), false};
  CHECK(pairing(Z3, 1, 1) == Cyclotomic::root(3, 1));
  Space Z2{FiniteAbGroup({2}), false};
  CHECK(pairing(Z2, 1, 1) == Cyclotomic(2, -1));

  // distinct character rows on Z2xZ4
  Space S{G, false};
  for (std::size_t c = 0; c < S.size(); ++c) {
    for (std::size_t d = c + 1; d < S.size(); ++d) {
      bool differ = false;
      for (std::size_t x = 0; x < S.size(); ++x) differ = differ || pairing(S, x, c) != pairing(S, x, d);
      CHECK(differ);
    }
  }
}

TEST_CASE("poincare kernel on Z2") {
  Space S{FiniteAbGroup({2}), false};
  Kernel P = poincare(S);
  CHECK(P.at(0, 0) == Cyclotomic(2, 1));
  CHECK(P.at(0, 1) == Cyclotomic(2, 1));
  CHECK(P.at(1, 0) == Cyclotomic(2, 1));
  CHECK(P.at(1, 1) == Cyclotomic(2, -1));
  CHECK(circle(P, inverse_kernel(S)) == diagonal(S));

  Space trivial{FiniteAbGroup(std::vector<long>{}), false};
  CHECK(poincare(trivial).at(0, 0) == Cyclotomic(1, 1));
  CHECK(circle(poincare(trivial), inverse_kernel(trivial)) == diagonal(trivial));
}

TEST_CASE("fourier inversion on the whole test matrix") {
  for (const auto& G : test_groups()) {
    Space S{G, false};
    CAPTURE(G.str());
    CHECK(circle(poincare(S), inverse_kernel(S)) == diagonal(S));
    CHECK(circle(inverse_kernel(S), poincare(S)) == diagonal(S.dual_space()));
  }
}

TEST_CASE("circle is associative with diagonal units") {
  std::mt19937 rng(11);
  Space S{FiniteAbGroup({4}), false};
  for (int trial = 0; trial < 5; ++trial) {
    Kernel K = random_kernel(S, S, rng), L = random_kernel(S, S, rng), M = random_kernel(S, S, rng);
    CHECK(circle(circle(K, L), M) == circle(K, circle(L, M)));
    CHECK(circle(K, diagonal(S)) == K);
    CHECK(circle(diagonal(S), K) == K);
  }
  CHECK_THROWS_AS(circle(poincare(S), poincare(S)), GroupMismatch);
}

TEST_CASE("transform matches the direct sum oracle") {
  std::mt19937 rng(5);
  for (const auto& G : {FiniteAbGroup({4}), FiniteAbGroup({3}), FiniteAbGroup({2, 2})}) {
    Space Xh{G, true};
    Kernel K = random_kernel(Xh, Xh, rng);
    CHECK(transform_kernel(K) == oracle::transform(K));
  }
}

TEST_CASE("transform is multiplicative and invertible") {
  std::mt19937 rng(7);
  Space Xh{FiniteAbGroup({4, 2}), true};
  for (int trial = 0; trial < 10; ++trial) {
    Kernel K = random_kernel(Xh, Xh, rng), L = random_kernel(Xh, Xh, rng);
    CHECK(transform_kernel(circle(K, L)) == circle(transform_kernel(K), transform_kernel(L)));
    CHECK(inverse_transform(transform_kernel(K)) == K);
    CHECK(transform_kernel(inverse_transform(K)) == K);
  }
  CHECK(transform_kernel(diagonal(Xh)) == diagonal(Xh.dual_space()));
}

TEST_CASE("shift and twist exchange") {
  for (const auto& G : test_groups()) {
    Space Xh{G, true};
    CAPTURE(G.str());
    for (std::size_t x = 0; x < Xh.size(); ++x) {
      for (std::size_t psi = 0; psi < Xh.size(); ++psi) {
        TransKernel T{Xh, x, psi, Cyclotomic(G.exponent(), 1)};
        auto found = as_trans_kernel(transform_kernel(T.expand()));
        REQUIRE(found);
        CHECK(found->shift == psi);
        CHECK(found->twist == G.neg(x));
        CHECK(*found == T.transformed());
      }
    }
  }
}

TEST_CASE("double transform is pullback by inversion") {
  Space X{FiniteAbGroup({4}), false};
  for (std::size_t x = 0; x < 4; ++x) {
    for (std::size_t psi = 0; psi < 4; ++psi) {
      TransKernel T{X, x, psi, Cyclotomic::root(4, 1)};
      TransKernel back = T.transformed().transformed();
      CHECK(back.space == X);
      CHECK(back.shift == X.group.neg(x));
      CHECK(back.twist == X.group.neg(psi));
      CHECK(back.scalar == T.scalar);
    }
  }
}

TEST_CASE("closed-form composition") {
  Space S{FiniteAbGroup({4, 2}), false};
  for (std::size_t a = 0; a < S.size(); a += 3) {
    for (std::size_t b = 0; b < S.size(); ++b) {
      TransKernel T{S, a, b, Cyclotomic(4, 1)};
      TransKernel U{S, b, a, Cyclotomic::root(4, 1)};
      CHECK(circle(T.expand(), U.expand()) == T.then(U).expand());
    }
  }
}

TEST_CASE("quasi-special algebras") {
  Space S{FiniteAbGroup({4}), false};
  QuasiSpecialAlgebra shifts(S, {{1, 0}});
  CHECK(shifts.rank() == 4);
  CHECK(shifts.commutative());

  QuasiSpecialAlgebra chars(S, {{0, 1}});
  CHECK(chars.rank() == 4);
  CHECK(chars.commutative());

  // Heisenberg: psi_0 = chi_2, psi_0(x_0) = -1
  QuasiSpecialAlgebra H(S, {{1, 0}, {0, 2}});
  CHECK(H.rank() == 8);
  CHECK_FALSE(H.commutative());
  CHECK_FALSE(H.cocycle_witness());
  CHECK_FALSE(H.associativity_witness());
  auto u = *H.find(1, 0), v = *H.find(0, 2);
  auto uv = H.product(u, v), vu = H.product(v, u);
  CHECK(uv.index == vu.index);
  CHECK(uv.scalar / vu.scalar == Cyclotomic(4, -1));
  for (std::size_t i = 0; i < H.rank(); ++i) {
    for (std::size_t j = 0; j < H.rank(); ++j) {
      CHECK(H.product(i, j).scalar == pairing(S, H.basis()[i].first, H.basis()[j].second));
    }
  }

  QuasiSpecialAlgebra Z3(Space{FiniteAbGroup({3}), false}, {{1, 0}, {0, 1}});
  CHECK(Z3.rank() == 9);
  auto a = *Z3.find(1, 0), b = *Z3.find(0, 1);
  CHECK(Z3.product(a, b).scalar / Z3.product(b, a).scalar == Cyclotomic::root(3, 1));

  CHECK_THROWS_AS(QuasiSpecialAlgebra(S, {{1, 0}, {0, 1}}, 10), NotClosed);
}

TEST_CASE("transform of algebras") {
  Space Xh{FiniteAbGroup({4}), true};
  QuasiSpecialAlgebra shifts(Xh, {{1, 0}});
  auto T = transform_algebra(shifts);
  CHECK_FALSE(T.failure);
  for (const auto& [x, psi] : T.image.basis()) CHECK(x == 0);

  QuasiSpecialAlgebra unit(Xh, {});
  auto U = transform_algebra(unit);
  CHECK(U.image.rank() == 1);
  CHECK(U.image.kernel(0) == diagonal(Xh.dual_space()));

  QuasiSpecialAlgebra H(Xh, {{1, 0}, {0, 2}});
  auto TH = transform_algebra(H);
  CHECK_FALSE(TH.failure);
  auto back = transform_algebra(TH.image);
  CHECK_FALSE(back.failure);
  for (std::size_t a = 0; a < H.rank(); ++a) {
    const auto [x, psi] = H.basis()[a];
    const auto [x2, psi2] = back.image.basis()[back.basis_map[TH.basis_map[a]]];
    CHECK(x2 == Xh.group.neg(x));
    CHECK(psi2 == Xh.group.neg(psi));
  }
}

TEST_CASE("modules") {
  Space Xh{FiniteAbGroup({4}), true};
  QuasiSpecialAlgebra unit(Xh, {});
  GradedModule delta{Xh, {std::vector<Cyclotomic>(4, Cyclotomic(4))}};
  delta.columns[0][0] = Cyclotomic(4, 1);
  auto img = transform_module(unit, delta);
  for (const auto& v : img.columns[0]) CHECK(v == Cyclotomic(4, 1));

  QuasiSpecialAlgebra shifts(Xh, {{1, 0}});
  GradedModule regular{Xh, {}};
  for (std::size_t i = 0; i < 4; ++i) {
    std::vector<Cyclotomic> col(4, Cyclotomic(4));
    col[i] = Cyclotomic(4, 1);
    regular.columns.push_back(col);
  }
  auto phi_reg = transform_module(shifts, regular);
  CHECK(phi_reg.rank() == 4);
  // round trip with the Q normalization
  auto back = apply_kernel(inverse_kernel(Xh.dual_space()), phi_reg);
  CHECK(back.columns == regular.columns);

  CHECK_THROWS_AS(check_module(shifts, delta), NotAModule);

  std::mt19937 rng(3);
  QuasiSpecialAlgebra H(Xh, {{1, 0}, {0, 2}});
  for (int trial = 0; trial < 5; ++trial) {
    auto m = random_module(H, rng);
    CHECK_NOTHROW(check_module(H, m));
    auto out = transform_module(H, m);
    CHECK(out.rank() == m.rank());
    CHECK(same_span(apply_kernel(inverse_kernel(Xh.dual_space()), out), m));
  }
}
