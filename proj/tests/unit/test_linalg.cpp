#include <doctest.h>

#include <random>

#include "ncf/errors.hpp"
#include "ncf/linalg.hpp"

using namespace ncf;

namespace {

Vec random_vec(std::mt19937& rng, std::size_t dim, int density) {
  std::uniform_int_distribution<int> coeff(-3, 3);
  std::uniform_int_distribution<int> keep(0, 9);
  std::vector<Vec::Term> terms;
  for (std::size_t i = 0; i < dim; ++i) {
    if (keep(rng) < density) terms.emplace_back(i, coeff(rng));
  }
  return Vec::from_terms(std::move(terms));
}

}  // namespace

TEST_CASE("rationals parse canonically") {
  CHECK(parse_rational("6/4") == Rational(3, 2));
  CHECK(to_string(parse_rational("-6/4")) == "-3/2");
  CHECK(parse_rational("+7") == 7);
  CHECK_THROWS_AS(parse_rational("1/0"), InvalidArgument);
  CHECK_THROWS_AS(parse_rational("x"), InvalidArgument);
  CHECK_THROWS_AS(parse_rational("1/-2"), InvalidArgument);
  CHECK(binomial(5, 2) == 10);
  CHECK(binomial(3, 4) == 0);
}

TEST_CASE("vec arithmetic drops zeros") {
  Vec a = Vec::from_terms({{3, 1}, {1, 2}, {3, -1}});
  CHECK(a.size() == 1);
  CHECK(a.coeff(1) == 2);
  a.add_scaled(Vec::unit(1), -2);
  CHECK(a.is_zero());
}

TEST_CASE("subspace reduction is canonical") {
  std::mt19937 rng(7);
  for (int trial = 0; trial < 30; ++trial) {
    const std::size_t dim = 9;
    std::vector<Vec> gens;
    for (int k = 0; k < 5; ++k) gens.push_back(random_vec(rng, dim, 4));
    Subspace eager = Subspace::span(dim, gens);
    std::vector<Vec> shuffled = gens;
    std::shuffle(shuffled.begin(), shuffled.end(), rng);
    Subspace other = Subspace::span(dim, shuffled);
    CHECK(eager == other);
    CHECK(eager.rows() .size() == other.rows().size());
    for (const auto& [p, r] : eager.rows()) CHECK(r == other.row(p));
    for (const auto& g : gens) CHECK(eager.contains(g));
    Vec v = random_vec(rng, dim, 6);
    Vec w = v;
    for (const auto& g : gens) w.add_scaled(g, 2);
    CHECK(eager.reduce(v) == eager.reduce(w));
  }
}

TEST_CASE("rank nullity and solve") {
  std::mt19937 rng(11);
  for (int trial = 0; trial < 30; ++trial) {
    std::vector<Vec> cols;
    for (int j = 0; j < 6; ++j) cols.push_back(random_vec(rng, 5, 3));
    LinearMap m(5, cols);
    const auto k = m.kernel();
    CHECK(k.dim() + m.rank() == 6);
    for (const auto& v : k.basis()) CHECK(m.apply(v).is_zero());
    Vec x = random_vec(rng, 6, 5);
    auto sol = m.solve(m.apply(x));
    REQUIRE(sol);
    CHECK(m.apply(*sol) == m.apply(x));
  }
  LinearMap zero(2, std::vector<Vec>{Vec{}});
  CHECK_FALSE(zero.solve(Vec::unit(0)));
}

TEST_CASE("intersection") {
  const std::size_t dim = 4;
  std::vector<Vec> a{Vec::unit(0), Vec::unit(1)};
  std::vector<Vec> b{Vec::unit(1) + Vec::unit(2), Vec::unit(0) - Vec::unit(2)};
  Subspace i = Subspace::span(dim, a).intersect(Subspace::span(dim, b));
  CHECK(i.dim() == 1);
  CHECK(i.contains(Vec::unit(0) + Vec::unit(1)));
}
