#include "ncf/etale.hpp"

#include <random>

#include "ncf/errors.hpp"

namespace ncf {

namespace {

Vec shifted(const Vec& v, std::size_t by) {
  return v.remap([&](std::size_t i) -> std::optional<std::size_t> { return i + by; });
}

std::string describe(const Algebra& alg, const Vec& v) { return format_element(alg, v); }

}  // namespace

std::optional<std::string> CentralExtension::witness() const {
  const Algebra& T = *total;
  const Algebra& Q = *quotient;
  if (gamma.cols() != T.dim() || gamma.rows() != Q.dim()) return "projection has the wrong shape";
  if (!gamma.surjective()) return "gamma is not surjective";
  Subspace ker = gamma.kernel();
  ker.canonicalize();
  Subspace I = kernel;
  I.canonicalize();
  if (!(ker == I)) return "kernel of gamma differs from I";
  if (gamma.apply(T.unit()) != Q.unit()) return "gamma does not preserve the unit";
  for (std::size_t i = 0; i < T.dim(); ++i) {
    const Vec gi = gamma.apply(T.basis_vec(i));
    for (std::size_t j = 0; j < T.dim(); ++j) {
      if (gamma.apply(T.product(i, j)) != Q.mul(gi, gamma.apply(T.basis_vec(j)))) {
        return "gamma(" + T.label(i) + " * " + T.label(j) + ") is not the product of the images";
      }
    }
  }
  const auto ib = I.basis();
  std::vector<Vec> test = T.generators();
  if (test.empty()) {
    for (std::size_t i = 0; i < T.dim(); ++i) test.push_back(T.basis_vec(i));
  }
  for (const auto& v : ib) {
    for (const auto& g : test) {
      if (!T.commutator(v, g).is_zero()) return "I is not central: " + describe(T, v) + " vs " + describe(T, g);
    }
    for (const auto& w : ib) {
      if (!T.mul(v, w).is_zero()) return "I^2 != 0: " + describe(T, v) + " * " + describe(T, w);
    }
  }
  return std::nullopt;
}

void CentralExtension::validate() const {
  if (auto w = witness()) throw NotCentralExtension(*w);
}

CentralExtension central_extension(AlgebraPtr total, Subspace kernel) {
  kernel.canonicalize();
  AlgebraPtr q = quotient(*total, kernel);
  LinearMap g = quotient_projection(*total, kernel);
  return CentralExtension{std::move(total), std::move(q), std::move(g), std::move(kernel)};
}

std::optional<std::string> AlgebraMorphism::relation_witness() const {
  if (images.size() != source.gens.size()) return "expected " + std::to_string(source.gens.size()) + " images";
  for (std::size_t k = 0; k < source.relations.size(); ++k) {
    const Vec v = apply(source.relations[k]);
    if (!v.is_zero()) {
      return "relation " + format_poly(source.relations[k], source.names()) + " maps to " +
             describe(*target, v);
    }
  }
  return std::nullopt;
}

std::optional<std::string> EtaleDiagram::commute_witness() const {
  for (std::size_t i = 0; i < R.gens.size(); ++i) {
    if (gamma.gamma.apply(delta.images.at(i)) != beta.apply(alpha.at(i))) {
      return "square does not commute on " + R.gens[i].name;
    }
  }
  return std::nullopt;
}

Presentation standard_etale(const Presentation& R, const std::vector<NcPoly>& a, int bound) {
  if (a.size() < 2) throw InvalidArgument("standard etale data needs a_0 .. a_n with n >= 1");
  Presentation S = R;
  S.name = "S";
  const int z = static_cast<int>(R.gens.size());
  const int u = z + 1;
  S.gens.push_back({"z", 0});
  S.gens.push_back({"u", 0});
  NcPoly f, fp;
  for (std::size_t i = 0; i < a.size(); ++i) {
    f += a[i] * pow(NcPoly::gen(z), static_cast<int>(i));
    if (i > 0) fp += a[i] * pow(NcPoly::gen(z), static_cast<int>(i - 1)) * Rational(static_cast<long>(i));
  }
  S.relations.push_back(f);
  S.relations.push_back(NcPoly::gen(u) * fp - NcPoly::constant(1));
  S.relations.push_back(fp * NcPoly::gen(u) - NcPoly::constant(1));
  S.bound = bound;
  S.validate();
  return S;
}

std::vector<NcPoly> inclusion_images(const Presentation& R) {
  std::vector<NcPoly> out;
  for (std::size_t i = 0; i < R.gens.size(); ++i) out.push_back(NcPoly::gen(static_cast<int>(i)));
  return out;
}

std::vector<Vec> LiftSystem::images(const Vec& t) const {
  std::vector<Vec> out = base;
  const std::size_t k = ideal_basis.size();
  for (const auto& [idx, c] : t) out[idx / k].add_scaled(ideal_basis[idx % k], c);
  return out;
}

LiftSystem solve_lifts(const Presentation& P, const std::vector<Vec>& targets, const CentralExtension& ce,
                       const std::vector<std::pair<NcPoly, Vec>>& constraints) {
  const Algebra& T = *ce.total;
  const std::size_t n = P.gens.size();
  if (targets.size() != n) throw InvalidArgument("one target per generator expected");
  LiftSystem sys;
  sys.ideal_basis = ce.kernel.basis();
  const std::size_t k = sys.ideal_basis.size();
  for (std::size_t j = 0; j < n; ++j) {
    auto pre = ce.gamma.solve(targets[j]);
    if (!pre) throw PreimageMismatch("no preimage for the image of " + P.gens[j].name);
    sys.base.push_back(*pre);
  }

  std::vector<std::pair<NcPoly, Vec>> eqs;
  for (const auto& r : P.relations) eqs.emplace_back(r, Vec{});
  for (const auto& c : constraints) eqs.push_back(c);

  const std::size_t m = T.dim();
  std::vector<Vec> cols(n * k);
  Vec rhs;
  for (std::size_t e = 0; e < eqs.size(); ++e) {
    const auto& [poly, value] = eqs[e];
    rhs += shifted(value - T.evaluate(poly, sys.base), e * m);
    for (const auto& [w, c] : poly.terms()) {
      // prefix[t] = base(w_0 .. w_{t-1}), suffix[t] = base(w_{t+1} ..)
      std::vector<Vec> prefix(w.size() + 1), suffix(w.size() + 1);
      prefix[0] = T.unit();
      for (std::size_t t = 0; t < w.size(); ++t) prefix[t + 1] = T.mul(prefix[t], sys.base[w[t]]);
      suffix[w.size()] = T.unit();
      for (std::size_t t = w.size(); t-- > 0;) suffix[t] = T.mul(sys.base[w[t]], suffix[t + 1]);
      for (std::size_t t = 0; t < w.size(); ++t) {
        const Vec around = T.mul(prefix[t], suffix[t + 1]);
        for (std::size_t b = 0; b < k; ++b) {
          cols[w[t] * k + b].add_scaled(shifted(T.mul(around, sys.ideal_basis[b]), e * m), c);
        }
      }
    }
  }
  sys.solution = solve_affine(LinearMap(eqs.size() * m, std::move(cols)), rhs);
  return sys;
}

StandardLift lift_standard(const EtaleDiagram& diag, const std::vector<NcPoly>& a, const Vec& x, const Vec& y) {
  diag.gamma.validate();
  const Algebra& T = *diag.gamma.total;
  const std::size_t n = diag.R.gens.size();
  if (diag.S.gens.size() != n + 2) throw InvalidArgument("S is not a standard etale presentation over R");
  if (diag.gamma.gamma.apply(x) != diag.beta.images[n]) throw PreimageMismatch("gamma(x) != beta(z)");
  if (diag.gamma.gamma.apply(y) != diag.beta.images[n + 1]) throw PreimageMismatch("gamma(y) != beta(u)");

  std::vector<Vec> da;
  for (const auto& ai : a) da.push_back(diag.delta.apply(ai));
  Vec f;
  for (std::size_t i = 0; i < da.size(); ++i) f += T.mul(da[i], T.power(x, static_cast<int>(i)));
  StandardLift out;
  out.p = -T.mul(y, f);
  const Vec xp = x + out.p;
  Vec F;
  for (std::size_t i = 1; i < da.size(); ++i) {
    F.add_scaled(T.mul(da[i], T.power(xp, static_cast<int>(i - 1))), Rational(static_cast<long>(i)));
  }
  out.q = T.mul(y, T.unit() - T.mul(F, y));

  std::vector<Vec> images = diag.delta.images;
  images.push_back(xp);
  images.push_back(y + out.q);
  out.epsilon = AlgebraMorphism{diag.S, diag.gamma.total, images};
  out.relation_failure = out.epsilon.relation_witness();

  std::vector<std::pair<NcPoly, Vec>> constraints;
  for (std::size_t i = 0; i < n; ++i) constraints.emplace_back(diag.alpha[i], diag.delta.images[i]);
  const LiftSystem sys = solve_lifts(diag.S, diag.beta.images, diag.gamma, constraints);
  out.solution_dim = sys.solution.exists() ? sys.dimension() : static_cast<std::size_t>(-1);
  out.matches_solver = sys.solution.unique() && sys.images(*sys.solution.particular) == images;
  return out;
}

bool EtaleReport::verified_over_family() const {
  if (cases.empty()) return false;
  for (const auto& c : cases) {
    if (c.commute_failure || !c.unique) return false;
  }
  return true;
}

EtaleReport check_formally_etale(const std::vector<EtaleDiagram>& family) {
  EtaleReport rep;
  for (const auto& diag : family) {
    LiftCase lc;
    lc.commute_failure = diag.commute_witness();
    if (!lc.commute_failure) {
      std::vector<std::pair<NcPoly, Vec>> constraints;
      for (std::size_t i = 0; i < diag.R.gens.size(); ++i) {
        constraints.emplace_back(diag.alpha[i], diag.delta.images[i]);
      }
      try {
        const LiftSystem sys = solve_lifts(diag.S, diag.beta.images, diag.gamma, constraints);
        lc.exists = sys.solution.exists();
        lc.unique = sys.solution.unique();
        lc.solution_dim = lc.exists ? sys.dimension() : 0;
      } catch (const PreimageMismatch&) {
        lc.exists = false;
      }
    }
    rep.cases.push_back(lc);
  }
  return rep;
}

namespace {

LinearMap identity_map(std::size_t n) {
  std::vector<Vec> cols;
  for (std::size_t i = 0; i < n; ++i) cols.push_back(Vec::unit(i));
  return LinearMap(n, std::move(cols));
}

LinearMap word_action(const Word& w, std::size_t from, std::size_t to, const std::vector<LinearMap>& mats,
                      std::size_t dim) {
  LinearMap out = identity_map(dim);
  for (std::size_t t = from; t < to; ++t) out = out.compose(mats[w[t]]);
  return out;
}

LinearMap poly_action(const NcPoly& p, const std::vector<LinearMap>& mats, std::size_t dim) {
  std::vector<Vec> cols(dim);
  for (const auto& [w, c] : p.terms()) {
    const LinearMap a = word_action(w, 0, w.size(), mats, dim);
    for (std::size_t j = 0; j < dim; ++j) cols[j].add_scaled(a.column(j), c);
  }
  return LinearMap(dim, std::move(cols));
}

// D(p) as a linear function of the generator values D(g_j) in M.
// Unknown j * dim + i is coordinate i of D(g_j).
void add_leibniz(const NcPoly& p, const std::vector<LinearMap>& mats, std::size_t dim, std::size_t row_offset,
                 std::vector<Vec>& cols) {
  for (const auto& [w, c] : p.terms()) {
    for (std::size_t t = 0; t < w.size(); ++t) {
      const LinearMap around = word_action(w, 0, t, mats, dim).compose(word_action(w, t + 1, w.size(), mats, dim));
      for (std::size_t i = 0; i < dim; ++i) cols[w[t] * dim + i].add_scaled(shifted(around.column(i), row_offset), c);
    }
  }
}

}  // namespace

DerivationReport derivation_transfer_check(const Presentation& R, const Presentation& S,
                                           const std::vector<NcPoly>& alpha, const CentralModule& M) {
  const std::size_t m = M.dim;
  if (M.action.size() != S.gens.size()) throw InvalidArgument("one action matrix per S generator expected");
  if (alpha.size() != R.gens.size()) throw InvalidArgument("one image per R generator expected");
  std::vector<LinearMap> sm;
  for (const auto& cols : M.action) {
    if (cols.size() != m) throw InvalidArgument("action matrix has the wrong size");
    sm.emplace_back(m, cols);
  }
  for (std::size_t i = 0; i < sm.size(); ++i) {
    for (std::size_t j = i + 1; j < sm.size(); ++j) {
      for (std::size_t c = 0; c < m; ++c) {
        if (sm[i].compose(sm[j]).column(c) != sm[j].compose(sm[i]).column(c)) {
          throw InvalidArgument("actions of " + S.gens[i].name + " and " + S.gens[j].name + " do not commute");
        }
      }
    }
  }
  for (const auto& r : S.relations) {
    const LinearMap a = poly_action(r, sm, m);
    for (std::size_t c = 0; c < m; ++c) {
      if (!a.column(c).is_zero()) throw InvalidArgument("M is not a module: " + format_poly(r, S.names()));
    }
  }
  std::vector<LinearMap> rm;
  for (const auto& p : alpha) rm.push_back(poly_action(p, sm, m));

  const std::size_t ns = S.gens.size() * m;
  const std::size_t nr = R.gens.size() * m;
  std::vector<Vec> scols(ns), rcols(nr), res(ns);
  for (std::size_t k = 0; k < S.relations.size(); ++k) add_leibniz(S.relations[k], sm, m, k * m, scols);
  for (std::size_t k = 0; k < R.relations.size(); ++k) add_leibniz(R.relations[k], rm, m, k * m, rcols);
  for (std::size_t i = 0; i < alpha.size(); ++i) add_leibniz(alpha[i], sm, m, i * m, res);

  const Subspace derS = LinearMap(S.relations.size() * m, std::move(scols)).kernel();
  Subspace derR = LinearMap(R.relations.size() * m, std::move(rcols)).kernel();
  const LinearMap restrict_map(nr, std::move(res));
  std::vector<Vec> restricted;
  for (const auto& b : derS.basis()) restricted.push_back(restrict_map.apply(b));
  const LinearMap on_der(nr, restricted);

  DerivationReport rep;
  rep.der_S = derS.dim();
  rep.der_R = derR.dim();
  rep.injective = on_der.injective();
  Subspace img = on_der.image();
  rep.surjective = img.dim() == derR.dim() && derR.contains(img);
  return rep;
}

ClosureReport nd_closure_check(const EtaleDiagram& diag, int d) {
  return ClosureReport{d, nc_filtration(*diag.gamma.total, d + 1).dim()};
}

namespace {

struct Sampler {
  std::mt19937_64 rng;
  int uniform(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }
  bool coin(double p) { return std::bernoulli_distribution(p)(rng); }
  int nonzero(int r) {
    int v = 0;
    while (v == 0) v = uniform(-r, r);
    return v;
  }
};

NcPoly eps_combination(Sampler& s, int first_eps, int k, bool with_monomial) {
  NcPoly out;
  for (int e = 0; e < k; ++e) {
    const int c = s.uniform(-2, 2);
    if (c == 0) continue;
    NcPoly term = NcPoly::gen(first_eps + e, c);
    if (with_monomial && s.coin(0.5)) term = term * NcPoly::gen(s.uniform(0, 1));
    out += term;
  }
  return out;
}

NcPoly random_relation(Sampler& s, int bound) {
  NcPoly p;
  const int terms = s.uniform(1, 3);
  for (int t = 0; t < terms; ++t) {
    Word w(s.uniform(1, bound));
    for (auto& g : w) g = s.uniform(0, 1);
    p.add_term(w, s.nonzero(2));
  }
  return p;
}

void add_central_square_zero(Presentation& P, int first_eps, int k, int others) {
  for (int e = 0; e < k; ++e) {
    for (int g = 0; g < others; ++g) P.relations.push_back(commutator(NcPoly::gen(first_eps + e), NcPoly::gen(g)));
    for (int f = 0; f < k; ++f) P.relations.push_back(NcPoly::gen(first_eps + e) * NcPoly::gen(first_eps + f));
  }
}

std::optional<EtaleDiagram> finish_candidate(const Presentation& R, const Presentation& S, const Presentation& Ap,
                                             int first_eps, int k, const std::vector<NcPoly>& beta_polys,
                                             Sampler& s) {
  AlgebraPtr T;
  try {
    T = build_truncated(Ap);
  } catch (const InconsistentPresentation&) {
    return std::nullopt;
  }
  if (!T->exact() || !T->associative_within_bound()) return std::nullopt;
  std::vector<Vec> eps;
  for (int e = 0; e < k; ++e) eps.push_back(T->from_poly(NcPoly::gen(first_eps + e)));
  CentralExtension ce = central_extension(T, two_sided_ideal(*T, eps));
  if (ce.witness()) return std::nullopt;
  std::vector<Vec> beta;
  for (const auto& p : beta_polys) beta.push_back(ce.quotient->from_poly(p));
  AlgebraMorphism bm{S, ce.quotient, beta};
  if (bm.relation_witness()) return std::nullopt;

  std::vector<Vec> targets(beta.begin(), beta.begin() + static_cast<long>(R.gens.size()));
  std::vector<Vec> delta;
  if (!R.gens.empty()) {
    LiftSystem sys;
    try {
      sys = solve_lifts(R, targets, ce);
    } catch (const PreimageMismatch&) {
      return std::nullopt;
    }
    if (!sys.solution.exists()) return std::nullopt;
    Vec t = *sys.solution.particular;
    for (const auto& b : sys.solution.kernel.basis()) t.add_scaled(b, s.uniform(-1, 1));
    delta = sys.images(t);
  }
  EtaleDiagram diag{R, S, inclusion_images(R), bm, AlgebraMorphism{R, T, delta}, std::move(ce)};
  if (diag.commute_witness() || diag.delta.relation_witness()) return std::nullopt;
  return diag;
}

}  // namespace

Family generate_family(const FamilySpec& spec, std::size_t count, std::uint64_t seed) {
  Sampler s{std::mt19937_64(seed)};
  Family fam;
  fam.a = {NcPoly::constant(-1), NcPoly{}, NcPoly::constant(1)};
  if (spec.rational_base) {
    fam.R = Presentation{"Q", {}, {}, 1};
  } else {
    Presentation free{"free", {{"x", 0}, {"y", 0}}, {}, spec.base_bound};
    AlgebraPtr R = quotient_rd(*build_truncated(with_truncation_relations(free)), spec.d);
    fam.R = *R->presentation();
    fam.R.name = "R";
  }
  fam.S = standard_etale(fam.R, fam.a, std::max(fam.R.bound, 2));

  const std::size_t max_attempts = 40 * count + 40;
  for (std::size_t attempt = 0; attempt < max_attempts && fam.diagrams.size() < count; ++attempt) {
    const int k = s.uniform(1, std::max(1, spec.max_eps));
    const Rational sign = s.coin(0.5) ? 1 : -1;
    Presentation Ap;
    std::vector<NcPoly> beta_polys;
    int first_eps = 0;
    int others = 0;
    if (spec.rational_base) {
      if (s.coin(0.5)) {
        // A = Q, beta(z) = +-1
        for (int e = 0; e < k; ++e) Ap.gens.push_back({"e" + std::to_string(e + 1), 0});
        Ap.bound = 2;
        beta_polys = {NcPoly::constant(sign), NcPoly::constant(sign / 2)};
      } else {
        // A = the split double point, beta = identity on z, u
        Ap.gens = {{"z", 0}, {"u", 0}};
        for (int e = 0; e < k; ++e) Ap.gens.push_back({"e" + std::to_string(e + 1), 0});
        first_eps = others = 2;
        const NcPoly z = NcPoly::gen(0), u = NcPoly::gen(1), one = NcPoly::constant(1);
        Ap.relations = {z * z - one, Rational(2) * u * z - one, Rational(2) * z * u - one};
        for (auto& r : Ap.relations) {
          if (s.coin(0.4)) r += eps_combination(s, first_eps, k, false);
        }
        Ap.bound = 4;
        beta_polys = {z, u};
      }
    } else {
      Ap.gens = {{"x", 0}, {"y", 0}};
      for (int e = 0; e < k; ++e) Ap.gens.push_back({"e" + std::to_string(e + 1), 0});
      first_eps = others = 2;
      for (const auto& r : fam.R.relations) {
        NcPoly rr = r;
        if (s.coin(0.15)) rr += eps_combination(s, first_eps, k, true);
        Ap.relations.push_back(rr);
      }
      if (spec.quotient_base && s.coin(0.5)) {
        NcPoly extra = random_relation(s, spec.base_bound);
        if (s.coin(0.5)) extra += eps_combination(s, first_eps, k, true);
        Ap.relations.push_back(extra);
      }
      Ap.bound = fam.R.bound + 1;
      beta_polys = {NcPoly::gen(0), NcPoly::gen(1), NcPoly::constant(sign), NcPoly::constant(sign / 2)};
    }
    Ap.name = "A'";
    add_central_square_zero(Ap, first_eps, k, others);
    if (auto diag = finish_candidate(fam.R, fam.S, Ap, first_eps, k, beta_polys, s)) {
      fam.diagrams.push_back(std::move(*diag));
    } else {
      ++fam.rejected;
    }
  }
  return fam;
}

InvarianceReport topological_invariance_harness(const Presentation& X, int d, const std::vector<Rational>& a,
                                                int bound) {
  std::vector<NcPoly> ap;
  for (const auto& c : a) ap.push_back(NcPoly::constant(c));
  const Presentation S = standard_etale(X, ap, bound);
  try {
    build_truncated(S, false);
  } catch (const InconsistentPresentation& e) {
    throw LiftInconsistent(std::string("lifted presentation collapses: ") + e.what());
  }
  InvarianceReport rep;
  rep.certified = true;
  AlgebraPtr ab;
  for (int k = 0; k <= d + 1; ++k) {
    CertifiedQuotient q = certified_rd(S, k);
    rep.certified = rep.certified && q.certified;
    rep.rd_dims.push_back(q.algebra->dim());
    if (k == d) rep.in_nd = q.certified && nc_filtration(*q.algebra, d + 1).is_zero();
    if (k == 0) ab = q.algebra;
  }
  rep.abelian_dim = ab->dim();

  // commutative standard etale extension of X^ab, built directly
  Presentation E = S;
  const int n = static_cast<int>(S.gens.size());
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) E.relations.push_back(commutator(NcPoly::gen(i), NcPoly::gen(j)));
  }
  AlgebraPtr Ealg = build_truncated(E);
  int deg = static_cast<int>(a.size()) - 1;
  while (deg > 0 && a[deg] == 0) --deg;
  rep.expected_abelian_dim = quotient_rd(*build_truncated(X), 0)->dim() * static_cast<std::size_t>(deg);
  rep.abelianization_matches = Ealg->exact() && ab->reduction().ideal == Ealg->reduction().ideal &&
                               rep.abelian_dim == rep.expected_abelian_dim;
  return rep;
}

}  // namespace ncf
