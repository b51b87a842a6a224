#include "ncf/microloc.hpp"

#include <random>

#include "ncf/errors.hpp"

namespace ncf {

namespace {

LinearMap identity_map(std::size_t n) {
  std::vector<Vec> cols;
  for (std::size_t i = 0; i < n; ++i) cols.push_back(Vec::unit(i));
  return LinearMap(n, std::move(cols));
}

std::string power_label(const std::string& base, int e, const std::string& letter) {
  if (e == 0) return base;
  std::string p = e == 1 ? letter : letter + "^" + std::to_string(e);
  return base == "1" ? p : p + "*" + base;
}

}  // namespace

FilteredAlgebra::FilteredAlgebra(AlgebraPtr alg) : alg_(std::move(alg)) {
  const Algebra& A = *alg_;
  int max_weight = 0;
  if (A.presentation()) {
    for (const auto& g : A.presentation()->gens) max_weight = std::max(max_weight, g.weight);
  }
  const int cap = std::max(0, A.bound() * max_weight);
  for (int i = 0; i <= cap; ++i) {
    levels_.push_back(weight_filtration(A, i));
    top_ = i;
    if (levels_.back().dim() == A.dim()) break;
  }
  if (levels_.back().dim() != A.dim()) throw NotFiltered("filtration does not exhaust the algebra");

  Subspace cur(A.dim());
  for (int i = 0; i <= top_; ++i) {
    for (std::size_t j = 0; j < A.dim(); ++j) {
      const Vec e = Vec::unit(j);
      if (levels_[i].contains(e) && cur.insert(e)) {
        basis_.push_back(e);
        weights_.push_back(i);
      }
    }
    for (const auto& v : levels_[i].basis()) {
      if (cur.insert(v)) {
        basis_.push_back(v);
        weights_.push_back(i);
      }
    }
  }
  const LinearMap B(A.dim(), basis_);
  std::vector<Vec> inv;
  for (std::size_t j = 0; j < A.dim(); ++j) inv.push_back(*B.solve(Vec::unit(j)));
  inverse_ = LinearMap(A.dim(), std::move(inv));

  for (std::size_t k = 0; k < dim(); ++k) {
    for (std::size_t l = 0; l < dim(); ++l) {
      if (order(A.mul(basis_[k], basis_[l])) > weights_[k] + weights_[l]) {
        throw NotFiltered("A_" + std::to_string(weights_[k]) + " * A_" + std::to_string(weights_[l]) +
                          " leaves A_" + std::to_string(weights_[k] + weights_[l]) + " at " +
                          format_element(A, basis_[k]) + " * " + format_element(A, basis_[l]));
      }
    }
  }
}

const Subspace& FilteredAlgebra::level(int i) const {
  static const Subspace empty;
  if (i < 0) return empty;
  return levels_[std::min(i, top_)];
}

int FilteredAlgebra::order(const Vec& a) const {
  int w = -1;
  for (const auto& [k, c] : coords(a)) w = std::max(w, weights_[k]);
  return w;
}

GradedReport associated_graded(const FilteredAlgebra& fa) {
  const Algebra& A = fa.algebra();
  const std::size_t n = fa.dim();
  auto symbol = [&](const Vec& coords, int w) {
    std::vector<Vec::Term> keep;
    for (const auto& [k, c] : coords) {
      if (fa.weight(k) == w) keep.emplace_back(k, c);
    }
    return Vec::from_terms(std::move(keep));
  };
  Algebra::Data d;
  for (std::size_t k = 0; k < n; ++k) {
    d.labels.push_back(format_element(A, fa.basis()[k]));
    d.degree.push_back(A.max_degree(fa.basis()[k]));
    d.weight.push_back(fa.weight(k));
  }
  d.table.resize(n * n);
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t l = 0; l < n; ++l) {
      d.table[k * n + l] = symbol(fa.coords(A.mul(fa.basis()[k], fa.basis()[l])), fa.weight(k) + fa.weight(l));
    }
  }
  d.unit = fa.coords(A.unit());
  for (const auto& g : A.generators()) {
    const Vec c = fa.coords(g);
    d.generators.push_back(symbol(c, fa.order(g)));
  }
  d.generator_names = A.generator_names();
  d.bound = A.bound();
  d.truncate = A.truncates();
  GradedReport rep;
  rep.gr = std::make_shared<Algebra>(std::move(d));
  rep.commutative = rep.gr->commutative();

  const Algebra& G = *rep.gr;
  std::vector<Vec> low;
  Subspace span(n);
  for (std::size_t k = 0; k < n; ++k) {
    if (fa.weight(k) <= 1) {
      low.push_back(Vec::unit(k));
      span.insert(Vec::unit(k));
    }
  }
  std::vector<Vec> frontier = span.basis();
  while (!frontier.empty()) {
    std::vector<Vec> next;
    for (const auto& v : frontier) {
      for (const auto& g : low) {
        Vec added;
        if (span.insert(G.mul(v, g), &added)) next.push_back(added);
      }
    }
    frontier = std::move(next);
  }
  rep.generated_in_degree_one = span.dim() == n;
  return rep;
}

MicroGraded::MicroGraded(const FilteredAlgebra& fa, int n) : fa_(fa), n_(n) {
  if (n < 0) throw InvalidArgument("gr_(n) needs n >= 0");
  const Algebra& A = fa_.algebra();
  top_grade_ = fa_.top() + n;
  for (int i = 0; i <= top_grade_; ++i) {
    for (std::size_t k = 0; k < fa_.dim(); ++k) {
      if (fa_.weight(k) >= i - n && fa_.weight(k) <= i) entries_.emplace_back(i, k);
    }
  }
  const std::size_t m = entries_.size();
  Algebra::Data d;
  for (const auto& [i, k] : entries_) {
    d.labels.push_back(power_label(format_element(A, fa_.basis()[k]), i - fa_.weight(k), "t"));
    d.degree.push_back(A.max_degree(fa_.basis()[k]));
    d.weight.push_back(i);
  }
  d.table.resize(m * m);
  for (std::size_t a = 0; a < m; ++a) {
    for (std::size_t b = 0; b < m; ++b) {
      const int g = entries_[a].first + entries_[b].first;
      if (g > top_grade_) continue;
      d.table[a * m + b] = embed(g, A.mul(fa_.basis()[entries_[a].second], fa_.basis()[entries_[b].second]));
    }
  }
  d.unit = embed(0, A.unit());
  d.bound = A.bound();
  d.truncate = A.truncates();
  g_ = std::make_shared<Algebra>(std::move(d));
  t_ = top_grade_ >= 1 ? embed(1, A.unit()) : Vec{};
}

std::optional<std::size_t> MicroGraded::index(int grade, std::size_t b) const {
  auto it = std::lower_bound(entries_.begin(), entries_.end(), std::make_pair(grade, b));
  if (it == entries_.end() || *it != std::make_pair(grade, b)) return std::nullopt;
  return static_cast<std::size_t>(it - entries_.begin());
}

std::vector<std::size_t> MicroGraded::grade_indices(int i) const {
  std::vector<std::size_t> out;
  for (std::size_t k = 0; k < entries_.size(); ++k) {
    if (entries_[k].first == i) out.push_back(k);
  }
  return out;
}

Vec MicroGraded::embed(int i, const Vec& a) const {
  std::vector<Vec::Term> out;
  for (const auto& [k, c] : fa_.coords(a)) {
    const int w = fa_.weight(k);
    if (w > i) throw InvalidArgument("element is not in A_" + std::to_string(i));
    if (w < i - n_ || i > top_grade_) continue;
    out.emplace_back(*index(i, k), c);
  }
  return Vec::from_terms(std::move(out));
}

bool MicroGraded::t_central() const {
  for (std::size_t k = 0; k < g_->dim(); ++k) {
    if (!g_->commutator(t_, g_->basis_vec(k)).is_zero()) return false;
  }
  return true;
}

int MicroGraded::t_nilpotency() const {
  Vec p = g_->unit();
  for (int k = 1; k <= n_ + 2; ++k) {
    p = g_->mul(p, t_);
    if (p.is_zero()) return k;
  }
  return -1;
}

std::optional<std::string> MicroGraded::quotient_witness(const Algebra& gr) const {
  const Algebra& G = *g_;
  Subspace T = two_sided_ideal(G, {t_});
  Subspace expected(G.dim());
  for (std::size_t k = 0; k < entries_.size(); ++k) {
    if (fa_.weight(entries_[k].second) < entries_[k].first) expected.insert(Vec::unit(k));
  }
  T.canonicalize();
  if (!(T == expected)) return "(t) is not spanned by the t-multiples";
  for (int i = 0; i <= top_grade_; ++i) {
    std::size_t q = 0, g = 0;
    for (const auto& [gi, k] : entries_) q += gi == i && fa_.weight(k) == i;
    for (std::size_t k = 0; k < gr.dim(); ++k) g += gr.weight(k) == i;
    if (q != g) return "grade " + std::to_string(i) + ": dim G/(t) = " + std::to_string(q) + ", dim gr = " +
                       std::to_string(g);
  }
  for (std::size_t k = 0; k < gr.dim(); ++k) {
    const auto a = index(fa_.weight(k), k);
    for (std::size_t l = 0; l < gr.dim(); ++l) {
      const auto b = index(fa_.weight(l), l);
      const Vec prod = T.reduce(G.product(*a, *b)).remap([&](std::size_t e) -> std::optional<std::size_t> {
        return entries_[e].second;
      });
      if (prod != gr.product(k, l)) return "structure constant differs at " + gr.label(k) + " * " + gr.label(l);
    }
  }
  return std::nullopt;
}

LinearMap micro_projection(const MicroGraded& upper, const MicroGraded& lower) {
  if (upper.n() != lower.n() + 1) throw InvalidArgument("projection goes from gr_(n+1) to gr_(n)");
  std::vector<Vec> cols;
  for (std::size_t k = 0; k < upper.algebra().dim(); ++k) {
    auto j = lower.index(upper.grade(k), upper.source(k));
    cols.push_back(j ? Vec::unit(*j) : Vec{});
  }
  return LinearMap(lower.algebra().dim(), std::move(cols));
}

std::optional<std::string> projection_witness(const MicroGraded& upper, const MicroGraded& lower) {
  const LinearMap P = micro_projection(upper, lower);
  const Algebra& U = upper.algebra();
  const Algebra& L = lower.algebra();
  if (!P.surjective()) return "projection is not surjective";
  if (P.apply(U.unit()) != L.unit()) return "projection does not preserve the unit";
  for (std::size_t a = 0; a < U.dim(); ++a) {
    for (std::size_t b = 0; b < U.dim(); ++b) {
      if (P.apply(U.product(a, b)) != L.mul(P.column(a), P.column(b))) {
        return "not multiplicative at " + U.label(a) + " * " + U.label(b);
      }
    }
  }
  Subspace expected(U.dim());
  const int n = lower.n();
  for (std::size_t k = 0; k < U.dim(); ++k) {
    if (upper.filtered().weight(upper.source(k)) == upper.grade(k) - n - 1) expected.insert(Vec::unit(k));
  }
  Subspace ker = P.kernel();
  ker.canonicalize();
  if (!(ker == expected)) return "kernel differs from A_{i-n-1}/A_{i-n-2}";
  return std::nullopt;
}

std::vector<Subspace> filtration_ideals(const MicroGraded& mg) {
  const Algebra& G = mg.algebra();
  std::vector<Subspace> out;
  for (int k = 0; k <= mg.n() + 1; ++k) {
    Subspace I = two_sided_ideal(G, {G.power(mg.t(), k)});
    I.canonicalize();
    out.push_back(std::move(I));
  }
  return out;
}

std::optional<std::string> filtration_ideal_witness(const MicroGraded& mg, const Algebra& gr) {
  const Algebra& G = mg.algebra();
  const auto& fa = mg.filtered();
  const auto ideals = filtration_ideals(mg);
  if (!ideals.back().is_zero()) return "t^(n+1) G is not zero";
  for (int k = 0; k <= mg.n(); ++k) {
    Subspace expected(G.dim());
    for (std::size_t e = 0; e < G.dim(); ++e) {
      if (fa.weight(mg.source(e)) <= mg.grade(e) - k) expected.insert(Vec::unit(e));
    }
    if (!(ideals[k] == expected)) return "I^" + std::to_string(k) + " differs from t^" + std::to_string(k) + " G";
    for (int i = 0; i <= mg.top_grade(); ++i) {
      std::size_t q = 0, g = 0;
      for (std::size_t e = 0; e < G.dim(); ++e) q += mg.grade(e) == i && fa.weight(mg.source(e)) == i - k;
      for (std::size_t b = 0; b < gr.dim(); ++b) g += gr.weight(b) == i - k;
      if (q != g) return "I^" + std::to_string(k) + "/I^" + std::to_string(k + 1) + " grade " + std::to_string(i);
    }
    // G acts through G/(t) = gr; phi(b) = (wt b + k, b)
    auto phi = [&](const Vec& v) {
      std::vector<Vec::Term> out;
      for (const auto& [b, c] : v) {
        if (auto e = mg.index(gr.weight(b) + k, b)) out.emplace_back(*e, c);
      }
      return Vec::from_terms(std::move(out));
    };
    for (std::size_t c = 0; c < gr.dim(); ++c) {
      const auto gc = mg.index(gr.weight(c), c);
      for (std::size_t b = 0; b < gr.dim(); ++b) {
        const Vec lhs = ideals[k + 1].reduce(G.mul(Vec::unit(*gc), phi(Vec::unit(b))));
        const Vec rhs = ideals[k + 1].reduce(phi(gr.product(c, b)));
        if (lhs != rhs) return "action on I^" + std::to_string(k) + " differs at " + gr.label(c) + " . " + gr.label(b);
      }
    }
  }
  return std::nullopt;
}

LocalizedTower::LocalizedTower(const MicroGraded& mg, const Vec& lift, int range) : mg_(mg), range_(range) {
  const int ord = mg_.filtered().order(lift);
  if (ord < 1) throw ZeroSymbol("the lift has no degree-1 symbol");
  if (ord > 1) throw InvalidArgument("the lift is not in A_1");
  const Algebra& G = mg_.algebra();
  h_ = mg_.embed(1, lift);
  const int top = mg_.top_grade();
  for (int k = 0; k <= top; ++k) grade_basis_.push_back(mg_.grade_indices(k));
  images_.emplace_back(G.dim());
  right_h_.emplace_back(G.dim(), 0);
  // only products that fit under the bound are trusted
  const int hdeg = G.max_degree(h_);
  for (int k = 1; k <= top; ++k) {
    std::vector<Vec> cols;
    for (std::size_t j : grade_basis_[k - 1]) {
      cols.push_back(G.degree(j) + hdeg <= G.bound() ? G.mul(Vec::unit(j), h_) : Vec{});
    }
    right_h_.emplace_back(G.dim(), std::move(cols));
    Subspace img = right_h_.back().image();
    img.canonicalize();
    images_.push_back(std::move(img));
  }
  for (int M = -range; M <= range; ++M) {
    Level lv;
    lv.p0 = std::max(0, -M);
    for (int q = lv.p0; q + M <= top; ++q) {
      for (std::size_t j : grade_basis_[q + M]) {
        if (q > lv.p0 && images_[q + M].is_pivot(j)) continue;
        lv.slot_of[{q, j}] = lv.slots.size();
        lv.slots.emplace_back(q, j);
      }
    }
    levels_.push_back(std::move(lv));
  }
}

const LocalizedTower::Level& LocalizedTower::level(int M) const {
  if (M < -range_ || M > range_) throw InvalidArgument("shift " + std::to_string(M) + " outside the tower");
  return levels_[M + range_];
}

std::string LocalizedTower::label(int M, std::size_t k) const {
  const auto& [q, j] = level(M).slots[k];
  const std::string base = mg_.algebra().label(j);
  if (q == 0) return base;
  return base + "*h^-" + std::to_string(q);
}

int LocalizedTower::degree(int M, std::size_t k) const {
  const auto& [q, j] = level(M).slots[k];
  return mg_.algebra().degree(j) + q * mg_.algebra().max_degree(h_);
}

Vec LocalizedTower::to_o(int M, int q, const Vec& c) const {
  const Level& lv = level(M);
  if (c.is_zero()) return {};
  const int k = q + M;
  if (q < lv.p0 || k > mg_.top_grade()) throw InvalidArgument("element outside O(" + std::to_string(M) + ")");
  auto slots = [&](const Vec& v) {
    return v.remap([&](std::size_t j) -> std::optional<std::size_t> { return lv.slot_of.at({q, j}); });
  };
  if (q == lv.p0) return slots(c);
  const Vec r = images_[k].reduce(c);
  Vec out = slots(r);
  const Vec rest = c - r;
  if (!rest.is_zero()) {
    const Vec pre = *right_h_[k].solve(rest);
    const auto& src = grade_basis_[k - 1];
    out += to_o(M, q - 1, pre.remap([&](std::size_t i) -> std::optional<std::size_t> { return src[i]; }));
  }
  return out;
}

Vec LocalizedTower::mul(int M, const Vec& a, int M2, const Vec& b) const {
  const Algebra& G = mg_.algebra();
  const Level& la = level(M);
  const Level& lb = level(M2);
  level(M + M2);
  Vec out;
  for (const auto& [sa, ca] : a) {
    const auto& [q, e] = la.slots[sa];
    for (const auto& [sb, cb] : b) {
      const auto& [q2, e2] = lb.slots[sb];
      // h^{-q} c = sum_j (-1)^j C(q+j-1, j) D^j(c) h^{-q-j}, D = [h, .]
      Vec D = Vec::unit(e2);
      for (int j = 0; !D.is_zero(); ++j) {
        if (j > mg_.n() + 1) throw NotFiltered("ad_h is not nilpotent on gr_(n)");
        const Rational coef = j == 0 ? Rational(1) : (j % 2 ? -1 : 1) * binomial(q + j - 1, j);
        if (coef != 0) out.add_scaled(to_o(M + M2, q + q2 + j, G.mul(Vec::unit(e), D)), ca * cb * coef);
        if (q == 0) break;
        D = G.commutator(h_, D);
      }
    }
  }
  return out;
}

AlgebraPtr LocalizedTower::degree_zero() const {
  const Level& lv = level(0);
  const std::size_t n = lv.slots.size();
  Algebra::Data d;
  for (std::size_t k = 0; k < n; ++k) {
    d.labels.push_back(label(0, k));
    d.degree.push_back(degree(0, k));
    d.weight.push_back(0);
  }
  d.table.resize(n * n);
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) d.table[a * n + b] = mul(0, Vec::unit(a), 0, Vec::unit(b));
  }
  d.unit = to_o(0, 0, mg_.algebra().unit());
  d.bound = mg_.algebra().bound();
  d.truncate = true;
  return std::make_shared<Algebra>(std::move(d));
}

AlgebraPtr localize_deg0(const MicroGraded& mg, const Vec& lift) {
  return LocalizedTower(mg, lift, 0).degree_zero();
}

LiftComparison compare_lifts(const MicroGraded& mg, const Vec& lift, const Vec& other, int budget) {
  const auto& fa = mg.filtered();
  if (fa.order(other - lift) > 0) throw InvalidArgument("lifts have different symbols");
  const Algebra& A = fa.algebra();
  if (A.max_degree(other) != A.max_degree(lift)) {
    throw InvalidArgument("lifts of different word length truncate differently");
  }
  const int R = mg.top_grade() + 1;
  const LocalizedTower O(mg, lift, R), P(mg, other, R);
  LiftComparison rep;

  const Vec delta = P.to_o(1, 0, P.h() - O.h());
  const Vec hinv = P.h_inverse();
  const Vec X = P.mul(-1, hinv, 1, delta);
  Vec H = hinv, term = hinv;
  for (int m = 1; !term.is_zero(); ++m) {
    term = P.mul(0, X, -1, term);
    H += term;
    if (m > mg.n() + 2 && !term.is_zero()) {
      rep.failure = "geometric series in h'^-1 d does not terminate";
      return rep;
    }
  }
  int qmax = 0;
  for (std::size_t k = 0; k < O.dim(0); ++k) qmax = std::max(qmax, O.power(0, k));
  std::vector<Vec> Hp{P.to_o(0, 0, mg.algebra().unit())};
  for (int q = 1; q <= qmax; ++q) Hp.push_back(P.mul(-(q - 1), Hp.back(), -1, H));

  std::vector<Vec> cols;
  for (std::size_t k = 0; k < O.dim(0); ++k) {
    const int q = O.power(0, k);
    const Vec c = Vec::unit(O.element(0, k));
    cols.push_back(P.mul(q, P.to_o(q, 0, c), -q, Hp[q]));
  }
  const LinearMap phi(P.dim(0), cols);
  rep.bijective = phi.bijective();
  rep.multiplicative = true;
  for (std::size_t a = 0; a < O.dim(0); ++a) {
    for (std::size_t b = 0; b < O.dim(0); ++b) {
      if (O.degree(0, a) + O.degree(0, b) > budget) continue;
      ++rep.pairs_checked;
      const Vec lhs = phi.apply(O.mul(0, Vec::unit(a), 0, Vec::unit(b)));
      const Vec rhs = P.mul(0, cols[a], 0, cols[b]);
      if (lhs != rhs) {
        rep.multiplicative = false;
        rep.failure = "phi(" + O.label(0, a) + " * " + O.label(0, b) + ") differs";
        return rep;
      }
    }
  }
  if (!rep.bijective) rep.failure = "comparison map is not bijective";
  return rep;
}

TowerReport shift_tower(const LocalizedTower& tower, int max_shift, int budget) {
  if (max_shift + 1 > tower.range()) throw InvalidArgument("tower range too small for the requested shifts");
  TowerReport rep;
  const Algebra& G = tower.graded().algebra();
  const Vec t = tower.to_o(1, 0, tower.graded().t());
  const Vec one = tower.to_o(0, 0, G.unit());
  rep.associative = rep.t_compatible = rep.unit_acts = true;
  for (int m = -max_shift; m <= max_shift; ++m) {
    rep.shifts.push_back(m);
    rep.dims.push_back(tower.dim(m));
    std::vector<Vec> cols;
    for (std::size_t k = 0; k < tower.dim(m); ++k) {
      const Vec e = Vec::unit(k);
      cols.push_back(tower.mul(1, t, m, e));
      if (tower.mul(0, one, m, e) != e || tower.mul(m, e, 0, one) != e) rep.unit_acts = false;
    }
    rep.t_ranks.push_back(LinearMap(tower.dim(m + 1), std::move(cols)).rank());
  }
  auto within = [&](int m, std::size_t k) { return tower.degree(m, k); };
  for (int m = -1; m <= 1; ++m) {
    for (int l = -1; l <= 1; ++l) {
      for (std::size_t a = 0; a < tower.dim(m); ++a) {
        for (std::size_t b = 0; b < tower.dim(l); ++b) {
          if (within(m, a) + within(l, b) > budget) continue;
          const Vec ea = Vec::unit(a), eb = Vec::unit(b);
          const Vec ab = tower.mul(m, ea, l, eb);
          const Vec tab = tower.mul(1, t, m + l, ab);
          if (tab != tower.mul(m + 1, tower.mul(1, t, m, ea), l, eb) ||
              tab != tower.mul(m, ea, l + 1, tower.mul(1, t, l, eb))) {
            rep.t_compatible = false;
          }
          if (m + l < -max_shift || m + l > max_shift) continue;
          for (int k = -1; k <= 1; ++k) {
            if (m + l + k < -tower.range() || m + l + k > tower.range()) continue;
            for (std::size_t c = 0; c < tower.dim(k); ++c) {
              if (within(m, a) + within(l, b) + within(k, c) > budget) continue;
              const Vec ec = Vec::unit(c);
              if (tower.mul(m + l, ab, k, ec) != tower.mul(m, ea, l + k, tower.mul(l, eb, k, ec))) {
                rep.associative = false;
              }
            }
          }
        }
      }
    }
  }
  // O(0) -> O(max_shift) through t-maps
  std::vector<Vec> cols;
  for (std::size_t k = 0; k < tower.dim(0); ++k) {
    Vec v = Vec::unit(k);
    for (int m = 0; m < max_shift; ++m) v = tower.mul(1, t, m, v);
    cols.push_back(v);
  }
  rep.limit_dim = LinearMap(tower.dim(max_shift), std::move(cols)).rank();
  return rep;
}

LinearMap TAdicModule::act(const Vec& a) const { return act(A->to_poly(a)); }

LinearMap TAdicModule::act(const NcPoly& p) const {
  std::vector<Vec> cols(dim);
  for (const auto& [w, c] : p.terms()) {
    LinearMap m = identity_map(dim);
    for (int g : w) m = m.compose(action.at(g));
    for (std::size_t j = 0; j < dim; ++j) cols[j].add_scaled(m.column(j), c);
  }
  return LinearMap(dim, std::move(cols));
}

TAdicModule regular_module(AlgebraPtr A, const Vec& t, int order, int copies) {
  TAdicModule M{A, t, order, A->dim() * static_cast<std::size_t>(copies), {}};
  const std::size_t n = A->dim();
  for (const auto& g : A->generators()) {
    std::vector<Vec> cols;
    for (int c = 0; c < copies; ++c) {
      for (std::size_t j = 0; j < n; ++j) {
        cols.push_back(A->mul(g, Vec::unit(j)).remap(
            [&](std::size_t i) -> std::optional<std::size_t> { return i + c * n; }));
      }
    }
    M.action.emplace_back(M.dim, std::move(cols));
  }
  return M;
}

RankOneReport rank_one_criterion(const TAdicModule& M) {
  const Algebra& A = *M.A;
  const std::size_t n = A.dim();
  if (!A.presentation() || !A.has_words()) throw InvalidArgument("rank-one criterion needs a presented algebra");
  if (M.action.size() != A.generators().size()) throw InvalidArgument("one action per generator expected");

  std::vector<Vec> left, right;
  for (std::size_t b = 0; b < n; ++b) {
    if (!A.commutator(M.t, Vec::unit(b)).is_zero()) throw HypothesisFailure("t is not central in A");
    left.push_back(A.mul(M.t, Vec::unit(b)));
    right.push_back(A.mul(Vec::unit(b), M.t));
  }
  if (!(LinearMap(n, left).image() == LinearMap(n, right).image())) throw HypothesisFailure("At != tA");
  if (!A.power(M.t, M.order).is_zero()) throw HypothesisFailure("t^N != 0 in A");
  const LinearMap tA(n, left);
  std::vector<Vec> top;
  const Vec tn = A.power(M.t, M.order - 1);
  for (std::size_t b = 0; b < n; ++b) top.push_back(A.mul(tn, Vec::unit(b)));
  {
    Subspace ker = tA.kernel();
    ker.canonicalize();
    Subspace img = LinearMap(n, top).image();
    img.canonicalize();
    if (!(ker == img)) throw HypothesisFailure("t is a zero divisor on A below order N");
  }
  for (const auto& r : A.presentation()->relations) {
    const LinearMap a = M.act(r);
    for (std::size_t j = 0; j < M.dim; ++j) {
      if (!a.column(j).is_zero()) throw HypothesisFailure("M is not an A-module");
    }
  }

  RankOneReport rep;
  const LinearMap tM = M.act(M.t);
  {
    Subspace ker = tM.kernel();
    ker.canonicalize();
    Subspace img = M.act(tn).image();
    img.canonicalize();
    if (!(ker == img)) {
      rep.reason = "t is a zero divisor on M below order N";
      return rep;
    }
  }
  const std::size_t qa = n - tA.rank();
  const std::size_t qm = M.dim - tM.rank();
  if (qa != qm) {
    rep.reason = "dim M/tM = " + std::to_string(qm) + " but dim A/tA = " + std::to_string(qa);
    return rep;
  }
  std::vector<LinearMap> acts;
  for (std::size_t b = 0; b < n; ++b) acts.push_back(M.act(Vec::unit(b)));
  std::vector<Vec> candidates;
  for (std::size_t j = 0; j < M.dim; ++j) candidates.push_back(Vec::unit(j));
  std::mt19937 rng(1);
  std::uniform_int_distribution<int> coeff(-2, 2);
  for (int r = 0; r < 32; ++r) {
    Vec v;
    for (std::size_t j = 0; j < M.dim; ++j) v.add_scaled(Vec::unit(j), coeff(rng));
    candidates.push_back(v);
  }
  for (const auto& m : candidates) {
    std::vector<Vec> cols;
    for (const auto& a : acts) cols.push_back(a.apply(m));
    if (LinearMap(M.dim, std::move(cols)).bijective()) {
      rep.free_rank_one = true;
      rep.generator = m;
      return rep;
    }
  }
  rep.reason = "no element generates M freely";
  return rep;
}

}  // namespace ncf
