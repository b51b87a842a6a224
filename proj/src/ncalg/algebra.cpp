#include "ncf/algebra.hpp"

#include <algorithm>
#include <deque>
#include <sstream>

#include "ncf/errors.hpp"

namespace ncf {

WordSpace::WordSpace(int gens, int bound) : gens_(gens), bound_(bound) {
  offsets_.push_back(0);
  std::size_t count = 1;
  for (int len = 0; len <= bound; ++len) {
    offsets_.push_back(offsets_.back() + count);
    count *= static_cast<std::size_t>(gens);
  }
}

std::size_t WordSpace::index(const Word& w) const {
  const int len = static_cast<int>(w.size());
  if (len > bound_) throw DegreeOverflow("word longer than bound");
  std::size_t idx = 0;
  for (int g : w) idx = idx * gens_ + g;
  return offsets_[len] + idx;
}

Word WordSpace::word(std::size_t index) const {
  auto it = std::upper_bound(offsets_.begin(), offsets_.end(), index);
  const int len = static_cast<int>(it - offsets_.begin()) - 1;
  std::size_t rest = index - offsets_[len];
  Word w(len);
  for (int k = len - 1; k >= 0; --k) {
    w[k] = static_cast<int>(rest % gens_);
    rest /= gens_;
  }
  return w;
}

namespace {

std::string word_label(const Word& w, const std::vector<std::string>& names) {
  if (w.empty()) return "1";
  std::string s;
  for (std::size_t k = 0; k < w.size(); ++k) {
    if (k) s += '*';
    s += names.at(w[k]);
  }
  return s;
}

Vec poly_to_wordvec(const NcPoly& p, const WordSpace& ws) {
  std::vector<Vec::Term> terms;
  for (const auto& [w, c] : p.terms()) terms.emplace_back(ws.index(w), c);
  return Vec::from_terms(std::move(terms));
}

AlgebraPtr algebra_from_reduction(const Presentation& pres, std::shared_ptr<Reduction> red,
                                  bool truncate) {
  const WordSpace& ws = red->space;
  const int D = ws.bound();
  if (red->ideal.is_pivot(0)) {
    throw InconsistentPresentation("the unit lies in the relation ideal of '" + pres.name + "'");
  }
  Algebra::Data d;
  const auto names = pres.names();
  red->basis_of_word.assign(ws.size(), -1);
  for (std::size_t i = 0; i < ws.size(); ++i) {
    if (red->ideal.is_pivot(i)) continue;
    red->basis_of_word[i] = static_cast<long>(d.words.size());
    Word w = ws.word(i);
    d.labels.push_back(word_label(w, names));
    d.degree.push_back(static_cast<int>(w.size()));
    d.weight.push_back(pres.word_weight(w));
    d.words.push_back(std::move(w));
  }
  const std::size_t n = d.words.size();
  auto to_basis = [&](std::size_t word_index) {
    Vec r = red->ideal.reduce(Vec::unit(word_index));
    return r.remap([&](std::size_t i) -> std::optional<std::size_t> {
      return static_cast<std::size_t>(red->basis_of_word[i]);
    });
  };
  d.table.resize(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (d.degree[i] + d.degree[j] > D) continue;
      d.table[i * n + j] = to_basis(ws.index(concat(d.words[i], d.words[j])));
    }
  }
  d.unit = to_basis(0);
  for (std::size_t g = 0; g < pres.gens.size(); ++g) {
    d.generators.push_back(D >= 1 ? to_basis(ws.index({static_cast<int>(g)})) : Vec{});
    d.generator_names.push_back(pres.gens[g].name);
  }
  d.bound = D;
  d.truncate = truncate;
  d.presentation = pres;
  d.reduction = std::move(red);
  return std::make_shared<Algebra>(std::move(d));
}

}  // namespace

const Vec& Algebra::product(std::size_t i, std::size_t j) const {
  if (!d_.truncate && d_.degree[i] + d_.degree[j] > d_.bound) {
    throw DegreeOverflow("product " + d_.labels[i] + " * " + d_.labels[j] +
                         " exceeds degree bound " + std::to_string(d_.bound));
  }
  return d_.table[i * dim() + j];
}

Vec Algebra::mul(const Vec& a, const Vec& b) const {
  Vec out;
  for (const auto& [i, ca] : a) {
    for (const auto& [j, cb] : b) out.add_scaled(product(i, j), ca * cb);
  }
  return out;
}

Vec Algebra::commutator(const Vec& a, const Vec& b) const { return mul(a, b) - mul(b, a); }

Vec Algebra::power(const Vec& a, int k) const {
  Vec out = d_.unit;
  for (int i = 0; i < k; ++i) out = mul(out, a);
  return out;
}

int Algebra::max_degree(const Vec& v) const {
  int m = -1;
  for (const auto& [i, c] : v) m = std::max(m, d_.degree[i]);
  return m;
}

int Algebra::min_degree(const Vec& v) const {
  int m = -1;
  for (const auto& [i, c] : v) m = m < 0 ? d_.degree[i] : std::min(m, d_.degree[i]);
  return m;
}

Vec Algebra::from_word(const Word& w) const {
  if (!d_.reduction) throw InvalidArgument("algebra has no word basis");
  const auto& red = *d_.reduction;
  if (static_cast<int>(w.size()) > d_.bound) {
    if (d_.truncate) return {};
    throw DegreeOverflow("word of length " + std::to_string(w.size()) + " exceeds bound " +
                         std::to_string(d_.bound));
  }
  for (int g : w) {
    if (g < 0 || g >= red.space.gens()) throw UnknownGenerator("generator index out of range");
  }
  Vec r = red.ideal.reduce(Vec::unit(red.space.index(w)));
  return r.remap([&](std::size_t i) -> std::optional<std::size_t> {
    return static_cast<std::size_t>(red.basis_of_word[i]);
  });
}

Vec Algebra::from_poly(const NcPoly& p) const {
  Vec out;
  for (const auto& [w, c] : p.terms()) out.add_scaled(from_word(w), c);
  return out;
}

NcPoly Algebra::to_poly(const Vec& v) const {
  if (!d_.reduction) throw InvalidArgument("algebra has no word basis");
  NcPoly p;
  for (const auto& [i, c] : v) p.add_term(d_.words[i], c);
  return p;
}

Vec Algebra::evaluate(const NcPoly& p, const std::vector<Vec>& images) const {
  Vec out;
  for (const auto& [w, c] : p.terms()) {
    Vec m = d_.unit;
    for (int g : w) m = mul(m, images.at(g));
    out.add_scaled(m, c);
  }
  return out;
}

bool Algebra::associative_within_bound() const {
  const std::size_t n = dim();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (d_.degree[i] + d_.degree[j] > d_.bound) continue;
      const Vec& ij = product(i, j);
      for (std::size_t k = 0; k < n; ++k) {
        if (d_.degree[i] + d_.degree[j] + d_.degree[k] > d_.bound) continue;
        if (mul(ij, basis_vec(k)) != mul(basis_vec(i), product(j, k))) return false;
      }
    }
  }
  return true;
}

bool Algebra::commutative() const {
  for (std::size_t i = 0; i < dim(); ++i) {
    for (std::size_t j = i + 1; j < dim(); ++j) {
      if (d_.degree[i] + d_.degree[j] > d_.bound && !d_.truncate) continue;
      if (product(i, j) != product(j, i)) return false;
    }
  }
  return true;
}

bool Algebra::exact() const {
  int top = 0;
  for (int deg : d_.degree) top = std::max(top, deg);
  if (2 * top <= d_.bound) return true;
  if (!d_.reduction) return false;
  const WordSpace& ws = d_.reduction->space;
  for (std::size_t i = ws.offset(d_.bound); i < ws.size(); ++i) {
    if (!from_word(ws.word(i)).is_zero()) return false;
  }
  return true;
}

AlgebraPtr build_truncated(const Presentation& pres, bool truncate) {
  pres.validate();
  const int g = static_cast<int>(pres.gens.size());
  const int D = pres.bound;
  auto red = std::make_shared<Reduction>(Reduction{WordSpace(g, D), Subspace{}, {}});
  const WordSpace& ws = red->space;
  Subspace& J = red->ideal;
  J = Subspace(ws.size());
  J.defer_canonical();

  // left[g][i] / right[g][i]: index of g*w_i and w_i*g for |w_i| < D
  const std::size_t inner = ws.offset(std::max(D, 0));
  std::vector<std::vector<std::size_t>> left(g, std::vector<std::size_t>(inner));
  std::vector<std::vector<std::size_t>> right(g, std::vector<std::size_t>(inner));
  for (std::size_t i = 0; i < inner; ++i) {
    const Word w = ws.word(i);
    for (int a = 0; a < g; ++a) {
      left[a][i] = ws.index(concat({a}, w));
      right[a][i] = ws.index(concat(w, {a}));
    }
  }

  std::deque<Vec> pending;
  auto push = [&](Vec v) {
    Vec added;
    if (J.insert(std::move(v), &added)) pending.push_back(std::move(added));
  };
  for (const auto& r : pres.relations) push(poly_to_wordvec(r, ws));
  while (!pending.empty()) {
    Vec r = std::move(pending.front());
    pending.pop_front();
    if (r.leading_index() >= inner) continue;
    for (int a = 0; a < g; ++a) {
      push(r.remap([&](std::size_t i) -> std::optional<std::size_t> { return left[a][i]; }));
      push(r.remap([&](std::size_t i) -> std::optional<std::size_t> { return right[a][i]; }));
    }
  }
  J.canonicalize();
  return algebra_from_reduction(pres, std::move(red), truncate);
}

NcPoly normal_form(const NcPoly& p, const Presentation& pres, bool truncate) {
  auto alg = build_truncated(pres, truncate);
  return alg->to_poly(alg->from_poly(p));
}

Subspace two_sided_ideal(const Algebra& alg, const std::vector<Vec>& gens) {
  std::vector<Vec> mult = alg.generators();
  if (mult.empty()) {
    for (std::size_t i = 0; i < alg.dim(); ++i) mult.push_back(alg.basis_vec(i));
  }
  Subspace I(alg.dim());
  I.defer_canonical();
  std::deque<Vec> pending;
  auto push = [&](Vec v) {
    Vec added;
    if (I.insert(std::move(v), &added)) pending.push_back(std::move(added));
  };
  for (const auto& v : gens) push(v);
  while (!pending.empty()) {
    Vec r = std::move(pending.front());
    pending.pop_front();
    for (const auto& m : mult) {
      if (alg.computable(m, r)) push(alg.mul(m, r));
      if (alg.computable(r, m)) push(alg.mul(r, m));
    }
  }
  I.canonicalize();
  return I;
}

bool is_two_sided_ideal(const Algebra& alg, const Subspace& s) {
  for (const auto& [p, r] : s.rows()) {
    for (std::size_t i = 0; i < alg.dim(); ++i) {
      if (!s.contains(alg.mul(alg.basis_vec(i), r)) || !s.contains(alg.mul(r, alg.basis_vec(i)))) {
        return false;
      }
    }
  }
  return true;
}

LinearMap quotient_projection(const Algebra& alg, Subspace ideal) {
  ideal.canonicalize();
  const auto keep = ideal.non_pivots();
  std::vector<long> pos(alg.dim(), -1);
  for (std::size_t k = 0; k < keep.size(); ++k) pos[keep[k]] = static_cast<long>(k);
  std::vector<Vec> cols;
  for (std::size_t j = 0; j < alg.dim(); ++j) {
    cols.push_back(ideal.reduce(Vec::unit(j)).remap(
        [&](std::size_t i) -> std::optional<std::size_t> { return static_cast<std::size_t>(pos[i]); }));
  }
  return LinearMap(keep.size(), std::move(cols));
}

AlgebraPtr quotient(const Algebra& alg, Subspace ideal) {
  ideal.canonicalize();
  if (ideal.contains(alg.unit())) throw InconsistentPresentation("quotient by the unit ideal");
  if (alg.has_words() && alg.presentation()) {
    const Reduction& red = alg.reduction();
    auto next = std::make_shared<Reduction>(Reduction{red.space, red.ideal, {}});
    Presentation pres = *alg.presentation();
    next->ideal.defer_canonical();
    for (const auto& [p, row] : ideal.rows()) {
      Vec wv = row.remap([&](std::size_t i) -> std::optional<std::size_t> {
        return red.space.index(alg.words()[i]);
      });
      pres.relations.push_back(alg.to_poly(row));
      next->ideal.insert(std::move(wv));
    }
    next->ideal.canonicalize();
    return algebra_from_reduction(pres, std::move(next), alg.truncates());
  }
  const auto keep = ideal.non_pivots();
  const LinearMap proj = quotient_projection(alg, ideal);
  Algebra::Data d;
  const std::size_t n = keep.size();
  for (std::size_t k : keep) {
    d.labels.push_back(alg.label(k));
    d.degree.push_back(alg.degree(k));
    d.weight.push_back(alg.weight(k));
  }
  d.table.resize(n * n);
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) d.table[a * n + b] = proj.apply(alg.product(keep[a], keep[b]));
  }
  d.unit = proj.apply(alg.unit());
  for (const auto& g : alg.generators()) d.generators.push_back(proj.apply(g));
  d.generator_names = alg.generator_names();
  d.bound = alg.bound();
  d.truncate = alg.truncates();
  return std::make_shared<Algebra>(std::move(d));
}

std::string format_element(const Algebra& alg, const Vec& v) {
  if (v.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (auto it = v.terms().rbegin(); it != v.terms().rend(); ++it) {
    const auto& [i, c] = *it;
    if (!first) os << (c < 0 ? " - " : " + ");
    else if (c < 0) os << '-';
    first = false;
    Rational mag = abs(c);
    if (mag != 1) os << mag.get_str() << '*';
    os << alg.label(i);
  }
  return os.str();
}

}  // namespace ncf
