#include "ncf/linalg.hpp"

#include <algorithm>
#include <sstream>

namespace ncf {

Vec Vec::unit(std::size_t index, Rational coeff) {
  Vec v;
  if (coeff != 0) v.terms_.emplace_back(index, std::move(coeff));
  return v;
}

Vec Vec::from_terms(std::vector<Term> terms) {
  std::sort(terms.begin(), terms.end(),
            [](const Term& a, const Term& b) { return a.first < b.first; });
  Vec v;
  v.terms_.reserve(terms.size());
  for (auto& t : terms) {
    if (!v.terms_.empty() && v.terms_.back().first == t.first) {
      v.terms_.back().second += t.second;
      if (v.terms_.back().second == 0) v.terms_.pop_back();
    } else if (t.second != 0) {
      v.terms_.push_back(std::move(t));
    }
  }
  return v;
}

Rational Vec::coeff(std::size_t index) const {
  auto it = std::lower_bound(terms_.begin(), terms_.end(), index,
                             [](const Term& t, std::size_t i) { return t.first < i; });
  if (it == terms_.end() || it->first != index) return 0;
  return it->second;
}

void Vec::add_scaled(const Vec& other, const Rational& c) {
  if (c == 0 || other.terms_.empty()) return;
  std::vector<Term> out;
  out.reserve(terms_.size() + other.terms_.size());
  auto a = terms_.begin();
  auto b = other.terms_.begin();
  while (a != terms_.end() || b != other.terms_.end()) {
    if (b == other.terms_.end() || (a != terms_.end() && a->first < b->first)) {
      out.push_back(std::move(*a++));
    } else if (a == terms_.end() || b->first < a->first) {
      out.emplace_back(b->first, c * b->second);
      ++b;
    } else {
      Rational s = a->second + c * b->second;
      if (s != 0) out.emplace_back(a->first, std::move(s));
      ++a;
      ++b;
    }
  }
  terms_ = std::move(out);
}

Vec& Vec::operator+=(const Vec& other) {
  add_scaled(other, 1);
  return *this;
}

Vec& Vec::operator-=(const Vec& other) {
  add_scaled(other, -1);
  return *this;
}

Vec& Vec::operator*=(const Rational& c) {
  if (c == 0) {
    terms_.clear();
  } else {
    for (auto& t : terms_) t.second *= c;
  }
  return *this;
}

std::vector<Rational> Vec::to_dense(std::size_t dim) const {
  std::vector<Rational> out(dim);
  for (const auto& [i, c] : terms_) out.at(i) = c;
  return out;
}

Vec Vec::from_dense(std::span<const Rational> dense) {
  Vec v;
  for (std::size_t i = 0; i < dense.size(); ++i) {
    if (dense[i] != 0) v.terms_.emplace_back(i, dense[i]);
  }
  return v;
}

// ---------------------------------------------------------------------------

Subspace Subspace::full(std::size_t ambient_dim) {
  Subspace s(ambient_dim);
  for (std::size_t i = 0; i < ambient_dim; ++i) s.rows_.emplace(i, Vec::unit(i));
  return s;
}

Subspace Subspace::span(std::size_t ambient_dim, std::span<const Vec> vectors) {
  Subspace s(ambient_dim);
  for (const auto& v : vectors) s.insert(v);
  return s;
}

Vec Subspace::reduce(Vec v) const {
  if (rows_.empty() || v.is_zero()) return v;
  if (canonical_) {
    Vec out = v;
    for (const auto& [i, c] : v) {
      auto r = rows_.find(i);
      if (r != rows_.end()) out.add_scaled(r->second, -c);
    }
    return out;
  }
  std::map<std::size_t, Rational> work;
  for (auto& t : v.terms()) work.emplace(t.first, t.second);
  auto it = work.end();
  while (it != work.begin()) {
    --it;
    auto r = rows_.find(it->first);
    if (r == rows_.end()) continue;
    const std::size_t idx = it->first;
    const Rational c = it->second;
    for (const auto& [j, a] : r->second) {
      auto slot = work.try_emplace(j, 0).first;
      slot->second -= c * a;
      if (slot->second == 0) work.erase(slot);
    }
    it = work.lower_bound(idx);
  }
  std::vector<Vec::Term> terms(work.begin(), work.end());
  return Vec::from_terms(std::move(terms));
}

bool Subspace::contains(const Subspace& other) const {
  for (const auto& [p, r] : other.rows_) {
    if (!contains(r)) return false;
  }
  return true;
}

bool Subspace::insert(Vec v, Vec* added) {
  Vec r = reduce(std::move(v));
  if (r.is_zero()) return false;
  const Rational lead = r.leading_coeff();
  if (lead != 1) r *= Rational(1) / lead;
  const std::size_t p = r.leading_index();
  if (canonical_) {
    for (auto it = rows_.upper_bound(p); it != rows_.end(); ++it) {
      const Rational c = it->second.coeff(p);
      if (c != 0) it->second.add_scaled(r, -c);
    }
  }
  if (added) *added = r;
  rows_.emplace(p, std::move(r));
  return true;
}

void Subspace::insert_all(const Subspace& other) {
  for (const auto& [p, r] : other.rows_) insert(r);
}

void Subspace::canonicalize() {
  if (canonical_) return;
  for (auto it = rows_.begin(); it != rows_.end(); ++it) {
    const Vec original = it->second;
    for (const auto& [i, c] : original) {
      if (i == it->first) continue;
      auto r = rows_.find(i);
      if (r != rows_.end() && r->first < it->first) it->second.add_scaled(r->second, -c);
    }
  }
  canonical_ = true;
}

std::vector<Vec> Subspace::basis() const {
  std::vector<Vec> out;
  out.reserve(rows_.size());
  for (const auto& [p, r] : rows_) out.push_back(r);
  return out;
}

std::vector<std::size_t> Subspace::non_pivots() const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < dim_; ++i) {
    if (!rows_.count(i)) out.push_back(i);
  }
  return out;
}

Subspace Subspace::sum(const Subspace& other) const {
  Subspace s = *this;
  s.insert_all(other);
  return s;
}

Subspace Subspace::intersect(const Subspace& other) const {
  // Kernel of (a, b) -> a - b restricted to the two bases.
  std::vector<Vec> cols;
  for (const auto& [p, r] : rows_) cols.push_back(r);
  const std::size_t na = cols.size();
  for (const auto& [p, r] : other.rows_) cols.push_back(-r);
  LinearMap m(dim_, std::move(cols));
  Subspace result(dim_);
  const std::vector<Vec> mine = basis();
  for (const auto& k : m.kernel().basis()) {
    Vec v;
    for (const auto& [j, c] : k) {
      if (j < na) v.add_scaled(mine[j], c);
    }
    result.insert(std::move(v));
  }
  return result;
}

bool operator==(const Subspace& a, const Subspace& b) {
  if (a.dim_ != b.dim_ || a.rows_.size() != b.rows_.size()) return false;
  return a.contains(b) && b.contains(a);
}

// ---------------------------------------------------------------------------

struct LinearMap::Elimination {
  Subspace echelon;  // vectors [column | e_j] with the column part on top
};

LinearMap::Elimination LinearMap::eliminate() const {
  const std::size_t n = cols();
  Elimination e{Subspace(n + rows_)};
  for (std::size_t j = 0; j < n; ++j) {
    std::vector<Vec::Term> terms;
    terms.reserve(columns_[j].size() + 1);
    terms.emplace_back(j, 1);
    for (const auto& [i, c] : columns_[j]) terms.emplace_back(n + i, c);
    e.echelon.insert(Vec::from_terms(std::move(terms)));
  }
  return e;
}

Vec LinearMap::apply(const Vec& x) const {
  Vec out;
  for (const auto& [j, c] : x) out.add_scaled(columns_.at(j), c);
  return out;
}

LinearMap LinearMap::compose(const LinearMap& inner) const {
  std::vector<Vec> cols;
  cols.reserve(inner.cols());
  for (std::size_t j = 0; j < inner.cols(); ++j) cols.push_back(apply(inner.column(j)));
  return LinearMap(rows_, std::move(cols));
}

Subspace LinearMap::image() const {
  Subspace s(rows_);
  for (const auto& c : columns_) s.insert(c);
  return s;
}

Subspace LinearMap::kernel() const {
  const std::size_t n = cols();
  const Elimination e = eliminate();
  Subspace k(n);
  for (const auto& [p, r] : e.echelon.rows()) {
    if (p < n) k.insert(r);
  }
  return k;
}

std::optional<Vec> LinearMap::solve(const Vec& b) const {
  const std::size_t n = cols();
  const Elimination e = eliminate();
  std::vector<Vec::Term> terms;
  for (const auto& [i, c] : b) terms.emplace_back(n + i, c);
  const Vec r = e.echelon.reduce(Vec::from_terms(std::move(terms)));
  for (const auto& [i, c] : r) {
    if (i >= n) return std::nullopt;
  }
  return -r;
}

AffineSolution solve_affine(const LinearMap& map, const Vec& rhs) {
  return AffineSolution{map.solve(rhs), map.kernel()};
}

std::string format_vec(const Vec& v) {
  std::ostringstream os;
  os << '{';
  bool first = true;
  for (const auto& [i, c] : v) {
    if (!first) os << ", ";
    first = false;
    os << i << ": " << c.get_str();
  }
  os << '}';
  return os.str();
}

}  // namespace ncf
