#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "ncf/rational.hpp"

namespace ncf {

/// Sparse vector over the rationals: sorted (index, coefficient) pairs with
/// no stored zeros.
class Vec {
 public:
  using Term = std::pair<std::size_t, Rational>;

  Vec() = default;
  static Vec unit(std::size_t index, Rational coeff = 1);
  /// Builds from unsorted terms, merging duplicates and dropping zeros.
  static Vec from_terms(std::vector<Term> terms);

  bool is_zero() const noexcept { return terms_.empty(); }
  std::size_t size() const noexcept { return terms_.size(); }
  const std::vector<Term>& terms() const noexcept { return terms_; }
  auto begin() const { return terms_.begin(); }
  auto end() const { return terms_.end(); }

  Rational coeff(std::size_t index) const;
  /// Largest index with a nonzero coefficient. Requires !is_zero().
  std::size_t leading_index() const { return terms_.back().first; }
  const Rational& leading_coeff() const { return terms_.back().second; }

  /// this += c * other
  void add_scaled(const Vec& other, const Rational& c);
  Vec& operator+=(const Vec& other);
  Vec& operator-=(const Vec& other);
  Vec& operator*=(const Rational& c);
  friend Vec operator+(Vec a, const Vec& b) { return a += b; }
  friend Vec operator-(Vec a, const Vec& b) { return a -= b; }
  friend Vec operator*(Vec a, const Rational& c) { return a *= c; }
  friend Vec operator*(const Rational& c, Vec a) { return a *= c; }
  Vec operator-() const { return *this * Rational(-1); }

  /// Reindexes through `map`; entries mapped to nullopt are dropped.
  template <class F>
  Vec remap(F&& map) const {
    std::vector<Term> out;
    out.reserve(terms_.size());
    for (const auto& [i, c] : terms_) {
      std::optional<std::size_t> j = map(i);
      if (j) out.emplace_back(*j, c);
    }
    return from_terms(std::move(out));
  }

  friend bool operator==(const Vec& a, const Vec& b) { return a.terms_ == b.terms_; }

  std::vector<Rational> to_dense(std::size_t dim) const;
  static Vec from_dense(std::span<const Rational> dense);

 private:
  std::vector<Term> terms_;
};

/// A subspace of Q^dim kept as an echelon basis whose pivots are the
/// largest indices of their rows. `canonicalize()` brings it to reduced
/// echelon form, which is unique for the subspace.
class Subspace {
 public:
  explicit Subspace(std::size_t ambient_dim = 0) : dim_(ambient_dim) {}
  static Subspace zero(std::size_t ambient_dim) { return Subspace(ambient_dim); }
  static Subspace full(std::size_t ambient_dim);
  static Subspace span(std::size_t ambient_dim, std::span<const Vec> vectors);

  std::size_t ambient_dim() const noexcept { return dim_; }
  std::size_t dim() const noexcept { return rows_.size(); }
  bool is_zero() const noexcept { return rows_.empty(); }

  /// Reduces `v` modulo the subspace. In reduced echelon form the result is
  /// the canonical representative of the coset.
  Vec reduce(Vec v) const;
  bool contains(const Vec& v) const { return reduce(v).is_zero(); }
  bool contains(const Subspace& other) const;

  /// Inserts `v`; returns true if the dimension grew. The stored row is
  /// returned through `added` when non-null.
  bool insert(Vec v, Vec* added = nullptr);
  void insert_all(const Subspace& other);

  void canonicalize();
  bool is_canonical() const noexcept { return canonical_; }
  /// Stops back-substitution on insert until the next canonicalize().
  void defer_canonical() noexcept { canonical_ = false; }

  bool is_pivot(std::size_t index) const { return rows_.count(index) != 0; }
  /// Row with the given pivot (leading coefficient 1).
  const Vec& row(std::size_t pivot) const { return rows_.at(pivot); }
  const std::map<std::size_t, Vec>& rows() const noexcept { return rows_; }
  std::vector<Vec> basis() const;
  /// Indices that are not pivots: a basis of a canonical complement.
  std::vector<std::size_t> non_pivots() const;

  Subspace intersect(const Subspace& other) const;
  Subspace sum(const Subspace& other) const;

  friend bool operator==(const Subspace& a, const Subspace& b);

 private:
  std::size_t dim_;
  std::map<std::size_t, Vec> rows_;
  bool canonical_ = true;
};

/// Linear map Q^cols -> Q^rows stored by its (sparse) column images.
class LinearMap {
 public:
  LinearMap(std::size_t rows, std::size_t cols) : rows_(rows), columns_(cols) {}
  LinearMap(std::size_t rows, std::vector<Vec> columns)
      : rows_(rows), columns_(std::move(columns)) {}

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return columns_.size(); }
  const Vec& column(std::size_t j) const { return columns_[j]; }
  void set_column(std::size_t j, Vec v) { columns_[j] = std::move(v); }

  Vec apply(const Vec& x) const;
  LinearMap compose(const LinearMap& inner) const;  // this ∘ inner

  Subspace image() const;
  Subspace kernel() const;
  std::size_t rank() const { return image().dim(); }
  bool injective() const { return kernel().is_zero(); }
  bool surjective() const { return rank() == rows_; }
  bool bijective() const { return rows_ == cols() && injective(); }

  /// Some x with apply(x) == b, or nullopt if b is not in the image.
  std::optional<Vec> solve(const Vec& b) const;

 private:
  struct Elimination;
  Elimination eliminate() const;

  std::size_t rows_;
  std::vector<Vec> columns_;
};

/// Solution set {particular + kernel} of an affine-linear system.
struct AffineSolution {
  std::optional<Vec> particular;
  Subspace kernel;
  bool exists() const noexcept { return particular.has_value(); }
  bool unique() const noexcept { return exists() && kernel.is_zero(); }
};

AffineSolution solve_affine(const LinearMap& map, const Vec& rhs);

std::string format_vec(const Vec& v);

}  // namespace ncf
