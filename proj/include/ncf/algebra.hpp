#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "ncf/linalg.hpp"
#include "ncf/ncpoly.hpp"

namespace ncf {

/// Enumerates all words of length <= bound over `gens` letters in
/// length-then-lex order.
class WordSpace {
 public:
  WordSpace(int gens, int bound);
  int gens() const noexcept { return gens_; }
  int bound() const noexcept { return bound_; }
  std::size_t size() const noexcept { return offsets_.back(); }
  std::size_t offset(int length) const { return offsets_.at(length); }
  std::size_t index(const Word& w) const;
  Word word(std::size_t index) const;

 private:
  int gens_;
  int bound_;
  std::vector<std::size_t> offsets_;  // offsets_[len] = first index of that length
};

/// Reduction data of a presentation: the relation ideal, truncated to the
/// word space, in reduced echelon form.
struct Reduction {
  WordSpace space;
  Subspace ideal;
  std::vector<long> basis_of_word;  // -1 for pivot words
};

/// Finite-dimensional algebra given by structure constants on a labelled
/// basis. Word algebras (built from a presentation) also carry the normal
/// form data; products whose degrees add past the bound are truncated.
class Algebra {
 public:
  struct Data {
    std::vector<std::string> labels;
    std::vector<int> degree;  // word length or grade
    std::vector<int> weight;  // filtration weight
    std::vector<Vec> table;   // dim * dim products
    Vec unit;
    std::vector<Vec> generators;
    std::vector<std::string> generator_names;
    int bound = 0;
    bool truncate = true;
    std::optional<Presentation> presentation;
    std::vector<Word> words;
    std::shared_ptr<const Reduction> reduction;
  };

  explicit Algebra(Data d) : d_(std::move(d)) {}

  std::size_t dim() const noexcept { return d_.labels.size(); }
  const std::string& label(std::size_t i) const { return d_.labels[i]; }
  const std::vector<std::string>& labels() const noexcept { return d_.labels; }
  int degree(std::size_t i) const { return d_.degree[i]; }
  int weight(std::size_t i) const { return d_.weight[i]; }
  int bound() const noexcept { return d_.bound; }
  bool truncates() const noexcept { return d_.truncate; }
  const Vec& unit() const noexcept { return d_.unit; }
  const std::vector<Vec>& generators() const noexcept { return d_.generators; }
  const std::vector<std::string>& generator_names() const noexcept { return d_.generator_names; }
  const std::optional<Presentation>& presentation() const noexcept { return d_.presentation; }
  bool has_words() const noexcept { return d_.reduction != nullptr; }
  const std::vector<Word>& words() const noexcept { return d_.words; }
  const Reduction& reduction() const { return *d_.reduction; }
  const Data& data() const noexcept { return d_; }

  Vec basis_vec(std::size_t i) const { return Vec::unit(i); }
  const Vec& product(std::size_t i, std::size_t j) const;
  Vec mul(const Vec& a, const Vec& b) const;
  Vec commutator(const Vec& a, const Vec& b) const;
  Vec power(const Vec& a, int k) const;
  /// Largest / smallest degree in the support (-1 for zero).
  int max_degree(const Vec& v) const;
  int min_degree(const Vec& v) const;
  /// Whether a*b is computed without dropping words: always in truncating
  /// algebras, otherwise only when the degrees fit under the bound.
  bool computable(const Vec& a, const Vec& b) const {
    return d_.truncate || max_degree(a) + max_degree(b) <= d_.bound;
  }

  /// Normal form of a polynomial in basis coordinates (word algebras only).
  Vec from_poly(const NcPoly& p) const;
  Vec from_word(const Word& w) const;
  NcPoly to_poly(const Vec& v) const;
  /// Evaluates a polynomial on the given generator images by repeated
  /// multiplication inside this algebra.
  Vec evaluate(const NcPoly& p, const std::vector<Vec>& images) const;

  /// True if all triples whose degrees sum to at most the bound associate.
  bool associative_within_bound() const;
  bool commutative() const;
  /// True if truncation loses nothing: every word of top length vanishes,
  /// or no product of two basis elements reaches past the bound. Together
  /// with associativity this makes the algebra an honest quotient.
  bool exact() const;

 private:
  Data d_;
};

using AlgebraPtr = std::shared_ptr<const Algebra>;

/// Builds the truncated quotient of the free algebra by the relations.
/// The relation space is closed under left/right multiplication by
/// generators (for elements of degree < bound) until it stops growing.
AlgebraPtr build_truncated(const Presentation& pres, bool truncate = true);

/// Canonical representative of p in the truncated quotient, as a polynomial.
NcPoly normal_form(const NcPoly& p, const Presentation& pres, bool truncate = true);

/// Two-sided ideal generated by `gens` (closed under multiplication by the
/// algebra generators, or by every basis element if it has none). In a
/// non-truncating algebra, products past the bound are skipped, so the
/// result is contained in the honest ideal.
Subspace two_sided_ideal(const Algebra& alg, const std::vector<Vec>& gens);
bool is_two_sided_ideal(const Algebra& alg, const Subspace& s);

/// Quotient by a two-sided ideal. Word algebras stay word algebras with the
/// ideal appended to the presentation.
AlgebraPtr quotient(const Algebra& alg, Subspace ideal);

/// Linear map A -> A/I in basis coordinates for the algebra returned by
/// quotient().
LinearMap quotient_projection(const Algebra& alg, Subspace ideal);

std::string format_element(const Algebra& alg, const Vec& v);

}  // namespace ncf
