#pragma once

#include <map>
#include <string>
#include <vector>

#include "ncf/rational.hpp"

namespace ncf {

/// Monomial in generator indices; the empty word is the unit.
using Word = std::vector<int>;

/// Length first, then lexicographic on generator indices.
struct WordLess {
  bool operator()(const Word& a, const Word& b) const {
    if (a.size() != b.size()) return a.size() < b.size();
    return a < b;
  }
};

Word concat(const Word& a, const Word& b);

class NcPoly {
 public:
  using Terms = std::map<Word, Rational, WordLess>;

  NcPoly() = default;
  static NcPoly constant(const Rational& c);
  static NcPoly gen(int index, const Rational& c = 1);
  static NcPoly word(Word w, const Rational& c = 1);

  bool is_zero() const noexcept { return terms_.empty(); }
  const Terms& terms() const noexcept { return terms_; }
  Rational coeff(const Word& w) const;
  /// Length of the longest word, -1 for zero.
  int degree() const;
  /// Largest generator index used, -1 if none.
  int max_generator() const;
  void add_term(const Word& w, const Rational& c);

  NcPoly& operator+=(const NcPoly& o);
  NcPoly& operator-=(const NcPoly& o);
  NcPoly& operator*=(const Rational& c);
  friend NcPoly operator+(NcPoly a, const NcPoly& b) { return a += b; }
  friend NcPoly operator-(NcPoly a, const NcPoly& b) { return a -= b; }
  friend NcPoly operator*(NcPoly a, const Rational& c) { return a *= c; }
  friend NcPoly operator*(const Rational& c, NcPoly a) { return a *= c; }
  friend NcPoly operator*(const NcPoly& a, const NcPoly& b);
  NcPoly operator-() const { return *this * Rational(-1); }
  friend bool operator==(const NcPoly& a, const NcPoly& b) { return a.terms_ == b.terms_; }

  /// Substitutes generator index i -> map[i].
  NcPoly substitute(const std::vector<NcPoly>& images) const;
  /// Keeps terms of length <= bound.
  NcPoly truncated(int bound) const;

 private:
  Terms terms_;
};

NcPoly pow(const NcPoly& p, int k);
NcPoly commutator(const NcPoly& a, const NcPoly& b);

/// Renders with generator names, e.g. "d*x - x*d - 1".
std::string format_poly(const NcPoly& p, const std::vector<std::string>& names);

struct Generator {
  std::string name;
  int weight = 0;
};

struct Presentation {
  std::string name;
  std::vector<Generator> gens;
  std::vector<NcPoly> relations;
  int bound = 1;

  int index_of(const std::string& gen) const;  // UnknownGenerator if absent
  std::vector<std::string> names() const;
  /// Checks generator indices and that relations fit under the bound.
  void validate() const;
  bool homogeneous() const;
  int word_weight(const Word& w) const;
};

/// Adds every word of length bound+1 as a relation and raises the bound by
/// one, so that the truncated algebra is an honest associative quotient.
Presentation with_truncation_relations(const Presentation& p);

}  // namespace ncf
