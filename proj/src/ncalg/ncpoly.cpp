#include "ncf/ncpoly.hpp"

#include <sstream>

#include "ncf/errors.hpp"

namespace ncf {

Word concat(const Word& a, const Word& b) {
  Word w;
  w.reserve(a.size() + b.size());
  w.insert(w.end(), a.begin(), a.end());
  w.insert(w.end(), b.begin(), b.end());
  return w;
}

NcPoly NcPoly::constant(const Rational& c) { return word({}, c); }
NcPoly NcPoly::gen(int index, const Rational& c) { return word({index}, c); }

NcPoly NcPoly::word(Word w, const Rational& c) {
  NcPoly p;
  p.add_term(w, c);
  return p;
}

Rational NcPoly::coeff(const Word& w) const {
  auto it = terms_.find(w);
  return it == terms_.end() ? Rational(0) : it->second;
}

int NcPoly::degree() const {
  return terms_.empty() ? -1 : static_cast<int>(terms_.rbegin()->first.size());
}

int NcPoly::max_generator() const {
  int m = -1;
  for (const auto& [w, c] : terms_) {
    for (int g : w) m = std::max(m, g);
  }
  return m;
}

void NcPoly::add_term(const Word& w, const Rational& c) {
  if (c == 0) return;
  auto [it, fresh] = terms_.try_emplace(w, c);
  if (!fresh) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

NcPoly& NcPoly::operator+=(const NcPoly& o) {
  for (const auto& [w, c] : o.terms_) add_term(w, c);
  return *this;
}

NcPoly& NcPoly::operator-=(const NcPoly& o) {
  for (const auto& [w, c] : o.terms_) add_term(w, -c);
  return *this;
}

NcPoly& NcPoly::operator*=(const Rational& c) {
  if (c == 0) {
    terms_.clear();
  } else {
    for (auto& t : terms_) t.second *= c;
  }
  return *this;
}

NcPoly operator*(const NcPoly& a, const NcPoly& b) {
  NcPoly out;
  for (const auto& [wa, ca] : a.terms_) {
    for (const auto& [wb, cb] : b.terms_) out.add_term(concat(wa, wb), ca * cb);
  }
  return out;
}

NcPoly NcPoly::substitute(const std::vector<NcPoly>& images) const {
  NcPoly out;
  for (const auto& [w, c] : terms_) {
    NcPoly m = constant(c);
    for (int g : w) m = m * images.at(g);
    out += m;
  }
  return out;
}

NcPoly NcPoly::truncated(int bound) const {
  NcPoly out;
  for (const auto& [w, c] : terms_) {
    if (static_cast<int>(w.size()) <= bound) out.terms_.emplace(w, c);
  }
  return out;
}

NcPoly pow(const NcPoly& p, int k) {
  NcPoly out = NcPoly::constant(1);
  for (int i = 0; i < k; ++i) out = out * p;
  return out;
}

NcPoly commutator(const NcPoly& a, const NcPoly& b) { return a * b - b * a; }

std::string format_poly(const NcPoly& p, const std::vector<std::string>& names) {
  if (p.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  // highest words first, the way people usually write relations
  for (auto it = p.terms().rbegin(); it != p.terms().rend(); ++it) {
    const auto& [w, c] = *it;
    Rational mag = abs(c);
    if (first) {
      if (c < 0) os << '-';
    } else {
      os << (c < 0 ? " - " : " + ");
    }
    first = false;
    const bool unit_coeff = mag == 1;
    if (!unit_coeff || w.empty()) os << mag.get_str();
    for (std::size_t k = 0; k < w.size(); ++k) {
      if (k > 0 || !unit_coeff) os << '*';
      os << names.at(w[k]);
    }
  }
  return os.str();
}

int Presentation::index_of(const std::string& gen) const {
  for (std::size_t i = 0; i < gens.size(); ++i) {
    if (gens[i].name == gen) return static_cast<int>(i);
  }
  throw UnknownGenerator("unknown generator '" + gen + "'");
}

std::vector<std::string> Presentation::names() const {
  std::vector<std::string> out;
  for (const auto& g : gens) out.push_back(g.name);
  return out;
}

void Presentation::validate() const {
  if (bound < 0) throw InvalidArgument("degree bound must be nonnegative");
  for (const auto& g : gens) {
    if (g.weight < 0) throw InvalidArgument("negative weight on '" + g.name + "'");
  }
  for (const auto& r : relations) {
    if (r.max_generator() >= static_cast<int>(gens.size())) {
      throw UnknownGenerator("relation uses generator index " +
                             std::to_string(r.max_generator()));
    }
    if (r.degree() > bound) {
      throw DegreeOverflow("relation of degree " + std::to_string(r.degree()) +
                           " exceeds bound " + std::to_string(bound));
    }
  }
}

bool Presentation::homogeneous() const {
  for (const auto& r : relations) {
    int len = -1;
    for (const auto& [w, c] : r.terms()) {
      if (len >= 0 && static_cast<int>(w.size()) != len) return false;
      len = static_cast<int>(w.size());
    }
  }
  return true;
}

int Presentation::word_weight(const Word& w) const {
  int s = 0;
  for (int g : w) s += gens.at(g).weight;
  return s;
}

Presentation with_truncation_relations(const Presentation& p) {
  Presentation out = p;
  const int g = static_cast<int>(p.gens.size());
  const int len = p.bound + 1;
  Word w(len, 0);
  if (g == 0) return out;
  while (true) {
    out.relations.push_back(NcPoly::word(w));
    int k = len - 1;
    while (k >= 0 && w[k] == g - 1) w[k--] = 0;
    if (k < 0) break;
    ++w[k];
  }
  out.bound = len;
  return out;
}

}  // namespace ncf
