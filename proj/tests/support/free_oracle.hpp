#pragma once

// Literal enumeration of the NC filtration on a truncated free algebra:
// words multiply by concatenation, and F^d is the span of the products
// R R_{i1} R ... R R_{im} R over every composition of d.

#include <map>
#include <vector>

#include "ncf/linalg.hpp"
#include "ncf/ncpoly.hpp"

namespace oracle {

using ncf::Rational;
using ncf::Word;
using Elem = std::map<Word, Rational, ncf::WordLess>;

struct FreeTruncated {
  int gens;
  int bound;
  std::vector<Word> words;
  std::map<Word, std::size_t, ncf::WordLess> index;

  FreeTruncated(int g, int d) : gens(g), bound(d) {
    std::vector<Word> layer{Word{}};
    for (int len = 0; len <= d; ++len) {
      std::vector<Word> next;
      for (const auto& w : layer) {
        index[w] = words.size();
        words.push_back(w);
        for (int a = 0; a < g; ++a) {
          Word v = w;
          v.push_back(a);
          next.push_back(v);
        }
      }
      layer = std::move(next);
    }
  }

  Elem mul(const Elem& a, const Elem& b) const {
    Elem out;
    for (const auto& [wa, ca] : a) {
      for (const auto& [wb, cb] : b) {
        if (static_cast<int>(wa.size() + wb.size()) > bound) continue;
        Rational& slot = out[ncf::concat(wa, wb)];
        slot += ca * cb;
        if (slot == 0) out.erase(ncf::concat(wa, wb));
      }
    }
    return out;
  }

  ncf::Vec to_vec(const Elem& e) const {
    std::vector<ncf::Vec::Term> t;
    for (const auto& [w, c] : e) t.emplace_back(index.at(w), c);
    return ncf::Vec::from_terms(std::move(t));
  }

  Elem from_vec(const ncf::Vec& v) const {
    Elem e;
    for (const auto& [i, c] : v) e[words[i]] = c;
    return e;
  }

  std::vector<Elem> span_basis(const std::vector<Elem>& elems) const {
    ncf::Subspace s(words.size());
    for (const auto& e : elems) s.insert(to_vec(e));
    std::vector<Elem> out;
    for (const auto& v : s.basis()) out.push_back(from_vec(v));
    return out;
  }

  std::vector<Elem> all_words() const {
    std::vector<Elem> out;
    for (const auto& w : words) out.push_back(Elem{{w, 1}});
    return out;
  }

  std::vector<Elem> lcs(int k) const {
    std::vector<Elem> r = all_words();
    for (int s = 0; s < k; ++s) {
      std::vector<Elem> next;
      for (const auto& w : words) {
        Elem a{{w, 1}};
        for (const auto& v : r) {
          Elem ab = mul(a, v);
          for (const auto& [u, c] : mul(v, a)) {
            ab[u] -= c;
            if (ab[u] == 0) ab.erase(u);
          }
          next.push_back(ab);
        }
      }
      r = span_basis(next);
    }
    return r;
  }

  std::vector<Elem> products(const std::vector<Elem>& A, const std::vector<Elem>& B) const {
    std::vector<Elem> out;
    for (const auto& a : A) {
      for (const auto& b : B) out.push_back(mul(a, b));
    }
    return span_basis(out);
  }

  void compositions(int rest, std::vector<int>& parts, std::vector<std::vector<int>>& out) const {
    if (rest == 0) {
      out.push_back(parts);
      return;
    }
    for (int p = 1; p <= rest; ++p) {
      parts.push_back(p);
      compositions(rest - p, parts, out);
      parts.pop_back();
    }
  }

  ncf::Subspace filtration(int d) const {
    ncf::Subspace total(words.size());
    if (d == 0) return ncf::Subspace::full(words.size());
    std::vector<std::vector<int>> comps;
    std::vector<int> parts;
    compositions(d, parts, comps);
    std::map<int, std::vector<Elem>> lcs_cache;
    const auto R = all_words();
    for (const auto& comp : comps) {
      std::vector<Elem> T = R;
      for (int part : comp) {
        if (!lcs_cache.count(part)) lcs_cache[part] = lcs(part);
        T = products(T, lcs_cache[part]);
        T = products(T, R);
      }
      for (const auto& t : T) total.insert(to_vec(t));
    }
    return total;
  }
};

}  // namespace oracle
