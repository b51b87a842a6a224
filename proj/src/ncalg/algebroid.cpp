#include <sstream>

#include "ncf/errors.hpp"
#include "ncf/ncalg.hpp"

namespace ncf {

namespace {

Presentation commutative_closure(Presentation p, int bound) {
  const int g = static_cast<int>(p.gens.size());
  for (int a = 0; a < g; ++a) {
    for (int b = a + 1; b < g; ++b) {
      p.relations.push_back(commutator(NcPoly::gen(a), NcPoly::gen(b)));
    }
  }
  p.bound = bound;
  return p;
}

// Element f0*1 + sum_a f[a] l_a of the extended algebroid, coefficients in
// the base algebra.
struct Section {
  Vec f0;
  std::vector<Vec> f;
};

class AlgebroidCalculus {
 public:
  AlgebroidCalculus(const LieAlgebroidPresentation& lp)
      : lp_(lp), base_(build_truncated(commutative_closure(lp.base, lp.base.bound))) {
    const int r = lp.rank();
    if (static_cast<int>(lp.anchor.size()) != r) throw InvalidArgument("anchor needs one row per l-generator");
    for (const auto& row : lp.anchor) {
      if (row.size() != lp.base.gens.size()) throw InvalidArgument("anchor row must list every base generator");
    }
    table_.assign(r, std::vector<Section>(r, zero()));
    for (const auto& b : lp.brackets) {
      if (b.i < 0 || b.j < 0 || b.i >= r || b.j >= r || b.i == b.j) {
        throw InvalidArgument("bracket indices out of range");
      }
      Section s = zero();
      s.f0 = base_->from_poly(b.omega);
      for (std::size_t k = 0; k < b.coeffs.size(); ++k) s.f.at(k) = base_->from_poly(b.coeffs[k]);
      table_[b.i][b.j] = s;
      table_[b.j][b.i] = scaled(s, -1);
    }
  }

  const Algebra& base() const { return *base_; }

  Section zero() const { return Section{Vec{}, std::vector<Vec>(lp_.rank())}; }

  Section generator(int a) const {
    Section s = zero();
    s.f[a] = base_->unit();
    return s;
  }

  static Section scaled(Section s, const Rational& c) {
    s.f0 *= c;
    for (auto& v : s.f) v *= c;
    return s;
  }

  NcPoly derive_poly(int a, const NcPoly& p) const {
    NcPoly out;
    for (const auto& [w, c] : p.terms()) {
      for (std::size_t t = 0; t < w.size(); ++t) {
        Word pre(w.begin(), w.begin() + t);
        Word post(w.begin() + t + 1, w.end());
        out += c * (NcPoly::word(pre) * lp_.anchor[a][w[t]] * NcPoly::word(post));
      }
    }
    return out;
  }

  Vec derive(int a, const Vec& f) const { return base_->from_poly(derive_poly(a, base_->to_poly(f))); }

  Section bracket(const Section& X, const Section& Y) const {
    const Algebra& B = *base_;
    const int r = lp_.rank();
    Section out = zero();
    auto add = [&](const Section& s, const Vec& coeff) {
      out.f0 += B.mul(coeff, s.f0);
      for (int k = 0; k < r; ++k) out.f[k] += B.mul(coeff, s.f[k]);
    };
    for (int a = 0; a < r; ++a) {
      if (X.f[a].is_zero()) continue;
      for (int b = 0; b < r; ++b) {
        if (Y.f[b].is_zero()) continue;
        add(table_[a][b], B.mul(X.f[a], Y.f[b]));
        out.f[b] += B.mul(X.f[a], derive(a, Y.f[b]));
        out.f[a] -= B.mul(Y.f[b], derive(b, X.f[a]));
      }
      out.f0 += B.mul(X.f[a], derive(a, Y.f0));
    }
    for (int b = 0; b < r; ++b) {
      if (!Y.f[b].is_zero()) out.f0 -= B.mul(Y.f[b], derive(b, X.f0));
    }
    return out;
  }

  static bool is_zero(const Section& s) {
    if (!s.f0.is_zero()) return false;
    for (const auto& v : s.f) {
      if (!v.is_zero()) return false;
    }
    return true;
  }

 private:
  const LieAlgebroidPresentation& lp_;
  AlgebraPtr base_;
  std::vector<std::vector<Section>> table_;
};

}  // namespace

void check_algebroid(const LieAlgebroidPresentation& lp) {
  AlgebroidCalculus calc(lp);
  const Algebra& B = calc.base();
  const int r = lp.rank();
  const auto names = lp.base.names();
  for (int a = 0; a < r; ++a) {
    for (const auto& rel : lp.base.relations) {
      if (!B.from_poly(calc.derive_poly(a, rel)).is_zero()) {
        throw JacobiFailure("anchor of " + lp.l_names[a] + " does not preserve relation " +
                            format_poly(rel, names));
      }
    }
  }
  for (int i = 0; i < r; ++i) {
    for (int j = i + 1; j < r; ++j) {
      const Section br = calc.bracket(calc.generator(i), calc.generator(j));
      for (std::size_t x = 0; x < lp.base.gens.size(); ++x) {
        const Vec xv = B.from_poly(NcPoly::gen(static_cast<int>(x)));
        Vec lhs = calc.derive(i, calc.derive(j, xv)) - calc.derive(j, calc.derive(i, xv));
        Vec rhs;
        for (int k = 0; k < r; ++k) rhs += B.mul(br.f[k], calc.derive(k, xv));
        if (lhs != rhs) {
          throw JacobiFailure("anchor is not a Lie homomorphism on [" + lp.l_names[i] + "," +
                              lp.l_names[j] + "] at " + lp.base.gens[x].name);
        }
      }
    }
  }
  for (int i = 0; i < r; ++i) {
    for (int j = i + 1; j < r; ++j) {
      for (int k = j + 1; k < r; ++k) {
        const Section li = calc.generator(i), lj = calc.generator(j), lk = calc.generator(k);
        Section s = calc.bracket(calc.bracket(li, lj), lk);
        const Section t = calc.bracket(calc.bracket(lj, lk), li);
        const Section u = calc.bracket(calc.bracket(lk, li), lj);
        s.f0 += t.f0 + u.f0;
        for (int m = 0; m < r; ++m) s.f[m] += t.f[m] + u.f[m];
        if (!AlgebroidCalculus::is_zero(s)) {
          throw JacobiFailure("Jacobi identity fails on (" + lp.l_names[i] + "," + lp.l_names[j] +
                              "," + lp.l_names[k] + ")");
        }
      }
    }
  }
}

Presentation enveloping_presentation(const LieAlgebroidPresentation& lp, int bound) {
  check_algebroid(lp);
  const int nb = static_cast<int>(lp.base.gens.size());
  const int r = lp.rank();
  Presentation p;
  p.name = lp.base.name.empty() ? "U" : "U(" + lp.base.name + ")";
  for (const auto& g : lp.base.gens) p.gens.push_back({g.name, 0});
  for (const auto& n : lp.l_names) p.gens.push_back({n, 1});
  p.relations = lp.base.relations;
  for (int a = 0; a < nb; ++a) {
    for (int b = a + 1; b < nb; ++b) p.relations.push_back(commutator(NcPoly::gen(a), NcPoly::gen(b)));
  }
  for (int i = 0; i < r; ++i) {
    for (int a = 0; a < nb; ++a) {
      p.relations.push_back(commutator(NcPoly::gen(nb + i), NcPoly::gen(a)) - lp.anchor[i][a]);
    }
  }
  for (const auto& b : lp.brackets) {
    NcPoly rel = commutator(NcPoly::gen(nb + b.i), NcPoly::gen(nb + b.j)) - b.omega;
    for (std::size_t k = 0; k < b.coeffs.size(); ++k) {
      rel -= b.coeffs[k] * NcPoly::gen(nb + static_cast<int>(k));
    }
    p.relations.push_back(rel);
  }
  for (int i = 0; i < r; ++i) {
    for (int j = i + 1; j < r; ++j) {
      bool listed = false;
      for (const auto& b : lp.brackets) listed |= (b.i == i && b.j == j) || (b.i == j && b.j == i);
      if (!listed) p.relations.push_back(commutator(NcPoly::gen(nb + i), NcPoly::gen(nb + j)));
    }
  }
  p.bound = bound;
  return p;
}

PbwReport pbw_dimension_check(const LieAlgebroidPresentation& lp, int bound) {
  auto U = build_truncated(enveloping_presentation(lp, bound));
  auto base = build_truncated(commutative_closure(lp.base, bound));
  const int r = lp.rank();
  PbwReport rep;
  std::size_t prev = 0;
  for (int i = 0; i <= bound; ++i) {
    const std::size_t cur = weight_filtration(*U, i).dim();
    rep.graded_dims.push_back(cur - prev);
    prev = cur;
    std::size_t monomials = 0;
    for (std::size_t k = 0; k < base->dim(); ++k) monomials += base->degree(k) <= bound - i;
    const Rational sym = r == 0 ? Rational(i == 0 ? 1 : 0) : binomial(r + i - 1, i);
    rep.expected_dims.push_back(static_cast<std::size_t>(sym.get_num().get_ui()) * monomials);
    if (rep.first_failure < 0 && rep.graded_dims.back() != rep.expected_dims.back()) {
      rep.first_failure = i;
    }
  }
  return rep;
}

}  // namespace ncf
