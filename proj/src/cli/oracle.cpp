// Brute-force runners: everything is enumerated from definitions, without
// the rewriting or convolution code of the library.

#include <random>

#include "ncf/cli.hpp"
#include "ncf/dsl.hpp"
#include "ncf/fmkernel.hpp"
#include "ncf/linalg.hpp"

namespace ncf::cli {

namespace {

// Free algebra on g letters truncated at length D; elements are dense
// coefficient vectors indexed by words, shortest first.
class FreeWords {
 public:
  FreeWords(int g, int D) : g_(g), D_(D) {
    std::size_t layer = 1;
    for (int len = 0; len <= D; ++len) {
      offset_.push_back(size_);
      size_ += layer;
      layer *= static_cast<std::size_t>(g);
    }
  }

  std::size_t size() const { return size_; }

  // word of length len with base-g digits `code`
  std::size_t index(int len, std::size_t code) const { return offset_[len] + code; }

  std::pair<int, std::size_t> decode(std::size_t i) const {
    int len = 0;
    while (len < D_ && i >= offset_[len + 1]) ++len;
    return {len, i - offset_[len]};
  }

  std::vector<Rational> mul(const std::vector<Rational>& a, const std::vector<Rational>& b) const {
    std::vector<Rational> out(size_);
    for (std::size_t i = 0; i < size_; ++i) {
      if (a[i] == 0) continue;
      const auto [la, ca] = decode(i);
      for (std::size_t j = 0; j < size_; ++j) {
        if (b[j] == 0) continue;
        const auto [lb, cb] = decode(j);
        if (la + lb > D_) continue;
        std::size_t shift = 1;
        for (int k = 0; k < lb; ++k) shift *= static_cast<std::size_t>(g_);
        out[index(la + lb, ca * shift + cb)] += a[i] * b[j];
      }
    }
    return out;
  }

  std::vector<Rational> word(std::size_t i) const {
    std::vector<Rational> v(size_);
    v[i] = 1;
    return v;
  }

 private:
  int g_;
  int D_;
  std::size_t size_ = 0;
  std::vector<std::size_t> offset_;
};

using Dense = std::vector<Rational>;

std::vector<Dense> span_of(const std::vector<Dense>& vs, std::size_t n) {
  Subspace s(n);
  for (const auto& v : vs) s.insert(Vec::from_dense(v));
  std::vector<Dense> out;
  for (const auto& b : s.basis()) out.push_back(b.to_dense(n));
  return out;
}

std::vector<Dense> products(const FreeWords& F, const std::vector<Dense>& A, const std::vector<Dense>& B) {
  std::vector<Dense> out;
  for (const auto& a : A) {
    for (const auto& b : B) out.push_back(F.mul(a, b));
  }
  return span_of(out, F.size());
}

void compositions(int rest, std::vector<int>& parts, std::vector<std::vector<int>>& out) {
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

std::vector<std::size_t> filtration_oracle(int g, int D, int top) {
  const FreeWords F(g, D);
  std::vector<Dense> all;
  for (std::size_t i = 0; i < F.size(); ++i) all.push_back(F.word(i));
  // lower central series R_0 = A, R_{k+1} = [A, R_k]
  std::vector<std::vector<Dense>> lcs{all};
  for (int k = 1; k <= top; ++k) {
    std::vector<Dense> next;
    for (const auto& a : all) {
      for (const auto& r : lcs.back()) {
        Dense c = F.mul(a, r);
        const Dense rc = F.mul(r, a);
        for (std::size_t i = 0; i < c.size(); ++i) c[i] -= rc[i];
        next.push_back(std::move(c));
      }
    }
    lcs.push_back(span_of(next, F.size()));
  }
  std::vector<std::size_t> dims{F.size()};
  for (int d = 1; d <= top; ++d) {
    std::vector<std::vector<int>> comps;
    std::vector<int> parts;
    compositions(d, parts, comps);
    std::vector<Dense> acc;
    for (const auto& c : comps) {
      std::vector<Dense> cur = all;
      for (int p : c) cur = products(F, products(F, cur, lcs[p]), all);
      acc.insert(acc.end(), cur.begin(), cur.end());
    }
    dims.push_back(span_of(acc, F.size()).size());
  }
  return dims;
}

}  // namespace

Report run_oracle(const OracleOptions& opt) {
  Report rep;
  rep.command = "oracle";
  rep.inputs = {{"kind", opt.kind}, {"budget", opt.budget}};
  if (opt.kind == "filtration") {
    rep.inputs["gens"] = opt.gens;
    rep.inputs["bound"] = opt.bound;
    if (opt.gens < 1 || opt.bound < 0) throw InvalidArgument("need gens >= 1 and bound >= 0");
    std::size_t words = 0, layer = 1;
    for (int len = 0; len <= opt.bound; ++len) {
      words += layer;
      layer *= static_cast<std::size_t>(opt.gens);
      if (words > opt.budget) throw BudgetExceeded(std::to_string(words) + "+ words exceed the budget");
    }
    const auto dims = filtration_oracle(opt.gens, opt.bound, opt.bound);
    rep.data["words"] = words;
    rep.data["filtration_dims"] = dims;
    bool decreasing = true;
    for (std::size_t d = 1; d < dims.size(); ++d) decreasing = decreasing && dims[d] <= dims[d - 1];
    rep.check("dims_decreasing", decreasing);
    return rep;
  }

  const FiniteAbGroup X = parse_group(opt.group);
  rep.inputs["group"] = X.str();
  const std::size_t n = X.order();
  const int e = X.exponent();
  if (opt.kind == "orthogonality") {
    if (n * n * n > opt.budget) throw BudgetExceeded("|G|^3 exceeds the budget");
    // sum_x chi_a(x) chi_b(x)^{-1}
    Json sums = Json::array();
    std::optional<std::string> bad;
    for (std::size_t a = 0; a < n; ++a) {
      Json row = Json::array();
      for (std::size_t b = 0; b < n; ++b) {
        Cyclotomic s(e);
        for (std::size_t x = 0; x < n; ++x) {
          s += Cyclotomic::root(e, X.pairing_exponent(x, a) - X.pairing_exponent(x, b));
        }
        const Cyclotomic expect(e, a == b ? Rational(static_cast<long>(n)) : Rational(0));
        if (s != expect && !bad) bad = "(" + std::to_string(a) + "," + std::to_string(b) + ") gives " + s.str();
        row.push_back(s.str());
      }
      sums.push_back(std::move(row));
    }
    rep.data["sums"] = sums;
    rep.check("orthogonality", !bad, bad);
    return rep;
  }
  if (opt.kind == "assoc") {
    rep.inputs["seed"] = opt.seed;
    if (n * n * n * n > opt.budget) throw BudgetExceeded("|G|^4 exceeds the budget");
    std::mt19937 rng(static_cast<std::mt19937::result_type>(opt.seed));
    const Space S{X, false};
    const Kernel K = random_kernel(S, S, rng), L = random_kernel(S, S, rng), M = random_kernel(S, S, rng);
    // ((K o L) o M)(a, d) and (K o (L o M))(a, d) as explicit double sums
    std::optional<std::string> bad;
    for (std::size_t a = 0; a < n && !bad; ++a) {
      for (std::size_t d = 0; d < n && !bad; ++d) {
        Cyclotomic left(e), right(e);
        for (std::size_t c = 0; c < n; ++c) {
          Cyclotomic kl(e);
          for (std::size_t b = 0; b < n; ++b) kl += K.at(a, b) * L.at(b, c);
          left += kl * M.at(c, d);
        }
        for (std::size_t b = 0; b < n; ++b) {
          Cyclotomic lm(e);
          for (std::size_t c = 0; c < n; ++c) lm += L.at(b, c) * M.at(c, d);
          right += K.at(a, b) * lm;
        }
        if (left != right) bad = "(" + std::to_string(a) + "," + std::to_string(d) + ")";
      }
    }
    rep.check("convolution_associative", !bad, bad);
    return rep;
  }
  throw InvalidArgument("unknown oracle kind '" + opt.kind + "'");
}

}  // namespace ncf::cli
