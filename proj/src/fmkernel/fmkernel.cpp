#include "ncf/fmkernel.hpp"

#include <deque>
#include <numeric>
#include <sstream>

#include "ncf/errors.hpp"
#include "ncf/linalg.hpp"

namespace ncf {

FiniteAbGroup::FiniteAbGroup(std::vector<long> moduli) : moduli_(std::move(moduli)) {
  long e = 1;
  for (long n : moduli_) {
    if (n == 0) throw ZeroModulus("cyclic factor Z0");
    if (n < 0) throw InvalidArgument("negative modulus");
    order_ *= static_cast<std::size_t>(n);
    e = std::lcm(e, n);
  }
  exponent_ = static_cast<int>(e);
}

std::vector<long> FiniteAbGroup::element(std::size_t index) const {
  std::vector<long> x(moduli_.size());
  for (std::size_t j = moduli_.size(); j-- > 0;) {
    x[j] = static_cast<long>(index % moduli_[j]);
    index /= moduli_[j];
  }
  return x;
}

std::size_t FiniteAbGroup::index(const std::vector<long>& coords) const {
  if (coords.size() != moduli_.size()) throw GroupMismatch("coordinate count does not match " + str());
  std::size_t idx = 0;
  for (std::size_t j = 0; j < moduli_.size(); ++j) {
    long c = coords[j] % moduli_[j];
    if (c < 0) c += moduli_[j];
    idx = idx * moduli_[j] + static_cast<std::size_t>(c);
  }
  return idx;
}

std::size_t FiniteAbGroup::add(std::size_t a, std::size_t b) const {
  auto x = element(a);
  auto y = element(b);
  for (std::size_t j = 0; j < x.size(); ++j) x[j] += y[j];
  return index(x);
}

std::size_t FiniteAbGroup::neg(std::size_t a) const {
  auto x = element(a);
  for (auto& v : x) v = -v;
  return index(x);
}

std::size_t FiniteAbGroup::order_of(std::size_t a) const {
  std::size_t k = 1;
  for (std::size_t cur = a; cur != 0; cur = add(cur, a)) ++k;
  return k;
}

long FiniteAbGroup::pairing_exponent(std::size_t x, std::size_t c) const {
  const auto xs = element(x);
  const auto cs = element(c);
  long k = 0;
  for (std::size_t j = 0; j < xs.size(); ++j) k += cs[j] * xs[j] * (exponent_ / moduli_[j]);
  return k % exponent_;
}

std::string FiniteAbGroup::str() const {
  if (moduli_.empty()) return "Z1";
  std::string s;
  for (std::size_t j = 0; j < moduli_.size(); ++j) {
    if (j) s += 'x';
    s += "Z" + std::to_string(moduli_[j]);
  }
  return s;
}

Space dual_group(const FiniteAbGroup& X) { return Space{X, true}; }

Cyclotomic pairing(const Space& S, std::size_t s, std::size_t t) {
  return Cyclotomic::root(S.group.exponent(), S.group.pairing_exponent(s, t));
}

Kernel::Kernel(Space rows, Space cols)
    : rows_(std::move(rows)), cols_(std::move(cols)),
      v_(rows_.size() * cols_.size(), Cyclotomic(rows_.group.exponent())) {}

bool operator==(const Kernel& a, const Kernel& b) {
  return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.v_ == b.v_;
}

std::optional<std::string> Kernel::witness(const Kernel& a, const Kernel& b) {
  if (a.rows_ != b.rows_ || a.cols_ != b.cols_) {
    return "shape " + a.rows_.str() + "x" + a.cols_.str() + " vs " + b.rows_.str() + "x" + b.cols_.str();
  }
  for (std::size_t i = 0; i < a.rows_.size(); ++i) {
    for (std::size_t j = 0; j < a.cols_.size(); ++j) {
      if (a.at(i, j) != b.at(i, j)) {
        return "(" + std::to_string(i) + "," + std::to_string(j) + "): " + a.at(i, j).str() + " vs " +
               b.at(i, j).str();
      }
    }
  }
  return std::nullopt;
}

Kernel diagonal(const Space& S) {
  Kernel K(S, S);
  for (std::size_t a = 0; a < S.size(); ++a) K.at(a, a) = Cyclotomic(S.group.exponent(), 1);
  return K;
}

Kernel circle(const Kernel& K, const Kernel& L) {
  if (K.cols() != L.rows()) {
    throw GroupMismatch("cannot compose over " + K.cols().str() + " and " + L.rows().str());
  }
  Kernel out(K.rows(), L.cols());
  const std::size_t n = K.cols().size();
  for (std::size_t x = 0; x < K.rows().size(); ++x) {
    for (std::size_t y = 0; y < n; ++y) {
      const Cyclotomic& k = K.at(x, y);
      if (k.is_zero()) continue;
      for (std::size_t z = 0; z < L.cols().size(); ++z) {
        const Cyclotomic& l = L.at(y, z);
        if (!l.is_zero()) out.at(x, z) += k * l;
      }
    }
  }
  return out;
}

Kernel poincare(const Space& S) {
  Kernel P(S, S.dual_space());
  for (std::size_t s = 0; s < S.size(); ++s) {
    for (std::size_t t = 0; t < S.size(); ++t) P.at(s, t) = pairing(S, s, t);
  }
  return P;
}

Kernel inverse_kernel(const Space& S) {
  Kernel Q(S.dual_space(), S);
  const Rational norm(1, static_cast<long>(S.size()));
  const int e = S.group.exponent();
  for (std::size_t t = 0; t < S.size(); ++t) {
    for (std::size_t s = 0; s < S.size(); ++s) {
      Q.at(t, s) = Cyclotomic::root(e, -S.group.pairing_exponent(s, t)) * norm;
    }
  }
  return Q;
}

Kernel transform_kernel(const Kernel& K) {
  if (K.rows() != K.cols()) throw GroupMismatch("transform needs a square kernel");
  const Space X = K.rows().dual_space();
  return circle(circle(poincare(X), K), inverse_kernel(X));
}

Kernel inverse_transform(const Kernel& K) {
  if (K.rows() != K.cols()) throw GroupMismatch("transform needs a square kernel");
  const Space& S = K.rows();
  return circle(circle(inverse_kernel(S), K), poincare(S));
}

Kernel random_kernel(const Space& rows, const Space& cols, std::mt19937& rng) {
  Kernel K(rows, cols);
  const int e = rows.group.exponent();
  const int phi = euler_phi(e);
  std::uniform_int_distribution<int> coeff(-2, 2);
  for (std::size_t a = 0; a < rows.size(); ++a) {
    for (std::size_t b = 0; b < cols.size(); ++b) {
      std::vector<Rational> c(phi);
      for (auto& q : c) q = coeff(rng);
      K.at(a, b) = Cyclotomic::from_coeffs(e, std::move(c));
    }
  }
  return K;
}

Kernel TransKernel::expand() const {
  Kernel K(space, space);
  for (std::size_t a = 0; a < space.size(); ++a) {
    K.at(a, space.group.add(a, shift)) = scalar * pairing(space, a, twist);
  }
  return K;
}

TransKernel TransKernel::then(const TransKernel& o) const {
  if (space != o.space) throw GroupMismatch("composing kernels on different spaces");
  return TransKernel{space, space.group.add(shift, o.shift), space.group.add(twist, o.twist),
                     scalar * o.scalar * pairing(space, shift, o.twist)};
}

TransKernel TransKernel::transformed() const {
  return TransKernel{space.dual_space(), twist, space.group.neg(shift),
                     scalar * pairing(space, shift, twist).inverse()};
}

bool operator==(const TransKernel& a, const TransKernel& b) {
  return a.space == b.space && a.shift == b.shift && a.twist == b.twist && a.scalar == b.scalar;
}

std::optional<TransKernel> as_trans_kernel(const Kernel& K) {
  if (K.rows() != K.cols()) return std::nullopt;
  const Space& S = K.rows();
  std::optional<std::size_t> shift;
  for (std::size_t b = 0; b < S.size(); ++b) {
    if (K.at(0, b).is_zero()) continue;
    if (shift) return std::nullopt;
    shift = b;
  }
  if (!shift) return std::nullopt;
  for (std::size_t psi = 0; psi < S.size(); ++psi) {
    TransKernel t{S, *shift, psi, K.at(0, *shift)};
    if (t.expand() == K) return t;
  }
  return std::nullopt;
}

QuasiSpecialAlgebra::QuasiSpecialAlgebra(Space space,
                                         const std::vector<std::pair<std::size_t, std::size_t>>& gens,
                                         std::size_t limit)
    : space_(std::move(space)), gens_(gens.size()) {
  const auto& G = space_.group;
  for (const auto& [x, psi] : gens) {
    if (x >= space_.size() || psi >= space_.size()) throw InvalidArgument("generator outside the group");
  }
  auto add = [&](std::pair<std::size_t, std::size_t> p) {
    if (index_.count(p)) return false;
    if (basis_.size() >= limit) {
      throw NotClosed("closure exceeds " + std::to_string(limit) + " basis kernels");
    }
    index_[p] = basis_.size();
    basis_.push_back(p);
    return true;
  };
  add({0, 0});
  for (std::size_t i = 0; i < basis_.size(); ++i) {
    for (const auto& [x, psi] : gens) {
      add({G.add(basis_[i].first, x), G.add(basis_[i].second, psi)});
    }
  }
  const std::size_t n = basis_.size();
  table_.reserve(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const auto key = std::make_pair(G.add(basis_[i].first, basis_[j].first),
                                      G.add(basis_[i].second, basis_[j].second));
      auto it = index_.find(key);
      if (it == index_.end()) throw NotClosed("product leaves the basis");
      table_.push_back(Product{it->second, pairing(space_, basis_[i].first, basis_[j].second)});
    }
  }
}

TransKernel QuasiSpecialAlgebra::element(std::size_t i) const {
  return TransKernel{space_, basis_[i].first, basis_[i].second, Cyclotomic(space_.group.exponent(), 1)};
}

std::optional<std::size_t> QuasiSpecialAlgebra::find(std::size_t shift, std::size_t twist) const {
  auto it = index_.find({shift, twist});
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

bool QuasiSpecialAlgebra::commutative() const {
  for (std::size_t i = 0; i < rank(); ++i) {
    for (std::size_t j = 0; j < rank(); ++j) {
      if (product(i, j).scalar != product(j, i).scalar) return false;
    }
  }
  return true;
}

std::optional<std::string> QuasiSpecialAlgebra::cocycle_witness() const {
  for (std::size_t i = 0; i < rank(); ++i) {
    const Kernel Ki = kernel(i);
    for (std::size_t j = 0; j < rank(); ++j) {
      const auto& p = product(i, j);
      TransKernel expect = element(p.index);
      expect.scalar = p.scalar;
      if (auto w = Kernel::witness(circle(Ki, kernel(j)), expect.expand())) {
        return "basis pair (" + std::to_string(i) + "," + std::to_string(j) + ") " + *w;
      }
    }
  }
  return std::nullopt;
}

std::optional<std::string> QuasiSpecialAlgebra::associativity_witness() const {
  for (std::size_t i = 0; i < rank(); ++i) {
    for (std::size_t j = 0; j < rank(); ++j) {
      const auto& ij = product(i, j);
      for (std::size_t k = 0; k < rank(); ++k) {
        const auto& left = product(ij.index, k);
        const auto& jk = product(j, k);
        const auto& right = product(i, jk.index);
        if (left.index != right.index || ij.scalar * left.scalar != jk.scalar * right.scalar) {
          return "triple (" + std::to_string(i) + "," + std::to_string(j) + "," + std::to_string(k) + ")";
        }
      }
    }
  }
  return std::nullopt;
}

TransformedAlgebra transform_algebra(const QuasiSpecialAlgebra& A) {
  std::vector<std::pair<std::size_t, std::size_t>> gens;
  std::vector<TransKernel> images;
  for (std::size_t a = 0; a < A.rank(); ++a) {
    images.push_back(A.element(a).transformed());
    gens.emplace_back(images.back().shift, images.back().twist);
  }
  TransformedAlgebra out{QuasiSpecialAlgebra(A.space().dual_space(), gens), {}, {}, std::nullopt};
  for (std::size_t a = 0; a < A.rank(); ++a) {
    out.basis_map.push_back(*out.image.find(images[a].shift, images[a].twist));
    out.scalars.push_back(images[a].scalar);
  }
  std::vector<Kernel> phi;
  for (std::size_t a = 0; a < A.rank(); ++a) {
    phi.push_back(transform_kernel(A.kernel(a)));
    if (auto w = Kernel::witness(phi[a], images[a].expand())) {
      out.failure = "closed form differs for basis " + std::to_string(a) + " at " + *w;
      return out;
    }
  }
  for (std::size_t a = 0; a < A.rank(); ++a) {
    for (std::size_t b = 0; b < A.rank(); ++b) {
      const auto& p = A.product(a, b);
      // Phi(T_a T_b) = Phi(T_a) Phi(T_b)
      if (auto w = Kernel::witness(transform_kernel(circle(A.kernel(a), A.kernel(b))), circle(phi[a], phi[b]))) {
        out.failure = "not multiplicative on (" + std::to_string(a) + "," + std::to_string(b) + ") " + *w;
        return out;
      }
      const auto& q = out.image.product(out.basis_map[a], out.basis_map[b]);
      const Cyclotomic transported = p.scalar * out.scalars[p.index] / (out.scalars[a] * out.scalars[b]);
      if (q.index != out.basis_map[p.index] || q.scalar != transported) {
        out.failure = "structure constant mismatch on (" + std::to_string(a) + "," + std::to_string(b) + ")";
        return out;
      }
    }
  }
  return out;
}

namespace {

std::vector<Cyclotomic> apply_vec(const Kernel& K, const std::vector<Cyclotomic>& v) {
  std::vector<Cyclotomic> out(K.rows().size(), Cyclotomic(K.rows().group.exponent()));
  for (std::size_t a = 0; a < K.rows().size(); ++a) {
    for (std::size_t b = 0; b < K.cols().size(); ++b) {
      if (!K.at(a, b).is_zero() && !v[b].is_zero()) out[a] += K.at(a, b) * v[b];
    }
  }
  return out;
}

// Q-coordinates of a vector of cyclotomic numbers.
Vec flatten(const std::vector<Cyclotomic>& v, int phi) {
  std::vector<Vec::Term> t;
  for (std::size_t a = 0; a < v.size(); ++a) {
    for (int k = 0; k < phi; ++k) t.emplace_back(a * phi + k, v[a].coeffs()[k]);
  }
  return Vec::from_terms(std::move(t));
}

// Q-span of zeta^k * column: the Q(zeta)-span of the columns.
Subspace field_span(const Space& S, const std::vector<std::vector<Cyclotomic>>& cols) {
  const int e = S.group.exponent();
  const int phi = euler_phi(e);
  Subspace s(S.size() * phi);
  for (const auto& c : cols) {
    for (int k = 0; k < phi; ++k) {
      std::vector<Cyclotomic> rot = c;
      for (auto& x : rot) x *= Cyclotomic::root(e, k);
      s.insert(flatten(rot, phi));
    }
  }
  return s;
}

}  // namespace

GradedModule apply_kernel(const Kernel& K, const GradedModule& m) {
  if (K.cols() != m.space) throw GroupMismatch("kernel source " + K.cols().str() + " vs module " + m.space.str());
  GradedModule out{K.rows(), {}};
  for (const auto& c : m.columns) out.columns.push_back(apply_vec(K, c));
  return out;
}

void check_module(const QuasiSpecialAlgebra& A, const GradedModule& m) {
  if (A.space() != m.space) throw GroupMismatch("module and algebra live on different spaces");
  const int phi = euler_phi(m.space.group.exponent());
  const Subspace span = field_span(m.space, m.columns);
  std::vector<GradedModule> acted;
  for (std::size_t i = 0; i < A.rank(); ++i) {
    acted.push_back(apply_kernel(A.kernel(i), m));
    for (std::size_t j = 0; j < m.rank(); ++j) {
      if (!span.contains(flatten(acted[i].columns[j], phi))) {
        throw NotAModule("basis kernel " + std::to_string(i) + " maps column " + std::to_string(j) +
                         " outside the module");
      }
    }
  }
  for (std::size_t i = 0; i < A.rank(); ++i) {
    const Kernel Ki = A.kernel(i);
    for (std::size_t j = 0; j < A.rank(); ++j) {
      const auto& p = A.product(i, j);
      const GradedModule lhs = apply_kernel(Ki, acted[j]);
      for (std::size_t col = 0; col < m.rank(); ++col) {
        std::vector<Cyclotomic> rhs = acted[p.index].columns[col];
        for (auto& x : rhs) x *= p.scalar;
        if (lhs.columns[col] != rhs) {
          throw NotAModule("T_" + std::to_string(i) + "(T_" + std::to_string(j) + " m) differs from c*T_" +
                           std::to_string(p.index) + " m on column " + std::to_string(col));
        }
      }
    }
  }
}

GradedModule transform_module(const QuasiSpecialAlgebra& A, const GradedModule& m) {
  check_module(A, m);
  const Kernel P = poincare(m.space.dual_space());
  const GradedModule out = apply_kernel(P, m);
  for (std::size_t i = 0; i < A.rank(); ++i) {
    const Kernel K = A.kernel(i);
    const GradedModule lhs = apply_kernel(P, apply_kernel(K, m));
    const GradedModule rhs = apply_kernel(transform_kernel(K), out);
    if (lhs.columns != rhs.columns) {
      throw NotAModule("transform does not intertwine basis kernel " + std::to_string(i));
    }
  }
  return out;
}

GradedModule random_module(const QuasiSpecialAlgebra& A, std::mt19937& rng) {
  const Space& S = A.space();
  const int e = S.group.exponent();
  const int phi = euler_phi(e);
  std::uniform_int_distribution<int> coeff(-2, 2);
  std::vector<Cyclotomic> v(S.size());
  for (auto& x : v) {
    std::vector<Rational> c(phi);
    for (auto& q : c) q = coeff(rng);
    x = Cyclotomic::from_coeffs(e, std::move(c));
  }
  GradedModule m{S, {}};
  Subspace span(S.size() * phi);
  for (std::size_t i = 0; i < A.rank(); ++i) {
    auto w = apply_vec(A.kernel(i), v);
    if (span.contains(flatten(w, phi))) continue;
    m.columns.push_back(w);
    span = field_span(S, m.columns);
  }
  return m;
}

bool same_span(const GradedModule& a, const GradedModule& b) {
  return a.space == b.space && field_span(a.space, a.columns) == field_span(b.space, b.columns);
}

}  // namespace ncf
