#include "ncf/cyclotomic.hpp"

#include <map>
#include <memory>
#include <mutex>
#include <numeric>
#include <sstream>

#include "ncf/errors.hpp"

namespace ncf {

namespace {

using Poly = std::vector<Rational>;

void trim(Poly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

// quotient and remainder of a / b over Q, b nonzero
std::pair<Poly, Poly> divmod(Poly a, const Poly& b) {
  trim(a);
  Poly q;
  if (a.size() >= b.size()) q.assign(a.size() - b.size() + 1, 0);
  while (a.size() >= b.size() && !a.empty()) {
    const std::size_t shift = a.size() - b.size();
    const Rational f = a.back() / b.back();
    q[shift] = f;
    for (std::size_t i = 0; i < b.size(); ++i) a[i + shift] -= f * b[i];
    trim(a);
  }
  return {q, a};
}

Poly mul(const Poly& a, const Poly& b) {
  if (a.empty() || b.empty()) return {};
  Poly r(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  }
  return r;
}

struct Field {
  int e = 1;
  int phi = 1;
  Poly modulus;
  std::vector<Poly> powers;  // z^k reduced, k < 2 * phi
  std::vector<Poly> roots;   // zeta^k reduced, k < e
};

Poly reduce_with(const Poly& p, const Poly& modulus) {
  Poly r = divmod(p, modulus).second;
  return r;
}

const Field& field(int e) {
  static std::recursive_mutex mu;
  static std::map<int, std::unique_ptr<Field>> cache;
  std::lock_guard<std::recursive_mutex> lock(mu);
  auto it = cache.find(e);
  if (it != cache.end()) return *it->second;
  auto f = std::make_unique<Field>();
  f->e = e;
  // x^e - 1 divided by the cyclotomic polynomials of the proper divisors
  Poly m(e + 1, 0);
  m[0] = -1;
  m[e] = 1;
  for (int d = 1; d < e; ++d) {
    if (e % d == 0) m = divmod(m, field(d).modulus).first;
  }
  f->modulus = m;
  f->phi = static_cast<int>(m.size()) - 1;
  for (int k = 0; k < 2 * f->phi; ++k) {
    Poly x(k + 1, 0);
    x[k] = 1;
    Poly r = reduce_with(x, m);
    r.resize(f->phi, 0);
    f->powers.push_back(r);
  }
  for (int k = 0; k < e; ++k) {
    Poly x(k + 1, 0);
    x[k] = 1;
    Poly r = reduce_with(x, m);
    r.resize(f->phi, 0);
    f->roots.push_back(r);
  }
  auto& ref = *f;
  cache.emplace(e, std::move(f));
  return ref;
}

}  // namespace

const std::vector<Rational>& cyclotomic_polynomial(int e) {
  if (e < 1) throw InvalidArgument("cyclotomic order must be positive");
  return field(e).modulus;
}

int euler_phi(int e) {
  cyclotomic_polynomial(e);
  return field(e).phi;
}

Cyclotomic::Cyclotomic(int e, const Rational& q) : e_(e) {
  c_.assign(euler_phi(e), 0);
  c_[0] = q;
}

Cyclotomic Cyclotomic::root(int e, long k) {
  Cyclotomic r(e);
  long m = k % e;
  if (m < 0) m += e;
  r.c_ = field(e).roots[m];
  return r;
}

Cyclotomic Cyclotomic::from_coeffs(int e, std::vector<Rational> c) {
  Cyclotomic r(e);
  if (static_cast<int>(c.size()) > euler_phi(e)) {
    c = reduce_with(c, field(e).modulus);
  }
  c.resize(euler_phi(e), 0);
  r.c_ = std::move(c);
  return r;
}

bool Cyclotomic::is_zero() const {
  for (const auto& q : c_) {
    if (q != 0) return false;
  }
  return true;
}

bool Cyclotomic::is_rational() const {
  for (std::size_t i = 1; i < c_.size(); ++i) {
    if (c_[i] != 0) return false;
  }
  return true;
}

void Cyclotomic::unify(Cyclotomic& o) {
  if (e_ == o.e_) return;
  if (o.is_rational()) {
    o = Cyclotomic(e_, o.c_[0]);
  } else if (is_rational()) {
    *this = Cyclotomic(o.e_, c_[0]);
  } else {
    throw InvalidArgument("mixing cyclotomic fields of orders " + std::to_string(e_) + " and " +
                          std::to_string(o.e_));
  }
}

Cyclotomic& Cyclotomic::operator+=(const Cyclotomic& o) {
  Cyclotomic b = o;
  unify(b);
  for (std::size_t i = 0; i < c_.size(); ++i) c_[i] += b.c_[i];
  return *this;
}

Cyclotomic& Cyclotomic::operator-=(const Cyclotomic& o) {
  Cyclotomic b = o;
  unify(b);
  for (std::size_t i = 0; i < c_.size(); ++i) c_[i] -= b.c_[i];
  return *this;
}

Cyclotomic& Cyclotomic::operator*=(const Rational& q) {
  for (auto& x : c_) x *= q;
  return *this;
}

Cyclotomic& Cyclotomic::operator*=(const Cyclotomic& o) {
  Cyclotomic b = o;
  unify(b);
  const Field& f = field(e_);
  const int n = f.phi;
  std::vector<Rational> conv(2 * n - 1, 0);
  for (int i = 0; i < n; ++i) {
    if (c_[i] == 0) continue;
    for (int j = 0; j < n; ++j) {
      if (b.c_[j] != 0) conv[i + j] += c_[i] * b.c_[j];
    }
  }
  std::vector<Rational> out(n, 0);
  for (int k = 0; k < 2 * n - 1; ++k) {
    if (conv[k] == 0) continue;
    if (k < n) {
      out[k] += conv[k];
    } else {
      for (int i = 0; i < n; ++i) out[i] += conv[k] * f.powers[k][i];
    }
  }
  c_ = std::move(out);
  return *this;
}

Cyclotomic Cyclotomic::inverse() const {
  if (is_zero()) throw InvalidArgument("inverse of zero");
  // extended Euclid: s*a + t*m = g with g a nonzero constant
  Poly a = c_;
  trim(a);
  Poly m = field(e_).modulus;
  Poly s0{1}, s1{};
  Poly r0 = a, r1 = m;
  while (!r1.empty()) {
    auto [q, r] = divmod(r0, r1);
    Poly s2 = s0;
    Poly qs = mul(q, s1);
    s2.resize(std::max(s2.size(), qs.size()), 0);
    for (std::size_t i = 0; i < qs.size(); ++i) s2[i] -= qs[i];
    trim(s2);
    r0 = std::move(r1);
    r1 = std::move(r);
    s0 = std::move(s1);
    s1 = std::move(s2);
  }
  const Rational g = r0.at(0);
  for (auto& x : s0) x /= g;
  return from_coeffs(e_, s0);
}

bool operator==(const Cyclotomic& a, const Cyclotomic& b) {
  if (a.e_ == b.e_) return a.c_ == b.c_;
  return (a - b).is_zero();
}

std::string Cyclotomic::str() const {
  std::ostringstream os;
  bool first = true;
  for (std::size_t k = 0; k < c_.size(); ++k) {
    if (c_[k] == 0) continue;
    const Rational mag = abs(c_[k]);
    if (first) {
      if (c_[k] < 0) os << '-';
    } else {
      os << (c_[k] < 0 ? " - " : " + ");
    }
    first = false;
    if (k == 0 || mag != 1) os << mag.get_str();
    if (k > 0) {
      if (mag != 1) os << '*';
      os << 'z';
      if (k > 1) os << '^' << k;
    }
  }
  return first ? "0" : os.str();
}

}  // namespace ncf
