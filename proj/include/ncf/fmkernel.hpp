#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "ncf/cyclotomic.hpp"

namespace ncf {

class FiniteAbGroup {
 public:
  FiniteAbGroup() = default;
  explicit FiniteAbGroup(std::vector<long> moduli);

  const std::vector<long>& moduli() const noexcept { return moduli_; }
  std::size_t order() const noexcept { return order_; }
  int exponent() const noexcept { return exponent_; }

  std::vector<long> element(std::size_t index) const;
  std::size_t index(const std::vector<long>& coords) const;  // reduces mod n_j
  std::size_t add(std::size_t a, std::size_t b) const;
  std::size_t neg(std::size_t a) const;
  std::size_t order_of(std::size_t a) const;
  /// Exponent k with chi_c(x) = zeta_e^k.
  long pairing_exponent(std::size_t x, std::size_t c) const;

  std::string str() const;  // "Z4xZ2"
  friend bool operator==(const FiniteAbGroup& a, const FiniteAbGroup& b) { return a.moduli_ == b.moduli_; }

 private:
  std::vector<long> moduli_;
  std::size_t order_ = 1;
  int exponent_ = 1;
};

/// A group or its character group. Characters of X are indexed like X
/// itself: chi_c(x) = zeta_e^{sum c_j x_j e / n_j}.
struct Space {
  FiniteAbGroup group;
  bool dual = false;

  std::size_t size() const { return group.order(); }
  Space dual_space() const { return Space{group, !dual}; }
  std::string str() const { return dual ? "dual(" + group.str() + ")" : group.str(); }
  friend bool operator==(const Space& a, const Space& b) { return a.group == b.group && a.dual == b.dual; }
  friend bool operator!=(const Space& a, const Space& b) { return !(a == b); }
};

Space dual_group(const FiniteAbGroup& X);

/// Value of the pairing between s in S and t in the dual of S.
Cyclotomic pairing(const Space& S, std::size_t s, std::size_t t);

/// Scalar function on rows x cols (values K(a, b), a in rows, b in cols).
class Kernel {
 public:
  Kernel(Space rows, Space cols);
  const Space& rows() const noexcept { return rows_; }
  const Space& cols() const noexcept { return cols_; }
  const Cyclotomic& at(std::size_t a, std::size_t b) const { return v_[a * cols_.size() + b]; }
  Cyclotomic& at(std::size_t a, std::size_t b) { return v_[a * cols_.size() + b]; }
  friend bool operator==(const Kernel& a, const Kernel& b);
  friend bool operator!=(const Kernel& a, const Kernel& b) { return !(a == b); }
  /// First entry where the kernels differ, as "(a,b): lhs vs rhs".
  static std::optional<std::string> witness(const Kernel& a, const Kernel& b);

 private:
  Space rows_;
  Space cols_;
  std::vector<Cyclotomic> v_;
};

Kernel diagonal(const Space& S);
/// (K o L)(x, z) = sum_y K(x, y) L(y, z).
Kernel circle(const Kernel& K, const Kernel& L);
/// P(s, t) = <s, t> on S x dual(S).
Kernel poincare(const Space& S);
/// Q(t, s) = <s, t>^{-1} / |S| on dual(S) x S.
Kernel inverse_kernel(const Space& S);
/// For K on T x T: P o K o Q with P = poincare(dual T); lands on dual T.
Kernel transform_kernel(const Kernel& K);
/// For K' on S x S: Q o K' o P with Q = inverse_kernel(S); lands on dual S.
Kernel inverse_transform(const Kernel& K);
Kernel random_kernel(const Space& rows, const Space& cols, std::mt19937& rng);

/// K(a, b) = scalar * twist(a) * [b = a + shift]; twist lives in the dual
/// space.
struct TransKernel {
  Space space;
  std::size_t shift = 0;
  std::size_t twist = 0;
  Cyclotomic scalar;

  Kernel expand() const;
  /// Closed-form composite: (x,psi) o (x',psi') = psi'(x) (x+x', psi psi').
  TransKernel then(const TransKernel& o) const;
  /// Closed-form transform: shift and twist exchange, the new twist is the
  /// inverse of the old shift, scalar picks up <shift, twist>^{-1}.
  TransKernel transformed() const;
  friend bool operator==(const TransKernel& a, const TransKernel& b);
};

/// Recognises a kernel of translation type.
std::optional<TransKernel> as_trans_kernel(const Kernel& K);

class QuasiSpecialAlgebra {
 public:
  struct Product {
    std::size_t index;
    Cyclotomic scalar;
  };

  /// Closure of the (shift, twist) pairs under composition; NotClosed if it
  /// exceeds `limit` elements.
  QuasiSpecialAlgebra(Space space, const std::vector<std::pair<std::size_t, std::size_t>>& gens,
                      std::size_t limit = 4096);

  const Space& space() const noexcept { return space_; }
  std::size_t rank() const noexcept { return basis_.size(); }
  const std::vector<std::pair<std::size_t, std::size_t>>& basis() const noexcept { return basis_; }
  std::size_t generator_count() const noexcept { return gens_; }
  TransKernel element(std::size_t i) const;
  Kernel kernel(std::size_t i) const { return element(i).expand(); }
  const Product& product(std::size_t i, std::size_t j) const { return table_[i * rank() + j]; }
  std::optional<std::size_t> find(std::size_t shift, std::size_t twist) const;

  bool commutative() const;
  /// Every structure constant equals the expanded kernel composite.
  std::optional<std::string> cocycle_witness() const;
  std::optional<std::string> associativity_witness() const;

 private:
  Space space_;
  std::vector<std::pair<std::size_t, std::size_t>> basis_;
  std::map<std::pair<std::size_t, std::size_t>, std::size_t> index_;
  std::vector<Product> table_;
  std::size_t gens_ = 0;
};

struct TransformedAlgebra {
  QuasiSpecialAlgebra image;
  std::vector<std::size_t> basis_map;  // Phi(T_a) = scalars[a] * T'_{basis_map[a]}
  std::vector<Cyclotomic> scalars;
  std::optional<std::string> failure;
};

TransformedAlgebra transform_algebra(const QuasiSpecialAlgebra& A);

/// Columns span a subspace of functions on the space.
struct GradedModule {
  Space space;
  std::vector<std::vector<Cyclotomic>> columns;
  std::size_t rank() const { return columns.size(); }
};

GradedModule apply_kernel(const Kernel& K, const GradedModule& m);
/// Throws NotAModule unless every basis kernel maps the span into itself.
void check_module(const QuasiSpecialAlgebra& A, const GradedModule& m);
/// Phi(m) = P m with P = poincare(dual S); checks Phi(K m) = Phi(K) Phi(m)
/// for every basis kernel.
GradedModule transform_module(const QuasiSpecialAlgebra& A, const GradedModule& m);
/// Cyclic submodule generated by a random vector.
GradedModule random_module(const QuasiSpecialAlgebra& A, std::mt19937& rng);
bool same_span(const GradedModule& a, const GradedModule& b);

}  // namespace ncf
