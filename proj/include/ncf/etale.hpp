#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ncf/ncalg.hpp"

namespace ncf {

/// gamma: total -> quotient = total / kernel.
struct CentralExtension {
  AlgebraPtr total;
  AlgebraPtr quotient;
  LinearMap gamma;
  Subspace kernel;

  /// First violated axiom, or nullopt.
  std::optional<std::string> witness() const;
  void validate() const;  // NotCentralExtension
};

CentralExtension central_extension(AlgebraPtr total, Subspace kernel);

/// Generator images of a presentation inside a finite algebra.
struct AlgebraMorphism {
  Presentation source;
  AlgebraPtr target;
  std::vector<Vec> images;

  Vec apply(const NcPoly& p) const { return target->evaluate(p, images); }
  /// First source relation not sent to zero.
  std::optional<std::string> relation_witness() const;
};

struct EtaleDiagram {
  Presentation R;
  Presentation S;
  std::vector<NcPoly> alpha;  // images of R generators, in S generators
  AlgebraMorphism beta;       // S -> A
  AlgebraMorphism delta;      // R -> A'
  CentralExtension gamma;

  /// First R generator with gamma(delta(r)) != beta(alpha(r)).
  std::optional<std::string> commute_witness() const;
};

/// R with generators z, u appended and the relations
/// sum a_i z^i, u * sum i a_i z^(i-1) - 1, sum i a_i z^(i-1) * u - 1.
Presentation standard_etale(const Presentation& R, const std::vector<NcPoly>& a, int bound);

/// alpha for standard_etale: R generators map to themselves.
std::vector<NcPoly> inclusion_images(const Presentation& R);

/// All lifts of a morphism P -> A to A'. Generator j goes to base[j] + c_j
/// with c_j in I; coordinate j * dim I + k of a solution is the coefficient
/// of the k-th basis vector of I in c_j.
struct LiftSystem {
  std::vector<Vec> base;
  std::vector<Vec> ideal_basis;
  AffineSolution solution;

  std::size_t dimension() const { return solution.kernel.dim(); }
  std::vector<Vec> images(const Vec& t) const;
};

/// targets: images of P's generators in A. Each constraint asks a polynomial
/// in P's generators to evaluate to the given element of A'.
LiftSystem solve_lifts(const Presentation& P, const std::vector<Vec>& targets, const CentralExtension& ce,
                       const std::vector<std::pair<NcPoly, Vec>>& constraints = {});

struct StandardLift {
  Vec p;
  Vec q;
  AlgebraMorphism epsilon;  // S -> A'
  std::optional<std::string> relation_failure;
  std::size_t solution_dim = 0;
  bool unique() const { return solution_dim == 0; }
  bool matches_solver = false;
};

/// Closed-form correction of (x, y) to a lift of S = standard_etale(R, a).
/// Throws NotCentralExtension, PreimageMismatch.
StandardLift lift_standard(const EtaleDiagram& diag, const std::vector<NcPoly>& a, const Vec& x, const Vec& y);

struct LiftCase {
  std::optional<std::string> commute_failure;
  bool exists = false;
  bool unique = false;
  std::size_t solution_dim = 0;
};

struct EtaleReport {
  std::vector<LiftCase> cases;
  bool verified_over_family() const;
};

EtaleReport check_formally_etale(const std::vector<EtaleDiagram>& family);

/// Commutative module over S given by generator action matrices (rows of
/// each matrix are Vecs of length dim).
struct CentralModule {
  std::size_t dim = 0;
  std::vector<std::vector<Vec>> action;  // action[g][col] = image of basis vector col
};

struct DerivationReport {
  std::size_t der_S = 0;
  std::size_t der_R = 0;
  bool injective = false;
  bool surjective = false;
  bool bijective() const { return injective && surjective; }
};

/// Compares Der(S, M) and Der(R, M) along restriction by alpha. M must be a
/// module over S in which the action matrices commute; InvalidArgument
/// otherwise.
DerivationReport derivation_transfer_check(const Presentation& R, const Presentation& S,
                                           const std::vector<NcPoly>& alpha, const CentralModule& M);

struct ClosureReport {
  int d = 0;
  std::size_t filtration_dim = 0;  // dim F^{d+1}(A')
  bool in_nd() const { return filtration_dim == 0; }
};

ClosureReport nd_closure_check(const EtaleDiagram& diag, int d);

struct FamilySpec {
  bool rational_base = false;  // R = Q instead of r_d(free on x, y)
  int d = 1;
  int base_bound = 2;          // degree bound of the free algebra before r_d
  int max_eps = 2;
  bool quotient_base = true;   // allow A to be a proper quotient of R
};

struct Family {
  Presentation R;
  Presentation S;
  std::vector<NcPoly> a;
  std::vector<EtaleDiagram> diagrams;
  std::size_t rejected = 0;  // candidates failing the hypotheses
};

/// Seeded central extensions A' -> A with A a quotient of R and beta
/// sending z, u to +-1, +-1/2. Only diagrams where delta exists, gamma is a
/// valid central extension and A' is exact are kept.
Family generate_family(const FamilySpec& spec, std::size_t count, std::uint64_t seed);

struct InvarianceReport {
  std::vector<std::size_t> rd_dims;  // dim r_0(S) .. r_{d+1}(S)
  bool certified = false;            // every r_k computed exactly
  bool in_nd = false;
  bool abelianization_matches = false;
  std::size_t abelian_dim = 0;
  std::size_t expected_abelian_dim = 0;
};

/// Lifts the standard etale algebra over X^ab given by constants a to X,
/// then checks r_d of the lift lies in N_d and abelianizes to the
/// commutative extension. Throws LiftInconsistent if the lift collapses.
InvarianceReport topological_invariance_harness(const Presentation& X, int d, const std::vector<Rational>& a,
                                                int bound);

}  // namespace ncf
