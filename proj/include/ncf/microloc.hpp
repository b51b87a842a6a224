#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ncf/ncalg.hpp"

namespace ncf {

/// A word algebra with the filtration A_i = span of words of weight <= i,
/// and a basis adapted to it.
class FilteredAlgebra {
 public:
  /// Throws NotFiltered if A_i * A_j is not inside A_{i+j}.
  explicit FilteredAlgebra(AlgebraPtr alg);

  const Algebra& algebra() const { return *alg_; }
  AlgebraPtr algebra_ptr() const { return alg_; }
  int top() const noexcept { return top_; }  // A_top = A
  const Subspace& level(int i) const;        // A_i, zero for i < 0
  std::size_t dim() const { return basis_.size(); }
  const std::vector<Vec>& basis() const noexcept { return basis_; }
  int weight(std::size_t k) const { return weights_[k]; }
  /// Coordinates in the adapted basis.
  Vec coords(const Vec& a) const { return inverse_.apply(a); }
  /// Weight of the symbol of a nonzero element (-1 for zero).
  int order(const Vec& a) const;

 private:
  AlgebraPtr alg_;
  int top_ = 0;
  std::vector<Subspace> levels_;
  std::vector<Vec> basis_;
  std::vector<int> weights_;
  LinearMap inverse_{0, 0};
};

struct GradedReport {
  AlgebraPtr gr;
  bool commutative = false;
  bool generated_in_degree_one = false;
};

/// gr(A) on the adapted basis; weight = grade.
GradedReport associated_graded(const FilteredAlgebra& fa);

/// gr_(n)(A) = sum_i A_i / A_{i-n-1}. Basis element (i, b) for adapted b
/// with i - n <= wt b <= i; its weight is the grade i, its degree the word
/// length of b.
class MicroGraded {
 public:
  MicroGraded(const FilteredAlgebra& fa, int n);

  int n() const noexcept { return n_; }
  const FilteredAlgebra& filtered() const noexcept { return fa_; }
  const Algebra& algebra() const { return *g_; }
  AlgebraPtr algebra_ptr() const { return g_; }
  const Vec& t() const noexcept { return t_; }
  int grade(std::size_t k) const { return entries_[k].first; }
  std::size_t source(std::size_t k) const { return entries_[k].second; }  // adapted basis index
  std::optional<std::size_t> index(int grade, std::size_t b) const;
  int top_grade() const noexcept { return top_grade_; }
  std::vector<std::size_t> grade_indices(int i) const;
  /// Class of a in A_i / A_{i-n-1}.
  Vec embed(int i, const Vec& a) const;

  bool t_central() const;
  int t_nilpotency() const;  // least k with t^k = 0
  /// G/(t) against gr: dimensions per grade and structure constants.
  std::optional<std::string> quotient_witness(const Algebra& gr) const;

 private:
  FilteredAlgebra fa_;
  int n_;
  int top_grade_;
  std::vector<std::pair<int, std::size_t>> entries_;
  AlgebraPtr g_;
  Vec t_;
};

/// gr_(n+1) -> gr_(n): keeps (i, b) when wt b >= i - n.
LinearMap micro_projection(const MicroGraded& upper, const MicroGraded& lower);
/// Surjective algebra map with the expected kernel.
std::optional<std::string> projection_witness(const MicroGraded& upper, const MicroGraded& lower);

/// I^k = t^k G for k = 0 .. n+1.
std::vector<Subspace> filtration_ideals(const MicroGraded& mg);
/// I^k / I^{k+1} against gr(-k): dimensions per grade and the action of G.
std::optional<std::string> filtration_ideal_witness(const MicroGraded& mg, const Algebra& gr);

/// Graded localization of gr_(n) at h = class of a lift in A_1. O(M) is
/// spanned by c h^{-q} with c in G_{q+M}; the base level is all of
/// G_{p0+M} (p0 = max(0, -M)) and higher levels keep a complement of
/// G_{q+M-1} h.
class LocalizedTower {
 public:
  LocalizedTower(const MicroGraded& mg, const Vec& lift, int range);

  const MicroGraded& graded() const { return mg_; }
  int range() const noexcept { return range_; }
  std::size_t dim(int M) const { return level(M).slots.size(); }
  std::string label(int M, std::size_t k) const;
  /// word length of c h^{-q}, counting h^{-1} like h
  int degree(int M, std::size_t k) const;
  int power(int M, std::size_t k) const { return level(M).slots[k].first; }
  std::size_t element(int M, std::size_t k) const { return level(M).slots[k].second; }

  /// c h^{-q} for c homogeneous of grade q + M.
  Vec to_o(int M, int q, const Vec& c) const;
  Vec mul(int M, const Vec& a, int M2, const Vec& b) const;
  const Vec& h() const noexcept { return h_; }
  /// h^{-1} in O(-1).
  Vec h_inverse() const { return to_o(-1, 1, mg_.algebra().unit()); }

  /// O(0) as an algebra.
  AlgebraPtr degree_zero() const;

 private:
  struct Level {
    int p0;
    std::vector<std::pair<int, std::size_t>> slots;  // (q, G index)
    std::map<std::pair<int, std::size_t>, std::size_t> slot_of;
  };
  const Level& level(int M) const;

  MicroGraded mg_;
  Vec h_;
  int range_;
  std::vector<Level> levels_;                  // M = -range .. range
  std::vector<Subspace> images_;               // image of right mult by h into grade k
  std::vector<LinearMap> right_h_;             // from grade k-1 basis to G
  std::vector<std::vector<std::size_t>> grade_basis_;
};

/// O(0) for the symbol of `lift`. Throws ZeroSymbol if the lift has order
/// below 1 (its class in gr_1 vanishes) and InvalidArgument if it has
/// order above 1.
AlgebraPtr localize_deg0(const MicroGraded& mg, const Vec& lift);

struct LiftComparison {
  bool bijective = false;
  bool multiplicative = false;
  std::size_t pairs_checked = 0;
  std::optional<std::string> failure;
};

/// Compares O(0) for two lifts with the same symbol through
/// c h^{-q} -> c H^q, H = sum_m (h'^{-1} d)^m h'^{-1}, d = h' - h.
/// Multiplicativity is checked on basis pairs whose word lengths sum to at
/// most `budget`. Both lifts must have the same word length, otherwise the
/// two truncations keep different slots (InvalidArgument).
LiftComparison compare_lifts(const MicroGraded& mg, const Vec& lift, const Vec& other, int budget);

struct TowerReport {
  std::vector<int> shifts;
  std::vector<std::size_t> dims;       // dim O(m)
  std::vector<std::size_t> t_ranks;    // rank of t: O(m) -> O(m+1)
  bool associative = false;            // O(m) O(l) O(k) on basis triples within budget
  bool t_compatible = false;           // t(ab) = (ta)b = a(tb)
  bool unit_acts = false;              // O(0) unit acts as identity on each O(m)
  std::size_t limit_dim = 0;           // rank of O(0) -> O(top) through t-maps
};

TowerReport shift_tower(const LocalizedTower& tower, int max_shift, int budget);

/// Finite-dimensional left A-module with the actions of A's generators.
struct TAdicModule {
  AlgebraPtr A;
  Vec t;
  int order = 1;  // t^order = 0 in A
  std::size_t dim = 0;
  std::vector<LinearMap> action;

  LinearMap act(const Vec& a) const;
  LinearMap act(const NcPoly& p) const;  // word by word through the generator actions
};

/// Direct sum of copies of the regular module.
TAdicModule regular_module(AlgebraPtr A, const Vec& t, int order, int copies = 1);

struct RankOneReport {
  bool free_rank_one = false;
  std::optional<Vec> generator;
  std::string reason;
};

/// Throws HypothesisFailure when t is not central in A, At != tA, t is not
/// regular on A to its order, or M is not an A-module.
RankOneReport rank_one_criterion(const TAdicModule& M);

}  // namespace ncf
