#pragma once

#include "toric/scalar.hpp"

#include <optional>
#include <vector>

namespace toric {

/// One row `coefficients . x  (relation)  bound`.
struct LinearConstraint {
  RatVector coefficients;
  Rational bound;
};

enum class Relation { Equal, LessEqual, Less };

class LinearSystem {
 public:
  explicit LinearSystem(Index dimension) : dimension_(dimension) {}

  void add(RatVector coefficients, Relation relation, Rational bound);
  void add_equal(RatVector a, Rational b) { add(std::move(a), Relation::Equal, std::move(b)); }
  void add_less_equal(RatVector a, Rational b) { add(std::move(a), Relation::LessEqual, std::move(b)); }
  void add_less(RatVector a, Rational b) { add(std::move(a), Relation::Less, std::move(b)); }

  Index dimension() const { return dimension_; }
  const std::vector<LinearConstraint>& equalities() const { return equalities_; }
  const std::vector<LinearConstraint>& nonstrict() const { return nonstrict_; }
  const std::vector<LinearConstraint>& strict() const { return strict_; }

  bool satisfied_by(const RatVector& x) const;

 private:
  Index dimension_;
  std::vector<LinearConstraint> equalities_;
  std::vector<LinearConstraint> nonstrict_;
  std::vector<LinearConstraint> strict_;
};

enum class LpBackend { Automatic, FourierMotzkin, Simplex };

/// Nonnegative multipliers proving infeasibility: the combination
/// sum(ineq) + equality_multipliers . eq has zero coefficients and a bound
/// that is negative, or zero with a strict row carrying positive weight.
/// Inequality multipliers index nonstrict rows first, then strict rows.
struct FarkasCertificate {
  std::vector<Rational> inequality_multipliers;
  RatVector equality_multipliers;
};

struct FeasibilityResult {
  std::optional<RatVector> witness;
  std::optional<FarkasCertificate> farkas;  // only from Fourier-Motzkin
  LpBackend backend_used = LpBackend::Automatic;

  explicit operator bool() const { return witness.has_value(); }
};

/// Free variables left after eliminating equalities at which the automatic
/// backend switches from Fourier-Motzkin to simplex.
inline constexpr Index kFourierMotzkinMaxVariables = 12;

FeasibilityResult lp_feasible(const LinearSystem& system, LpBackend backend = LpBackend::Automatic);

/// Equalities plus strict inequalities, the shape used for separating
/// functionals.
std::optional<RatVector> lp_feasible(const std::vector<LinearConstraint>& equalities,
                                     const std::vector<LinearConstraint>& strict);

bool verify_farkas(const LinearSystem& system, const FarkasCertificate& certificate);

struct LpOptimum {
  enum class Status { Optimal, Unbounded, Infeasible } status = Status::Infeasible;
  Rational value;
  RatVector point;
};

/// Exact simplex (Bland's rule). Strict rows are not allowed here.
LpOptimum lp_maximize(const RatVector& objective, const LinearSystem& system);
LpOptimum lp_minimize(const RatVector& objective, const LinearSystem& system);

}  // namespace toric
