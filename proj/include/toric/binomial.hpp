#pragma once

#include "toric/configuration.hpp"
#include "toric/scalar.hpp"

#include <string>
#include <vector>

namespace toric {

/// Exponent vector of a monomial x^u in K[x_1..x_n].
using Monomial = CountVector;

/// Graded reverse lexicographic order on monomials. `permutation()[k]` is
/// the variable at rank k; the last variable is the cheapest.
class MonomialOrder {
 public:
  MonomialOrder() = default;
  explicit MonomialOrder(Index variables);
  explicit MonomialOrder(std::vector<Index> permutation);

  /// Identity order with `variable` moved to the cheapest position.
  static MonomialOrder cheapest_last(Index variables, Index variable);

  /// -1, 0, 1 as a is smaller, equal, larger than b.
  int compare(const Monomial& a, const Monomial& b) const;
  bool greater(const Monomial& a, const Monomial& b) const { return compare(a, b) > 0; }

  Index variables() const { return static_cast<Index>(permutation_.size()); }
  const std::vector<Index>& permutation() const { return permutation_; }

  bool operator==(const MonomialOrder& other) const = default;

 private:
  std::vector<Index> permutation_;
};

/// Pure difference x^plus - x^minus. Binomials produced by the library
/// store the leading term in `plus`.
struct Binomial {
  Monomial plus;
  Monomial minus;

  Index variables() const { return plus.size(); }
  /// plus - minus, an element of ker(A) for binomials of the toric ideal.
  CountVector exponent() const { return plus - minus; }
  bool is_zero() const { return plus == minus; }
  /// Indices appearing in either monomial.
  std::vector<Index> support() const;

  Binomial negated() const { return {minus, plus}; }
  /// Swaps the monomials if needed so that `plus` leads.
  Binomial oriented(const MonomialOrder& order) const;

  bool operator==(const Binomial& other) const { return plus == other.plus && minus == other.minus; }
};

/// Binomial of a kernel vector: u = u+ - u-.
Binomial binomial_of(const CountVector& u);
Binomial binomial_of(const IntVector& u);

/// Total order used to sort binomial lists canonically.
bool canonical_less(const Binomial& a, const Binomial& b, const MonomialOrder& order);

/// A-degree A m of a monomial.
IntVector evaluate(const Configuration& a, const Monomial& m);

bool in_toric_ideal(const Configuration& a, const Binomial& f);

bool is_squarefree(const Monomial& m);

bool divides(const Monomial& a, const Monomial& b);

// Text form: x[1]^2*x[5] - x[2]*x[3]^2 with 1-based indices, or labels
// x[1,2,1] when the configuration carries them; "1" is the unit monomial.
std::string to_text(const Monomial& m, const Configuration& a);
std::string to_text(const Binomial& f, const Configuration& a);

/// Also accepts x_{1 1 1}^2 x_{133} juxtaposition, where each digit inside
/// the braces is one label entry. Throws Error(Parse).
Monomial parse_monomial(const std::string& text, const Configuration& a);
Binomial parse_binomial(const std::string& text, const Configuration& a);

}  // namespace toric
