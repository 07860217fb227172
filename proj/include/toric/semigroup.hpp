#pragma once

#include "toric/binomial.hpp"
#include "toric/configuration.hpp"
#include "toric/linalg.hpp"

#include <cstdint>
#include <memory>
#include <optional>
#include <vector>

namespace toric {

struct SemigroupOptions {
  std::size_t memo_cap = 4'000'000;   // failed residuals remembered per query
  std::uint64_t node_cap = 2'000'000;  // polytope nodes per hole enumeration
};

/// Membership tests for Z_{>=0}A, ZA and Q_{>=0}A of one configuration,
/// sharing the lattice solver between queries.
class Semigroup {
 public:
  explicit Semigroup(const Configuration& a, SemigroupOptions options = {});

  const Configuration& configuration() const { return a_; }

  /// Point indices (with repetition, ascending) summing to p, or nullopt.
  /// Exhaustive: a representation of p uses exactly w . p points.
  std::optional<std::vector<Index>> represent(const IntVector& p) const;
  bool contains(const IntVector& p) const { return represent(p).has_value(); }

  bool in_lattice(const IntVector& p) const;
  bool in_cone(const IntVector& p) const;
  bool is_hole(const IntVector& p) const;

 private:
  const Configuration& a_;
  SemigroupOptions options_;
  Matrix<Count> points_;
  IntegerSolver lattice_;
};

std::optional<std::vector<Index>> in_semigroup(const Configuration& a, const IntVector& p);
bool in_lattice(const Configuration& a, const IntVector& p);
bool in_cone(const Configuration& a, const IntVector& p);
bool is_hole(const Configuration& a, const IntVector& p);

struct HoleList {
  Index max_degree = 0;
  std::vector<std::vector<IntVector>> by_degree;  // entry m-1 holds degree m

  std::size_t total() const;
  const std::vector<IntVector>& degree(Index m) const { return by_degree[static_cast<std::size_t>(m - 1)]; }
};

/// Holes of degree 1..max_degree, each degree in lexicographic order. The
/// lattice points of m P_A are found by branching on coordinates between
/// their exact LP bounds. Throws CapExceeded past `node_cap` nodes.
HoleList enumerate_holes(const Configuration& a, Index max_degree, const SemigroupOptions& options = {});

/// base + m a_direction for m = 0, 1, ...
struct HoleFamily {
  IntVector base;
  Index direction = 0;
  // how it was built from a binomial x_1^2 u' - x_2^2 v', when it was
  std::optional<Binomial> source;
  Index first_role = -1;
  Index second_role = -1;

  IntVector element(const Configuration& a, Count m) const { return base + Integer(m) * a.point(direction); }
};

/// Family with base A(e_1 + u') - a_2 for roles x_1, x_2 taken as the first
/// variables of exponent at least 2 in each monomial. `direction` defaults
/// to the first other variable of g. Throws NotApplicable.
HoleFamily hole_family_from_principal(const Configuration& a, const Binomial& g,
                                      std::optional<Index> direction = std::nullopt);

/// First m in 0..max_m whose element is not a hole, or nullopt if all are.
std::optional<Count> first_non_hole(const Configuration& a, const HoleFamily& family, Count max_m,
                                    const SemigroupOptions& options = {});
bool verify_hole_family(const Configuration& a, const HoleFamily& family, Count max_m = 20,
                        const SemigroupOptions& options = {});

/// Conductor of the numerical semigroup generated by `generators` (positive,
/// gcd 1): the least c with every integer >= c in the semigroup.
Count numerical_semigroup_conductor(const std::vector<Count>& generators);

/// Rank-2 configurations are points a_i = a_origin + s_i g on one line of
/// the lattice. The semigroup has finitely many holes exactly when both
/// end semigroups, generated by the s_i and by the L - s_i, have
/// conductor 0.
struct Rank2Analysis {
  Index origin = 0;  // s = 0
  Index top = 0;     // s = L
  IntVector origin_point;
  IntVector top_point;
  IntVector step;    // g, pointing from origin to top
  std::vector<Count> positions;
  Count length = 0;
  Count conductor_low = 0;
  Count conductor_high = 0;

  bool very_ample() const { return conductor_low == 0 && conductor_high == 0; }
  /// Holes m a_end + (first gap) g' at the end with a positive conductor.
  std::optional<HoleFamily> family() const;
};

std::optional<Rank2Analysis> rank2_analysis(const Configuration& a);

}  // namespace toric
