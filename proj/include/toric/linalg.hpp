#pragma once

#include "toric/error.hpp"
#include "toric/scalar.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <utility>
#include <vector>

namespace toric {

/// Row-style Hermite normal form: `transform * input == form`, `transform`
/// unimodular, `form` in echelon shape with positive pivots and entries above
/// each pivot reduced into [0, pivot).
struct HermiteForm {
  IntMatrix form;
  IntMatrix transform;
  std::vector<Index> pivot_columns;

  Index rank() const { return static_cast<Index>(pivot_columns.size()); }
};

HermiteForm hermite_normal_form(const IntMatrix& m);

/// Z-basis of {u : M u = 0}, one basis vector per row, in Hermite normal
/// form so that equal lattices produce identical bases.
struct LatticeBasis {
  IntMatrix vectors;  // rank x cols

  Index rank() const { return vectors.rows(); }
  Index ambient() const { return vectors.cols(); }
  IntVector vector(Index i) const { return vectors.row(i).transpose(); }
};

LatticeBasis kernel_lattice(const IntMatrix& m);

/// Canonical basis of the Z-span of the rows of `generators`.
LatticeBasis lattice_span(const IntMatrix& generators);

bool same_lattice(const LatticeBasis& a, const LatticeBasis& b);

Index rank(const IntMatrix& m);

/// Indices of a maximal set of linearly independent rows, chosen greedily in
/// increasing order.
std::vector<Index> row_basis(const IntMatrix& m);

/// Fraction-free Gaussian elimination. Scalar must support exact division of
/// the intermediate values (Integer, or a checked machine integer).
template <typename Scalar>
Scalar bareiss_determinant(Matrix<Scalar> a) {
  const Index n = a.rows();
  if (n != a.cols()) throw Error(ErrorCode::DimensionMismatch, "determinant of non-square matrix");
  if (n == 0) return Scalar(1);
  Scalar sign(1);
  Scalar previous(1);
  for (Index k = 0; k < n; ++k) {
    Index pivot = k;
    while (pivot < n && a(pivot, k) == Scalar(0)) ++pivot;
    if (pivot == n) return Scalar(0);
    if (pivot != k) {
      a.row(k).swap(a.row(pivot));
      sign = Scalar(0) - sign;
    }
    for (Index i = k + 1; i < n; ++i) {
      for (Index j = k + 1; j < n; ++j)
        a(i, j) = (a(i, j) * a(k, k) - a(i, k) * a(k, j)) / previous;
      a(i, k) = Scalar(0);
    }
    previous = a(k, k);
  }
  return sign * a(n - 1, n - 1);
}

Integer determinant(const IntMatrix& m);

/// Particular integer solution of M x = b, if one exists.
std::optional<IntVector> solve_integer(const IntMatrix& m, const IntVector& b);

/// Caches the Hermite form of M^T so repeated right-hand sides are cheap.
class IntegerSolver {
 public:
  explicit IntegerSolver(const IntMatrix& m);

  std::optional<IntVector> solve(const IntVector& b) const;
  Index rank() const { return hermite_.rank(); }

 private:
  Index rows_;
  Index cols_;
  HermiteForm hermite_;  // of m^T
};

/// Rational affine solution set of M x = b: x = particular + nullspace * z.
struct AffineSolution {
  RatVector particular;
  RatMatrix nullspace;  // cols x free
};

std::optional<AffineSolution> solve_rational(const RatMatrix& m,
                                             const RatVector& b);

struct MinorWitness {
  std::vector<Index> rows;
  std::vector<Index> first_columns;
  Integer first_value;
  std::vector<Index> second_columns;
  Integer second_value;
};

/// Distribution of |det| over all maximal minors (after restricting to a
/// row basis). With `stop_at_second_value` the scan stops as soon as two
/// distinct nonzero absolute values are seen and `complete` is false.
struct MinorScan {
  Index rank = 0;
  std::vector<Index> rows;
  std::map<Integer, std::uint64_t> counts;  // |minor| -> multiplicity
  std::uint64_t examined = 0;
  bool complete = false;
  std::optional<MinorWitness> witness;

  std::vector<Integer> distinct_nonzero() const;
};

struct MinorOptions {
  std::uint64_t cap = 5'000'000;
  bool stop_at_second_value = true;
};

MinorScan maximal_minor_values(const IntMatrix& m, MinorOptions options = {});

/// |det| of m restricted to `rows` x `columns`.
Integer minor_abs(const IntMatrix& m, const std::vector<Index>& rows,
                  const std::vector<Index>& columns);

Integer binomial_coefficient(Index n, Index k);

}  // namespace toric
