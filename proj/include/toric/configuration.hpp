#pragma once

#include "toric/linalg.hpp"
#include "toric/scalar.hpp"

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace toric {

/// Multi-index naming a point, e.g. (i1, i2, i3) for a cell of a contingency
/// table. Entries are 1-based.
using Label = std::vector<int>;

/// A finite ordered set of distinct points of Z_{>=0}^d lying on an affine
/// hyperplane w . a = 1. The points are the columns of `matrix()`.
class Configuration {
 public:
  /// Validates the points and solves for a grading functional.
  explicit Configuration(IntMatrix points, std::vector<Label> labels = {});
  /// Validates the points against a known grading.
  Configuration(IntMatrix points, RatVector grading, std::vector<Label> labels = {});

  static Configuration from_points(const std::vector<std::vector<long long>>& points);

  const IntMatrix& matrix() const { return points_; }
  Index size() const { return points_.cols(); }
  Index dimension() const { return points_.rows(); }
  IntVector point(Index i) const { return points_.col(i); }
  const RatVector& grading() const { return grading_; }

  /// w . p; an integer for every element of ZA.
  Rational degree(const IntVector& p) const { return dot(grading_, p); }

  bool has_labels() const { return !labels_.empty(); }
  const std::vector<Label>& labels() const { return labels_; }
  std::optional<Index> find_label(const Label& label) const;

  /// Name of variable i in binomial text: x[3] or x[1,2,3] (1-based).
  std::string variable_name(Index i) const;

  /// Points `subset` in the same ambient space and grading.
  Configuration restrict_to(const std::vector<Index>& subset) const;

  bool operator==(const Configuration& other) const { return points_ == other.points_; }

 private:
  void validate() const;

  IntMatrix points_;
  RatVector grading_;
  std::vector<Label> labels_;
};

/// Separating functional: v . a == c on `subset`, v . a < c elsewhere, so
/// the subset is A intersected with a face of conv(A).
class FaceCertificate {
 public:
  /// Checks every point exactly; throws Mismatch if the inequalities fail.
  FaceCertificate(const Configuration& a, std::vector<Index> subset, RatVector functional, Rational level);

  const std::vector<Index>& subset() const { return subset_; }
  const RatVector& functional() const { return functional_; }
  const Rational& level() const { return level_; }

  static bool holds(const Configuration& a, const std::vector<Index>& subset, const RatVector& functional,
                    const Rational& level);

 private:
  std::vector<Index> subset_;
  RatVector functional_;
  Rational level_;
};

/// Separating functional for `subset`, or nullopt when it is not of the form
/// A intersected with a face.
std::optional<FaceCertificate> face_certificate(const Configuration& a, std::vector<Index> subset);

/// Indices of the points supported on the coordinate set `coords`.
std::vector<Index> coordinate_section(const Configuration& a, const std::vector<Index>& coords);

/// Functional -sum_{j not in coords} e_j at level 0; always separates a
/// nonempty coordinate section.
std::optional<FaceCertificate> coordinate_face(const Configuration& a, const std::vector<Index>& coords);

/// Configuration A_{r_1...r_n} of the no n-way interaction model. Points are
/// ordered lexicographically by (i_1, ..., i_n) with i_n fastest.
Configuration contingency(const std::vector<int>& shape);

/// Lawrence lifting: columns of (A 0; I I). The first n points are
/// (a_i, e_i), the next n are (0, e_i).
Configuration lawrence(const Configuration& a);

struct LawrenceIdentityWitness {
  std::vector<Index> point_map;  // point of lawrence(A_r) -> point of A_{r,2}
  std::vector<Index> row_map;    // row of lawrence(A_r) -> row of A_{r,2}
  /// Rows of A_{r,2} not hit by row_map, each equal to a signed sum of rows
  /// of lawrence(A_r): (row, [(lawrence row, coefficient)]).
  std::vector<std::pair<Index, std::vector<std::pair<Index, int>>>> dependent_rows;
};

/// Explicit identification of A_{r_1..r_n,2} with the Lawrence lifting of
/// A_{r_1..r_n}. Throws Mismatch naming the first coordinate that disagrees.
LawrenceIdentityWitness verify_lawrence_identity(const std::vector<int>& shape);

/// Configuration whose kernel lattice is {(u, -u) : u in ker(base)} after
/// pairing its points.
struct LawrenceMatch {
  std::vector<std::pair<Index, Index>> pairs;  // (first copy, second copy)
  IntMatrix base;                              // columns indexed by pair
};

/// Recognizes Lawrence type by finding coordinates supported on exactly two
/// points with entries 1 that pair off all points; the base is read from the
/// remaining coordinates on the first copies and the match is accepted only
/// if the kernel lattices agree exactly.
std::optional<LawrenceMatch> recognize_lawrence(const Configuration& a);

/// Kernel of the lifted matrix built from a kernel of `base` through `pairs`.
LatticeBasis lifted_kernel(const LatticeBasis& base_kernel, const std::vector<std::pair<Index, Index>>& pairs,
                           Index points);

struct UnimodularityResult {
  bool unimodular = false;
  MinorScan scan;
};

UnimodularityResult is_unimodular(const IntMatrix& m, MinorOptions options = {});
UnimodularityResult is_unimodular(const Configuration& a, MinorOptions options = {});

}  // namespace toric
