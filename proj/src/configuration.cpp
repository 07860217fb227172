#include "toric/configuration.hpp"

#include "toric/error.hpp"
#include "toric/lp.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <set>

namespace toric {
namespace {

std::string vector_text(const IntVector& v) {
  std::string s = "(";
  for (Index i = 0; i < v.size(); ++i) s += (i ? "," : "") + v(i).str();
  return s + ")";
}

RatVector find_grading(const IntMatrix& points) {
  const RatMatrix system = points.transpose().cast<Rational>();
  auto solution = solve_rational(system, RatVector::Ones(points.cols()));
  if (!solution)
    throw Error(ErrorCode::NotAConfiguration, "no functional w with w . a_i = 1 on all points");
  return solution->particular;
}

// Position of a 1-based multi-index among all multi-indices of `shape`,
// lexicographic with the last index fastest.
Index flat_index(const std::vector<int>& shape, const std::vector<int>& index) {
  Index flat = 0;
  for (std::size_t k = 0; k < shape.size(); ++k) flat = flat * shape[k] + (index[k] - 1);
  return flat;
}

std::vector<std::vector<int>> all_indices(const std::vector<int>& shape) {
  std::vector<std::vector<int>> out;
  std::vector<int> current(shape.size(), 1);
  while (true) {
    out.push_back(current);
    int k = static_cast<int>(shape.size()) - 1;
    while (k >= 0 && current[k] == shape[k]) current[k--] = 1;
    if (k < 0) break;
    ++current[k];
  }
  return out;
}

template <typename T>
std::vector<T> erase_at(std::vector<T> v, std::size_t k) {
  v.erase(v.begin() + static_cast<std::ptrdiff_t>(k));
  return v;
}

}  // namespace

Configuration::Configuration(IntMatrix points, std::vector<Label> labels)
    : points_(std::move(points)), labels_(std::move(labels)) {
  validate();
  grading_ = find_grading(points_);
}

Configuration::Configuration(IntMatrix points, RatVector grading, std::vector<Label> labels)
    : points_(std::move(points)), grading_(std::move(grading)), labels_(std::move(labels)) {
  validate();
  if (grading_.size() != points_.rows())
    throw Error(ErrorCode::DimensionMismatch, "grading length differs from point dimension");
  for (Index i = 0; i < size(); ++i)
    if (degree(point(i)) != 1)
      throw Error(ErrorCode::NotAConfiguration, "w . a != 1 for point " + vector_text(point(i)));
}

Configuration Configuration::from_points(const std::vector<std::vector<long long>>& points) {
  if (points.empty()) throw Error(ErrorCode::NotAConfiguration, "empty point list");
  std::vector<IntVector> cols;
  cols.reserve(points.size());
  for (const auto& p : points) cols.push_back(int_vector(p));
  return Configuration(columns_matrix(cols));
}

void Configuration::validate() const {
  if (points_.cols() == 0) throw Error(ErrorCode::NotAConfiguration, "empty point list");
  for (Index j = 0; j < points_.cols(); ++j)
    for (Index i = 0; i < points_.rows(); ++i)
      if (points_(i, j) < 0) throw Error(ErrorCode::NegativeEntry, "point " + vector_text(point(j)));
  std::set<std::vector<Integer>> seen;
  for (Index j = 0; j < points_.cols(); ++j) {
    std::vector<Integer> key(points_.col(j).begin(), points_.col(j).end());
    if (!seen.insert(key).second) throw Error(ErrorCode::DuplicatePoint, "point " + vector_text(point(j)));
  }
  if (!labels_.empty() && static_cast<Index>(labels_.size()) != points_.cols())
    throw Error(ErrorCode::DimensionMismatch, "label count differs from point count");
}

std::optional<Index> Configuration::find_label(const Label& label) const {
  for (std::size_t i = 0; i < labels_.size(); ++i)
    if (labels_[i] == label) return static_cast<Index>(i);
  return std::nullopt;
}

std::string Configuration::variable_name(Index i) const {
  std::string s = "x[";
  if (has_labels()) {
    const Label& l = labels_[static_cast<std::size_t>(i)];
    for (std::size_t k = 0; k < l.size(); ++k) s += (k ? "," : "") + std::to_string(l[k]);
  } else {
    s += std::to_string(i + 1);
  }
  return s + "]";
}

Configuration Configuration::restrict_to(const std::vector<Index>& subset) const {
  IntMatrix pts(dimension(), static_cast<Index>(subset.size()));
  std::vector<Label> labels;
  for (std::size_t j = 0; j < subset.size(); ++j) {
    pts.col(static_cast<Index>(j)) = points_.col(subset[j]);
    if (has_labels()) labels.push_back(labels_[static_cast<std::size_t>(subset[j])]);
  }
  return Configuration(std::move(pts), grading_, std::move(labels));
}

bool FaceCertificate::holds(const Configuration& a, const std::vector<Index>& subset, const RatVector& functional,
                            const Rational& level) {
  if (functional.size() != a.dimension()) return false;
  std::vector<bool> in(static_cast<std::size_t>(a.size()), false);
  for (Index i : subset) {
    if (i < 0 || i >= a.size()) return false;
    in[static_cast<std::size_t>(i)] = true;
  }
  for (Index i = 0; i < a.size(); ++i) {
    const Rational value = dot(functional, a.point(i));
    if (in[static_cast<std::size_t>(i)] ? value != level : value >= level) return false;
  }
  return true;
}

FaceCertificate::FaceCertificate(const Configuration& a, std::vector<Index> subset, RatVector functional,
                                 Rational level)
    : subset_(std::move(subset)), functional_(std::move(functional)), level_(std::move(level)) {
  std::sort(subset_.begin(), subset_.end());
  if (!holds(a, subset_, functional_, level_))
    throw Error(ErrorCode::Mismatch, "functional does not separate the subset");
}

std::optional<FaceCertificate> face_certificate(const Configuration& a, std::vector<Index> subset) {
  std::sort(subset.begin(), subset.end());
  subset.erase(std::unique(subset.begin(), subset.end()), subset.end());
  if (static_cast<Index>(subset.size()) == a.size()) return FaceCertificate(a, subset, a.grading(), Rational(1));

  // unknowns (v, c): v . a - c = 0 on the subset, v . a - c < 0 elsewhere
  const Index d = a.dimension();
  LinearSystem system(d + 1);
  std::vector<bool> in(static_cast<std::size_t>(a.size()), false);
  for (Index i : subset) in[static_cast<std::size_t>(i)] = true;
  for (Index i = 0; i < a.size(); ++i) {
    RatVector row(d + 1);
    row.head(d) = a.point(i).cast<Rational>();
    row(d) = -1;
    if (in[static_cast<std::size_t>(i)]) system.add_equal(std::move(row), Rational(0));
    else system.add_less(std::move(row), Rational(0));
  }
  auto witness = lp_feasible(system).witness;
  if (!witness) return std::nullopt;
  return FaceCertificate(a, subset, witness->head(d), (*witness)(d));
}

std::vector<Index> coordinate_section(const Configuration& a, const std::vector<Index>& coords) {
  std::vector<bool> allowed(static_cast<std::size_t>(a.dimension()), false);
  for (Index c : coords) allowed.at(static_cast<std::size_t>(c)) = true;
  std::vector<Index> out;
  for (Index j = 0; j < a.size(); ++j) {
    bool inside = true;
    for (Index i = 0; i < a.dimension() && inside; ++i)
      if (a.matrix()(i, j) != 0 && !allowed[static_cast<std::size_t>(i)]) inside = false;
    if (inside) out.push_back(j);
  }
  return out;
}

std::optional<FaceCertificate> coordinate_face(const Configuration& a, const std::vector<Index>& coords) {
  std::vector<Index> section = coordinate_section(a, coords);
  if (section.empty()) return std::nullopt;
  RatVector v = RatVector::Constant(a.dimension(), Rational(-1));
  for (Index c : coords) v(c) = 0;
  return FaceCertificate(a, std::move(section), std::move(v), Rational(0));
}

Configuration contingency(const std::vector<int>& shape) {
  if (shape.size() < 2) throw Error(ErrorCode::InvalidShape, "need at least two factors");
  for (int r : shape)
    if (r < 2) throw Error(ErrorCode::InvalidShape, "every factor needs at least two levels");
  const std::size_t n = shape.size();
  const auto cells = all_indices(shape);
  std::vector<Index> offset(n + 1, 0);
  std::vector<std::vector<int>> marginal(n);
  for (std::size_t k = 0; k < n; ++k) {
    marginal[k] = erase_at(shape, k);
    Index dk = 1;
    for (int r : marginal[k]) dk *= r;
    offset[k + 1] = offset[k] + dk;
  }
  IntMatrix points = IntMatrix::Zero(offset[n], static_cast<Index>(cells.size()));
  for (std::size_t j = 0; j < cells.size(); ++j)
    for (std::size_t k = 0; k < n; ++k)
      points(offset[k] + flat_index(marginal[k], erase_at(cells[j], k)), static_cast<Index>(j)) = 1;
  RatVector w = RatVector::Constant(offset[n], Rational(1, static_cast<long>(n)));
  return Configuration(std::move(points), std::move(w), cells);
}

Configuration lawrence(const Configuration& a) {
  const Index n = a.size();
  const Index d = a.dimension();
  IntMatrix m = IntMatrix::Zero(d + n, 2 * n);
  m.topLeftCorner(d, n) = a.matrix();
  m.bottomLeftCorner(n, n) = IntMatrix::Identity(n, n);
  m.bottomRightCorner(n, n) = IntMatrix::Identity(n, n);
  RatVector w = RatVector::Zero(d + n);
  w.tail(n).setOnes();
  std::vector<Label> labels;
  if (a.has_labels()) {
    for (int copy : {1, 2})
      for (const Label& l : a.labels()) {
        Label lifted = l;
        lifted.push_back(copy);
        labels.push_back(std::move(lifted));
      }
  }
  return Configuration(std::move(m), std::move(w), std::move(labels));
}

LawrenceIdentityWitness verify_lawrence_identity(const std::vector<int>& shape) {
  std::vector<int> extended = shape;
  extended.push_back(2);
  const Configuration base = contingency(shape);
  const Configuration lifted = lawrence(base);
  const Configuration target = contingency(extended);
  const std::size_t n = shape.size();
  const Index cells = base.size();
  const Index d = base.dimension();

  LawrenceIdentityWitness w;
  w.point_map.resize(static_cast<std::size_t>(2 * cells));
  for (Index j = 0; j < cells; ++j) {
    w.point_map[static_cast<std::size_t>(j)] = 2 * j;
    w.point_map[static_cast<std::size_t>(cells + j)] = 2 * j + 1;
  }

  // Block k of A_r has coordinates indexed by the cell with i_k removed; in
  // A_{r,2} the same block carries the extra last index, so coordinate p
  // becomes 2p (last index 1) and 2p + 1 (last index 2).
  std::vector<Index> offset(n + 1, 0), target_offset(n + 2, 0);
  for (std::size_t k = 0; k < n; ++k) {
    const Index dk = cells / shape[k];
    offset[k + 1] = offset[k] + dk;
    target_offset[k + 1] = target_offset[k] + 2 * dk;
  }
  target_offset[n + 1] = target_offset[n] + cells;
  w.row_map.resize(static_cast<std::size_t>(d + cells));
  for (std::size_t k = 0; k < n; ++k)
    for (Index p = 0; p < offset[k + 1] - offset[k]; ++p)
      w.row_map[static_cast<std::size_t>(offset[k] + p)] = target_offset[k] + 2 * p;
  for (Index j = 0; j < cells; ++j) w.row_map[static_cast<std::size_t>(d + j)] = target_offset[n] + j;

  // Rows with last index 2: sum of the identity rows of the cells in the
  // fiber minus the corresponding base row.
  const auto& labels = base.labels();
  for (std::size_t k = 0; k < n; ++k) {
    const std::vector<int> marginal = erase_at(shape, k);
    for (Index p = 0; p < offset[k + 1] - offset[k]; ++p) {
      std::vector<std::pair<Index, int>> terms;
      for (Index j = 0; j < cells; ++j)
        if (flat_index(marginal, erase_at(labels[static_cast<std::size_t>(j)], k)) == p) terms.emplace_back(d + j, 1);
      terms.emplace_back(offset[k] + p, -1);
      w.dependent_rows.emplace_back(target_offset[k] + 2 * p + 1, std::move(terms));
    }
  }

  auto mismatch = [&](Index row, Index point) {
    throw Error(ErrorCode::Mismatch, "coordinate " + std::to_string(row + 1) + " of point " +
                                         target.variable_name(w.point_map[static_cast<std::size_t>(point)]) +
                                         " disagrees with the Lawrence lifting");
  };
  std::vector<int> row_hits(static_cast<std::size_t>(target.dimension()), 0);
  for (std::size_t r = 0; r < w.row_map.size(); ++r) {
    ++row_hits[static_cast<std::size_t>(w.row_map[r])];
    for (Index p = 0; p < lifted.size(); ++p)
      if (target.matrix()(w.row_map[r], w.point_map[static_cast<std::size_t>(p)]) !=
          lifted.matrix()(static_cast<Index>(r), p))
        mismatch(w.row_map[r], p);
  }
  for (const auto& [row, terms] : w.dependent_rows) {
    ++row_hits[static_cast<std::size_t>(row)];
    for (Index p = 0; p < lifted.size(); ++p) {
      Integer value(0);
      for (const auto& [lr, coef] : terms) value += coef * lifted.matrix()(lr, p);
      if (target.matrix()(row, w.point_map[static_cast<std::size_t>(p)]) != value) mismatch(row, p);
    }
  }
  for (std::size_t r = 0; r < row_hits.size(); ++r)
    if (row_hits[r] != 1)
      throw Error(ErrorCode::Mismatch, "coordinate " + std::to_string(r + 1) + " is not accounted for exactly once");
  for (Index p = 0; p < lifted.size(); ++p) {
    Label expected = labels[static_cast<std::size_t>(p % cells)];
    expected.push_back(p < cells ? 1 : 2);
    if (target.labels()[static_cast<std::size_t>(w.point_map[static_cast<std::size_t>(p)])] != expected)
      throw Error(ErrorCode::Mismatch, "point bijection does not respect labels");
  }
  return w;
}

LatticeBasis lifted_kernel(const LatticeBasis& base_kernel, const std::vector<std::pair<Index, Index>>& pairs,
                           Index points) {
  IntMatrix rows = IntMatrix::Zero(base_kernel.rank(), points);
  for (Index i = 0; i < base_kernel.rank(); ++i)
    for (std::size_t k = 0; k < pairs.size(); ++k) {
      rows(i, pairs[k].first) = base_kernel.vectors(i, static_cast<Index>(k));
      rows(i, pairs[k].second) = -base_kernel.vectors(i, static_cast<Index>(k));
    }
  return lattice_span(rows);
}

std::optional<LawrenceMatch> recognize_lawrence(const Configuration& a) {
  const Index n = a.size();
  if (n % 2 != 0) return std::nullopt;
  const IntMatrix& m = a.matrix();
  const LatticeBasis kernel = kernel_lattice(m);

  auto antisymmetric = [&](Index p, Index q) {
    for (Index i = 0; i < kernel.rank(); ++i)
      if (kernel.vectors(i, p) + kernel.vectors(i, q) != 0) return false;
    return true;
  };

  // Candidate pairs from coordinates whose support is two points carrying 1;
  // later coordinates first, since liftings put the identity block last.
  std::vector<std::vector<std::pair<Index, Index>>> partners(static_cast<std::size_t>(n));
  std::set<std::pair<Index, Index>> seen;
  for (Index r = m.rows() - 1; r >= 0; --r) {
    std::vector<Index> support;
    bool ones = true;
    for (Index j = 0; j < n; ++j)
      if (m(r, j) != 0) {
        support.push_back(j);
        ones = ones && m(r, j) == 1;
      }
    if (!ones || support.size() != 2) continue;
    const auto edge = std::make_pair(support[0], support[1]);
    if (!seen.insert(edge).second || !antisymmetric(edge.first, edge.second)) continue;
    partners[static_cast<std::size_t>(edge.first)].emplace_back(edge.second, r);
    partners[static_cast<std::size_t>(edge.second)].emplace_back(edge.first, r);
  }

  std::vector<Index> mate(static_cast<std::size_t>(n), -1);
  std::vector<Index> pairing_row(static_cast<std::size_t>(n), -1);
  int budget = 10000;
  std::function<bool()> match = [&]() -> bool {
    if (--budget < 0) return false;
    Index p = 0;
    while (p < n && mate[static_cast<std::size_t>(p)] >= 0) ++p;
    if (p == n) return true;
    for (const auto& [q, row] : partners[static_cast<std::size_t>(p)]) {
      if (mate[static_cast<std::size_t>(q)] >= 0) continue;
      mate[static_cast<std::size_t>(p)] = q;
      mate[static_cast<std::size_t>(q)] = p;
      pairing_row[static_cast<std::size_t>(p)] = row;
      if (match()) return true;
      mate[static_cast<std::size_t>(p)] = mate[static_cast<std::size_t>(q)] = -1;
    }
    return false;
  };
  if (!match()) return std::nullopt;

  LawrenceMatch result;
  std::set<Index> used_rows;
  for (Index p = 0; p < n; ++p)
    if (mate[static_cast<std::size_t>(p)] > p) {
      result.pairs.emplace_back(p, mate[static_cast<std::size_t>(p)]);
      used_rows.insert(pairing_row[static_cast<std::size_t>(p)]);
    }
  const Index half = static_cast<Index>(result.pairs.size());

  // Base read off the remaining coordinates on the first copies.
  std::vector<IntVector> base_rows;
  for (Index r = 0; r < m.rows(); ++r) {
    if (used_rows.count(r)) continue;
    IntVector row(half);
    bool nonzero = false;
    for (Index k = 0; k < half; ++k) {
      row(k) = m(r, result.pairs[static_cast<std::size_t>(k)].first);
      nonzero = nonzero || row(k) != 0;
    }
    if (nonzero) base_rows.push_back(std::move(row));
  }
  IntMatrix base(static_cast<Index>(base_rows.size()), half);
  for (std::size_t r = 0; r < base_rows.size(); ++r) base.row(static_cast<Index>(r)) = base_rows[r].transpose();

  if (!same_lattice(kernel, lifted_kernel(kernel_lattice(base), result.pairs, n))) {
    // Fall back to a Gale dual of the projected kernel: its kernel is exactly
    // the projection, which determines the lifting.
    IntMatrix projected(kernel.rank(), half);
    for (Index i = 0; i < kernel.rank(); ++i)
      for (Index k = 0; k < half; ++k) projected(i, k) = kernel.vectors(i, result.pairs[static_cast<std::size_t>(k)].first);
    base = kernel_lattice(projected).vectors;
    if (base.rows() == 0) base = IntMatrix::Zero(1, half);
    if (!same_lattice(kernel, lifted_kernel(kernel_lattice(base), result.pairs, n))) return std::nullopt;
  }
  result.base = std::move(base);
  return result;
}

UnimodularityResult is_unimodular(const IntMatrix& m, MinorOptions options) {
  UnimodularityResult r;
  r.scan = maximal_minor_values(m, options);
  r.unimodular = !r.scan.witness.has_value();
  return r;
}

UnimodularityResult is_unimodular(const Configuration& a, MinorOptions options) {
  return is_unimodular(a.matrix(), options);
}

}  // namespace toric
