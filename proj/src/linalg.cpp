#include "toric/linalg.hpp"

#include <algorithm>
#include <numeric>

namespace toric {
namespace {

Integer floor_div(const Integer& a, const Integer& b) {
  Integer q = a / b;
  if (a % b != 0 && ((a < 0) != (b < 0))) q -= 1;
  return q;
}

void add_row_multiple(IntMatrix& m, Index target, Index source, const Integer& factor) {
  if (factor == 0) return;
  for (Index j = 0; j < m.cols(); ++j)
    if (m(source, j) != 0) m(target, j) -= factor * m(source, j);
}

struct Overflow {};

// Bareiss on machine integers; throws Overflow when an intermediate leaves
// the 64-bit range so the caller can redo the computation exactly.
std::int64_t bareiss_checked(std::vector<std::int64_t>& a, Index n) {
  if (n == 0) return 1;
  std::int64_t sign = 1;
  std::int64_t previous = 1;
  auto at = [&](Index i, Index j) -> std::int64_t& { return a[static_cast<std::size_t>(i * n + j)]; };
  for (Index k = 0; k < n; ++k) {
    Index pivot = k;
    while (pivot < n && at(pivot, k) == 0) ++pivot;
    if (pivot == n) return 0;
    if (pivot != k) {
      for (Index j = 0; j < n; ++j) std::swap(at(k, j), at(pivot, j));
      sign = -sign;
    }
    const __int128 pkk = at(k, k);
    for (Index i = k + 1; i < n; ++i) {
      const __int128 pik = at(i, k);
      for (Index j = k + 1; j < n; ++j) {
        const __int128 v = (static_cast<__int128>(at(i, j)) * pkk - pik * at(k, j)) / previous;
        if (v > INT64_MAX || v < INT64_MIN) throw Overflow{};
        at(i, j) = static_cast<std::int64_t>(v);
      }
      at(i, k) = 0;
    }
    previous = at(k, k);
  }
  return sign * at(n - 1, n - 1);
}

}  // namespace

HermiteForm hermite_normal_form(const IntMatrix& m) {
  HermiteForm h;
  h.form = m;
  h.transform = IntMatrix::Identity(m.rows(), m.rows());
  IntMatrix& a = h.form;
  IntMatrix& u = h.transform;
  Index row = 0;
  for (Index col = 0; col < a.cols() && row < a.rows(); ++col) {
    // Euclid on the column entries at or below `row`.
    while (true) {
      Index best = -1;
      for (Index i = row; i < a.rows(); ++i)
        if (a(i, col) != 0 && (best < 0 || abs(a(i, col)) < abs(a(best, col)))) best = i;
      if (best < 0) break;
      if (best != row) {
        a.row(row).swap(a.row(best));
        u.row(row).swap(u.row(best));
      }
      bool clean = true;
      for (Index i = row + 1; i < a.rows(); ++i) {
        if (a(i, col) == 0) continue;
        const Integer q = a(i, col) / a(row, col);
        add_row_multiple(a, i, row, q);
        add_row_multiple(u, i, row, q);
        if (a(i, col) != 0) clean = false;
      }
      if (clean) break;
    }
    if (a(row, col) == 0) continue;
    if (a(row, col) < 0) {
      a.row(row) = -a.row(row);
      u.row(row) = -u.row(row);
    }
    for (Index i = 0; i < row; ++i) {
      const Integer q = floor_div(a(i, col), a(row, col));
      add_row_multiple(a, i, row, q);
      add_row_multiple(u, i, row, q);
    }
    h.pivot_columns.push_back(col);
    ++row;
  }
  return h;
}

LatticeBasis lattice_span(const IntMatrix& generators) {
  const HermiteForm h = hermite_normal_form(generators);
  return LatticeBasis{h.form.topRows(h.rank())};
}

LatticeBasis kernel_lattice(const IntMatrix& m) {
  const HermiteForm h = hermite_normal_form(m.transpose());
  const Index r = h.rank();
  return lattice_span(h.transform.bottomRows(m.cols() - r));
}

bool same_lattice(const LatticeBasis& a, const LatticeBasis& b) {
  if (a.ambient() != b.ambient() || a.rank() != b.rank()) return false;
  return lattice_span(a.vectors).vectors == lattice_span(b.vectors).vectors;
}

std::vector<Index> row_basis(const IntMatrix& m) {
  std::vector<Index> chosen;
  std::vector<RatVector> echelon;
  std::vector<Index> pivots;
  for (Index i = 0; i < m.rows(); ++i) {
    RatVector v = m.row(i).transpose().cast<Rational>();
    for (std::size_t k = 0; k < echelon.size(); ++k) {
      const Rational f = v(pivots[k]);
      if (f != 0) v -= f * echelon[k];
    }
    Index p = 0;
    while (p < v.size() && v(p) == 0) ++p;
    if (p == v.size()) continue;
    v /= v(p);
    chosen.push_back(i);
    echelon.push_back(v);
    pivots.push_back(p);
  }
  return chosen;
}

Index rank(const IntMatrix& m) { return static_cast<Index>(row_basis(m).size()); }

Integer determinant(const IntMatrix& m) { return bareiss_determinant<Integer>(m); }

IntegerSolver::IntegerSolver(const IntMatrix& m)
    : rows_(m.rows()), cols_(m.cols()), hermite_(hermite_normal_form(m.transpose())) {}

std::optional<IntVector> IntegerSolver::solve(const IntVector& b) const {
  if (b.size() != rows_) throw Error(ErrorCode::DimensionMismatch, "right-hand side length");
  const IntMatrix& h = hermite_.form;  // cols_ x rows_
  const Index r = hermite_.rank();
  IntVector y = IntVector::Zero(cols_);
  for (Index i = 0; i < r; ++i) {
    const Index p = hermite_.pivot_columns[i];
    Integer rhs = b(p);
    for (Index k = 0; k < i; ++k) rhs -= y(k) * h(k, p);
    if (rhs % h(i, p) != 0) return std::nullopt;
    y(i) = rhs / h(i, p);
  }
  for (Index j = 0; j < rows_; ++j) {
    Integer s(0);
    for (Index k = 0; k < r; ++k) s += y(k) * h(k, j);
    if (s != b(j)) return std::nullopt;
  }
  return IntVector(hermite_.transform.transpose() * y);
}

std::optional<IntVector> solve_integer(const IntMatrix& m, const IntVector& b) {
  return IntegerSolver(m).solve(b);
}

std::optional<AffineSolution> solve_rational(const RatMatrix& m, const RatVector& b) {
  if (b.size() != m.rows()) throw Error(ErrorCode::DimensionMismatch, "right-hand side length");
  const Index rows = m.rows();
  const Index cols = m.cols();
  RatMatrix a(rows, cols + 1);
  a << m, b;
  std::vector<Index> pivots;
  Index row = 0;
  for (Index col = 0; col < cols && row < rows; ++col) {
    Index p = row;
    while (p < rows && a(p, col) == 0) ++p;
    if (p == rows) continue;
    a.row(row).swap(a.row(p));
    const Rational inv = Rational(1) / a(row, col);
    a.row(row) *= inv;
    for (Index i = 0; i < rows; ++i) {
      if (i == row || a(i, col) == 0) continue;
      const Rational f = a(i, col);
      a.row(i) -= f * a.row(row);
    }
    pivots.push_back(col);
    ++row;
  }
  for (Index i = row; i < rows; ++i)
    if (a(i, cols) != 0) return std::nullopt;

  AffineSolution s;
  s.particular = RatVector::Zero(cols);
  for (std::size_t i = 0; i < pivots.size(); ++i) s.particular(pivots[i]) = a(static_cast<Index>(i), cols);
  std::vector<Index> free;
  for (Index c = 0, k = 0; c < cols; ++c) {
    if (k < static_cast<Index>(pivots.size()) && pivots[k] == c) {
      ++k;
      continue;
    }
    free.push_back(c);
  }
  s.nullspace = RatMatrix::Zero(cols, static_cast<Index>(free.size()));
  for (std::size_t f = 0; f < free.size(); ++f) {
    const Index fc = free[f];
    s.nullspace(fc, static_cast<Index>(f)) = 1;
    for (std::size_t i = 0; i < pivots.size(); ++i)
      s.nullspace(pivots[i], static_cast<Index>(f)) = -a(static_cast<Index>(i), fc);
  }
  return s;
}

std::vector<Integer> MinorScan::distinct_nonzero() const {
  std::vector<Integer> out;
  for (const auto& [value, count] : counts)
    if (value != 0) out.push_back(value);
  return out;
}

Integer binomial_coefficient(Index n, Index k) {
  if (k < 0 || k > n) return Integer(0);
  k = std::min(k, n - k);
  Integer r(1);
  for (Index i = 1; i <= k; ++i) r = r * Integer(n - k + i) / Integer(i);
  return r;
}

Integer minor_abs(const IntMatrix& m, const std::vector<Index>& rows,
                  const std::vector<Index>& columns) {
  if (rows.size() != columns.size()) throw Error(ErrorCode::DimensionMismatch, "minor must be square");
  const Index k = static_cast<Index>(rows.size());
  IntMatrix sub(k, k);
  for (Index i = 0; i < k; ++i)
    for (Index j = 0; j < k; ++j) sub(i, j) = m(rows[i], columns[j]);
  return abs(determinant(sub));
}

MinorScan maximal_minor_values(const IntMatrix& m, MinorOptions options) {
  MinorScan scan;
  scan.rows = row_basis(m);
  const Index r = static_cast<Index>(scan.rows.size());
  const Index n = m.cols();
  scan.rank = r;
  const Integer total = binomial_coefficient(n, r);
  if (total > Integer(options.cap))
    throw Error(ErrorCode::CapExceeded,
                "C(" + std::to_string(n) + "," + std::to_string(r) + ") = " + total.str() +
                    " column subsets exceed minor cap " + std::to_string(options.cap));

  bool small = true;
  std::vector<std::int64_t> restricted(static_cast<std::size_t>(r * n));
  for (Index i = 0; i < r; ++i)
    for (Index j = 0; j < n; ++j) {
      const Integer& x = m(scan.rows[i], j);
      if (abs(x) > Integer(INT32_MAX)) small = false;
      else restricted[static_cast<std::size_t>(i * n + j)] = x.convert_to<std::int64_t>();
    }

  std::vector<Index> cols(static_cast<std::size_t>(r));
  std::iota(cols.begin(), cols.end(), Index{0});
  std::vector<std::int64_t> buffer(static_cast<std::size_t>(r * r));
  std::optional<Integer> first_value;
  std::vector<Index> first_cols;
  while (true) {
    Integer value;
    bool exact = false;
    if (small) {
      for (Index i = 0; i < r; ++i)
        for (Index j = 0; j < r; ++j)
          buffer[static_cast<std::size_t>(i * r + j)] = restricted[static_cast<std::size_t>(i * n + cols[j])];
      try {
        value = Integer(bareiss_checked(buffer, r));
        exact = true;
      } catch (const Overflow&) {
      }
    }
    if (!exact) value = minor_abs(m, scan.rows, cols);
    value = abs(value);
    ++scan.examined;
    ++scan.counts[value];
    if (value != 0) {
      if (!first_value) {
        first_value = value;
        first_cols = cols;
      } else if (value != *first_value && !scan.witness) {
        scan.witness = MinorWitness{scan.rows, first_cols, *first_value, cols, value};
        if (options.stop_at_second_value) return scan;
      }
    }
    // next combination in lexicographic order
    Index i = r - 1;
    while (i >= 0 && cols[i] == n - r + i) --i;
    if (i < 0) break;
    ++cols[i];
    for (Index j = i + 1; j < r; ++j) cols[j] = cols[j - 1] + 1;
  }
  scan.complete = true;
  return scan;
}

}  // namespace toric
