#include "oracles.hpp"

#include "toric/configuration.hpp"
#include "toric/linalg.hpp"

#include <doctest.h>

using namespace toric;

namespace {

bool is_echelon(const HermiteForm& h) {
  const IntMatrix& a = h.form;
  for (Index i = 0; i < h.rank(); ++i) {
    const Index p = h.pivot_columns[static_cast<std::size_t>(i)];
    if (a(i, p) <= 0) return false;
    for (Index j = 0; j < p; ++j)
      if (a(i, j) != 0) return false;
    for (Index k = i + 1; k < a.rows(); ++k)
      if (a(k, p) != 0) return false;
    for (Index k = 0; k < i; ++k)
      if (a(k, p) < 0 || a(k, p) >= a(i, p)) return false;
  }
  for (Index i = h.rank(); i < a.rows(); ++i)
    if (!a.row(i).isZero()) return false;
  return true;
}

void check_hermite(const IntMatrix& m) {
  const HermiteForm h = hermite_normal_form(m);
  CHECK(IntMatrix(h.transform * m) == h.form);
  CHECK(abs(oracle::laplace_det(h.transform)) == 1);
  CHECK(is_echelon(h));
}

}  // namespace

TEST_CASE("hermite normal form of small matrices") {
  SUBCASE("identity") {
    const IntMatrix id = IntMatrix::Identity(2, 2);
    const HermiteForm h = hermite_normal_form(id);
    CHECK(h.form == id);
    CHECK(h.transform == id);
  }
  SUBCASE("2x2 example") {
    const IntMatrix m = int_matrix({{2, 4}, {1, 3}});
    const HermiteForm h = hermite_normal_form(m);
    CHECK(h.form == int_matrix({{1, 1}, {0, 2}}));
    CHECK(h.rank() == 2);
    check_hermite(m);
  }
  SUBCASE("zero matrix") {
    const IntMatrix z = IntMatrix::Zero(2, 3);
    const HermiteForm h = hermite_normal_form(z);
    CHECK(h.form == z);
    CHECK(h.transform == IntMatrix::Identity(2, 2));
    CHECK(h.rank() == 0);
  }
}

TEST_CASE("hermite normal form is unimodular and echelon on random input") {
  std::mt19937 rng(7);
  for (int trial = 0; trial < 60; ++trial) {
    std::uniform_int_distribution<Index> size(1, 5);
    check_hermite(oracle::random_matrix(rng, size(rng), size(rng), -6, 6));
  }
}

TEST_CASE("kernel lattice") {
  SUBCASE("single row of ones") {
    const LatticeBasis k = kernel_lattice(int_matrix({{1, 1, 1}}));
    CHECK(k.rank() == 2);
    const LatticeBasis expected = lattice_span(int_matrix({{1, -1, 0}, {1, 0, -1}}));
    CHECK(same_lattice(k, expected));
  }
  SUBCASE("remark curve") {
    const IntMatrix m = int_matrix({{0, 1, 3, 4}, {1, 1, 1, 1}});
    const LatticeBasis k = kernel_lattice(m);
    CHECK(k.rank() == 2);
    for (Index i = 0; i < k.rank(); ++i) CHECK((m * k.vector(i)).isZero());
    CHECK(oracle::maximal_minor_gcd(k.vectors) == 1);
  }
  SUBCASE("full column rank") {
    CHECK(kernel_lattice(IntMatrix::Identity(2, 2)).rank() == 0);
  }
}

TEST_CASE("kernel lattice is the saturated kernel on random input") {
  std::mt19937 rng(11);
  for (int trial = 0; trial < 40; ++trial) {
    std::uniform_int_distribution<Index> rows(1, 3), cols(2, 6);
    const IntMatrix m = oracle::random_matrix(rng, rows(rng), cols(rng), -3, 3);
    const LatticeBasis k = kernel_lattice(m);
    CHECK(k.rank() == m.cols() - rank(m));
    for (Index i = 0; i < k.rank(); ++i) CHECK((m * k.vector(i)).isZero());
    if (k.rank() == 0) continue;
    CHECK(oracle::maximal_minor_gcd(k.vectors) == 1);
    // integer combinations of the basis lie in its Z-span
    std::uniform_int_distribution<int> coef(-4, 4);
    IntVector v = IntVector::Zero(m.cols());
    for (Index i = 0; i < k.rank(); ++i) v += Integer(coef(rng)) * k.vector(i);
    CHECK((m * v).isZero());
    CHECK(solve_integer(k.vectors.transpose(), v).has_value());
  }
}

TEST_CASE("kernel lattices from distinct generating sets compare equal") {
  const IntMatrix a = int_matrix({{1, -1, 0}, {0, 1, -1}});
  const IntMatrix b = int_matrix({{1, 0, -1}, {2, -1, -1}});
  CHECK(same_lattice(lattice_span(a), lattice_span(b)));
  const IntMatrix c = int_matrix({{2, -2, 0}, {0, 1, -1}});
  CHECK_FALSE(same_lattice(lattice_span(a), lattice_span(c)));
}

TEST_CASE("determinant agrees with cofactor expansion") {
  std::mt19937 rng(3);
  for (int trial = 0; trial < 50; ++trial) {
    std::uniform_int_distribution<Index> size(1, 5);
    const Index n = size(rng);
    const IntMatrix m = oracle::random_matrix(rng, n, n, -5, 5);
    CHECK(determinant(m) == oracle::laplace_det(m));
  }
  CHECK(determinant(IntMatrix(0, 0)) == 1);
}

TEST_CASE("solve_integer") {
  CHECK(*solve_integer(int_matrix({{2}}), int_vector({4})) == int_vector({2}));
  CHECK_FALSE(solve_integer(int_matrix({{2}}), int_vector({3})).has_value());
  const IntMatrix curve = int_matrix({{0, 1, 3, 4}, {1, 1, 1, 1}});
  const auto x = solve_integer(curve, int_vector({2, 1}));
  REQUIRE(x.has_value());
  CHECK(IntVector(curve * *x) == int_vector({2, 1}));
}

TEST_CASE("solve_integer reproduces right-hand sides built from integer points") {
  std::mt19937 rng(5);
  for (int trial = 0; trial < 60; ++trial) {
    std::uniform_int_distribution<Index> rows(1, 4), cols(1, 5);
    const IntMatrix m = oracle::random_matrix(rng, rows(rng), cols(rng), -4, 4);
    const IntVector x = oracle::random_matrix(rng, m.cols(), 1, -5, 5).col(0);
    const IntVector b = m * x;
    const auto y = solve_integer(m, b);
    REQUIRE(y.has_value());
    CHECK(IntVector(m * *y) == b);
  }
}

TEST_CASE("maximal minors") {
  SUBCASE("identity") {
    const MinorScan s = maximal_minor_values(IntMatrix::Identity(2, 2));
    CHECK(s.complete);
    CHECK(s.distinct_nonzero() == std::vector<Integer>{Integer(1)});
  }
  SUBCASE("2x2 contingency table") {
    const MinorScan s = maximal_minor_values(contingency({2, 2}).matrix(), {5'000'000, false});
    CHECK(s.complete);
    CHECK(s.distinct_nonzero() == std::vector<Integer>{Integer(1)});
    CHECK(s.examined == 4);  // rank 3, four columns
  }
  SUBCASE("3x3x3 table has two distinct values") {
    const IntMatrix m = contingency({3, 3, 3}).matrix();
    const MinorScan s = maximal_minor_values(m);
    REQUIRE(s.witness.has_value());
    CHECK(s.rank == 19);
    const MinorWitness& w = *s.witness;
    CHECK(w.first_value != w.second_value);
    CHECK(w.first_value != 0);
    CHECK(w.second_value != 0);
    CHECK(minor_abs(m, w.rows, w.first_columns) == w.first_value);
    CHECK(minor_abs(m, w.rows, w.second_columns) == w.second_value);
  }
  SUBCASE("cap") {
    CHECK_THROWS_AS(maximal_minor_values(contingency({3, 3, 3}).matrix(), {1000, true}), Error);
  }
  SUBCASE("agrees with exhaustive cofactor enumeration") {
    std::mt19937 rng(17);
    for (int trial = 0; trial < 20; ++trial) {
      const IntMatrix m = oracle::random_matrix(rng, 2, 5, 0, 3);
      const MinorScan s = maximal_minor_values(m, {1000, false});
      if (s.rank != 2) continue;
      std::map<Integer, std::uint64_t> expected;
      oracle::for_each_subset(5, 2, [&](const std::vector<Index>& cols) {
        IntMatrix sub(2, 2);
        sub << m.col(cols[0]), m.col(cols[1]);
        ++expected[abs(oracle::laplace_det(sub))];
      });
      CHECK(s.counts == expected);
    }
  }
}
