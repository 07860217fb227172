#include "oracles.hpp"

#include "toric/configuration.hpp"
#include "toric/error.hpp"

#include <doctest.h>

using namespace toric;

namespace {

Configuration remark_curve() { return Configuration::from_points({{0, 1}, {1, 1}, {3, 1}, {4, 1}}); }

void check_grading(const Configuration& a) {
  for (Index i = 0; i < a.size(); ++i) CHECK(a.degree(a.point(i)) == 1);
}

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an error");
  return ErrorCode::Parse;
}

IntMatrix nonzero_rows(const IntMatrix& m) {
  std::vector<Index> keep;
  for (Index i = 0; i < m.rows(); ++i)
    if (!m.row(i).isZero()) keep.push_back(i);
  IntMatrix out(static_cast<Index>(keep.size()), m.cols());
  for (std::size_t i = 0; i < keep.size(); ++i) out.row(static_cast<Index>(i)) = m.row(keep[i]);
  return out;
}

}  // namespace

TEST_CASE("new configuration") {
  const Configuration curve = remark_curve();
  CHECK(curve.grading() == (RatVector(2) << Rational(0), Rational(1)).finished());
  check_grading(curve);

  const Configuration single = Configuration::from_points({{1}});
  CHECK(single.grading()(0) == 1);

  CHECK(code_of([] { Configuration::from_points({{1}, {2}}); }) == ErrorCode::NotAConfiguration);
  CHECK(code_of([] { Configuration::from_points({{1, -1}, {0, 1}}); }) == ErrorCode::NegativeEntry);
  CHECK(code_of([] { Configuration::from_points({{1, 0}, {1, 0}}); }) == ErrorCode::DuplicatePoint);
  CHECK(code_of([] { Configuration::from_points({}); }) == ErrorCode::NotAConfiguration);
}

TEST_CASE("contingency builder") {
  SUBCASE("2x2") {
    const Configuration a = contingency({2, 2});
    CHECK(a.size() == 4);
    CHECK(a.dimension() == 4);
    // point (i,j) = e_j + e_i with blocks (j | i)
    CHECK(a.point(1) == int_vector({0, 1, 1, 0}));
    CHECK((a.matrix() * int_vector({1, -1, -1, 1})).isZero());
    CHECK(kernel_lattice(a.matrix()).rank() == 1);
    CHECK(a.variable_name(2) == "x[2,1]");
    check_grading(a);
  }
  SUBCASE("2x2x2") {
    const Configuration a = contingency({2, 2, 2});
    CHECK(a.size() == 8);
    CHECK(a.dimension() == 12);
    for (Index j = 0; j < a.size(); ++j) {
      CHECK(a.point(j).sum() == 3);
      for (Index i = 0; i < a.dimension(); ++i) CHECK((a.matrix()(i, j) == 0 || a.matrix()(i, j) == 1));
    }
    check_grading(a);
  }
  SUBCASE("row sums equal the deleted factor's level count") {
    for (const std::vector<int>& shape : {std::vector<int>{3, 2}, {2, 3, 4}, {3, 3, 3}}) {
      const Configuration a = contingency(shape);
      Index offset = 0;
      Index cells = 1;
      for (int r : shape) cells *= r;
      for (int r : shape) {
        for (Index i = offset; i < offset + cells / r; ++i) CHECK(a.matrix().row(i).sum() == r);
        offset += cells / r;
      }
      CHECK(offset == a.dimension());
    }
  }
  SUBCASE("invalid shapes") {
    CHECK(code_of([] { contingency({2}); }) == ErrorCode::InvalidShape);
    CHECK(code_of([] { contingency({2, 1}); }) == ErrorCode::InvalidShape);
  }
}

TEST_CASE("lawrence lifting") {
  SUBCASE("one point") {
    const Configuration l = lawrence(Configuration::from_points({{1}}));
    CHECK(l.matrix() == int_matrix({{1, 0}, {1, 1}}));
    check_grading(l);
  }
  SUBCASE("2x2 table") {
    const Configuration l = lawrence(contingency({2, 2}));
    CHECK(l.size() == 8);
    CHECK(l.dimension() == 8);
    check_grading(l);
  }
  SUBCASE("kernel is {(u, -u)}") {
    std::mt19937 rng(41);
    for (int trial = 0; trial < 15; ++trial) {
      const Configuration a = oracle::random_configuration(rng, 5, 3, 3);
      const Configuration l = lawrence(a);
      const LatticeBasis base = kernel_lattice(a.matrix());
      IntMatrix doubled(base.rank(), 2 * a.size());
      doubled << base.vectors, -base.vectors;
      CHECK(same_lattice(kernel_lattice(l.matrix()), lattice_span(doubled)));
      check_grading(l);
    }
  }
}

TEST_CASE("lawrence identity for tables with a binary last factor") {
  for (const std::vector<int>& shape : {std::vector<int>{2, 2}, {3, 2}, {3, 3}, {2, 2, 2}}) {
    const LawrenceIdentityWitness w = verify_lawrence_identity(shape);
    Index cells = 1;
    for (int r : shape) cells *= r;
    CHECK(static_cast<Index>(w.point_map.size()) == 2 * cells);
    std::vector<Index> sorted = w.point_map;
    std::sort(sorted.begin(), sorted.end());
    for (Index i = 0; i < 2 * cells; ++i) CHECK(sorted[static_cast<std::size_t>(i)] == i);
  }
}

TEST_CASE("face certificates") {
  const Configuration curve = remark_curve();
  SUBCASE("first endpoint is a face") {
    const auto cert = face_certificate(curve, {0});
    REQUIRE(cert.has_value());
    for (Index i = 0; i < curve.size(); ++i) {
      const Rational v = dot(cert->functional(), curve.point(i));
      if (i < 1) CHECK(v == cert->level());
      else CHECK(v < cert->level());
    }
  }
  SUBCASE("the two endpoints are not a face") {
    CHECK_FALSE(face_certificate(curve, {0, 3}).has_value());
  }
  SUBCASE("endpoints alone are faces, interior points are not") {
    CHECK(face_certificate(curve, {3}).has_value());
    CHECK_FALSE(face_certificate(curve, {1}).has_value());
    CHECK_FALSE(face_certificate(curve, {0, 1}).has_value());
    CHECK_FALSE(face_certificate(curve, {0, 1, 2}).has_value());
  }
  SUBCASE("the whole configuration") {
    const auto cert = face_certificate(curve, {0, 1, 2, 3});
    REQUIRE(cert.has_value());
    CHECK(cert->functional() == curve.grading());
    CHECK(cert->level() == 1);
  }
  SUBCASE("bad functionals are rejected") {
    RatVector v(2);
    v << Rational(-1), Rational(1);
    CHECK_NOTHROW(FaceCertificate(curve, {0}, v, Rational(1)));
    CHECK_THROWS_AS(FaceCertificate(curve, {0, 1}, v, Rational(1)), Error);
  }
}

TEST_CASE("coordinate sections") {
  const Configuration curve = remark_curve();
  CHECK(coordinate_section(curve, {1}) == std::vector<Index>{0});
  CHECK(coordinate_section(curve, {0, 1}) == std::vector<Index>{0, 1, 2, 3});

  // A_{3,3} restricted to rows i in {1,2}: block 1 is indexed by j, block 2 by i
  const Configuration a33 = contingency({3, 3});
  const std::vector<Index> section = coordinate_section(a33, {0, 1, 2, 3, 4});
  CHECK(section == std::vector<Index>{0, 1, 2, 3, 4, 5});
  const auto face = coordinate_face(a33, {0, 1, 2, 3, 4});
  REQUIRE(face.has_value());
  CHECK(nonzero_rows(a33.restrict_to(section).matrix()) == contingency({2, 3}).matrix());
  CHECK_FALSE(coordinate_face(a33, {}).has_value());
}

TEST_CASE("unimodularity") {
  CHECK(is_unimodular(contingency({2, 2})).unimodular);
  const UnimodularityResult curve = is_unimodular(remark_curve());
  CHECK_FALSE(curve.unimodular);
  REQUIRE(curve.scan.witness.has_value());
  std::set<Integer> values{curve.scan.witness->first_value, curve.scan.witness->second_value};
  CHECK(values == std::set<Integer>{Integer(1), Integer(3)});
}

TEST_CASE("lawrence recognition") {
  const Configuration cubic = Configuration::from_points({{3, 0}, {2, 1}, {1, 2}, {0, 3}});
  SUBCASE("explicit lifting") {
    const auto match = recognize_lawrence(lawrence(cubic));
    REQUIRE(match.has_value());
    CHECK(match->pairs.size() == 4);
    for (Index k = 0; k < 4; ++k) CHECK(match->pairs[static_cast<std::size_t>(k)] == std::make_pair(k, k + 4));
    CHECK(match->base == cubic.matrix());
  }
  SUBCASE("binary last factor") {
    const auto match = recognize_lawrence(contingency({3, 3, 2}));
    REQUIRE(match.has_value());
    CHECK(match->base == contingency({3, 3}).matrix());
  }
  SUBCASE("not of Lawrence type") {
    CHECK_FALSE(recognize_lawrence(remark_curve()).has_value());
    CHECK_FALSE(recognize_lawrence(contingency({3, 3})).has_value());
  }
}
