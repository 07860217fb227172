#include "oracles.hpp"

#include "toric/cases.hpp"
#include "toric/error.hpp"
#include "toric/groebner.hpp"
#include "toric/toric.hpp"

#include <doctest.h>

#include <map>
#include <numeric>
#include <queue>

using namespace toric;

namespace {

Configuration remark_curve() { return Configuration::from_points({{0, 1}, {1, 1}, {3, 1}, {4, 1}}); }

const char* kRemarkBinomials[] = {"x[1]*x[4] - x[2]*x[3]", "x[2]^3 - x[1]^2*x[3]", "x[3]^3 - x[2]*x[4]^2",
                                  "x[1]*x[3]^2 - x[2]^2*x[4]"};

std::vector<Binomial> remark_binomials(const Configuration& a) {
  std::vector<Binomial> out;
  for (const char* s : kRemarkBinomials) out.push_back(parse_binomial(s, a));
  return out;
}

Monomial mono(std::initializer_list<Count> xs) {
  Monomial m(static_cast<Index>(xs.size()));
  Index i = 0;
  for (Count x : xs) m(i++) = x;
  return m;
}

std::vector<Count> as_vector(const Monomial& m) { return {m.data(), m.data() + m.size()}; }

// All targets A m with |m| = degree, by enumerating every monomial.
std::set<std::vector<Count>> targets_of_degree(const Configuration& a, Count degree) {
  std::set<std::vector<Count>> out;
  const Index n = a.size();
  std::vector<Count> m(static_cast<std::size_t>(n), 0);
  std::function<void(Index, Count)> rec = [&](Index j, Count left) {
    if (j == n - 1) {
      m[static_cast<std::size_t>(j)] = left;
      CountVector b = CountVector::Zero(a.dimension());
      for (Index k = 0; k < n; ++k) b += m[static_cast<std::size_t>(k)] * oracle::column(a.matrix(), k);
      out.insert(as_vector(b));
      return;
    }
    for (Count v = 0; v <= left; ++v) {
      m[static_cast<std::size_t>(j)] = v;
      rec(j + 1, left - v);
    }
  };
  rec(0, degree);
  return out;
}

// The moves of `moves` (both directions) connect every fiber up to `degree`.
bool fibers_connected(const Configuration& a, const std::vector<Binomial>& moves, Count degree) {
  for (Count k = 1; k <= degree; ++k)
    for (const auto& target : targets_of_degree(a, k)) {
      CountVector b(a.dimension());
      for (Index i = 0; i < b.size(); ++i) b(i) = target[static_cast<std::size_t>(i)];
      const auto nodes = oracle::cartesian_fiber(a.matrix(), b, k);
      if (nodes.size() < 2) continue;
      std::set<std::vector<Count>> seen{*nodes.begin()};
      std::queue<std::vector<Count>> todo;
      todo.push(*nodes.begin());
      while (!todo.empty()) {
        const auto u = todo.front();
        todo.pop();
        for (const Binomial& g : moves)
          for (const auto& [from, to] : {std::pair{g.plus, g.minus}, std::pair{g.minus, g.plus}}) {
            std::vector<Count> v = u;
            bool ok = true;
            for (std::size_t i = 0; i < v.size() && ok; ++i) {
              v[i] += to(static_cast<Index>(i)) - from(static_cast<Index>(i));
              ok = u[i] >= from(static_cast<Index>(i));
            }
            if (ok && seen.insert(v).second) todo.push(v);
          }
      }
      if (seen.size() != nodes.size()) return false;
    }
  return true;
}

// Every pair in a common fiber up to `degree` reduces to the same normal form.
bool membership_complete(const Configuration& a, const GroebnerBasis& g, Count degree) {
  for (Count k = 1; k <= degree; ++k)
    for (const auto& target : targets_of_degree(a, k)) {
      CountVector b(a.dimension());
      for (Index i = 0; i < b.size(); ++i) b(i) = target[static_cast<std::size_t>(i)];
      std::set<std::vector<Count>> forms;
      for (const auto& m : oracle::cartesian_fiber(a.matrix(), b, k)) {
        Monomial x(static_cast<Index>(m.size()));
        for (std::size_t i = 0; i < m.size(); ++i) x(static_cast<Index>(i)) = m[i];
        forms.insert(as_vector(g.reduce(x)));
      }
      if (forms.size() > 1) return false;
    }
  return true;
}

}  // namespace

TEST_CASE("monomial order") {
  const MonomialOrder order(3);
  CHECK(order.greater(mono({0, 0, 2}), mono({1, 0, 0})));  // degree first
  CHECK_FALSE(order.greater(mono({1, 1, 0}), mono({2, 0, 0})));
  CHECK(order.greater(mono({2, 0, 0}), mono({1, 1, 0})));  // x1^2 > x1 x2
  CHECK(order.greater(mono({0, 2, 0}), mono({1, 0, 1})));  // x2^2 > x1 x3
  const MonomialOrder last0 = MonomialOrder::cheapest_last(3, 0);
  CHECK(last0.greater(mono({0, 1, 1}), mono({1, 1, 0})));
  CHECK_THROWS_AS(MonomialOrder(std::vector<Index>{0, 0}), Error);
}

TEST_CASE("evaluate and squarefree") {
  const Configuration a = remark_curve();
  CHECK(evaluate(a, mono({0, 0, 1, 0})) == a.point(2));
  CHECK(evaluate(a, mono({1, 0, 0, 1})) == int_vector({4, 2}));
  CHECK(evaluate(a, mono({0, 1, 1, 0})) == int_vector({4, 2}));
  CHECK(evaluate(a, mono({0, 0, 0, 0})).isZero());
  CHECK_THROWS_AS(evaluate(a, mono({1, 0})), Error);
  CHECK(is_squarefree(mono({1, 0, 1})));
  CHECK_FALSE(is_squarefree(mono({2, 0, 0})));
}

TEST_CASE("binomial text") {
  const Configuration a = remark_curve();
  SUBCASE("round trip") {
    for (const char* s : kRemarkBinomials) CHECK(to_text(parse_binomial(s, a), a) == s);
    CHECK(to_text(parse_binomial("1 - x[2]", a), a) == "1 - x[2]");
  }
  SUBCASE("alternative spellings") {
    const Binomial f = parse_binomial("x[1]*x[4] - x[2]*x[3]", a);
    CHECK(parse_binomial("x_1 x_4 - x_2 x_3", a) == f);
    CHECK(parse_binomial("x[1] x[1]^{2} - x[2]^3", a).plus == mono({3, 0, 0, 0}));
  }
  SUBCASE("labels") {
    const Configuration t = contingency({2, 3});
    const Binomial f = parse_binomial("x[1,1]*x[2,2] - x[1,2]*x[2,1]", t);
    CHECK(f.plus(0) == 1);
    CHECK(f.plus(4) == 1);
    CHECK(parse_binomial("x_{11} x_{2 2} - x_{12}x_{21}", t) == f);
    CHECK(to_text(f, t) == "x[1,1]*x[2,2] - x[1,2]*x[2,1]");
    CHECK(in_toric_ideal(t, f));
  }
  SUBCASE("random round trips") {
    std::mt19937 rng(3);
    const Configuration t = contingency({2, 2, 3});
    std::uniform_int_distribution<Count> e(0, 3);
    for (int trial = 0; trial < 50; ++trial) {
      Binomial f{Monomial(t.size()), Monomial(t.size())};
      for (Index i = 0; i < t.size(); ++i) {
        f.plus(i) = e(rng) == 3 ? e(rng) : 0;
        f.minus(i) = e(rng) == 3 ? e(rng) : 0;
      }
      CHECK(parse_binomial(to_text(f, t), t) == f);
    }
  }
  SUBCASE("errors") {
    for (const char* bad : {"x[5] - x[1]", "x[0] - x[1]", "x[1] x[2]", "y[1] - x[2]", "x[1] - x[2] + x[3]", "x[1,2] - x[1]",
                            "-"})
      CHECK_THROWS_AS(parse_binomial(bad, a), Error);
  }
  SUBCASE("typeset table binomials") {
    const Configuration t444 = contingency({4, 4, 4});
    const Binomial f = parse_binomial(cases::kTable444Binomial, t444);
    CHECK(f.plus.sum() == 14);
    CHECK(f.minus.sum() == 14);
    CHECK(f.plus(*t444.find_label({1, 1, 1})) == 2);
    CHECK(f.minus(*t444.find_label({2, 2, 2})) == 2);
    CHECK(f.support().size() == 26);
    const Configuration t643 = contingency({6, 4, 3});
    const Binomial g = parse_binomial(cases::kTable643Binomial, t643);
    CHECK(g.plus(*t643.find_label({6, 3, 3})) == 2);
    CHECK(g.support().size() == 26);
  }
}

TEST_CASE("toric ideal examples") {
  SUBCASE("2x2 table") {
    const Configuration a = contingency({2, 2});
    const GroebnerBasis g = toric_ideal(a);
    REQUIRE(g.size() == 1);
    const Binomial expected = parse_binomial("x[1,1]*x[2,2] - x[1,2]*x[2,1]", a);
    CHECK((g.elements()[0] == expected || g.elements()[0] == expected.negated()));
    CHECK(fibers_connected(a, g.elements(), 3));
  }
  SUBCASE("single point") {
    CHECK(toric_ideal(Configuration::from_points({{1}})).size() == 0);
  }
  SUBCASE("remark curve generates the same ideal as the four binomials") {
    const Configuration a = remark_curve();
    const GroebnerBasis g = toric_ideal(a);
    const std::vector<Binomial> four = remark_binomials(a);
    for (const Binomial& f : four) CHECK(g.contains(f));
    const GroebnerBasis h = GroebnerBasis::compute(four, g.order());
    for (const Binomial& f : g.elements()) CHECK(h.contains(f));
    CHECK(h.elements() == g.elements());
    CHECK(g.is_reduced());
    CHECK(fibers_connected(a, g.elements(), 4));
    CHECK(fibers_connected(a, four, 4));
  }
  SUBCASE("reduction") {
    const Configuration a = remark_curve();
    const GroebnerBasis g = toric_ideal(a);
    for (const Binomial& f : g.elements()) CHECK(g.reduce(f).is_zero());
    const Monomial m = g.reduce(mono({1, 0, 0, 1}));
    const Monomial n = g.reduce(mono({0, 1, 1, 0}));
    CHECK(m == n);
    CHECK(evaluate(a, m) == int_vector({4, 2}));
    CHECK(g.reduce(mono({0, 0, 0, 0})) == mono({0, 0, 0, 0}));
  }
  SUBCASE("budget") {
    GroebnerOptions tight;
    tight.spair_budget = 1;
    CHECK_THROWS_AS(toric_ideal(contingency({3, 3}), tight), Error);
    GroebnerOptions small;
    small.max_variables = 3;
    CHECK_THROWS_AS(toric_ideal(remark_curve(), small), Error);
  }
}

TEST_CASE("toric ideals of random configurations") {
  std::mt19937 rng(101);
  for (int trial = 0; trial < 30; ++trial) {
    const Configuration a = oracle::random_configuration(rng, 6, 3, 3);
    const GroebnerBasis g = toric_ideal(a);
    for (const Binomial& f : g.elements()) {
      CHECK(in_toric_ideal(a, f));
      CHECK(g.order().greater(f.plus, f.minus));
    }
    CHECK(g.is_reduced());
    CHECK(toric_ideal(a).elements() == g.elements());
    CHECK(fibers_connected(a, g.elements(), 3));
    CHECK(membership_complete(a, g, 3));
  }
}

TEST_CASE("toric ideals of tables") {
  SUBCASE("3x3") {
    const Configuration a = contingency({3, 3});
    const GroebnerBasis g = toric_ideal(a);
    CHECK(g.size() == 9);  // the 2x2 minors
    for (const Binomial& f : g.elements()) CHECK(f.plus.sum() == 2);
    CHECK(fibers_connected(a, g.elements(), 2));
  }
  SUBCASE("lawrence lifting of the twisted cubic") {
    const Configuration a = lawrence(Configuration::from_points({{3, 0}, {2, 1}, {1, 2}, {0, 3}}));
    const GroebnerBasis g = toric_ideal(a);
    for (const Binomial& f : g.elements()) CHECK(in_toric_ideal(a, f));
    CHECK(membership_complete(a, g, 3));
  }
}

TEST_CASE("fibers agree with cartesian enumeration") {
  const Configuration curve = remark_curve();
  CHECK(fiber(curve, int_vector({1, 1})) == std::vector<Monomial>{mono({0, 1, 0, 0})});
  CHECK(fiber(curve, int_vector({4, 2})) == std::vector<Monomial>{mono({0, 1, 1, 0}), mono({1, 0, 0, 1})});
  CHECK(fiber(curve, int_vector({0, 0})) == std::vector<Monomial>{mono({0, 0, 0, 0})});
  CHECK(fiber(curve, int_vector({2, 1})).empty());
  CHECK_THROWS_AS(fiber(curve, int_vector({1})), Error);
  FiberOptions tiny;
  tiny.cap = 1;
  CHECK_THROWS_AS(fiber(curve, int_vector({4, 2}), tiny), Error);

  std::mt19937 rng(5);
  for (int trial = 0; trial < 20; ++trial) {
    const Configuration a = oracle::random_configuration(rng, 5, 3, 3);
    std::uniform_int_distribution<Index> pick(0, a.size() - 1);
    for (int k = 0; k < 5; ++k) {
      CountVector b = CountVector::Zero(a.dimension());
      const Count degree = k % 3 + 1;
      for (Count t = 0; t < degree; ++t) b += oracle::column(a.matrix(), pick(rng));
      std::set<std::vector<Count>> expected = oracle::cartesian_fiber(a.matrix(), b, degree);
      for (FiberPruning mode : {FiberPruning::Bounds, FiberPruning::Cone}) {
        FiberOptions options;
        options.pruning = mode;
        std::set<std::vector<Count>> got;
        for (const Monomial& m : fiber(a, to_integer(b), options)) got.insert(as_vector(m));
        CHECK(got == expected);
      }
    }
  }
}

TEST_CASE("indispensable binomials") {
  const Configuration a = remark_curve();
  for (const Binomial& f : remark_binomials(a)) {
    const IndispensabilityResult r = is_indispensable(a, f);
    CHECK(r.verdict == Indispensability::Indispensable);
    CHECK(r.fiber.size() == 2);
  }
  const Configuration t = contingency({2, 2});
  CHECK(is_indispensable(t, toric_ideal(t).elements()[0]).verdict == Indispensability::Indispensable);

  const Configuration five = Configuration::from_points({{0, 1}, {1, 1}, {2, 1}, {3, 1}, {4, 1}});
  const IndispensabilityResult r = is_indispensable(five, parse_binomial("x[1]*x[5] - x[2]*x[4]", five));
  CHECK(r.verdict == Indispensability::NotConfirmed);
  CHECK(r.fiber.size() == 3);
  // common factor: connected through a move of lower degree
  CHECK(is_indispensable(a, parse_binomial("x[1]^2*x[4] - x[1]*x[2]*x[3]", a)).verdict ==
        Indispensability::NotConfirmed);
  CHECK_THROWS_AS(is_indispensable(a, parse_binomial("x[1] - x[2]", a)), Error);
}

TEST_CASE("principal toric ideals") {
  const Configuration t = contingency({2, 2});
  const PrincipalResult p = is_principal_toric(t, {0, 1, 2, 3});
  REQUIRE(p.status == PrincipalStatus::Principal);
  CHECK(p.generator->exponent().cwiseAbs() == CountVector::Ones(4));

  const Configuration two = Configuration::from_points({{1, 0}, {0, 1}});
  CHECK(is_principal_toric(two, {0, 1}).status == PrincipalStatus::ZeroIdeal);
  CHECK(is_principal_toric(remark_curve(), {0, 1, 2, 3}).status == PrincipalStatus::NotPrincipal);

  SUBCASE("primitive generators on random rank-one subsets") {
    std::mt19937 rng(9);
    int found = 0;
    for (int trial = 0; trial < 40; ++trial) {
      const Configuration a = oracle::random_configuration(rng, 6, 3, 3);
      std::vector<Index> all(static_cast<std::size_t>(a.size()));
      std::iota(all.begin(), all.end(), Index{0});
      const PrincipalResult r = is_principal_toric(a, all);
      if (r.status != PrincipalStatus::Principal) continue;
      ++found;
      CHECK(in_toric_ideal(a, *r.generator));
      Count g = 0;
      for (Index i = 0; i < a.size(); ++i) g = std::gcd(g, r.generator->exponent()(i));
      CHECK(g == 1);
    }
    CHECK(found > 0);
  }
}

TEST_CASE("fundamental certificates") {
  SUBCASE("4x4x4 table") {
    const Configuration a = contingency({4, 4, 4});
    const Binomial f = parse_binomial(cases::kTable444Binomial, a);
    CHECK(in_toric_ideal(a, f));
    CHECK_FALSE(is_squarefree(f.plus));
    CHECK_FALSE(is_squarefree(f.minus));
    const auto cert = fundamental_certificate(a, f);
    REQUIRE(cert.has_value());
    CHECK(cert->subset.size() == 26);
    CHECK(verify_fundamental(a, *cert));
    const PrincipalResult p = is_principal_toric(a, cert->subset);
    REQUIRE(p.status == PrincipalStatus::Principal);
    CHECK((*p.generator == f || p.generator->negated() == f));
  }
  SUBCASE("6x4x3 table") {
    const Configuration a = contingency({6, 4, 3});
    const Binomial f = parse_binomial(cases::kTable643Binomial, a);
    const auto cert = fundamental_certificate(a, f);
    REQUIRE(cert.has_value());
    CHECK(verify_fundamental(a, *cert));
  }
  SUBCASE("remark curve is undecided") {
    const Configuration a = remark_curve();
    for (const Binomial& f : remark_binomials(a)) CHECK_FALSE(fundamental_certificate(a, f).has_value());
    CHECK_THROWS_AS(fundamental_certificate(a, parse_binomial("x[1] - x[2]", a)), Error);
  }
  SUBCASE("tampered certificates fail") {
    const Configuration a = contingency({2, 2});
    const Binomial f = toric_ideal(a).elements()[0];
    auto cert = fundamental_certificate(a, f);
    REQUIRE(cert.has_value());
    CHECK(verify_fundamental(a, *cert));
    FundamentalCertificate bad = *cert;
    bad.binomial.plus *= 2;
    bad.binomial.minus *= 2;
    CHECK_FALSE(verify_fundamental(a, bad));
  }
}
