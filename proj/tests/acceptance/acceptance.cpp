// Acceptance run: one PASS/FAIL line per criterion, with wall time against
// its limit. Exit status is nonzero when any criterion fails.

#include "../oracles.hpp"
#include "cli.hpp"

#include "toric/semigroup.hpp"
#include "toric/toric.hpp"

#include <chrono>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iomanip>
#include <iostream>
#include <map>
#include <sstream>

using namespace toric;

namespace {

struct Outcome {
  bool pass = true;
  std::ostringstream log;

  void expect(bool ok, const std::string& what) {
    pass = pass && ok;
    if (!ok) log << "    failed: " << what << "\n";
  }
  void note(const std::string& what) { log << "    " << what << "\n"; }
};

void run_named_case(Outcome& o, const std::string& name) {
  const cli::CaseResult r = cli::run_case(name);
  o.expect(r.pass, name);
  if (!r.pass) o.log << r.detail;
}

// Holes of the remark curve up to degree 5 by exhaustive search. ZA = Z^2
// because the maximal minors have gcd 1; the cone is 0 <= x <= 4y.
std::vector<std::vector<IntVector>> remark_holes_oracle(const Configuration& a, Count max_degree) {
  std::vector<std::vector<IntVector>> out;
  for (Count m = 1; m <= max_degree; ++m) {
    std::vector<IntVector> level;
    for (Count x = 0; x <= 4 * m; ++x) {
      CountVector p(2);
      p << x, m;
      if (!oracle::brute_force_member(a.matrix(), p, m)) level.push_back(to_integer(p));
    }
    out.push_back(level);
  }
  return out;
}

void criterion_remark(Outcome& o) {
  run_named_case(o, "remark-curve");
  const Configuration a = Configuration::from_points({{0, 1}, {1, 1}, {3, 1}, {4, 1}});
  o.expect(oracle::maximal_minor_gcd(a.matrix()) == 1, "lattice of the remark curve is Z^2");
  const HoleList holes = enumerate_holes(a, 5);
  o.expect(holes.by_degree == remark_holes_oracle(a, 5), "enumerate_holes(5) matches the exhaustive search");
  o.note("holes up to degree 5: " + std::to_string(holes.total()));
}

void criterion_identity(Outcome& o) { run_named_case(o, "lawrence-identity"); }

void criterion_unimodular(Outcome& o) {
  run_named_case(o, "unimodular-table");
  // Laplace expansion over every maximal minor of the smallest tables
  for (const std::vector<int>& shape : std::vector<std::vector<int>>{{2, 2}, {2, 3}, {2, 2, 2}}) {
    const Configuration a = contingency(shape);
    const std::vector<Index> rows = row_basis(a.matrix());
    IntMatrix basis(static_cast<Index>(rows.size()), a.size());
    for (std::size_t i = 0; i < rows.size(); ++i) basis.row(static_cast<Index>(i)) = a.matrix().row(rows[i]);
    std::set<Integer> values;
    oracle::for_each_subset(basis.cols(), basis.rows(), [&](const std::vector<Index>& cols) {
      IntMatrix sub(basis.rows(), basis.rows());
      for (Index j = 0; j < basis.rows(); ++j) sub.col(j) = basis.col(cols[static_cast<std::size_t>(j)]);
      const Integer d = abs(oracle::laplace_det(sub));
      if (d != 0) values.insert(d);
    });
    o.expect(values.size() == 1 && is_unimodular(a).unimodular,
             "brute-force minors agree with is_unimodular on a " + std::to_string(shape.size()) + "-way table");
  }
}

void criterion_fundamental(Outcome& o) {
  run_named_case(o, "a444-fundamental");
  run_named_case(o, "a643-fundamental");
}

void criterion_twisted_cubic(Outcome& o) {
  const Configuration cubic = Configuration::from_points({{3, 0}, {2, 1}, {1, 2}, {0, 3}});
  RatVector third(2);
  third << Rational(1, 3), Rational(1, 3);
  o.expect(cubic.grading() == third, "twisted cubic grading is (1/3,1/3)");
  run_named_case(o, "twisted-cubic-lawrence");

  // the corrupted document is also rejected through the command line
  const cli::CaseResult r = cli::run_case("twisted-cubic-lawrence");
  Json bad = r.evidence;
  bad.erase("verdict");
  auto& base = bad["certificate"]["hole_family"]["base"];
  const Json a1 = bad["configuration"]["points"][0];
  for (std::size_t i = 0; i < base.size(); ++i) base[i] = base[i].get<Count>() + a1[i].get<Count>();
  const auto path = std::filesystem::temp_directory_path() / "toric_acceptance_corrupted.json";
  std::ofstream(path) << bad.dump();
  std::ostringstream out, err;
  const int code = cli::run({"check-certificate", path.string()}, out, err);
  o.expect(code == cli::kReplayFailure, "check-certificate exits 1 on the corrupted base");
  o.note("check-certificate: " + out.str().substr(0, out.str().find('\n')));
  std::filesystem::remove(path);
}

void criterion_corollary(Outcome& o) { run_named_case(o, "a3332-corollary"); }

void criterion_hole_transfer(Outcome& o) {
  std::mt19937 rng(2024);
  std::size_t sections = 0, transferred = 0, violations = 0;
  for (int trial = 0; trial < 50; ++trial) {
    const Configuration a = oracle::random_configuration(rng, 6, 4, 4);
    const Semigroup whole(a);
    for (Index mask = 1; mask < (Index{1} << a.dimension()); ++mask) {
      std::vector<Index> coords;
      for (Index i = 0; i < a.dimension(); ++i)
        if (mask >> i & 1) coords.push_back(i);
      const std::vector<Index> section = coordinate_section(a, coords);
      if (section.empty()) continue;
      const auto face = face_certificate(a, section);
      if (!face) continue;
      o.expect(FaceCertificate::holds(a, face->subset(), face->functional(), face->level()),
               "face certificate replays");
      ++sections;
      const Configuration b = a.restrict_to(section);
      const HoleList holes = enumerate_holes(b, 3);
      for (Index m = 1; m <= holes.max_degree; ++m)
        for (const IntVector& h : holes.degree(m)) {
          ++transferred;
          CountVector p(h.size());
          for (Index i = 0; i < h.size(); ++i) p(i) = to_count(h(i));
          // a hole of B is in ZB and cone(B), hence in ZA and cone(A)
          const bool hole_of_b = !oracle::brute_force_member(b.matrix(), p, m);
          const bool hole_of_a = !oracle::brute_force_member(a.matrix(), p, m);
          if (!hole_of_b || !hole_of_a || !whole.is_hole(h)) ++violations;
        }
    }
  }
  o.expect(violations == 0, std::to_string(violations) + " violations");
  o.note(std::to_string(sections) + " face sections, " + std::to_string(transferred) + " holes transferred");
}

void criterion_oracles(Outcome& o) {
  std::mt19937 rng(4048);
  std::size_t fibers = 0, points = 0, mismatches = 0;
  for (int trial = 0; trial < 25; ++trial) {
    const Configuration a = oracle::random_configuration(rng, 5, 4, 4);
    const Index n = a.size();

    // every right-hand side A m with |m| <= 3
    std::set<std::vector<Count>> seen;
    for (Count k = 0; k <= 3; ++k) {
      std::vector<Count> m(static_cast<std::size_t>(n), 0);
      std::function<void(Index, Count)> rec = [&](Index j, Count left) {
        if (j == n - 1) {
          m[static_cast<std::size_t>(j)] = left;
          CountVector b = CountVector::Zero(a.dimension());
          for (Index t = 0; t < n; ++t) b += m[static_cast<std::size_t>(t)] * oracle::column(a.matrix(), t);
          std::vector<Count> key(b.data(), b.data() + b.size());
          if (!seen.insert(key).second) return;
          ++fibers;
          std::set<std::vector<Count>> got;
          for (const Monomial& x : fiber(a, to_integer(b))) got.insert(std::vector<Count>(x.data(), x.data() + x.size()));
          if (got != oracle::cartesian_fiber(a.matrix(), b, k)) ++mismatches;
          return;
        }
        for (Count v = 0; v <= left; ++v) {
          m[static_cast<std::size_t>(j)] = v;
          rec(j + 1, left - v);
        }
      };
      rec(0, k);
    }

    // random lattice points: signed sums of up to six points
    const Semigroup s(a);
    std::uniform_int_distribution<Index> pick(0, n - 1);
    std::uniform_int_distribution<int> coin(0, 2);
    std::uniform_int_distribution<int> steps(1, 6);
    int drawn = 0;
    while (drawn < 200) {
      CountVector p = CountVector::Zero(a.dimension());
      Count degree = 0;
      for (int t = steps(rng); t > 0; --t) {
        const Index j = pick(rng);
        if (coin(rng) == 0) {
          p -= oracle::column(a.matrix(), j);
          --degree;
        } else {
          p += oracle::column(a.matrix(), j);
          ++degree;
        }
      }
      ++drawn;
      ++points;
      const bool expected = (p.array() >= 0).all() && oracle::brute_force_member(a.matrix(), p, degree);
      const auto rep = s.represent(to_integer(p));
      bool ok = rep.has_value() == expected;
      if (rep) {
        CountVector sum = CountVector::Zero(a.dimension());
        for (Index j : *rep) sum += oracle::column(a.matrix(), j);
        ok = ok && sum == p;
      }
      if (!ok) ++mismatches;
    }
  }
  o.expect(mismatches == 0, std::to_string(mismatches) + " mismatches");
  o.note(std::to_string(fibers) + " fibers and " + std::to_string(points) + " lattice points compared");
}

struct Criterion {
  int id;
  const char* title;
  double limit_s;
  std::function<void(Outcome&)> body;
};

}  // namespace

int main() {
  const std::vector<Criterion> criteria = {
      {1, "remark curve", 5, criterion_remark},
      {2, "lawrence identity for binary last factor", 5, criterion_identity},
      {3, "unimodularity table", 60, criterion_unimodular},
      {4, "explicit fundamental binomials", 30, criterion_fundamental},
      {5, "not very ample certificate end to end", 30, criterion_twisted_cubic},
      {6, "A_3,3,3,2 through the base minor pair", 60, criterion_corollary},
      {7, "hole transfer from coordinate faces", 120, criterion_hole_transfer},
      {8, "fibers and membership against brute force", 120, criterion_oracles},
  };
  bool all = true;
  for (const auto& c : criteria) {
    Outcome o;
    const auto start = std::chrono::steady_clock::now();
    try {
      c.body(o);
    } catch (const std::exception& e) {
      o.expect(false, std::string("raised ") + e.what());
    }
    const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    o.expect(s < c.limit_s, "over the time limit");
    all = all && o.pass;
    std::cout << (o.pass ? "PASS" : "FAIL") << " criterion " << c.id << ": " << c.title << " (" << std::fixed
              << std::setprecision(2) << s << " s, limit " << std::setprecision(0) << c.limit_s << " s)\n"
              << o.log.str() << std::flush;
  }
  return all ? 0 : 1;
}
