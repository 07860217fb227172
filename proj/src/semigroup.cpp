#include "toric/semigroup.hpp"

#include "toric/error.hpp"
#include "toric/lp.hpp"

#include <boost/container_hash/hash.hpp>

#include <algorithm>
#include <numeric>
#include <queue>
#include <unordered_set>

namespace toric {
namespace {

struct ResidualHash {
  std::size_t operator()(const std::vector<Count>& v) const { return boost::hash_range(v.begin(), v.end()); }
};

// Depth-first search for a multiset of points summing to a residual. At each
// node some coordinate with positive residual must be covered by one of the
// chosen points, so it suffices to branch on the points covering the
// coordinate with the fewest candidates.
class Representation {
 public:
  Representation(const Matrix<Count>& points, std::size_t memo_cap) : points_(points), memo_cap_(memo_cap) {}

  bool search(std::vector<Count>& r, Count degree) {
    if (degree == 0) return std::all_of(r.begin(), r.end(), [](Count x) { return x == 0; });
    if (failed_.count(r)) return false;
    const Index d = points_.rows(), n = points_.cols();
    Index best = -1;
    std::vector<Index> best_candidates;
    for (Index i = 0; i < d; ++i) {
      if (r[static_cast<std::size_t>(i)] == 0) continue;
      std::vector<Index> candidates;
      for (Index j = 0; j < n; ++j)
        if (points_(i, j) > 0 && fits(j, r)) candidates.push_back(j);
      if (best < 0 || candidates.size() < best_candidates.size()) {
        best = i;
        best_candidates = std::move(candidates);
        if (best_candidates.empty()) break;
      }
    }
    if (best >= 0)
      for (Index j : best_candidates) {
        for (Index i = 0; i < d; ++i) r[static_cast<std::size_t>(i)] -= points_(i, j);
        chosen_.push_back(j);
        if (search(r, degree - 1)) {
          for (Index i = 0; i < d; ++i) r[static_cast<std::size_t>(i)] += points_(i, j);
          return true;
        }
        chosen_.pop_back();
        for (Index i = 0; i < d; ++i) r[static_cast<std::size_t>(i)] += points_(i, j);
      }
    if (failed_.size() >= memo_cap_)
      throw Error(ErrorCode::CapExceeded,
                  "semigroup membership memo exceeded " + std::to_string(memo_cap_) + " residuals");
    failed_.insert(r);
    return false;
  }

  std::vector<Index> chosen() const {
    std::vector<Index> c = chosen_;
    std::sort(c.begin(), c.end());
    return c;
  }

 private:
  bool fits(Index j, const std::vector<Count>& r) const {
    for (Index i = 0; i < points_.rows(); ++i)
      if (points_(i, j) > r[static_cast<std::size_t>(i)]) return false;
    return true;
  }

  const Matrix<Count>& points_;
  std::size_t memo_cap_;
  std::unordered_set<std::vector<Count>, ResidualHash> failed_;
  std::vector<Index> chosen_;
};

Matrix<Count> count_matrix(const IntMatrix& m) {
  Matrix<Count> out(m.rows(), m.cols());
  for (Index i = 0; i < m.rows(); ++i)
    for (Index j = 0; j < m.cols(); ++j) out(i, j) = to_count(m(i, j));
  return out;
}

// q >= 0 with sum q = degree, over the points of A
LinearSystem simplex_system(const Configuration& a, const Rational& degree) {
  const Index n = a.size();
  LinearSystem s(n);
  for (Index j = 0; j < n; ++j) {
    RatVector row = RatVector::Zero(n);
    row(j) = -1;
    s.add_less_equal(row, Rational(0));
  }
  s.add_equal(RatVector::Ones(n), degree);
  return s;
}

RatVector coordinate_row(const Configuration& a, Index i) { return a.matrix().row(i).transpose().cast<Rational>(); }

}  // namespace

Semigroup::Semigroup(const Configuration& a, SemigroupOptions options)
    : a_(a), options_(options), points_(count_matrix(a.matrix())), lattice_(a.matrix()) {}

std::optional<std::vector<Index>> Semigroup::represent(const IntVector& p) const {
  if (p.size() != a_.dimension()) throw Error(ErrorCode::DimensionMismatch, "point has the wrong dimension");
  const Rational degree = a_.degree(p);
  if (!is_integral(degree) || degree < 0) return std::nullopt;
  for (Index i = 0; i < p.size(); ++i)
    if (p(i) < 0) return std::nullopt;
  std::vector<Count> r(static_cast<std::size_t>(p.size()));
  for (Index i = 0; i < p.size(); ++i) r[static_cast<std::size_t>(i)] = to_count(p(i));
  Representation search(points_, options_.memo_cap);
  if (!search.search(r, to_count(numerator(degree)))) return std::nullopt;
  return search.chosen();
}

bool Semigroup::in_lattice(const IntVector& p) const { return lattice_.solve(p).has_value(); }

bool Semigroup::in_cone(const IntVector& p) const {
  if (p.size() != a_.dimension()) throw Error(ErrorCode::DimensionMismatch, "point has the wrong dimension");
  const Rational degree = a_.degree(p);
  if (degree < 0) return false;
  LinearSystem s = simplex_system(a_, degree);
  for (Index i = 0; i < a_.dimension(); ++i) s.add_equal(coordinate_row(a_, i), Rational(p(i)));
  return lp_feasible(s).witness.has_value();
}

bool Semigroup::is_hole(const IntVector& p) const { return in_lattice(p) && in_cone(p) && !contains(p); }

std::optional<std::vector<Index>> in_semigroup(const Configuration& a, const IntVector& p) {
  return Semigroup(a).represent(p);
}
bool in_lattice(const Configuration& a, const IntVector& p) { return Semigroup(a).in_lattice(p); }
bool in_cone(const Configuration& a, const IntVector& p) { return Semigroup(a).in_cone(p); }
bool is_hole(const Configuration& a, const IntVector& p) { return Semigroup(a).is_hole(p); }

std::size_t HoleList::total() const {
  std::size_t t = 0;
  for (const auto& d : by_degree) t += d.size();
  return t;
}

HoleList enumerate_holes(const Configuration& a, Index max_degree, const SemigroupOptions& options) {
  if (max_degree < 1) throw Error(ErrorCode::DimensionMismatch, "hole enumeration needs a degree of at least 1");
  const Semigroup semigroup(a, options);
  const Index d = a.dimension();
  HoleList holes;
  holes.max_degree = max_degree;
  std::uint64_t nodes = 0;
  for (Index m = 1; m <= max_degree; ++m) {
    std::vector<IntVector> found;
    IntVector x = IntVector::Zero(d);
    LinearSystem system = simplex_system(a, Rational(m));
    // coordinate k ranges over the exact projection of m P_A with earlier
    // coordinates fixed; every value in between stays feasible by convexity
    std::function<void(Index)> branch = [&](Index k) {
      if (++nodes > options.node_cap)
        throw Error(ErrorCode::CapExceeded,
                    "hole enumeration visited more than " + std::to_string(options.node_cap) + " nodes");
      if (k == d) {
        if (semigroup.in_lattice(x) && !semigroup.contains(x)) found.push_back(x);
        return;
      }
      const RatVector row = coordinate_row(a, k);
      const LpOptimum lo = lp_minimize(row, system);
      const LpOptimum hi = lp_maximize(row, system);
      if (lo.status != LpOptimum::Status::Optimal || hi.status != LpOptimum::Status::Optimal) return;
      for (Integer v = ceil(lo.value); v <= floor(hi.value); ++v) {
        x(k) = v;
        LinearSystem saved = system;
        system.add_equal(row, Rational(v));
        branch(k + 1);
        system = std::move(saved);
      }
      x(k) = 0;
    };
    branch(0);
    holes.by_degree.push_back(std::move(found));
  }
  return holes;
}

HoleFamily hole_family_from_principal(const Configuration& a, const Binomial& g, std::optional<Index> direction) {
  if (g.variables() != a.size()) throw Error(ErrorCode::DimensionMismatch, "binomial has the wrong length");
  HoleFamily f;
  f.source = g;
  for (Index i = 0; i < g.variables() && f.first_role < 0; ++i)
    if (g.plus(i) >= 2) f.first_role = i;
  for (Index i = 0; i < g.variables() && f.second_role < 0; ++i)
    if (g.minus(i) >= 2) f.second_role = i;
  if (f.first_role < 0 || f.second_role < 0)
    throw Error(ErrorCode::NotApplicable, "a monomial of the binomial is squarefree");
  if (direction) {
    if (*direction < 0 || *direction >= a.size() || *direction == f.first_role || *direction == f.second_role)
      throw Error(ErrorCode::NotApplicable, "direction must be a third variable");
    f.direction = *direction;
  } else {
    const std::vector<Index> support = g.support();
    auto it = std::find_if(support.begin(), support.end(),
                           [&](Index i) { return i != f.first_role && i != f.second_role; });
    if (it == support.end()) throw Error(ErrorCode::NotApplicable, "the binomial involves only two variables");
    f.direction = *it;
  }
  // A(x_1 u') / a_2 with u' = plus / x_1^2
  Monomial m = g.plus;
  m(f.first_role) -= 1;
  f.base = evaluate(a, m) - a.point(f.second_role);
  return f;
}

std::optional<Count> first_non_hole(const Configuration& a, const HoleFamily& family, Count max_m,
                                    const SemigroupOptions& options) {
  if (family.base.size() != a.dimension() || family.direction < 0 || family.direction >= a.size())
    return Count{0};
  const Semigroup semigroup(a, options);
  for (Count m = 0; m <= max_m; ++m)
    if (!semigroup.is_hole(family.element(a, m))) return m;
  return std::nullopt;
}

bool verify_hole_family(const Configuration& a, const HoleFamily& family, Count max_m,
                        const SemigroupOptions& options) {
  return !first_non_hole(a, family, max_m, options).has_value();
}

Count numerical_semigroup_conductor(const std::vector<Count>& generators) {
  if (generators.empty()) throw Error(ErrorCode::DimensionMismatch, "no generators");
  Count g = 0;
  for (Count x : generators) {
    if (x <= 0) throw Error(ErrorCode::DimensionMismatch, "generators must be positive");
    g = std::gcd(g, x);
  }
  if (g != 1) throw Error(ErrorCode::DimensionMismatch, "generators must have gcd 1");
  const Count s = *std::min_element(generators.begin(), generators.end());
  if (s == 1) return 0;
  // Apery set of s: least semigroup element in each residue class mod s
  std::vector<Count> apery(static_cast<std::size_t>(s), -1);
  using Item = std::pair<Count, Count>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> queue;
  queue.emplace(0, 0);
  while (!queue.empty()) {
    const auto [value, residue] = queue.top();
    queue.pop();
    if (apery[static_cast<std::size_t>(residue)] >= 0) continue;
    apery[static_cast<std::size_t>(residue)] = value;
    for (Count x : generators) {
      const Count r = (residue + x) % s;
      if (apery[static_cast<std::size_t>(r)] < 0) queue.emplace(value + x, r);
    }
  }
  return *std::max_element(apery.begin(), apery.end()) - s + 1;
}

std::optional<HoleFamily> Rank2Analysis::family() const {
  if (very_ample()) return std::nullopt;
  HoleFamily f;
  if (conductor_low > 0) {
    f.base = origin_point + step;
    f.direction = origin;
  } else {
    f.base = top_point - step;
    f.direction = top;
  }
  return f;
}

std::optional<Rank2Analysis> rank2_analysis(const Configuration& a) {
  if (rank(a.matrix()) != 2) return std::nullopt;
  const Index n = a.size();
  IntMatrix differences(n - 1, a.dimension());
  for (Index j = 1; j < n; ++j) differences.row(j - 1) = (a.point(j) - a.point(0)).transpose();
  const LatticeBasis line = lattice_span(differences);
  if (line.rank() != 1) throw std::logic_error("rank-2 configuration whose differences do not span a line");
  IntVector step = line.vector(0);
  Index t = 0;
  while (step(t) == 0) ++t;
  std::vector<Count> s(static_cast<std::size_t>(n));
  for (Index j = 0; j < n; ++j) s[static_cast<std::size_t>(j)] = to_count(Integer((a.point(j)(t) - a.point(0)(t)) / step(t)));
  const Count low = *std::min_element(s.begin(), s.end());
  Rank2Analysis r;
  r.step = step;
  r.positions.resize(s.size());
  for (std::size_t j = 0; j < s.size(); ++j) r.positions[j] = s[j] - low;
  r.length = *std::max_element(r.positions.begin(), r.positions.end());
  r.origin = std::min_element(r.positions.begin(), r.positions.end()) - r.positions.begin();
  r.top = std::max_element(r.positions.begin(), r.positions.end()) - r.positions.begin();
  r.origin_point = a.point(r.origin);
  r.top_point = a.point(r.top);
  std::vector<Count> from_low, from_high;
  for (Count p : r.positions) {
    if (p > 0) from_low.push_back(p);
    if (p < r.length) from_high.push_back(r.length - p);
  }
  r.conductor_low = numerical_semigroup_conductor(from_low);
  r.conductor_high = numerical_semigroup_conductor(from_high);
  return r;
}

}  // namespace toric
