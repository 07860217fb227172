#include "toric/lp.hpp"

#include "toric/error.hpp"
#include "toric/linalg.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace toric {

void LinearSystem::add(RatVector coefficients, Relation relation, Rational bound) {
  if (coefficients.size() != dimension_)
    throw Error(ErrorCode::DimensionMismatch, "constraint has " + std::to_string(coefficients.size()) +
                                                  " coefficients, system has dimension " +
                                                  std::to_string(dimension_));
  LinearConstraint row{std::move(coefficients), std::move(bound)};
  switch (relation) {
    case Relation::Equal: equalities_.push_back(std::move(row)); break;
    case Relation::LessEqual: nonstrict_.push_back(std::move(row)); break;
    case Relation::Less: strict_.push_back(std::move(row)); break;
  }
}

bool LinearSystem::satisfied_by(const RatVector& x) const {
  if (x.size() != dimension_) return false;
  for (const auto& r : equalities_)
    if (dot(r.coefficients, x) != r.bound) return false;
  for (const auto& r : nonstrict_)
    if (dot(r.coefficients, x) > r.bound) return false;
  for (const auto& r : strict_)
    if (dot(r.coefficients, x) >= r.bound) return false;
  return true;
}

namespace {

struct Row {
  RatVector a;
  Rational b;
  bool strict = false;
  std::vector<Rational> lambda;  // multipliers over the reduced inequality rows
};

// Inequalities rewritten over the free parameters of the equality solution
// set: x = particular + nullspace * z.
struct Reduced {
  AffineSolution affine;
  std::vector<Row> rows;
};

RatMatrix equality_matrix(const LinearSystem& s, RatVector& rhs) {
  const auto& eq = s.equalities();
  RatMatrix e(static_cast<Index>(eq.size()), s.dimension());
  rhs.resize(static_cast<Index>(eq.size()));
  for (std::size_t i = 0; i < eq.size(); ++i) {
    e.row(static_cast<Index>(i)) = eq[i].coefficients.transpose();
    rhs(static_cast<Index>(i)) = eq[i].bound;
  }
  return e;
}

std::optional<Reduced> reduce_equalities(const LinearSystem& s) {
  RatVector rhs;
  const RatMatrix e = equality_matrix(s, rhs);
  auto affine = solve_rational(e, rhs);
  if (!affine) return std::nullopt;
  Reduced r{*affine, {}};
  const std::size_t total = s.nonstrict().size() + s.strict().size();
  auto push = [&](const LinearConstraint& c, bool strict) {
    Row row;
    row.a = (c.coefficients.transpose() * affine->nullspace).transpose();
    row.b = c.bound - dot(c.coefficients, affine->particular);
    row.strict = strict;
    row.lambda.assign(total, Rational(0));
    row.lambda[r.rows.size()] = 1;
    r.rows.push_back(std::move(row));
  };
  for (const auto& c : s.nonstrict()) push(c, false);
  for (const auto& c : s.strict()) push(c, true);
  return r;
}

// Certificate for inconsistent equalities: mu with E^T mu = 0, mu . f = -1.
FarkasCertificate equality_farkas(const LinearSystem& s) {
  RatVector rhs;
  const RatMatrix e = equality_matrix(s, rhs);
  RatMatrix t(e.cols() + 1, e.rows());
  t << e.transpose(), rhs.transpose();
  RatVector target = RatVector::Zero(e.cols() + 1);
  target(e.cols()) = -1;
  auto mu = solve_rational(t, target);
  if (!mu) throw std::logic_error("inconsistent equalities without a left certificate");
  return FarkasCertificate{std::vector<Rational>(s.nonstrict().size() + s.strict().size(), Rational(0)),
                           mu->particular};
}

FarkasCertificate lift_farkas(const LinearSystem& s, const std::vector<Rational>& lambda) {
  RatVector combined = RatVector::Zero(s.dimension());
  std::size_t i = 0;
  for (const auto& c : s.nonstrict()) combined += lambda[i++] * c.coefficients;
  for (const auto& c : s.strict()) combined += lambda[i++] * c.coefficients;
  RatVector rhs;
  const RatMatrix e = equality_matrix(s, rhs);
  RatVector mu = RatVector::Zero(e.rows());
  if (e.rows() > 0) {
    auto sol = solve_rational(e.transpose(), RatVector(-combined));
    if (!sol) throw std::logic_error("Fourier-Motzkin multipliers do not lift");
    mu = sol->particular;
  }
  return FarkasCertificate{lambda, mu};
}

bool trivially_violated(const Row& r) {
  return r.strict ? r.b <= 0 : r.b < 0;
}

bool is_zero(const RatVector& v) {
  for (Index i = 0; i < v.size(); ++i)
    if (v(i) != 0) return false;
  return true;
}

void normalize(Row& r) {
  Index p = 0;
  while (p < r.a.size() && r.a(p) == 0) ++p;
  if (p == r.a.size()) return;
  const Rational scale = Rational(1) / abs(r.a(p));
  r.a *= scale;
  r.b *= scale;
  for (auto& l : r.lambda) l *= scale;
}

struct VectorLess {
  bool operator()(const RatVector& x, const RatVector& y) const {
    return std::lexicographical_compare(x.begin(), x.end(), y.begin(), y.end());
  }
};

constexpr std::size_t kFourierMotzkinRowCap = 20000;

struct FmOutcome {
  std::optional<RatVector> z;
  std::optional<std::vector<Rational>> lambda;
  bool blew_up = false;
};

// Picks a value in the interval given by the bounds, preferring 0 and then
// integers close to the lower end.
Rational pick_value(const std::optional<Rational>& lo, bool lo_strict, const std::optional<Rational>& hi,
                    bool hi_strict) {
  auto fits = [&](const Rational& t) {
    if (lo && (lo_strict ? t <= *lo : t < *lo)) return false;
    if (hi && (hi_strict ? t >= *hi : t > *hi)) return false;
    return true;
  };
  if (fits(Rational(0))) return Rational(0);
  if (lo) {
    Rational t(lo_strict ? floor(*lo) + 1 : ceil(*lo));
    if (fits(t)) return t;
  }
  if (hi) {
    Rational t(hi_strict ? ceil(*hi) - 1 : floor(*hi));
    if (fits(t)) return t;
  }
  if (lo && hi) return (*lo + *hi) / 2;
  throw std::logic_error("empty interval during Fourier-Motzkin back-substitution");
}

FmOutcome fourier_motzkin(std::vector<Row> rows, Index vars) {
  FmOutcome out;
  std::vector<std::vector<Row>> levels(static_cast<std::size_t>(vars));
  for (Index k = vars - 1; k >= -1; --k) {
    // drop trivial rows and report contradictions
    std::vector<Row> kept;
    std::map<RatVector, std::size_t, VectorLess> index;
    for (auto& r : rows) {
      if (is_zero(r.a)) {
        if (trivially_violated(r)) {
          out.lambda = r.lambda;
          return out;
        }
        continue;
      }
      normalize(r);
      auto [it, inserted] = index.emplace(r.a, kept.size());
      if (inserted) {
        kept.push_back(std::move(r));
      } else {
        Row& old = kept[it->second];
        if (r.b < old.b || (r.b == old.b && r.strict && !old.strict)) old = std::move(r);
      }
    }
    if (k < 0) break;
    levels[static_cast<std::size_t>(k)] = kept;
    std::vector<Row> next;
    std::vector<const Row*> pos, neg;
    for (const auto& r : kept) {
      if (r.a(k) > 0) pos.push_back(&r);
      else if (r.a(k) < 0) neg.push_back(&r);
      else next.push_back(r);
    }
    if (next.size() + pos.size() * neg.size() > kFourierMotzkinRowCap) {
      out.blew_up = true;
      return out;
    }
    for (const Row* p : pos)
      for (const Row* q : neg) {
        const Rational sp = Rational(1) / p->a(k);
        const Rational sq = Rational(1) / -q->a(k);
        Row c;
        c.a = sp * p->a + sq * q->a;
        c.a(k) = 0;
        c.b = sp * p->b + sq * q->b;
        c.strict = p->strict || q->strict;
        c.lambda.resize(p->lambda.size());
        for (std::size_t i = 0; i < c.lambda.size(); ++i) c.lambda[i] = sp * p->lambda[i] + sq * q->lambda[i];
        next.push_back(std::move(c));
      }
    rows = std::move(next);
  }

  RatVector z = RatVector::Zero(vars);
  for (Index k = 0; k < vars; ++k) {
    std::optional<Rational> lo, hi;
    bool lo_strict = false, hi_strict = false;
    for (const auto& r : levels[static_cast<std::size_t>(k)]) {
      const Rational coef = r.a(k);
      if (coef == 0) continue;
      Rational rest = r.b;
      for (Index j = 0; j < k; ++j) rest -= r.a(j) * z(j);
      const Rational bound = rest / coef;
      if (coef > 0) {
        if (!hi || bound < *hi || (bound == *hi && r.strict)) {
          hi_strict = (hi && bound == *hi) ? (hi_strict || r.strict) : r.strict;
          hi = bound;
        }
      } else {
        if (!lo || bound > *lo || (bound == *lo && r.strict)) {
          lo_strict = (lo && bound == *lo) ? (lo_strict || r.strict) : r.strict;
          lo = bound;
        }
      }
    }
    z(k) = pick_value(lo, lo_strict, hi, hi_strict);
  }
  out.z = z;
  return out;
}

// Dense tableau simplex for: maximize c.x subject to A x <= b, x >= 0.
// Entering and leaving variables follow Bland's smallest-index rule.
class Tableau {
 public:
  Tableau(const RatMatrix& a, const RatVector& b, const RatVector& c)
      : m_(a.rows()), n_(a.cols()), basis_(m_), nonbasis_(n_ + 1), d_(m_ + 2, n_ + 2) {
    d_.setZero();
    for (Index i = 0; i < m_; ++i) {
      for (Index j = 0; j < n_; ++j) d_(i, j) = a(i, j);
      basis_[i] = n_ + i;
      d_(i, n_) = -1;
      d_(i, n_ + 1) = b(i);
    }
    for (Index j = 0; j < n_; ++j) {
      nonbasis_[j] = j;
      d_(m_, j) = -c(j);
    }
    nonbasis_[n_] = -1;
    d_(m_ + 1, n_) = 1;
  }

  LpOptimum solve() {
    LpOptimum result;
    Index r = 0;
    for (Index i = 1; i < m_; ++i)
      if (d_(i, n_ + 1) < d_(r, n_ + 1)) r = i;
    if (m_ > 0 && d_(r, n_ + 1) < 0) {
      pivot(r, n_);
      if (!run(1) || d_(m_ + 1, n_ + 1) < 0) return result;  // infeasible
      for (Index i = 0; i < m_; ++i) {
        if (basis_[i] != -1) continue;
        Index s = -1;
        for (Index j = 0; j <= n_; ++j)
          if (d_(i, j) != 0 && (s < 0 || nonbasis_[j] < nonbasis_[s])) s = j;
        if (s >= 0) pivot(i, s);
      }
    }
    if (!run(2)) {
      result.status = LpOptimum::Status::Unbounded;
      return result;
    }
    result.status = LpOptimum::Status::Optimal;
    result.point = RatVector::Zero(n_);
    for (Index i = 0; i < m_; ++i)
      if (basis_[i] >= 0 && basis_[i] < n_) result.point(basis_[i]) = d_(i, n_ + 1);
    result.value = d_(m_, n_ + 1);
    return result;
  }

 private:
  void pivot(Index r, Index s) {
    const Rational inv = Rational(1) / d_(r, s);
    for (Index i = 0; i < m_ + 2; ++i) {
      if (i == r || d_(i, s) == 0) continue;
      const Rational f = d_(i, s) * inv;
      for (Index j = 0; j < n_ + 2; ++j)
        if (j != s && d_(r, j) != 0) d_(i, j) -= d_(r, j) * f;
      d_(i, s) = -f;
    }
    for (Index j = 0; j < n_ + 2; ++j)
      if (j != s) d_(r, j) *= inv;
    d_(r, s) = inv;
    std::swap(basis_[r], nonbasis_[s]);
  }

  bool run(int phase) {
    const Index x = phase == 1 ? m_ + 1 : m_;
    while (true) {
      Index s = -1;
      for (Index j = 0; j <= n_; ++j) {
        if (phase == 2 && nonbasis_[j] == -1) continue;
        if (d_(x, j) < 0 && (s < 0 || nonbasis_[j] < nonbasis_[s])) s = j;
      }
      if (s < 0) return true;
      Index r = -1;
      Rational best;
      for (Index i = 0; i < m_; ++i) {
        if (d_(i, s) <= 0) continue;
        const Rational ratio = d_(i, n_ + 1) / d_(i, s);
        if (r < 0 || ratio < best || (ratio == best && basis_[i] < basis_[r])) {
          r = i;
          best = ratio;
        }
      }
      if (r < 0) return false;
      pivot(r, s);
    }
  }

  Index m_, n_;
  std::vector<Index> basis_, nonbasis_;
  RatMatrix d_;
};

// Simplex over the reduced rows with z split into z+ - z-. With `gap`, an
// extra variable eps in [0,1] is added to every strict row and maximized.
LpOptimum simplex_reduced(const std::vector<Row>& rows, Index vars, const RatVector& objective, bool gap) {
  const Index m = static_cast<Index>(rows.size()) + (gap ? 1 : 0);
  const Index n = 2 * vars + (gap ? 1 : 0);
  RatMatrix a = RatMatrix::Zero(m, n);
  RatVector b(m);
  RatVector c = RatVector::Zero(n);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const Index ii = static_cast<Index>(i);
    for (Index j = 0; j < vars; ++j) {
      a(ii, j) = rows[i].a(j);
      a(ii, vars + j) = -rows[i].a(j);
    }
    if (gap && rows[i].strict) a(ii, 2 * vars) = 1;
    b(ii) = rows[i].b;
  }
  if (gap) {
    a(m - 1, 2 * vars) = 1;
    b(m - 1) = 1;
    c(2 * vars) = 1;
  } else {
    for (Index j = 0; j < vars; ++j) {
      c(j) = objective(j);
      c(vars + j) = -objective(j);
    }
  }
  LpOptimum raw = Tableau(a, b, c).solve();
  if (raw.status != LpOptimum::Status::Optimal) return raw;
  LpOptimum out = raw;
  out.point = RatVector(vars);
  for (Index j = 0; j < vars; ++j) out.point(j) = raw.point(j) - raw.point(vars + j);
  if (gap) out.value = raw.point(2 * vars);
  return out;
}

}  // namespace

FeasibilityResult lp_feasible(const LinearSystem& system, LpBackend backend) {
  FeasibilityResult result;
  auto reduced = reduce_equalities(system);
  if (!reduced) {
    result.farkas = equality_farkas(system);
    result.backend_used = LpBackend::FourierMotzkin;
    return result;
  }
  const Index vars = reduced->affine.nullspace.cols();
  bool use_fm = backend == LpBackend::FourierMotzkin ||
                (backend == LpBackend::Automatic && vars <= kFourierMotzkinMaxVariables);
  std::optional<RatVector> z;
  if (use_fm) {
    FmOutcome fm = fourier_motzkin(reduced->rows, vars);
    if (fm.blew_up) {
      if (backend == LpBackend::FourierMotzkin)
        throw Error(ErrorCode::CapExceeded, "Fourier-Motzkin row count exceeded " +
                                                std::to_string(kFourierMotzkinRowCap));
      use_fm = false;
    } else {
      result.backend_used = LpBackend::FourierMotzkin;
      if (fm.lambda) {
        result.farkas = lift_farkas(system, *fm.lambda);
        return result;
      }
      z = fm.z;
    }
  }
  if (!use_fm) {
    result.backend_used = LpBackend::Simplex;
    bool any_strict = false;
    for (const auto& r : reduced->rows) any_strict = any_strict || r.strict;
    const LpOptimum opt = simplex_reduced(reduced->rows, vars, RatVector::Zero(vars), any_strict);
    if (opt.status != LpOptimum::Status::Optimal) return result;
    if (any_strict && opt.value <= 0) return result;
    z = opt.point;
  }
  RatVector x = reduced->affine.particular + reduced->affine.nullspace * *z;
  if (!system.satisfied_by(x)) throw std::logic_error("LP witness fails exact substitution");
  result.witness = std::move(x);
  return result;
}

std::optional<RatVector> lp_feasible(const std::vector<LinearConstraint>& equalities,
                                     const std::vector<LinearConstraint>& strict) {
  Index dim = -1;
  for (const auto* group : {&equalities, &strict})
    for (const auto& r : *group) {
      if (dim >= 0 && r.coefficients.size() != dim)
        throw Error(ErrorCode::DimensionMismatch, "constraint vectors of different dimensions");
      dim = r.coefficients.size();
    }
  LinearSystem s(std::max<Index>(dim, 0));
  for (const auto& r : equalities) s.add_equal(r.coefficients, r.bound);
  for (const auto& r : strict) s.add_less(r.coefficients, r.bound);
  return lp_feasible(s).witness;
}

bool verify_farkas(const LinearSystem& s, const FarkasCertificate& cert) {
  const std::size_t total = s.nonstrict().size() + s.strict().size();
  if (cert.inequality_multipliers.size() != total) return false;
  if (cert.equality_multipliers.size() != static_cast<Index>(s.equalities().size())) return false;
  RatVector combined = RatVector::Zero(s.dimension());
  Rational bound(0);
  bool strict_used = false;
  std::size_t i = 0;
  for (const auto& c : s.nonstrict()) {
    const Rational& l = cert.inequality_multipliers[i++];
    if (l < 0) return false;
    combined += l * c.coefficients;
    bound += l * c.bound;
  }
  for (const auto& c : s.strict()) {
    const Rational& l = cert.inequality_multipliers[i++];
    if (l < 0) return false;
    if (l > 0) strict_used = true;
    combined += l * c.coefficients;
    bound += l * c.bound;
  }
  for (std::size_t k = 0; k < s.equalities().size(); ++k) {
    const Rational& mu = cert.equality_multipliers(static_cast<Index>(k));
    combined += mu * s.equalities()[k].coefficients;
    bound += mu * s.equalities()[k].bound;
  }
  if (!is_zero(combined)) return false;
  return bound < 0 || (bound == 0 && strict_used);
}

LpOptimum lp_maximize(const RatVector& objective, const LinearSystem& system) {
  if (!system.strict().empty()) throw Error(ErrorCode::NotApplicable, "strict rows in an optimization problem");
  if (objective.size() != system.dimension()) throw Error(ErrorCode::DimensionMismatch, "objective length");
  LpOptimum out;
  auto reduced = reduce_equalities(system);
  if (!reduced) return out;
  const Index vars = reduced->affine.nullspace.cols();
  const RatVector reduced_objective = (objective.transpose() * reduced->affine.nullspace).transpose();
  LpOptimum opt = simplex_reduced(reduced->rows, vars, reduced_objective, false);
  if (opt.status != LpOptimum::Status::Optimal) return opt;
  out.status = opt.status;
  out.point = reduced->affine.particular + reduced->affine.nullspace * opt.point;
  out.value = dot(objective, out.point);
  if (!system.satisfied_by(out.point)) throw std::logic_error("LP optimum fails exact substitution");
  return out;
}

LpOptimum lp_minimize(const RatVector& objective, const LinearSystem& system) {
  LpOptimum out = lp_maximize(RatVector(-objective), system);
  if (out.status == LpOptimum::Status::Optimal) out.value = -out.value;
  return out;
}

}  // namespace toric
