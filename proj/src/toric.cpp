#include "toric/toric.hpp"

#include "toric/error.hpp"
#include "toric/linalg.hpp"
#include "toric/lp.hpp"

#include <algorithm>
#include <functional>

namespace toric {
namespace {

bool lex_less(const Monomial& a, const Monomial& b) {
  return std::lexicographical_compare(a.data(), a.data() + a.size(), b.data(), b.data() + b.size());
}

bool coprime(const Monomial& a, const Monomial& b) { return (a.array().min(b.array()) == 0).all(); }

class FiberSearch {
 public:
  FiberSearch(const Configuration& a, const FiberOptions& options)
      : a_(a), m_(a.dimension(), a.size()), options_(options) {
    for (Index i = 0; i < a.dimension(); ++i)
      for (Index j = 0; j < a.size(); ++j) m_(i, j) = to_count(a.matrix()(i, j));
  }

  std::vector<Monomial> run(CountVector residual, Count degree) {
    const Index n = a_.size();
    current_ = Monomial::Zero(n);
    cone_ = options_.pruning == FiberPruning::Cone;
    if (options_.pruning == FiberPruning::Automatic) {
      double product = 1;
      for (Index j = 0; j < n; ++j) product *= static_cast<double>(bound(j, residual, degree) + 1);
      cone_ = product > options_.automatic_threshold;
    }
    search(0, residual, degree);
    std::sort(out_.begin(), out_.end(), lex_less);
    return std::move(out_);
  }

 private:
  Count entry(Index i, Index j) const { return m_(i, j); }

  Count bound(Index j, const CountVector& r, Count degree) const {
    Count ub = degree;
    for (Index i = 0; i < a_.dimension(); ++i)
      if (entry(i, j) > 0) ub = std::min(ub, r(i) / entry(i, j));
    return ub;
  }

  // r in the cone of points j.. (with exactly `degree` units of weight)
  bool in_remaining_cone(Index j, const CountVector& r) const {
    const Index k = a_.size() - j;
    LinearSystem s(k);
    for (Index i = 0; i < a_.dimension(); ++i) {
      RatVector row(k);
      for (Index t = 0; t < k; ++t) row(t) = Rational(entry(i, j + t));
      s.add_equal(row, Rational(r(i)));
    }
    for (Index t = 0; t < k; ++t) {
      RatVector row = RatVector::Zero(k);
      row(t) = -1;
      s.add_less_equal(row, Rational(0));
    }
    return lp_feasible(s).witness.has_value();
  }

  void emit() {
    out_.push_back(current_);
    if (out_.size() > options_.cap)
      throw Error(ErrorCode::CapExceeded, "fiber has more than " + std::to_string(options_.cap) + " elements");
  }

  void search(Index j, const CountVector& r, Count degree) {
    const Index n = a_.size();
    if (degree == 0) {
      if (r.isZero()) emit();
      return;
    }
    if (j == n) return;
    if (j == n - 1) {
      bool exact = true;
      for (Index i = 0; i < a_.dimension() && exact; ++i) exact = r(i) == degree * entry(i, j);
      if (exact) {
        current_(j) = degree;
        emit();
        current_(j) = 0;
      }
      return;
    }
    if (cone_ && !in_remaining_cone(j, r)) return;
    CountVector next = r;
    const Count ub = bound(j, r, degree);
    for (Count v = 0; v <= ub; ++v) {
      current_(j) = v;
      search(j + 1, next, degree - v);
      for (Index i = 0; i < a_.dimension(); ++i) next(i) -= entry(i, j);
    }
    current_(j) = 0;
  }

  const Configuration& a_;
  Matrix<Count> m_;
  const FiberOptions& options_;
  bool cone_ = false;
  Monomial current_;
  std::vector<Monomial> out_;
};

}  // namespace

std::vector<Monomial> fiber(const Configuration& a, const IntVector& b, const FiberOptions& options) {
  if (b.size() != a.dimension())
    throw Error(ErrorCode::DimensionMismatch, "fiber target has the wrong dimension");
  const Rational degree = a.degree(b);
  if (!is_integral(degree) || degree < 0) return {};
  for (Index i = 0; i < b.size(); ++i)
    if (b(i) < 0) return {};
  return FiberSearch(a, options).run(to_count(b), to_count(numerator(degree)));
}

IndispensabilityResult is_indispensable(const Configuration& a, const Binomial& f, const FiberOptions& options) {
  if (f.is_zero() || !in_toric_ideal(a, f))
    throw Error(ErrorCode::NotInIdeal, "binomial is not a nonzero element of the toric ideal: " + to_text(f, a));
  IndispensabilityResult r;
  r.fiber = fiber(a, evaluate(a, f.plus), options);
  if (r.fiber.size() == 2 && coprime(f.plus, f.minus)) r.verdict = Indispensability::Indispensable;
  return r;
}

PrincipalResult is_principal_toric(const Configuration& a, const std::vector<Index>& subset) {
  if (subset.empty()) throw Error(ErrorCode::DimensionMismatch, "empty point subset");
  IntMatrix sub(a.dimension(), static_cast<Index>(subset.size()));
  for (std::size_t j = 0; j < subset.size(); ++j) sub.col(static_cast<Index>(j)) = a.matrix().col(subset[j]);
  const LatticeBasis kernel = kernel_lattice(sub);
  PrincipalResult r;
  r.kernel_rank = kernel.rank();
  if (kernel.rank() == 0) {
    r.status = PrincipalStatus::ZeroIdeal;
  } else if (kernel.rank() == 1) {
    r.status = PrincipalStatus::Principal;
    CountVector u = CountVector::Zero(a.size());
    for (std::size_t j = 0; j < subset.size(); ++j) u(subset[j]) = to_count(kernel.vectors(0, static_cast<Index>(j)));
    r.generator = binomial_of(u).oriented(MonomialOrder(a.size()));
  }
  return r;
}

namespace {

bool generates(const PrincipalResult& p, const Binomial& f) {
  return p.status == PrincipalStatus::Principal && (*p.generator == f || p.generator->negated() == f);
}

}  // namespace

std::optional<FundamentalCertificate> fundamental_certificate(const Configuration& a, const Binomial& f) {
  if (f.is_zero() || !in_toric_ideal(a, f))
    throw Error(ErrorCode::NotInIdeal, "binomial is not a nonzero element of the toric ideal: " + to_text(f, a));
  const std::vector<Index> b0 = f.support();
  if (generates(is_principal_toric(a, b0), f))
    if (auto face = face_certificate(a, b0))
      return FundamentalCertificate{f, b0, *face, FundamentalSource::Support};

  // Smallest coordinate section holding supp(f). A larger section contains
  // more points, so its kernel either equals this one or has higher rank;
  // neither can be generated by f if this one is not.
  std::vector<Index> coords;
  for (Index i = 0; i < a.dimension(); ++i)
    for (Index j : b0)
      if (a.matrix()(i, j) != 0) {
        coords.push_back(i);
        break;
      }
  const std::vector<Index> section = coordinate_section(a, coords);
  if (section != b0 && generates(is_principal_toric(a, section), f))
    if (auto face = coordinate_face(a, coords))
      return FundamentalCertificate{f, section, *face, FundamentalSource::CoordinateSection};
  return std::nullopt;
}

bool verify_fundamental(const Configuration& a, const FundamentalCertificate& c) {
  if (c.binomial.variables() != a.size() || c.binomial.is_zero() || !in_toric_ideal(a, c.binomial)) return false;
  for (Index j : c.binomial.support())
    if (!std::binary_search(c.subset.begin(), c.subset.end(), j)) return false;
  if (!FaceCertificate::holds(a, c.subset, c.face.functional(), c.face.level())) return false;
  return generates(is_principal_toric(a, c.subset), c.binomial);
}

}  // namespace toric
