#include "toric/verdict.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace toric {

std::string Verdict::status() const {
  switch (ampleness) {
    case Ampleness::VeryAmple: return "VERY_AMPLE";
    case Ampleness::NotVeryAmple: return "NOT_VERY_AMPLE";
    case Ampleness::Unknown: break;
  }
  if (normality == Normality::NotNormal) return "NOT_NORMAL";
  if (normality == Normality::NormalUpTo) return "NORMAL_UP_TO(" + std::to_string(normal_up_to) + ")";
  return "UNKNOWN";
}

std::string Verdict::normality_name() const {
  switch (normality) {
    case Normality::Normal: return "NORMAL";
    case Normality::NotNormal: return "NOT_NORMAL";
    case Normality::NormalUpTo: return "NORMAL_UP_TO(" + std::to_string(normal_up_to) + ")";
    case Normality::Unknown: break;
  }
  return "UNKNOWN";
}

IntVector circuit_from_minor_pair(const IntMatrix& m, const MinorWitness& witness) {
  const auto& rows = witness.rows;
  std::vector<Index> basis = witness.first_columns;
  const std::vector<Index>& target = witness.second_columns;
  Integer value = minor_abs(m, rows, basis);
  if (value == 0 || minor_abs(m, rows, target) == 0 || value == minor_abs(m, rows, target))
    throw Error(ErrorCode::Mismatch, "minor witness does not have two distinct nonzero values");

  // Each exchange moves one column of the target basis in. Some exchange
  // changes |det|, and then the circuit of B + f has entries |det B| and
  // |det B'| up to a common factor, so one of them is at least 2.
  while (true) {
    const auto in_basis = [&](Index c) { return std::find(basis.begin(), basis.end(), c) != basis.end(); };
    const auto f = *std::find_if(target.begin(), target.end(), [&](Index c) { return !in_basis(c); });
    std::vector<Index> next;
    Integer next_value;
    for (Index e : basis) {
      if (std::find(target.begin(), target.end(), e) != target.end()) continue;
      next = basis;
      std::replace(next.begin(), next.end(), e, f);
      std::sort(next.begin(), next.end());
      next_value = minor_abs(m, rows, next);
      if (next_value != 0) break;
    }
    if (next_value != value) {
      std::vector<Index> columns = basis;
      columns.push_back(f);
      std::sort(columns.begin(), columns.end());
      IntMatrix sub(m.rows(), static_cast<Index>(columns.size()));
      for (std::size_t j = 0; j < columns.size(); ++j) sub.col(static_cast<Index>(j)) = m.col(columns[j]);
      const LatticeBasis k = kernel_lattice(sub);
      if (k.rank() != 1) throw std::logic_error("basis plus one column must carry a single circuit");
      IntVector u = IntVector::Zero(m.cols());
      for (std::size_t j = 0; j < columns.size(); ++j) u(columns[j]) = k.vectors(0, static_cast<Index>(j));
      return u;
    }
    basis = std::move(next);
    value = next_value;
  }
}

std::optional<HoleFamilyCertificate> lawrence_hole_family(const Configuration& a, const LawrenceMatch& match,
                                                          const MinorWitness& witness, Count checked_up_to,
                                                          const SemigroupOptions& options) {
  const IntVector u = circuit_from_minor_pair(match.base, witness);
  IntVector lifted = IntVector::Zero(a.size());
  for (std::size_t k = 0; k < match.pairs.size(); ++k) {
    lifted(match.pairs[k].first) = u(static_cast<Index>(k));
    lifted(match.pairs[k].second) = -u(static_cast<Index>(k));
  }
  const Binomial g = binomial_of(lifted).oriented(MonomialOrder(a.size()));
  auto fundamental = fundamental_certificate(a, g);
  if (!fundamental) return std::nullopt;
  HoleFamilyCertificate cert{hole_family_from_principal(a, g), checked_up_to, std::move(fundamental)};
  if (!verify_hole_family(a, cert.family, checked_up_to, options)) return std::nullopt;
  return cert;
}

namespace {

std::optional<Integer> single_value(const MinorScan& scan) {
  const auto values = scan.distinct_nonzero();
  if (values.size() != 1) return std::nullopt;
  return values.front();
}


bool is_cap(const Error& e) {
  return e.code() == ErrorCode::CapExceeded || e.code() == ErrorCode::NonterminationGuard;
}

}  // namespace

Verdict verdict(const Configuration& a, const VerdictOptions& options, VerdictTrace* trace) {
  Verdict v;
  VerdictTrace local;
  VerdictTrace& t = trace ? *trace : local;
  const auto record = [&](std::string stage, std::string status, std::string message = {}) {
    t.stages.push_back({std::move(stage), std::move(status), std::move(message)});
  };
  const auto capped = [&](const std::string& stage, const Error& e) {
    if (!is_cap(e)) throw;
    record(stage, std::string(error_name(e.code())), e.detail());
    v.notes.push_back(stage + ": " + e.what());
  };
  MinorOptions minors = options.minors;
  minors.stop_at_second_value = true;

  try {
    t.unimodularity = is_unimodular(a, minors);
    record("unimodularity", "done");
    const UnimodularityResult& u = *t.unimodularity;
    if (u.unimodular) {
      v.ampleness = Ampleness::VeryAmple;
      v.normality = Normality::Normal;
      v.reason = "unimodular";
      v.certificates.push_back(UnimodularCertificate{u.scan.examined, single_value(u.scan)});
      return v;
    }
    if (u.scan.witness) v.certificates.push_back(MinorPairCertificate{*u.scan.witness});
  } catch (const Error& e) {
    capped("unimodularity", e);
  }

  if (auto match = recognize_lawrence(a)) {
    try {
      const UnimodularityResult base = is_unimodular(match->base, minors);
      record("lawrence", "done");
      LawrenceCertificate cert{*match, base.unimodular, std::nullopt, std::nullopt};
      if (base.unimodular) {
        v.ampleness = Ampleness::VeryAmple;
        v.normality = Normality::Normal;
        v.reason = "lawrence_base_unimodular";
      } else {
        cert.base_minors = base.scan.witness;
        v.ampleness = Ampleness::NotVeryAmple;
        v.normality = Normality::NotNormal;
        v.reason = "lawrence_corollary";
        if (options.attach_lawrence_family) {
          try {
            cert.family = lawrence_hole_family(a, *match, *cert.base_minors, options.family_length, options.semigroup);
            if (!cert.family) v.notes.push_back("lawrence hole family: no fundamental certificate for the lifted circuit");
          } catch (const Error& e) {
            capped("lawrence hole family", e);
          }
        }
      }
      v.certificates.push_back(std::move(cert));
      return v;
    } catch (const Error& e) {
      capped("lawrence", e);
    }
  } else {
    record("lawrence", "skipped", "not of Lawrence type");
  }

  if (a.size() <= options.groebner.max_variables) {
    try {
      t.toric = toric_ideal(a, options.groebner);
      record("toric_ideal", "done");
      for (const Binomial& g : t.toric->elements()) {
        if (is_squarefree(g.plus) || is_squarefree(g.minus)) continue;
        auto fundamental = fundamental_certificate(a, g);
        if (!fundamental) continue;
        HoleFamily family;
        try {
          family = hole_family_from_principal(a, g);
        } catch (const Error& e) {
          if (e.code() != ErrorCode::NotApplicable) throw;
          continue;
        }
        if (!verify_hole_family(a, family, options.family_length, options.semigroup)) {
          v.notes.push_back("hole family of " + to_text(g, a) + " failed to verify");
          continue;
        }
        v.ampleness = Ampleness::NotVeryAmple;
        v.normality = Normality::NotNormal;
        v.reason = "fundamental_binomial";
        v.certificates.push_back(HoleFamilyCertificate{std::move(family), options.family_length, std::move(fundamental)});
        return v;
      }
    } catch (const Error& e) {
      capped("toric_ideal", e);
    }
  } else {
    const std::string why = std::to_string(a.size()) + " variables exceed the limit of " +
                            std::to_string(options.groebner.max_variables);
    record("toric_ideal", "skipped", why);
    v.notes.push_back("toric ideal: skipped, " + why);
  }

  if (auto r2 = rank2_analysis(a)) {
    Rank2Certificate cert{*r2, std::nullopt};
    if (r2->very_ample()) {
      v.ampleness = Ampleness::VeryAmple;
    } else if (auto family = r2->family()) {
      v.ampleness = Ampleness::NotVeryAmple;
      v.normality = Normality::NotNormal;
      if (verify_hole_family(a, *family, options.family_length, options.semigroup))
        cert.family = HoleFamilyCertificate{*family, options.family_length, std::nullopt};
      else
        v.notes.push_back("rank2 hole family failed to verify");
    }
    v.reason = "rank2_conductor";
    v.certificates.push_back(std::move(cert));
  }

  if (options.max_degree >= 1) {
    try {
      t.holes = enumerate_holes(a, options.max_degree, options.semigroup);
      record("holes", "done");
      if (t.holes->total() > 0) {
        v.normality = Normality::NotNormal;
        if (v.reason.empty()) v.reason = "holes";
      } else if (v.normality == Normality::Unknown) {
        v.normality = Normality::NormalUpTo;
        v.normal_up_to = options.max_degree;
        if (v.reason.empty()) v.reason = "bounded_search";
      }
      v.certificates.push_back(HolesCertificate{*t.holes});
    } catch (const Error& e) {
      capped("holes", e);
    }
  }
  if (v.reason.empty()) v.reason = "undecided";
  return v;
}

// ---- replay ----

namespace {

ReplayResult check_witness(const IntMatrix& m, const MinorWitness& w, const std::string& what) {
  const Index r = rank(m);
  const auto sorted_in_range = [](const std::vector<Index>& s, Index bound) {
    if (!std::is_sorted(s.begin(), s.end()) || std::adjacent_find(s.begin(), s.end()) != s.end()) return false;
    return std::all_of(s.begin(), s.end(), [&](Index i) { return i >= 0 && i < bound; });
  };
  if (static_cast<Index>(w.rows.size()) != r || !sorted_in_range(w.rows, m.rows()))
    return ReplayResult::failure(what + ": rows are not a row basis");
  IntMatrix sub(r, m.cols());
  for (Index i = 0; i < r; ++i) sub.row(i) = m.row(w.rows[static_cast<std::size_t>(i)]);
  if (rank(sub) != r) return ReplayResult::failure(what + ": rows are not a row basis");
  for (const auto* cols : {&w.first_columns, &w.second_columns})
    if (static_cast<Index>(cols->size()) != r || !sorted_in_range(*cols, m.cols()))
      return ReplayResult::failure(what + ": column set is not maximal");
  const Integer first = minor_abs(m, w.rows, w.first_columns);
  const Integer second = minor_abs(m, w.rows, w.second_columns);
  if (first != w.first_value || second != w.second_value)
    return ReplayResult::failure(what + ": recomputed minor differs from the claimed value");
  if (first == 0 || second == 0 || first == second)
    return ReplayResult::failure(what + ": minors are not two distinct nonzero values");
  return {};
}

ReplayResult replay_family(const Configuration& a, const HoleFamilyCertificate& c, const SemigroupOptions& options) {
  const HoleFamily& f = c.family;
  if (f.base.size() != a.dimension() || f.direction < 0 || f.direction >= a.size())
    return ReplayResult::failure("hole family: malformed base or direction");
  if (auto m = first_non_hole(a, f, c.checked_up_to, options))
    return ReplayResult::failure("hole family: element m = " + std::to_string(*m) + " is not a hole");
  if (c.fundamental) {
    if (!verify_fundamental(a, *c.fundamental))
      return ReplayResult::failure("hole family: fundamental certificate does not verify");
    try {
      const HoleFamily rebuilt = hole_family_from_principal(a, c.fundamental->binomial, f.direction);
      if (rebuilt.base != f.base)
        return ReplayResult::failure("hole family: base does not come from the fundamental binomial");
    } catch (const Error& e) {
      return ReplayResult::failure(std::string("hole family: ") + e.what());
    }
  }
  return {};
}

struct CertificateReplay {
  const Configuration& a;
  const VerdictOptions& options;

  ReplayResult operator()(const UnimodularCertificate& c) const {
    MinorOptions m = options.minors;
    m.stop_at_second_value = true;
    const UnimodularityResult u = is_unimodular(a, m);
    if (!u.unimodular) return ReplayResult::failure("unimodular: two distinct nonzero minors exist");
    if (c.value && single_value(u.scan) != c.value)
      return ReplayResult::failure("unimodular: common minor value differs");
    return {};
  }

  ReplayResult operator()(const MinorPairCertificate& c) const { return check_witness(a.matrix(), c.witness, "minor pair"); }

  ReplayResult operator()(const HolesCertificate& c) const {
    const HoleList fresh = enumerate_holes(a, c.holes.max_degree, options.semigroup);
    if (fresh.by_degree != c.holes.by_degree) {
      for (Index m = 1; m <= c.holes.max_degree; ++m)
        if (static_cast<std::size_t>(m) > c.holes.by_degree.size() || fresh.degree(m) != c.holes.degree(m))
          return ReplayResult::failure("holes: degree " + std::to_string(m) + " differs from enumeration");
      return ReplayResult::failure("holes: degree list differs from enumeration");
    }
    return {};
  }

  ReplayResult operator()(const HoleFamilyCertificate& c) const { return replay_family(a, c, options.semigroup); }

  ReplayResult operator()(const LawrenceCertificate& c) const {
    const auto& pairs = c.match.pairs;
    std::vector<int> hits(static_cast<std::size_t>(a.size()), 0);
    for (const auto& [p, q] : pairs) {
      if (p < 0 || q < 0 || p >= a.size() || q >= a.size()) return ReplayResult::failure("lawrence: pair out of range");
      ++hits[static_cast<std::size_t>(p)];
      ++hits[static_cast<std::size_t>(q)];
    }
    if (std::any_of(hits.begin(), hits.end(), [](int h) { return h != 1; }))
      return ReplayResult::failure("lawrence: pairs do not partition the points");
    if (c.match.base.cols() != static_cast<Index>(pairs.size()))
      return ReplayResult::failure("lawrence: base has the wrong number of columns");
    if (!same_lattice(kernel_lattice(a.matrix()), lifted_kernel(kernel_lattice(c.match.base), pairs, a.size())))
      return ReplayResult::failure("lawrence: kernel is not the lifted kernel of the base");
    if (c.base_unimodular) {
      MinorOptions m = options.minors;
      m.stop_at_second_value = true;
      if (!is_unimodular(c.match.base, m).unimodular)
        return ReplayResult::failure("lawrence: base is not unimodular");
    } else {
      if (!c.base_minors) return ReplayResult::failure("lawrence: missing minor pair of the base");
      if (auto r = check_witness(c.match.base, *c.base_minors, "lawrence base"); !r.ok) return r;
    }
    if (c.family) return replay_family(a, *c.family, options.semigroup);
    return {};
  }

  ReplayResult operator()(const Rank2Certificate& c) const {
    const auto fresh = rank2_analysis(a);
    if (!fresh) return ReplayResult::failure("rank2: configuration does not have rank 2");
    const Rank2Analysis& r = c.analysis;
    if (fresh->origin != r.origin || fresh->top != r.top || fresh->step != r.step || fresh->positions != r.positions ||
        fresh->length != r.length)
      return ReplayResult::failure("rank2: line positions differ");
    if (fresh->conductor_low != r.conductor_low || fresh->conductor_high != r.conductor_high)
      return ReplayResult::failure("rank2: conductors differ");
    if (!r.very_ample()) {
      if (!c.family) return ReplayResult::failure("rank2: missing hole family");
      return replay_family(a, *c.family, options.semigroup);
    }
    return {};
  }
};

template <typename T, typename Accept>
const T* find_certificate(const Verdict& v, Accept accept) {
  for (const auto& c : v.certificates)
    if (const T* t = std::get_if<T>(&c); t && accept(*t)) return t;
  return nullptr;
}

}  // namespace

ReplayResult replay(const Configuration& a, const Certificate& certificate, const VerdictOptions& options) {
  try {
    return std::visit(CertificateReplay{a, options}, certificate);
  } catch (const Error& e) {
    return ReplayResult::failure(std::string("replay raised ") + e.what());
  }
}

ReplayResult replay(const Configuration& a, const Verdict& v, const VerdictOptions& options) {
  for (const auto& c : v.certificates)
    if (auto r = replay(a, c, options); !r.ok) return r;

  const bool unimodular = find_certificate<UnimodularCertificate>(v, [](const auto&) { return true; });
  const bool lawrence_unimodular =
      find_certificate<LawrenceCertificate>(v, [](const LawrenceCertificate& c) { return c.base_unimodular; });
  const bool lawrence_not =
      find_certificate<LawrenceCertificate>(v, [](const LawrenceCertificate& c) { return !c.base_unimodular; });
  const bool rank2_ample = find_certificate<Rank2Certificate>(v, [](const Rank2Certificate& c) {
    return c.analysis.very_ample();
  });
  const bool rank2_not = find_certificate<Rank2Certificate>(v, [](const Rank2Certificate& c) {
    return !c.analysis.very_ample();
  });
  const bool fundamental_family = find_certificate<HoleFamilyCertificate>(v, [](const HoleFamilyCertificate& c) {
    return c.fundamental.has_value();
  });
  const HolesCertificate* holes = find_certificate<HolesCertificate>(v, [](const auto&) { return true; });
  const bool any_family = find_certificate<HoleFamilyCertificate>(v, [](const auto&) { return true; }) ||
                          find_certificate<LawrenceCertificate>(v, [](const LawrenceCertificate& c) {
                            return c.family.has_value();
                          }) ||
                          find_certificate<Rank2Certificate>(v, [](const Rank2Certificate& c) {
                            return c.family.has_value();
                          });

  switch (v.ampleness) {
    case Ampleness::VeryAmple:
      if (!unimodular && !lawrence_unimodular && !rank2_ample)
        return ReplayResult::failure("status VERY_AMPLE has no supporting certificate");
      break;
    case Ampleness::NotVeryAmple:
      if (!lawrence_not && !rank2_not && !fundamental_family)
        return ReplayResult::failure("status NOT_VERY_AMPLE has no supporting certificate");
      break;
    case Ampleness::Unknown: break;
  }
  switch (v.normality) {
    case Normality::Normal:
      if (!unimodular && !lawrence_unimodular) return ReplayResult::failure("NORMAL has no supporting certificate");
      break;
    case Normality::NotNormal:
      if (v.ampleness != Ampleness::NotVeryAmple && !any_family && !(holes && holes->holes.total() > 0))
        return ReplayResult::failure("NOT_NORMAL has no hole");
      break;
    case Normality::NormalUpTo:
      if (!holes || holes->holes.total() != 0 || holes->holes.max_degree < v.normal_up_to)
        return ReplayResult::failure("NORMAL_UP_TO lacks an empty hole enumeration to that degree");
      break;
    case Normality::Unknown: break;
  }
  return {};
}

}  // namespace toric
