#include "cli.hpp"

#include "toric/cases.hpp"

#include <functional>
#include <map>
#include <sstream>
#include <stdexcept>

namespace toric::cli {
namespace {

// Accumulates named checks; a case passes when all of them hold.
class Checks {
 public:
  void expect(bool ok, const std::string& what) {
    pass_ = pass_ && ok;
    lines_ << (ok ? "  ok   " : "  FAIL ") << what << "\n";
  }
  CaseResult result(Json evidence) const { return {pass_, lines_.str(), std::move(evidence)}; }

 private:
  bool pass_ = true;
  std::ostringstream lines_;
};

Configuration remark_curve() { return Configuration::from_points({{0, 1}, {1, 1}, {3, 1}, {4, 1}}); }
Configuration twisted_cubic() { return Configuration::from_points({{3, 0}, {2, 1}, {1, 2}, {0, 3}}); }

Json bare_certificate(const Configuration& a, const std::string& status, const Certificate& c) {
  return Json{{"configuration", configuration_to_json(a)}, {"status", status}, {"certificate", certificate_to_json(c, a)}};
}

CaseResult remark_curve_case() {
  Checks c;
  const Configuration a = remark_curve();
  const std::vector<std::string> texts = {"x[1]*x[4] - x[2]*x[3]", "x[2]^3 - x[1]^2*x[3]", "x[3]^3 - x[2]*x[4]^2",
                                          "x[1]*x[3]^2 - x[2]^2*x[4]"};
  std::vector<Binomial> listed;
  for (const auto& t : texts) listed.push_back(parse_binomial(t, a));

  const GroebnerBasis g = toric_ideal(a);
  const GroebnerBasis from_listed = GroebnerBasis::compute(listed, g.order());
  bool same = true;
  for (const auto& f : listed) same = same && g.contains(f);
  for (const auto& f : g.elements()) same = same && from_listed.contains(f);
  c.expect(same, "toric ideal and the four binomials reduce each other to zero");

  for (std::size_t i = 0; i < listed.size(); ++i) {
    const auto ind = is_indispensable(a, listed[i]);
    c.expect(ind.verdict == Indispensability::Indispensable, texts[i] + " is indispensable (fiber of size " +
                                                                 std::to_string(ind.fiber.size()) + ")");
    c.expect(!fundamental_certificate(a, listed[i]).has_value(), texts[i] + ": fundamental check UNDECIDED");
  }
  const HoleList holes = enumerate_holes(a, 5);
  c.expect(holes.total() == 1 && holes.degree(1).size() == 1 && holes.degree(1).front() == int_vector({2, 1}),
           "holes up to degree 5 are exactly (2,1)");

  Budgets b;
  b.max_degree = 5;
  const AnalysisReport r = analyze(a, b);
  c.expect(r.verdict.status() == "VERY_AMPLE" && r.verdict.reason == "rank2_conductor",
           "verdict " + r.verdict.status() + " via " + r.verdict.reason);
  const Json report = report_to_json(r, false);
  c.expect(check_certificate(report).ok, "report replays");
  return c.result(report);
}

CaseResult identity_case() {
  Checks c;
  Json evidence = Json::array();
  for (const std::vector<int>& shape : std::vector<std::vector<int>>{{2, 2}, {3, 2}, {3, 3}, {2, 2, 2}}) {
    std::string name = "A";
    for (int r : shape) name += "_" + std::to_string(r);
    try {
      const auto w = verify_lawrence_identity(shape);
      c.expect(true, "lawrence(" + name + ") equals " + name + "_2 after permutation");
      evidence.push_back({{"shape", shape}, {"point_map", w.point_map}, {"row_map", w.row_map}});
    } catch (const Error& e) {
      c.expect(false, name + ": " + e.what());
    }
  }
  return c.result(evidence);
}

CaseResult unimodular_table_case() {
  Checks c;
  Json evidence = Json::object();
  for (int r = 2; r <= 4; ++r)
    for (int s = r; s <= 4; ++s) {
      const auto u = is_unimodular(contingency({r, s}));
      c.expect(u.unimodular, "A_" + std::to_string(r) + "," + std::to_string(s) + " unimodular");
      evidence["A_" + std::to_string(r) + std::to_string(s)] = u.unimodular;
    }
  const Configuration a333 = contingency({3, 3, 3});
  const auto u = is_unimodular(a333);
  c.expect(!u.unimodular && u.scan.witness.has_value(), "A_3,3,3 not unimodular");
  if (u.scan.witness) {
    const MinorPairCertificate cert{*u.scan.witness};
    const auto replayed = replay(a333, Certificate(cert));
    c.expect(replayed.ok, "A_3,3,3 minor pair replays: |minors| " + to_string(cert.witness.first_value) + " and " +
                              to_string(cert.witness.second_value));
    evidence["A_333"] = certificate_to_json(cert, a333);
  }
  for (int r = 2; r <= 3; ++r)
    for (int s = r; s <= 3; ++s) {
      const auto v = is_unimodular(contingency({r, s, 2}));
      c.expect(v.unimodular, "A_" + std::to_string(r) + "," + std::to_string(s) + ",2 unimodular");
      evidence["A_" + std::to_string(r) + std::to_string(s) + "2"] = v.unimodular;
    }
  return c.result(evidence);
}

CaseResult fundamental_case(const std::vector<int>& shape, const char* text) {
  Checks c;
  const Configuration a = contingency(shape);
  const Binomial g = parse_binomial(text, a);
  c.expect(true, "parsed " + to_text(g, a));
  c.expect(evaluate(a, g.plus) == evaluate(a, g.minus), "both monomials have the same degree in ZA");
  c.expect(!is_squarefree(g.plus) && !is_squarefree(g.minus), "neither monomial is squarefree");
  const auto cert = fundamental_certificate(a, g);
  c.expect(cert.has_value(), "fundamental certificate found");
  if (!cert) return c.result(nullptr);
  const auto principal = is_principal_toric(a, cert->subset);
  c.expect(principal.status == PrincipalStatus::Principal && principal.generator &&
               (*principal.generator == g || *principal.generator == g.negated()),
           "I_B is principal on " + std::to_string(cert->subset.size()) + " points, generated by the binomial");
  c.expect(verify_fundamental(a, *cert), "certificate verifies");

  HoleFamilyCertificate family{hole_family_from_principal(a, g), 20, *cert};
  c.expect(!first_non_hole(a, family.family, 20).has_value(), "hole family base + m a_k is a hole for m <= 20");
  const Json doc = bare_certificate(a, "NOT_VERY_AMPLE", family);
  c.expect(check_certificate(doc).ok, "certificate replays");
  return c.result(doc);
}

CaseResult twisted_cubic_case() {
  Checks c;
  const Configuration a = lawrence(twisted_cubic());
  const auto base = is_unimodular(twisted_cubic());
  c.expect(!base.unimodular, "twisted cubic is not unimodular");
  Budgets b;
  const AnalysisReport r = analyze(a, b);
  c.expect(r.verdict.status() == "NOT_VERY_AMPLE", "verdict " + r.verdict.status() + " via " + r.verdict.reason);
  const LawrenceCertificate* cert = nullptr;
  for (const auto& x : r.verdict.certificates)
    if (const auto* l = std::get_if<LawrenceCertificate>(&x)) cert = l;
  c.expect(cert && cert->family, "hole family attached");
  if (!cert || !cert->family) return c.result(report_to_json(r, false));
  c.expect(verify_hole_family(a, cert->family->family, 20), "hole family verifies for m <= 20");
  const Json report = report_to_json(r, false);
  c.expect(check_certificate(report).ok, "report replays");

  Json corrupted = report;
  auto& fam = corrupted["certificate"]["hole_family"]["base"];
  for (Index i = 0; i < a.dimension(); ++i)
    fam[static_cast<std::size_t>(i)] = fam[static_cast<std::size_t>(i)].get<Count>() + to_count(a.point(0)(i));
  corrupted.erase("verdict");
  const ReplayResult bad = check_certificate(corrupted);
  c.expect(!bad.ok, "base moved by a_1 is rejected: " + bad.message);
  return c.result(report);
}

CaseResult corollary_case() {
  Checks c;
  const Configuration a = contingency({3, 3, 3, 2});
  const Verdict v = verdict(a);
  c.expect(v.status() == "NOT_VERY_AMPLE" && v.reason == "lawrence_corollary",
           "verdict " + v.status() + " via " + v.reason);
  const LawrenceCertificate* cert = nullptr;
  for (const auto& x : v.certificates)
    if (const auto* l = std::get_if<LawrenceCertificate>(&x)) cert = l;
  c.expect(cert && cert->base_minors, "minor pair of the base embedded");
  if (cert) {
    c.expect(cert->match.base == contingency({3, 3, 3}).matrix(), "base is A_3,3,3");
    if (cert->base_minors)
      c.expect(replay(contingency({3, 3, 3}), Certificate(MinorPairCertificate{*cert->base_minors})).ok,
               "minor pair replays on A_3,3,3: |minors| " + to_string(cert->base_minors->first_value) + " and " +
                   to_string(cert->base_minors->second_value));
  }
  const auto replayed = replay(a, v);
  c.expect(replayed.ok, "verdict replays" + (replayed.ok ? std::string() : ": " + replayed.message));
  return c.result(Json{{"configuration", configuration_to_json(a)}, {"verdict", verdict_to_json(v, a)}});
}

CaseResult lawrence_iff_case() {
  Checks c;
  Json evidence = Json::array();
  const std::vector<std::pair<std::string, Configuration>> inputs = {
      {"A_2,2", contingency({2, 2})},
      {"A_2,3", contingency({2, 3})},
      {"A_3,3", contingency({3, 3})},
      {"A_2,2,2", contingency({2, 2, 2})},
      {"twisted cubic", twisted_cubic()},
      {"remark curve", remark_curve()},
      {"square", Configuration::from_points({{0, 0, 1}, {2, 1, 1}, {1, 0, 1}, {0, 1, 1}})},
      {"segment", Configuration::from_points({{0, 1}, {1, 1}, {2, 1}})},
  };
  MinorOptions full;
  full.stop_at_second_value = false;
  for (const auto& [name, a] : inputs) {
    const bool u = is_unimodular(a, full).unimodular;
    const Configuration l = lawrence(a);
    const bool ul = is_unimodular(l, full).unimodular;
    const Verdict v = verdict(l);
    const bool expected = u ? v.ampleness == Ampleness::VeryAmple : v.ampleness == Ampleness::NotVeryAmple;
    c.expect(u == ul && expected, name + ": unimodular " + (u ? "yes" : "no") + ", lifting " + (ul ? "yes" : "no") +
                                      ", lifting " + v.status());
    evidence.push_back({{"name", name}, {"unimodular", u}, {"lifting_unimodular", ul}, {"lifting_status", v.status()}});
  }
  return c.result(evidence);
}

using CaseFn = std::function<CaseResult()>;

const std::vector<std::pair<std::string, CaseFn>>& table() {
  static const std::vector<std::pair<std::string, CaseFn>> cases = {
      {"remark-curve", remark_curve_case},
      {"lawrence-identity", identity_case},
      {"unimodular-table", unimodular_table_case},
      {"a444-fundamental", [] { return fundamental_case({4, 4, 4}, cases::kTable444Binomial); }},
      {"a643-fundamental", [] { return fundamental_case({6, 4, 3}, cases::kTable643Binomial); }},
      {"twisted-cubic-lawrence", twisted_cubic_case},
      {"a3332-corollary", corollary_case},
      {"lawrence-iff-unimodular", lawrence_iff_case},
  };
  return cases;
}

}  // namespace

const std::vector<std::string>& case_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> n;
    for (const auto& [name, fn] : table()) n.push_back(name);
    return n;
  }();
  return names;
}

CaseResult run_case(const std::string& name) {
  for (const auto& [n, fn] : table())
    if (n == name) return fn();
  throw std::out_of_range("unknown case " + name);
}

}  // namespace toric::cli
