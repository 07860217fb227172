#include "toric/report.hpp"

#include <chrono>
#include <sstream>

namespace toric {
namespace {

[[noreturn]] void parse_error(const std::string& what) { throw Error(ErrorCode::Parse, what); }

const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) parse_error(std::string("missing field \"") + key + "\"");
  return j.at(key);
}

Json vector_json(const IntVector& v) {
  Json out = Json::array();
  for (Index i = 0; i < v.size(); ++i) out.push_back(to_count(v(i)));
  return out;
}

IntVector vector_from(const Json& j) {
  if (!j.is_array()) parse_error("expected an array of integers");
  IntVector v(static_cast<Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) {
    if (!j[i].is_number_integer()) parse_error("expected an integer entry");
    v(static_cast<Index>(i)) = Integer(j[i].get<long long>());
  }
  return v;
}

Json integer_json(const Integer& x) { return to_string(x); }

Integer integer_from(const Json& j) {
  if (j.is_number_integer()) return Integer(j.get<long long>());
  if (!j.is_string()) parse_error("expected an integer string");
  try {
    return Integer(j.get<std::string>());
  } catch (const std::exception&) {
    parse_error("bad integer \"" + j.get<std::string>() + "\"");
  }
}

Rational rational_from(const Json& j) {
  if (j.is_number_integer()) return Rational(j.get<long long>());
  if (!j.is_string()) parse_error("expected a rational string");
  return parse_rational(j.get<std::string>());
}

Json indices_json(const std::vector<Index>& s) {
  Json out = Json::array();
  for (Index i : s) out.push_back(i + 1);
  return out;
}

std::vector<Index> indices_from(const Json& j) {
  if (!j.is_array()) parse_error("expected an array of indices");
  std::vector<Index> s;
  for (const auto& x : j) {
    if (!x.is_number_integer()) parse_error("expected an integer index");
    s.push_back(static_cast<Index>(x.get<long long>()) - 1);
  }
  return s;
}

Json matrix_rows_json(const IntMatrix& m) {
  Json rows = Json::array();
  for (Index i = 0; i < m.rows(); ++i) rows.push_back(vector_json(m.row(i).transpose()));
  return rows;
}

IntMatrix matrix_from_rows(const Json& j, Index cols) {
  if (!j.is_array()) parse_error("expected an array of rows");
  IntMatrix m(static_cast<Index>(j.size()), cols);
  for (std::size_t i = 0; i < j.size(); ++i) {
    const IntVector row = vector_from(j[i]);
    if (row.size() != cols) parse_error("rows of unequal length");
    m.row(static_cast<Index>(i)) = row.transpose();
  }
  return m;
}

Json witness_json(const MinorWitness& w) {
  return Json{{"rows", indices_json(w.rows)},
              {"first_columns", indices_json(w.first_columns)},
              {"first_value", integer_json(w.first_value)},
              {"second_columns", indices_json(w.second_columns)},
              {"second_value", integer_json(w.second_value)}};
}

MinorWitness witness_from(const Json& j) {
  return MinorWitness{indices_from(field(j, "rows")), indices_from(field(j, "first_columns")),
                      integer_from(field(j, "first_value")), indices_from(field(j, "second_columns")),
                      integer_from(field(j, "second_value"))};
}

}  // namespace

Json holes_to_json(const HoleList& h) {
  Json by_degree = Json::array();
  for (const auto& level : h.by_degree) {
    Json pts = Json::array();
    for (const auto& p : level) pts.push_back(vector_json(p));
    by_degree.push_back(std::move(pts));
  }
  return Json{{"max_degree", h.max_degree}, {"by_degree", std::move(by_degree)}};
}

namespace {

HoleList holes_from(const Json& j) {
  HoleList h;
  h.max_degree = field(j, "max_degree").get<Index>();
  for (const auto& level : field(j, "by_degree")) {
    std::vector<IntVector> pts;
    for (const auto& p : level) pts.push_back(vector_from(p));
    h.by_degree.push_back(std::move(pts));
  }
  if (static_cast<Index>(h.by_degree.size()) != h.max_degree) parse_error("hole list length differs from max_degree");
  return h;
}

const char* source_name(FundamentalSource s) {
  return s == FundamentalSource::Support ? "support" : "coordinate_section";
}

}  // namespace

Json fundamental_to_json(const FundamentalCertificate& f, const Configuration& a) {
  Json functional = Json::array();
  for (Index i = 0; i < f.face.functional().size(); ++i) functional.push_back(to_string(f.face.functional()(i)));
  return Json{{"binomial", to_text(f.binomial, a)},
              {"subset", indices_json(f.subset)},
              {"functional", std::move(functional)},
              {"level", to_string(f.face.level())},
              {"source", source_name(f.source)}};
}

namespace {

FundamentalCertificate fundamental_from(const Json& j, const Configuration& a) {
  const Binomial g = parse_binomial(field(j, "binomial").get<std::string>(), a);
  std::vector<Index> subset = indices_from(field(j, "subset"));
  const Json& fj = field(j, "functional");
  if (!fj.is_array()) parse_error("functional must be an array");
  RatVector functional(static_cast<Index>(fj.size()));
  for (std::size_t i = 0; i < fj.size(); ++i) functional(static_cast<Index>(i)) = rational_from(fj[i]);
  const Rational level = rational_from(field(j, "level"));
  const std::string source = field(j, "source").get<std::string>();
  if (source != "support" && source != "coordinate_section") parse_error("unknown fundamental source " + source);
  if (functional.size() != a.dimension()) throw Error(ErrorCode::DimensionMismatch, "functional has the wrong length");
  FaceCertificate face(a, subset, functional, level);
  return FundamentalCertificate{g, std::move(subset), std::move(face),
                                source == "support" ? FundamentalSource::Support : FundamentalSource::CoordinateSection};
}

Json family_json(const HoleFamilyCertificate& c, const Configuration& a) {
  Json j{{"type", "hole_family"},
         {"base", vector_json(c.family.base)},
         {"direction_index", c.family.direction + 1},
         {"checked_up_to", c.checked_up_to}};
  if (c.family.source) {
    j["binomial"] = to_text(*c.family.source, a);
    j["roles"] = Json::array({c.family.first_role + 1, c.family.second_role + 1});
  }
  if (c.fundamental) j["fundamental"] = fundamental_to_json(*c.fundamental, a);
  return j;
}

HoleFamilyCertificate family_from(const Json& j, const Configuration& a) {
  HoleFamilyCertificate c;
  c.family.base = vector_from(field(j, "base"));
  c.family.direction = field(j, "direction_index").get<Index>() - 1;
  c.checked_up_to = field(j, "checked_up_to").get<Count>();
  if (j.contains("binomial")) {
    c.family.source = parse_binomial(j.at("binomial").get<std::string>(), a);
    const auto roles = indices_from(field(j, "roles"));
    if (roles.size() != 2) parse_error("roles must name two variables");
    c.family.first_role = roles[0];
    c.family.second_role = roles[1];
  }
  if (j.contains("fundamental")) c.fundamental = fundamental_from(j.at("fundamental"), a);
  return c;
}

Json optional_family(const std::optional<HoleFamilyCertificate>& f, const Configuration& a) {
  return f ? family_json(*f, a) : Json(nullptr);
}

std::optional<HoleFamilyCertificate> optional_family_from(const Json& j, const char* key, const Configuration& a) {
  if (!j.contains(key) || j.at(key).is_null()) return std::nullopt;
  return family_from(j.at(key), a);
}

struct CertificateJson {
  const Configuration& a;

  Json operator()(const UnimodularCertificate& c) const {
    Json j{{"type", "unimodular"}, {"minors_examined", c.minors_examined}};
    if (c.value) j["value"] = integer_json(*c.value);
    return j;
  }
  Json operator()(const MinorPairCertificate& c) const {
    Json j{{"type", "minor_pair"}};
    j.update(witness_json(c.witness));
    return j;
  }
  Json operator()(const HolesCertificate& c) const {
    Json j{{"type", "holes"}};
    j.update(holes_to_json(c.holes));
    return j;
  }
  Json operator()(const HoleFamilyCertificate& c) const { return family_json(c, a); }
  Json operator()(const LawrenceCertificate& c) const {
    Json pairs = Json::array();
    for (const auto& [p, q] : c.match.pairs) pairs.push_back(Json::array({p + 1, q + 1}));
    return Json{{"type", "lawrence_corollary"},
                {"pairs", std::move(pairs)},
                {"base", matrix_rows_json(c.match.base)},
                {"base_unimodular", c.base_unimodular},
                {"minor_pair", c.base_minors ? witness_json(*c.base_minors) : Json(nullptr)},
                {"hole_family", optional_family(c.family, a)}};
  }
  Json operator()(const Rank2Certificate& c) const {
    const Rank2Analysis& r = c.analysis;
    return Json{{"type", "rank2_conductor"},
                {"origin_index", r.origin + 1},
                {"top_index", r.top + 1},
                {"origin_point", vector_json(r.origin_point)},
                {"top_point", vector_json(r.top_point)},
                {"step", vector_json(r.step)},
                {"positions", r.positions},
                {"length", r.length},
                {"conductor_low", r.conductor_low},
                {"conductor_high", r.conductor_high},
                {"hole_family", optional_family(c.family, a)}};
  }
};

std::string ampleness_name(Ampleness a) {
  switch (a) {
    case Ampleness::VeryAmple: return "VERY_AMPLE";
    case Ampleness::NotVeryAmple: return "NOT_VERY_AMPLE";
    case Ampleness::Unknown: break;
  }
  return "UNKNOWN";
}

Ampleness ampleness_from(const std::string& s) {
  if (s == "VERY_AMPLE") return Ampleness::VeryAmple;
  if (s == "NOT_VERY_AMPLE") return Ampleness::NotVeryAmple;
  if (s == "UNKNOWN") return Ampleness::Unknown;
  parse_error("unknown ampleness " + s);
}

void normality_from(const std::string& s, Verdict& v) {
  if (s == "NORMAL") {
    v.normality = Normality::Normal;
  } else if (s == "NOT_NORMAL") {
    v.normality = Normality::NotNormal;
  } else if (s == "UNKNOWN") {
    v.normality = Normality::Unknown;
  } else if (s.rfind("NORMAL_UP_TO(", 0) == 0 && s.back() == ')') {
    v.normality = Normality::NormalUpTo;
    try {
      v.normal_up_to = std::stol(s.substr(13, s.size() - 14));
    } catch (const std::exception&) {
      parse_error("bad degree in " + s);
    }
  } else {
    parse_error("unknown normality " + s);
  }
}

/// Verdict claimed by a bare status string.
Verdict verdict_from_status(const std::string& s) {
  Verdict v;
  if (s == "VERY_AMPLE" || s == "NOT_VERY_AMPLE") {
    v.ampleness = ampleness_from(s);
  } else if (s == "NOT_NORMAL" || s == "UNKNOWN" || s.rfind("NORMAL_UP_TO(", 0) == 0) {
    normality_from(s, v);
  } else {
    parse_error("unknown status " + s);
  }
  return v;
}

Json stage_json(const StageRecord& s) {
  Json j{{"stage", s.stage}, {"status", s.status}};
  if (!s.message.empty()) j["message"] = s.message;
  return j;
}

}  // namespace

Configuration configuration_from_json(const Json& j) {
  try {
    if (!j.is_object()) parse_error("configuration must be a JSON object");
    if (j.contains("contingency")) {
      std::vector<int> shape;
      for (const auto& r : j.at("contingency")) {
        if (!r.is_number_integer()) parse_error("contingency shape entries must be integers");
        shape.push_back(r.get<int>());
      }
      return contingency(shape);
    }
    if (j.contains("lawrence_of")) return lawrence(configuration_from_json(j.at("lawrence_of")));
    const Json& pts = field(j, "points");
    if (!pts.is_array() || pts.empty()) parse_error("points must be a nonempty array");
    std::vector<IntVector> columns;
    for (const auto& p : pts) columns.push_back(vector_from(p));
    for (const auto& c : columns)
      if (c.size() != columns.front().size()) parse_error("points of unequal length");
    std::vector<Label> labels;
    if (j.contains("labels")) {
      for (const auto& l : j.at("labels")) labels.push_back(l.get<Label>());
      if (labels.size() != columns.size()) parse_error("one label per point required");
    }
    IntMatrix m = columns_matrix(columns);
    if (j.contains("grading")) {
      const Json& g = j.at("grading");
      if (!g.is_array()) parse_error("grading must be an array");
      RatVector w(static_cast<Index>(g.size()));
      for (std::size_t i = 0; i < g.size(); ++i) w(static_cast<Index>(i)) = rational_from(g[i]);
      return Configuration(std::move(m), std::move(w), std::move(labels));
    }
    return Configuration(std::move(m), std::move(labels));
  } catch (const nlohmann::json::exception& e) {
    parse_error(std::string("configuration: ") + e.what());
  }
}

Json configuration_to_json(const Configuration& a) {
  Json pts = Json::array();
  for (Index i = 0; i < a.size(); ++i) pts.push_back(vector_json(a.point(i)));
  Json grading = Json::array();
  for (Index i = 0; i < a.grading().size(); ++i) grading.push_back(to_string(a.grading()(i)));
  Json j{{"points", std::move(pts)}, {"grading", std::move(grading)}};
  if (a.has_labels()) j["labels"] = a.labels();
  return j;
}

Json certificate_to_json(const Certificate& c, const Configuration& a) { return std::visit(CertificateJson{a}, c); }

Certificate certificate_from_json(const Json& j, const Configuration& a) {
  try {
    const std::string type = field(j, "type").get<std::string>();
    if (type == "unimodular") {
      UnimodularCertificate c;
      if (j.contains("minors_examined")) c.minors_examined = j.at("minors_examined").get<std::uint64_t>();
      if (j.contains("value")) c.value = integer_from(j.at("value"));
      return c;
    }
    if (type == "minor_pair") return MinorPairCertificate{witness_from(j)};
    if (type == "holes") return HolesCertificate{holes_from(j)};
    if (type == "hole_family") return family_from(j, a);
    if (type == "lawrence_corollary") {
      LawrenceCertificate c;
      for (const auto& p : field(j, "pairs")) {
        const auto idx = indices_from(p);
        if (idx.size() != 2) parse_error("a Lawrence pair has two indices");
        c.match.pairs.emplace_back(idx[0], idx[1]);
      }
      c.match.base = matrix_from_rows(field(j, "base"), static_cast<Index>(c.match.pairs.size()));
      c.base_unimodular = field(j, "base_unimodular").get<bool>();
      if (j.contains("minor_pair") && !j.at("minor_pair").is_null()) c.base_minors = witness_from(j.at("minor_pair"));
      c.family = optional_family_from(j, "hole_family", a);
      return c;
    }
    if (type == "rank2_conductor") {
      Rank2Certificate c;
      Rank2Analysis& r = c.analysis;
      r.origin = field(j, "origin_index").get<Index>() - 1;
      r.top = field(j, "top_index").get<Index>() - 1;
      r.origin_point = vector_from(field(j, "origin_point"));
      r.top_point = vector_from(field(j, "top_point"));
      r.step = vector_from(field(j, "step"));
      r.positions = field(j, "positions").get<std::vector<Count>>();
      r.length = field(j, "length").get<Count>();
      r.conductor_low = field(j, "conductor_low").get<Count>();
      r.conductor_high = field(j, "conductor_high").get<Count>();
      c.family = optional_family_from(j, "hole_family", a);
      return c;
    }
    parse_error("unknown certificate type " + type);
  } catch (const nlohmann::json::exception& e) {
    parse_error(std::string("certificate: ") + e.what());
  }
}

Json verdict_to_json(const Verdict& v, const Configuration& a) {
  Json certs = Json::array();
  for (const auto& c : v.certificates) certs.push_back(certificate_to_json(c, a));
  return Json{{"status", v.status()},
              {"ampleness", ampleness_name(v.ampleness)},
              {"normality", v.normality_name()},
              {"reason", v.reason},
              {"certificates", std::move(certs)},
              {"notes", v.notes}};
}

Verdict verdict_from_json(const Json& j, const Configuration& a) {
  try {
    Verdict v;
    v.ampleness = ampleness_from(field(j, "ampleness").get<std::string>());
    normality_from(field(j, "normality").get<std::string>(), v);
    v.reason = field(j, "reason").get<std::string>();
    for (const auto& c : field(j, "certificates")) v.certificates.push_back(certificate_from_json(c, a));
    if (j.contains("notes")) v.notes = j.at("notes").get<std::vector<std::string>>();
    if (j.contains("status") && j.at("status").get<std::string>() != v.status())
      parse_error("status " + j.at("status").get<std::string>() + " disagrees with ampleness and normality");
    return v;
  } catch (const nlohmann::json::exception& e) {
    parse_error(std::string("verdict: ") + e.what());
  }
}

std::optional<Certificate> primary_certificate(const Verdict& v) {
  for (const auto& c : v.certificates) {
    switch (v.ampleness) {
      case Ampleness::VeryAmple:
        if (std::holds_alternative<UnimodularCertificate>(c) || std::holds_alternative<LawrenceCertificate>(c) ||
            std::holds_alternative<Rank2Certificate>(c))
          return c;
        break;
      case Ampleness::NotVeryAmple:
        if (std::holds_alternative<LawrenceCertificate>(c) || std::holds_alternative<Rank2Certificate>(c))
          return c;
        if (const auto* f = std::get_if<HoleFamilyCertificate>(&c); f && f->fundamental) return c;
        break;
      case Ampleness::Unknown:
        if (std::holds_alternative<HolesCertificate>(c)) return c;
        break;
    }
  }
  return std::nullopt;
}

VerdictOptions Budgets::options() const {
  VerdictOptions o;
  o.max_degree = max_degree;
  o.family_length = family_length;
  o.minors.cap = minor_cap;
  o.groebner.spair_budget = spair_budget;
  return o;
}

AnalysisReport analyze(const Configuration& a, const Budgets& budgets) {
  const auto start = std::chrono::steady_clock::now();
  const VerdictOptions options = budgets.options();
  VerdictTrace trace;
  Verdict v = verdict(a, options, &trace);
  AnalysisReport r{a, budgets, std::nullopt, {}, std::nullopt, std::nullopt, {}, std::move(v), {}};

  if (trace.unimodularity) {
    r.unimodular = trace.unimodularity->unimodular;
    r.minor_values = trace.unimodularity->scan.distinct_nonzero();
  } else if (r.verdict.reason == "lawrence_base_unimodular") {
    r.unimodular = true;  // Lawrence lifting of a unimodular base
  } else if (r.verdict.reason == "lawrence_corollary") {
    r.unimodular = false;
  }

  const auto has_stage = [&](const std::string& name) {
    return std::any_of(trace.stages.begin(), trace.stages.end(),
                       [&](const StageRecord& s) { return s.stage == name; });
  };
  r.toric = std::move(trace.toric);
  if (!r.toric && !has_stage("toric_ideal")) {
    if (a.size() > options.groebner.max_variables) {
      trace.stages.push_back({"toric_ideal", "skipped",
                              std::to_string(a.size()) + " variables exceed the limit of " +
                                  std::to_string(options.groebner.max_variables)});
    } else {
      try {
        r.toric = toric_ideal(a, options.groebner);
        trace.stages.push_back({"toric_ideal", "done", ""});
      } catch (const Error& e) {
        if (e.code() != ErrorCode::CapExceeded && e.code() != ErrorCode::NonterminationGuard) throw;
        trace.stages.push_back({"toric_ideal", std::string(error_name(e.code())), e.detail()});
      }
    }
  }

  r.holes = std::move(trace.holes);
  if (!r.holes && !has_stage("holes") && options.max_degree >= 1) {
    if (r.verdict.normality == Normality::Normal) {
      HoleList empty;
      empty.max_degree = options.max_degree;
      empty.by_degree.assign(static_cast<std::size_t>(options.max_degree), {});
      r.holes = std::move(empty);
      trace.stages.push_back({"holes", "implied", "normal, so no holes"});
    } else {
      trace.stages.push_back({"holes", "skipped", "the verdict already carries a hole family"});
    }
  }
  r.stages = std::move(trace.stages);
  r.timing_ms["total"] =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return r;
}

bool cap_blocked(const AnalysisReport& r) {
  if (r.verdict.ampleness != Ampleness::Unknown) return false;
  return std::any_of(r.stages.begin(), r.stages.end(), [](const StageRecord& s) {
    return s.status == "CAP_EXCEEDED" || s.status == "NONTERMINATION_GUARD";
  });
}

Json report_to_json(const AnalysisReport& r, bool with_timing) {
  const Configuration& a = r.configuration;
  Json minors = Json::array();
  for (const auto& m : r.minor_values) minors.push_back(integer_json(m));
  Json toric = nullptr;
  if (r.toric) {
    Json elements = Json::array();
    for (const auto& g : r.toric->elements()) elements.push_back(to_text(g, a));
    toric = Json{{"order", "grevlex"}, {"size", r.toric->size()}, {"elements", std::move(elements)}};
  }
  Json stages = Json::array();
  for (const auto& s : r.stages) stages.push_back(stage_json(s));
  const auto primary = primary_certificate(r.verdict);
  Json j{{"configuration", configuration_to_json(a)},
         {"summary", {{"points", a.size()}, {"dimension", a.dimension()}}},
         {"budgets",
          {{"max_degree", r.budgets.max_degree},
           {"minor_cap", r.budgets.minor_cap},
           {"spair_budget", r.budgets.spair_budget},
           {"family_length", r.budgets.family_length}}},
         {"unimodular", r.unimodular ? Json(*r.unimodular) : Json(nullptr)},
         {"minor_values", std::move(minors)},
         {"toric_basis", std::move(toric)},
         {"holes", r.holes ? holes_to_json(*r.holes) : Json(nullptr)},
         {"stages", std::move(stages)},
         {"status", r.verdict.status()},
         {"certificate", primary ? certificate_to_json(*primary, a) : Json(nullptr)},
         {"verdict", verdict_to_json(r.verdict, a)}};
  if (with_timing) j["timing_ms"] = r.timing_ms;
  return j;
}

AnalysisReport report_from_json(const Json& j) {
  try {
    const Configuration a = configuration_from_json(field(j, "configuration"));
    Budgets b;
    const Json& bj = field(j, "budgets");
    b.max_degree = field(bj, "max_degree").get<Index>();
    b.minor_cap = field(bj, "minor_cap").get<std::uint64_t>();
    b.spair_budget = field(bj, "spair_budget").get<std::uint64_t>();
    b.family_length = field(bj, "family_length").get<Count>();
    AnalysisReport r{a, b, std::nullopt, {}, std::nullopt, std::nullopt, {}, verdict_from_json(field(j, "verdict"), a),
                     {}};
    if (!field(j, "unimodular").is_null()) r.unimodular = j.at("unimodular").get<bool>();
    for (const auto& m : field(j, "minor_values")) r.minor_values.push_back(integer_from(m));
    if (const Json& t = field(j, "toric_basis"); !t.is_null()) {
      std::vector<Binomial> elements;
      for (const auto& e : field(t, "elements")) elements.push_back(parse_binomial(e.get<std::string>(), a));
      r.toric = GroebnerBasis(MonomialOrder(a.size()), std::move(elements));
    }
    if (const Json& h = field(j, "holes"); !h.is_null()) r.holes = holes_from(h);
    for (const auto& s : field(j, "stages"))
      r.stages.push_back({field(s, "stage").get<std::string>(), field(s, "status").get<std::string>(),
                          s.value("message", std::string())});
    if (j.contains("timing_ms")) r.timing_ms = j.at("timing_ms").get<std::map<std::string, double>>();
    return r;
  } catch (const nlohmann::json::exception& e) {
    parse_error(std::string("report: ") + e.what());
  }
}

ReplayResult check_certificate(const Json& j) {
  const Configuration a = configuration_from_json(field(j, "configuration"));
  VerdictOptions options;
  if (j.contains("budgets")) {
    const Json& bj = j.at("budgets");
    Budgets b;
    b.max_degree = bj.value("max_degree", b.max_degree);
    b.minor_cap = bj.value("minor_cap", b.minor_cap);
    b.spair_budget = bj.value("spair_budget", b.spair_budget);
    b.family_length = bj.value("family_length", b.family_length);
    options = b.options();
  }
  Verdict v;
  // certificates whose embedded data fail validation are replay failures
  try {
    if (j.contains("verdict")) {
      v = verdict_from_json(j.at("verdict"), a);
      if (j.contains("status") && j.at("status") != v.status())
        return ReplayResult::failure("top-level status disagrees with the verdict");
    } else {
      v = verdict_from_status(field(j, "status").get<std::string>());
      const Json& c = field(j, "certificate");
      if (!c.is_null()) v.certificates.push_back(certificate_from_json(c, a));
    }
  } catch (const Error& e) {
    if (e.code() == ErrorCode::Parse) throw;
    return ReplayResult::failure(std::string("certificate rejected: ") + e.what());
  } catch (const nlohmann::json::exception& e) {
    parse_error(e.what());
  }
  return replay(a, v, options);
}

namespace {

void pretty(const Json& j, int indent, std::string& out) {
  const auto scalar_array = [](const Json& a) {
    return std::all_of(a.begin(), a.end(), [](const Json& x) { return !x.is_structured(); });
  };
  const std::string pad(static_cast<std::size_t>(indent + 2), ' ');
  if (j.is_array() && (j.empty() || scalar_array(j))) {
    out += j.dump();
  } else if (j.is_array()) {
    out += "[\n";
    for (std::size_t i = 0; i < j.size(); ++i) {
      out += pad;
      pretty(j[i], indent + 2, out);
      out += i + 1 < j.size() ? ",\n" : "\n";
    }
    out += std::string(static_cast<std::size_t>(indent), ' ') + "]";
  } else if (j.is_object() && !j.empty()) {
    out += "{\n";
    std::size_t i = 0;
    for (auto it = j.begin(); it != j.end(); ++it, ++i) {
      out += pad + Json(it.key()).dump() + ": ";
      pretty(it.value(), indent + 2, out);
      out += i + 1 < j.size() ? ",\n" : "\n";
    }
    out += std::string(static_cast<std::size_t>(indent), ' ') + "}";
  } else {
    out += j.dump();
  }
}

}  // namespace

std::string dump_json(const Json& j) {
  std::string out;
  pretty(j, 0, out);
  return out + "\n";
}

std::string report_text(const AnalysisReport& r) {
  std::ostringstream out;
  const Configuration& a = r.configuration;
  out << "points " << a.size() << ", dimension " << a.dimension() << "\n";
  out << "unimodular: " << (r.unimodular ? (*r.unimodular ? "yes" : "no") : "unknown");
  if (!r.minor_values.empty()) {
    out << " (|minors| seen:";
    for (const auto& m : r.minor_values) out << ' ' << m;
    out << ")";
  }
  out << "\n";
  if (r.toric) out << "toric ideal: " << r.toric->size() << " Groebner basis elements\n";
  if (r.holes) {
    out << "holes up to degree " << r.holes->max_degree << ": " << r.holes->total() << "\n";
    for (Index m = 1; m <= r.holes->max_degree; ++m)
      for (const auto& p : r.holes->degree(m)) {
        out << "  degree " << m << ": (";
        for (Index i = 0; i < p.size(); ++i) out << (i ? "," : "") << p(i);
        out << ")\n";
      }
  }
  for (const auto& s : r.stages)
    if (s.status != "done") out << "stage " << s.stage << ": " << s.status << (s.message.empty() ? "" : " - ") << s.message << "\n";
  out << "verdict: " << r.verdict.status() << " [" << r.verdict.reason << "]";
  if (r.verdict.ampleness != Ampleness::Unknown) out << ", " << r.verdict.normality_name();
  out << "\n";
  for (const auto& n : r.verdict.notes) {
    const bool shown = std::any_of(r.stages.begin(), r.stages.end(), [&](const StageRecord& s) {
      return s.status != "done" && !s.message.empty() && n.find(s.message) != std::string::npos;
    });
    if (!shown) out << "note: " << n << "\n";
  }
  return out.str();
}

}  // namespace toric
