#pragma once

#include "toric/verdict.hpp"

#include "json.hpp"

#include <map>
#include <optional>
#include <string>

namespace toric {

using Json = nlohmann::ordered_json;

/// Reads {"points": [[...], ...]} with optional "grading" and "labels",
/// {"contingency": [r1, ..., rn]} or {"lawrence_of": <configuration>}.
/// Throws Error(Parse) on malformed input.
Configuration configuration_from_json(const Json& j);
/// Always the explicit form: points, grading and labels if any.
Json configuration_to_json(const Configuration& a);

// Point indices are 1-based in JSON, as in binomial text.
Json certificate_to_json(const Certificate& c, const Configuration& a);
Certificate certificate_from_json(const Json& j, const Configuration& a);

Json fundamental_to_json(const FundamentalCertificate& f, const Configuration& a);
Json holes_to_json(const HoleList& h);

Json verdict_to_json(const Verdict& v, const Configuration& a);
Verdict verdict_from_json(const Json& j, const Configuration& a);

/// The certificate that carries the status, if any.
std::optional<Certificate> primary_certificate(const Verdict& v);

struct Budgets {
  Index max_degree = 3;
  std::uint64_t minor_cap = 5'000'000;
  std::uint64_t spair_budget = 1'000'000;
  Count family_length = 20;

  VerdictOptions options() const;
};

struct AnalysisReport {
  Configuration configuration;
  Budgets budgets;
  std::optional<bool> unimodular;
  std::vector<Integer> minor_values;  // distinct nonzero |minors| seen
  std::optional<GroebnerBasis> toric;
  std::optional<HoleList> holes;
  std::vector<StageRecord> stages;
  Verdict verdict;
  std::map<std::string, double> timing_ms;  // excluded from comparisons
};

/// Runs the stages of an analysis. A stage that exhausts its budget is
/// recorded, not thrown.
AnalysisReport analyze(const Configuration& a, const Budgets& budgets);

/// True when some stage exhausted its budget and ampleness stayed open.
bool cap_blocked(const AnalysisReport& r);

Json report_to_json(const AnalysisReport& r, bool with_timing = true);
AnalysisReport report_from_json(const Json& j);

/// Replays a report, a {"verdict": ...} document or a bare
/// {"configuration", "status", "certificate"} document.
ReplayResult check_certificate(const Json& j);

std::string report_text(const AnalysisReport& r);

/// Indented JSON with arrays of scalars kept on one line.
std::string dump_json(const Json& j);

}  // namespace toric
