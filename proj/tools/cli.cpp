#include "cli.hpp"

#include "CLI11.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

namespace toric::cli {
namespace {

Json read_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::Parse, "cannot open " + path);
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::Parse, path + ": " + e.what());
  }
}

Configuration read_configuration(const std::string& path) {
  const Json j = read_json(path);
  // a report or certificate document also carries its configuration
  if (j.is_object() && j.contains("configuration")) return configuration_from_json(j.at("configuration"));
  return configuration_from_json(j);
}

bool is_cap(const Error& e) {
  return e.code() == ErrorCode::CapExceeded || e.code() == ErrorCode::NonterminationGuard;
}

int fail_with(std::ostream& err, const Error& e, const std::string& stage) {
  err << (stage.empty() ? "" : stage + ": ") << e.what() << "\n";
  return is_cap(e) ? kCapExceeded : kInputError;
}

void check_threads(std::ostream& err) {
  // work inside a command runs on one thread; the variable is validated only
  if (const char* t = std::getenv("TORIC_THREADS")) {
    char* end = nullptr;
    const long n = std::strtol(t, &end, 10);
    if (end == t || *end != '\0' || n < 1) err << "warning: ignoring TORIC_THREADS=" << t << "\n";
  }
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  check_threads(err);
  CLI::App app{"Toric ideals, semigroup holes and very ampleness certificates"};
  app.require_subcommand(1);

  std::string input;
  Budgets budgets;
  bool json = false;
  bool no_timing = false;

  auto* analyze_cmd = app.add_subcommand("analyze", "Unimodularity, toric ideal, holes and verdict");
  analyze_cmd->add_option("input", input, "configuration JSON")->required();
  analyze_cmd->add_option("--max-degree", budgets.max_degree, "hole search degree")->capture_default_str();
  analyze_cmd->add_option("--minor-cap", budgets.minor_cap, "maximal minors examined")->capture_default_str();
  analyze_cmd->add_option("--spair-budget", budgets.spair_budget, "S-pairs reduced per Groebner basis")
      ->capture_default_str();
  analyze_cmd->add_option("--family-length", budgets.family_length, "hole family members checked")
      ->capture_default_str();
  analyze_cmd->add_flag("--json", json, "print the JSON report");
  analyze_cmd->add_flag("--no-timing", no_timing, "omit timing from the JSON report");

  auto* toric_cmd = app.add_subcommand("toric", "Reduced Groebner basis of the toric ideal (grevlex)");
  toric_cmd->add_option("input", input, "configuration JSON")->required();
  toric_cmd->add_option("--spair-budget", budgets.spair_budget, "S-pairs reduced per Groebner basis")
      ->capture_default_str();
  toric_cmd->add_flag("--json", json, "print JSON");

  bool csv = false;
  auto* holes_cmd = app.add_subcommand("holes", "Holes of the semigroup up to a degree");
  holes_cmd->add_option("input", input, "configuration JSON")->required();
  holes_cmd->add_option("--max-degree", budgets.max_degree, "largest degree")->capture_default_str();
  holes_cmd->add_flag("--json", json, "print JSON");
  holes_cmd->add_flag("--csv", csv, "print degree,coordinates rows");

  auto* lawrence_cmd = app.add_subcommand("lawrence", "Print the Lawrence lifting as a configuration");
  lawrence_cmd->add_option("input", input, "configuration JSON")->required();

  std::string binomial;
  auto* fundamental_cmd = app.add_subcommand("fundamental", "Search a face on which a binomial generates");
  fundamental_cmd->add_option("input", input, "configuration JSON")->required();
  fundamental_cmd->add_option("--binomial", binomial, "binomial text, e.g. x[1]^2*x[2] - x[3]^2*x[4]")->required();

  std::vector<std::string> case_list;
  bool all = false;
  std::string out_dir = "certificates";
  auto* verify_cmd = app.add_subcommand("verify-paper", "Run the pinned reference cases");
  verify_cmd->add_option("--case", case_list, "case name (repeatable)");
  verify_cmd->add_flag("--all", all, "run every case");
  verify_cmd->add_option("--out-dir", out_dir, "directory for the evidence files")->capture_default_str();
  bool list = false;
  verify_cmd->add_flag("--list", list, "print the case names");

  auto* check_cmd = app.add_subcommand("check-certificate", "Replay a report or certificate");
  check_cmd->add_option("input", input, "report or certificate JSON")->required();

  std::vector<std::string> argv(args.rbegin(), args.rend());
  try {
    app.parse(argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kInputError;
  }

  if (analyze_cmd->parsed()) {
    Configuration a = Configuration::from_points({{1}});
    try {
      a = read_configuration(input);
    } catch (const Error& e) {
      return fail_with(err, e, "input");
    }
    AnalysisReport r = analyze(a, budgets);
    if (json)
      out << dump_json(report_to_json(r, !no_timing));
    else
      out << report_text(r);
    if (cap_blocked(r)) {
      for (const auto& s : r.stages)
        if (s.status == "CAP_EXCEEDED" || s.status == "NONTERMINATION_GUARD")
          err << "stage " << s.stage << ": " << s.message << "\n";
      return kCapExceeded;
    }
    return kOk;
  }

  if (toric_cmd->parsed()) {
    try {
      const Configuration a = read_configuration(input);
      GroebnerOptions options;
      options.spair_budget = budgets.spair_budget;
      GroebnerBasis g;
      try {
        g = toric_ideal(a, options);
      } catch (const Error& e) {
        return fail_with(err, e, "toric_ideal");
      }
      if (json) {
        Json elements = Json::array();
        for (const auto& f : g.elements()) elements.push_back(to_text(f, a));
        out << dump_json(Json{{"order", "grevlex"}, {"size", g.size()}, {"elements", elements}});
      } else {
        for (const auto& f : g.elements()) out << to_text(f, a) << "\n";
      }
      return kOk;
    } catch (const Error& e) {
      return fail_with(err, e, "input");
    }
  }

  if (holes_cmd->parsed()) {
    try {
      const Configuration a = read_configuration(input);
      HoleList h;
      try {
        h = enumerate_holes(a, budgets.max_degree);
      } catch (const Error& e) {
        return fail_with(err, e, "holes");
      }
      if (json) {
        out << dump_json(holes_to_json(h));
      } else {
        if (csv) out << "degree";
        if (csv)
          for (Index i = 0; i < a.dimension(); ++i) out << ",c" << i + 1;
        if (csv) out << "\n";
        for (Index m = 1; m <= h.max_degree; ++m)
          for (const auto& p : h.degree(m)) {
            out << m;
            for (Index i = 0; i < p.size(); ++i) out << (csv ? "," : (i ? " " : "  ")) << p(i);
            out << "\n";
          }
        if (!csv) out << h.total() << " holes up to degree " << h.max_degree << "\n";
      }
      return kOk;
    } catch (const Error& e) {
      return fail_with(err, e, "input");
    }
  }

  if (lawrence_cmd->parsed()) {
    try {
      out << dump_json(configuration_to_json(lawrence(read_configuration(input))));
      return kOk;
    } catch (const Error& e) {
      return fail_with(err, e, "input");
    }
  }

  if (fundamental_cmd->parsed()) {
    try {
      const Configuration a = read_configuration(input);
      const Binomial g = parse_binomial(binomial, a);
      const auto cert = fundamental_certificate(a, g);
      Json j{{"binomial", to_text(g, a)}, {"status", cert ? "FUNDAMENTAL" : "UNDECIDED"}};
      j["certificate"] = cert ? fundamental_to_json(*cert, a) : Json(nullptr);
      out << dump_json(j);
      return kOk;
    } catch (const Error& e) {
      return fail_with(err, e, "input");
    }
  }

  if (verify_cmd->parsed()) {
    if (list) {
      for (const auto& n : case_names()) out << n << "\n";
      return kOk;
    }
    if (all) case_list = case_names();
    if (case_list.empty()) {
      err << "verify-paper: give --case <name> or --all\n";
      return kInputError;
    }
    for (const auto& name : case_list)
      if (std::find(case_names().begin(), case_names().end(), name) == case_names().end()) {
        err << "verify-paper: unknown case " << name << "\n";
        return kInputError;
      }
    std::error_code ec;
    std::filesystem::create_directories(out_dir, ec);
    bool all_pass = true;
    for (const auto& name : case_list) {
      CaseResult r;
      try {
        r = run_case(name);
      } catch (const Error& e) {
        r.pass = false;
        r.detail = std::string("  FAIL ") + e.what() + "\n";
      }
      const std::filesystem::path path = std::filesystem::path(out_dir) / (name + ".json");
      std::ofstream(path) << dump_json(r.evidence);
      out << (r.pass ? "PASS " : "FAIL ") << name << "  " << path.string() << "\n" << r.detail;
      all_pass = all_pass && r.pass;
    }
    return all_pass ? kOk : kReplayFailure;
  }

  if (check_cmd->parsed()) {
    try {
      const ReplayResult r = check_certificate(read_json(input));
      out << (r.ok ? "PASS" : "FAIL: " + r.message) << "\n";
      return r.ok ? kOk : kReplayFailure;
    } catch (const Error& e) {
      return fail_with(err, e, "input");
    }
  }
  return kInputError;
}

}  // namespace toric::cli
