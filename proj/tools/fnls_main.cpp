#include <chrono>
#include <cstdint>
#include <iostream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "fnls/config.hpp"
#include "fnls/errors.hpp"
#include "fnls/fuzzy_norm.hpp"
#include "fnls/geometry.hpp"
#include "fnls/isometry.hpp"
#include "fnls/mazur_ulam.hpp"
#include "fnls/report_io.hpp"
#include "fnls/sequences.hpp"
#include "fnls/witness_verify.hpp"

namespace {

using fnls::CheckReport;
using fnls::json;
namespace cfg = fnls::config;

struct Options {
  std::string config_path;
  std::string out_path;
  std::uint64_t seed = 0;
  bool seed_given = false;
  bool require_unique = false;
};

class Timer {
 public:
  double ms() const {
    const auto now = std::chrono::steady_clock::now();
    return std::chrono::duration<double, std::milli>(now - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

const json& section(const json& config, const char* key) {
  if (!config.is_object() || !config.contains(key)) {
    throw fnls::ConfigError(key, "required section is missing");
  }
  return config.at(key);
}

json optional_section(const json& config, const char* key) {
  if (config.is_object() && config.contains(key)) return config.at(key);
  return json{};
}

void print_summary(const std::string& command, const CheckReport& report,
                   const std::string& verdict, const Options& opts) {
  std::cout << "command: " << command << "\n";
  for (const fnls::ClauseResult& c : report.clauses) {
    std::cout << (c.pass ? "  [ pass ] " : "  [ FAIL ] ") << c.id;
    if (!c.note.empty()) std::cout << "  (" << c.note << ")";
    std::cout << "\n";
  }
  std::cout << "samples: " << report.samples_used << ", witnesses kept: "
            << report.witnesses.size() << " of " << report.violations_total << " violations\n";
  std::cout << "verdict: " << verdict << "\n";
  if (!opts.out_path.empty()) std::cout << "report: " << opts.out_path << "\n";
}

int emit(const std::string& command, const json& echo, const std::string& verdict,
         const CheckReport& report, double runtime_ms, const Options& opts, bool pass,
         const json& extra = json::object()) {
  json envelope = fnls::report_envelope(command, echo, verdict, report, runtime_ms);
  for (const auto& [key, value] : extra.items()) envelope[key] = value;
  print_summary(command, report, verdict, opts);
  if (!opts.out_path.empty()) fnls::write_report_file(opts.out_path, envelope);
  return pass ? 0 : 1;
}

CheckReport merge_reports(const std::vector<const CheckReport*>& parts) {
  CheckReport merged;
  for (const CheckReport* part : parts) {
    merged.clauses.insert(merged.clauses.end(), part->clauses.begin(), part->clauses.end());
    merged.witnesses.insert(merged.witnesses.end(), part->witnesses.begin(),
                            part->witnesses.end());
    merged.samples_used += part->samples_used;
    merged.violations_total += part->violations_total;
    for (const auto& [name, t] : part->tolerances) merged.tolerances[name] = t;
    merged.notes.insert(merged.notes.end(), part->notes.begin(), part->notes.end());
  }
  return merged;
}

fnls::SamplePlan plan_from(const json& config, const Options& opts) {
  fnls::SamplePlan plan = cfg::parse_plan(optional_section(config, "plan"), "plan");
  if (opts.seed_given) plan.seed = opts.seed;
  return plan;
}

int run_check_axioms(const Options& opts) {
  const json config = cfg::load_file(opts.config_path);
  const cfg::SpaceSpec space = cfg::parse_space(section(config, "space"), "space");
  const fnls::SamplePlan plan = plan_from(config, opts);
  const fnls::FuzzyNorm norm = space.build();
  Timer timer;
  const CheckReport report = fnls::check_axioms(norm, plan);
  const json echo{{"space", space.echo()}, {"plan", cfg::echo_plan(plan)}};
  const std::string verdict = report.pass() ? "pass" : "fail";
  return emit("check-axioms", echo, verdict, report, timer.ms(), opts, report.pass());
}

int run_check_strict_convexity(const Options& opts) {
  const json config = cfg::load_file(opts.config_path);
  const cfg::SpaceSpec space = cfg::parse_space(section(config, "space"), "space");
  const fnls::SamplePlan plan = plan_from(config, opts);
  const fnls::FuzzyNorm norm = space.build();
  Timer timer;
  const CheckReport report = fnls::check_strict_convexity(norm, plan);
  const json echo{{"space", space.echo()}, {"plan", cfg::echo_plan(plan)}};
  const std::string verdict = report.pass() ? "pass" : "fail";
  return emit("check-strict-convexity", echo, verdict, report, timer.ms(), opts, report.pass());
}

int run_check_crisp_strict_convexity(const Options& opts) {
  const json config = cfg::load_file(opts.config_path);
  const cfg::SpaceSpec space = cfg::parse_space(section(config, "space"), "space");
  if (!space.crisp_induced) {
    throw fnls::ConfigError("space.family", "this check runs on a crisp norm");
  }
  const fnls::SamplePlan plan = plan_from(config, opts);
  Timer timer;
  const CheckReport report =
      fnls::check_crisp_strict_convexity(space.crisp, space.dimension, plan);
  const json echo{{"space", space.echo()}, {"plan", cfg::echo_plan(plan)}};
  const std::string verdict = report.pass() ? "pass" : "fail";
  return emit("check-crisp-strict-convexity", echo, verdict, report, timer.ms(), opts,
              report.pass());
}

int run_check_convergence(const Options& opts) {
  const json config = cfg::load_file(opts.config_path);
  const cfg::SpaceSpec space = cfg::parse_space(section(config, "space"), "space");
  const cfg::SequenceConfig seq = cfg::parse_sequence(section(config, "sequence"), "sequence");
  if (seq.dimension != space.dimension) {
    throw fnls::ConfigError("sequence", "sequence dimension does not match the space");
  }
  const cfg::ConvergenceConfig conv =
      cfg::parse_convergence(optional_section(config, "convergence"), space.dimension,
                             "convergence");
  const fnls::FuzzyNorm norm = space.build();
  Timer timer;
  const CheckReport report =
      fnls::check_convergence(norm, seq.build(), conv.limit, conv.eps, conv.a_grid);
  const json echo{{"space", space.echo()}, {"sequence", seq.echo()},
                  {"convergence", conv.echo()}};
  const std::string verdict = report.pass() ? "pass" : "fail";
  return emit("check-convergence", echo, verdict, report, timer.ms(), opts, report.pass());
}

int run_check_cauchy(const Options& opts) {
  const json config = cfg::load_file(opts.config_path);
  const cfg::SpaceSpec space = cfg::parse_space(section(config, "space"), "space");
  const cfg::SequenceConfig seq = cfg::parse_sequence(section(config, "sequence"), "sequence");
  if (seq.dimension != space.dimension) {
    throw fnls::ConfigError("sequence", "sequence dimension does not match the space");
  }
  const cfg::CauchyConfig cauchy = cfg::parse_cauchy(optional_section(config, "cauchy"), "cauchy");
  const fnls::FuzzyNorm norm = space.build();
  Timer timer;
  const CheckReport report =
      fnls::check_cauchy(norm, seq.build(), cauchy.eps, cauchy.a_grid, cauchy.p_max);
  const json echo{{"space", space.echo()}, {"sequence", seq.echo()}, {"cauchy", cauchy.echo()}};
  const std::string verdict = report.pass() ? "pass" : "fail";
  return emit("check-cauchy", echo, verdict, report, timer.ms(), opts, report.pass());
}

int run_find_midpoint(const Options& opts) {
  const json config = cfg::load_file(opts.config_path);
  const cfg::SpaceSpec space = cfg::parse_space(section(config, "space"), "space");
  const fnls::SamplePlan plan = plan_from(config, opts);
  const cfg::MidpointConfig mid =
      cfg::parse_midpoint(section(config, "midpoint"), space.dimension, "midpoint");
  const fnls::MidpointProblem prob{space.build(), mid.a, mid.b, mid.s};
  const fnls::MidpointSearchOptions search;
  Timer timer;
  const fnls::MidpointSolution sol = fnls::find_midpoints(prob, plan, search);

  const double distinct_tol = search.distinct_rel * fnls::max_abs(fnls::subtract(mid.a, mid.b));
  CheckReport report;
  report.samples_used = sol.objective_evals;
  report.tolerances = {{"accept_tol", search.accept_tol},
                       {"distinct_tol", distinct_tol},
                       {"equality_tol", plan.equality_tol}};
  const bool found = !sol.solutions.empty();
  report.clauses.push_back({"midpoint_equations", found,
                            found ? "solutions within accept_tol" : "no solution found"});
  if (opts.require_unique) {
    report.clauses.push_back({"uniqueness", sol.unique_within_probe,
                              "single solution up to distinct_tol"});
    if (!sol.unique_within_probe) {
      for (std::size_t i = 1; i < sol.solutions.size(); ++i) {
        const double separation =
            fnls::max_abs(fnls::subtract(sol.solutions[i], sol.solutions[0]));
        report.witnesses.push_back(fnls::Witness{
            "uniqueness",
            {{"x", sol.solutions[i]}, {"x_ref", sol.solutions[0]}},
            {{"residual", sol.residuals[i]}, {"separation", separation}},
            separation,
            distinct_tol,
            "distinct solution of the midpoint equations"});
      }
      report.violations_total = report.witnesses.size();
    }
  }
  report.notes.push_back("starts: " + std::to_string(sol.starts_total) + ", discarded: " +
                         std::to_string(sol.starts_discarded));

  const json echo{{"space", space.echo()}, {"plan", cfg::echo_plan(plan)},
                  {"midpoint", mid.echo()}};
  const bool pass = found && (!opts.require_unique || sol.unique_within_probe);
  json extra;
  extra["solutions"] = sol.solutions;
  extra["residuals"] = sol.residuals;
  extra["unique_within_probe"] = sol.unique_within_probe;
  extra["starts_total"] = sol.starts_total;
  extra["starts_discarded"] = sol.starts_discarded;
  for (std::size_t i = 0; i < sol.solutions.size(); ++i) {
    std::cout << "solution " << i << ": [";
    for (std::size_t j = 0; j < sol.solutions[i].size(); ++j) {
      std::cout << (j ? ", " : "") << sol.solutions[i][j];
    }
    std::cout << "]  residual " << sol.residuals[i] << "\n";
  }
  return emit("find-midpoint", echo, pass ? "pass" : "fail", report, timer.ms(), opts, pass,
              extra);
}

int run_verify_isometry(const Options& opts) {
  const json config = cfg::load_file(opts.config_path);
  const cfg::SpaceSpec space = cfg::parse_space(section(config, "space"), "space");
  const cfg::SpaceSpec codomain = config.contains("codomain")
                                      ? cfg::parse_space(config.at("codomain"), "codomain")
                                      : space;
  const fnls::SamplePlan plan = plan_from(config, opts);
  const cfg::MapConfig map = cfg::parse_map(section(config, "map"), "map");
  double collinearity_tol = 1e-6;
  if (config.contains("collinearity_tol")) {
    collinearity_tol = config.at("collinearity_tol").get<double>();
  }
  const fnls::FuzzyNorm dom = space.build();
  const fnls::FuzzyNorm cod = codomain.build();
  const fnls::MapSpec f = map.build(space.dimension);
  Timer timer;
  const CheckReport iso = fnls::check_isometry(dom, cod, f, plan);
  const CheckReport col = fnls::check_collinearity_preservation(f, plan, collinearity_tol);
  const CheckReport report = merge_reports({&iso, &col});
  const json echo{{"space", space.echo()},
                  {"codomain", codomain.echo()},
                  {"plan", cfg::echo_plan(plan)},
                  {"map", map.echo()},
                  {"collinearity_tol", collinearity_tol}};
  const std::string verdict = report.pass() ? "pass" : "fail";
  return emit("verify-isometry", echo, verdict, report, timer.ms(), opts, report.pass());
}

int run_certify_affine(const Options& opts) {
  const json config = cfg::load_file(opts.config_path);
  const cfg::SpaceSpec space = cfg::parse_space(section(config, "space"), "space");
  const cfg::SpaceSpec codomain = config.contains("codomain")
                                      ? cfg::parse_space(config.at("codomain"), "codomain")
                                      : space;
  const fnls::SamplePlan plan = plan_from(config, opts);
  const cfg::MapConfig map = cfg::parse_map(section(config, "map"), "map");
  const fnls::CertifyOptions options =
      cfg::parse_certify(optional_section(config, "certify"), "certify");
  const fnls::FuzzyNorm dom = space.build();
  const fnls::FuzzyNorm cod = codomain.build();
  const fnls::MapSpec f = map.build(space.dimension);
  Timer timer;
  const fnls::CertifyReport cert = fnls::certify_affine(dom, cod, f, plan, options);

  CheckReport report = merge_reports(
      {&cert.isometry, &cert.collinearity, &cert.midpoint, &cert.q_linearity, &cert.homogeneity});
  report.tolerances["cert_tol"] = options.cert_tol;
  report.notes.insert(report.notes.end(), cert.notes.begin(), cert.notes.end());

  json extra;
  extra["checks"] = json{{"collinearity", fnls::report_body(cert.collinearity)},
                         {"homogeneity", fnls::report_body(cert.homogeneity)},
                         {"isometry", fnls::report_body(cert.isometry)},
                         {"midpoint", fnls::report_body(cert.midpoint)},
                         {"q_linearity", fnls::report_body(cert.q_linearity)}};
  extra["f_zero"] = cert.f_zero;
  if (cert.fit) {
    extra["certificate"] = json{{"fit_residual", cert.fit->residual},
                                {"linear_rows", cert.fit->linear_rows},
                                {"offset", cert.fit->offset}};
  }
  const std::string verdict = fnls::to_string(cert.verdict);
  const bool pass = cert.verdict == fnls::CertifyVerdict::certified_affine;
  const json echo{{"space", space.echo()},
                  {"codomain", codomain.echo()},
                  {"plan", cfg::echo_plan(plan)},
                  {"map", map.echo()},
                  {"certify", cfg::echo_certify(options)}};
  return emit("certify-affine", echo, verdict, report, timer.ms(), opts, pass, extra);
}

int run_verify_witness(const Options& opts) {
  json report;
  fnls::WitnessVerification verification;
  try {
    report = cfg::load_file(opts.config_path);
    verification = fnls::verify_report_witnesses(report);
  } catch (const nlohmann::json::exception& e) {
    throw fnls::ConfigError(opts.config_path, e.what());
  }
  Timer timer;
  std::cout << "command: verify-witness (over " << report.value("command", std::string{"?"})
            << " report)\n";
  json checks = json::array();
  for (const fnls::WitnessCheck& c : verification.checks) {
    std::cout << (c.reproduced && c.still_violating ? "  [ ok ] " : "  [ MISMATCH ] ")
              << c.clause << "  stored " << c.stored_defect << ", recomputed "
              << c.recomputed_defect;
    if (!c.note.empty()) std::cout << "  (" << c.note << ")";
    std::cout << "\n";
    checks.push_back(json{{"clause", c.clause},
                          {"note", c.note},
                          {"recomputed_defect", c.recomputed_defect},
                          {"reproduced", c.reproduced},
                          {"still_violating", c.still_violating},
                          {"stored_defect", c.stored_defect}});
  }
  const bool pass = verification.all_reproduced();
  std::cout << "witnesses checked: " << verification.checks.size() << "\n";
  std::cout << "verdict: " << (pass ? "pass" : "fail") << "\n";
  if (!opts.out_path.empty()) {
    CheckReport body;
    body.clauses.push_back({"witness_roundtrip", pass, "every stored defect recomputes bit-for-bit"});
    body.samples_used = verification.checks.size();
    json envelope = fnls::report_envelope("verify-witness", report.value("config-echo", json{}),
                                          pass ? "pass" : "fail", body, timer.ms());
    envelope["checked_command"] = report.value("command", std::string{});
    envelope["witness_checks"] = checks;
    fnls::write_report_file(opts.out_path, envelope);
    std::cout << "report: " << opts.out_path << "\n";
  }
  return pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"fuzzy normed linear space verification toolkit"};
  app.require_subcommand(1);

  Options opts;
  struct Command {
    const char* name;
    const char* help;
    int (*run)(const Options&);
    CLI::App* sub = nullptr;
    CLI::Option* seed_opt = nullptr;
  };
  Command commands[] = {
      {"check-axioms", "check the six fuzzy norm clauses on a sampled grid", run_check_axioms},
      {"check-strict-convexity", "probe the strict convexity equality cases",
       run_check_strict_convexity},
      {"check-crisp-strict-convexity", "probe triangle-equality cases of a crisp norm",
       run_check_crisp_strict_convexity},
      {"check-convergence", "finite-horizon convergence check for a named sequence",
       run_check_convergence},
      {"check-cauchy", "finite-horizon Cauchy check for a named sequence", run_check_cauchy},
      {"find-midpoint", "solve the two midpoint equations by multistart search",
       run_find_midpoint},
      {"verify-isometry", "check distance and collinearity preservation of a map",
       run_verify_isometry},
      {"certify-affine", "run the full affinity certification pipeline", run_certify_affine},
      {"verify-witness", "recompute every witness of a previously written report",
       run_verify_witness},
  };
  for (Command& c : commands) {
    c.sub = app.add_subcommand(c.name, c.help);
    c.sub->add_option("--config", opts.config_path,
                      c.run == run_verify_witness ? "report file to re-verify"
                                                  : "configuration file (JSON)")
        ->required();
    c.sub->add_option("--out", opts.out_path, "write the machine-readable report here");
    c.seed_opt = c.sub->add_option("--seed", opts.seed, "override the sampling seed");
    if (c.run == run_find_midpoint) {
      c.sub->add_flag("--require-unique", opts.require_unique,
                      "fail unless the solution is unique within the probe");
    }
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    for (Command& c : commands) {
      if (c.sub->parsed()) {
        opts.seed_given = c.seed_opt->count() > 0;
        return c.run(opts);
      }
    }
    std::cerr << "no command given\n";
    return 2;
  } catch (const fnls::ContractViolation& e) {
    std::cerr << "contract violation: " << e.what() << "\n";
    return 3;
  } catch (const fnls::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const fnls::StructuralError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const fnls::InputDomainError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 3;
  }
}
