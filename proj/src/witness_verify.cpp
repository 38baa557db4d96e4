#include "fnls/witness_verify.hpp"

#include <cmath>
#include <optional>
#include <string>

#include "fnls/config.hpp"
#include "fnls/errors.hpp"
#include "fnls/fuzzy_norm.hpp"
#include "fnls/geometry.hpp"
#include "fnls/isometry.hpp"
#include "fnls/mazur_ulam.hpp"
#include "fnls/report_io.hpp"
#include "fnls/sequences.hpp"

namespace fnls {

bool WitnessVerification::all_reproduced() const {
  for (const WitnessCheck& c : checks) {
    if (!c.reproduced || !c.still_violating) return false;
  }
  return true;
}

namespace {

const Vector& stored_vector(const Witness& w, const char* key) {
  auto it = w.vectors.find(key);
  if (it == w.vectors.end()) {
    throw StructuralError(std::string("witness is missing vector '") + key + "'");
  }
  return it->second;
}

double stored_scalar(const Witness& w, const char* key) {
  auto it = w.scalars.find(key);
  if (it == w.scalars.end()) {
    throw StructuralError(std::string("witness is missing scalar '") + key + "'");
  }
  return it->second;
}

double report_tolerance(const CheckReport& body, const char* key) {
  auto it = body.tolerances.find(key);
  if (it == body.tolerances.end()) {
    throw StructuralError(std::string("report is missing tolerance '") + key + "'");
  }
  return it->second;
}

bool bitwise(double x, double y) { return x == y; }

// The convergence-style clauses record the margin to the closeness level, so
// a defect of exactly zero is already a violation.
bool violation_rule(const std::string& clause, double defect, double tol) {
  if (clause == "convergence" || clause == "cauchy") return defect >= tol;
  return defect > tol;
}

struct Context {
  std::optional<FuzzyNorm> dom;
  std::optional<FuzzyNorm> cod;
  std::optional<MapSpec> f;
  std::optional<MapSpec> h;
  std::optional<SequenceSpec> seq;
  std::optional<MidpointProblem> prob;
  Vector conv_limit;
  double eps = 0.0;
  double a_ref = 0.0;
  std::optional<CrispNorm> crisp;
  std::size_t crisp_dim = 0;
};

Context build_context(const std::string& command, const nlohmann::json& echo) {
  namespace cfg = fnls::config;
  Context ctx;
  const auto space_echo = [&]() { return echo.at("space"); };

  if (command == "check-axioms" || command == "check-strict-convexity") {
    ctx.dom = cfg::parse_space(space_echo(), "config-echo.space").build();
    return ctx;
  }
  if (command == "check-crisp-strict-convexity") {
    const cfg::SpaceSpec s = cfg::parse_space(space_echo(), "config-echo.space");
    ctx.crisp = s.crisp;
    ctx.crisp_dim = s.dimension;
    return ctx;
  }
  if (command == "check-convergence" || command == "check-cauchy") {
    const cfg::SpaceSpec s = cfg::parse_space(space_echo(), "config-echo.space");
    ctx.dom = s.build();
    ctx.seq = cfg::parse_sequence(echo.at("sequence"), "config-echo.sequence").build();
    if (command == "check-convergence") {
      const cfg::ConvergenceConfig c =
          cfg::parse_convergence(echo.at("convergence"), s.dimension, "config-echo.convergence");
      ctx.conv_limit = c.limit;
      ctx.eps = c.eps;
    } else {
      ctx.eps = cfg::parse_cauchy(echo.at("cauchy"), "config-echo.cauchy").eps;
    }
    return ctx;
  }
  if (command == "find-midpoint") {
    const cfg::SpaceSpec s = cfg::parse_space(space_echo(), "config-echo.space");
    const cfg::MidpointConfig m =
        cfg::parse_midpoint(echo.at("midpoint"), s.dimension, "config-echo.midpoint");
    ctx.prob = MidpointProblem{s.build(), m.a, m.b, m.s};
    return ctx;
  }
  if (command == "verify-isometry" || command == "certify-affine") {
    const cfg::SpaceSpec s = cfg::parse_space(space_echo(), "config-echo.space");
    ctx.dom = s.build();
    const cfg::SpaceSpec cod_spec = echo.contains("codomain")
                                        ? cfg::parse_space(echo.at("codomain"),
                                                           "config-echo.codomain")
                                        : s;
    ctx.cod = cod_spec.build();
    ctx.f = cfg::parse_map(echo.at("map"), "config-echo.map").build(s.dimension);
    const SamplePlan plan = cfg::parse_plan(echo.value("plan", nlohmann::json{}),
                                            "config-echo.plan");
    ctx.a_ref = plan.a_ref();
    if (command == "certify-affine") ctx.h = normalize_at_zero(*ctx.f);
    return ctx;
  }
  throw ConfigError("command", "witness verification does not know '" + command + "'");
}

WitnessCheck verify_one(const std::string& command, const Context& ctx, const CheckReport& body,
                        const Witness& w) {
  WitnessCheck check;
  check.clause = w.clause;
  check.stored_defect = w.defect;

  const std::string& id = w.clause;
  double recomputed = 0.0;
  bool reproduced_aux = true;

  if (id == "N1") {
    recomputed = clauses::n1_defect(*ctx.dom, stored_vector(w, "x"), stored_scalar(w, "a"));
  } else if (id == "N2.zero") {
    recomputed = clauses::n2_zero_defect(*ctx.dom, stored_scalar(w, "a"));
  } else if (id == "N2.nonzero") {
    recomputed =
        clauses::n2_nonzero_value(*ctx.dom, stored_vector(w, "x"), stored_scalar(w, "a"));
  } else if (id == "N3") {
    recomputed = clauses::n3_defect(*ctx.dom, stored_vector(w, "x"), stored_scalar(w, "c"),
                                    stored_scalar(w, "b"));
  } else if (id == "N4") {
    recomputed = clauses::n4_defect(*ctx.dom, stored_vector(w, "x"), stored_vector(w, "y"),
                                    stored_scalar(w, "a"), stored_scalar(w, "b"));
  } else if (id == "N5.monotone") {
    recomputed = clauses::n5_mono_defect(*ctx.dom, stored_vector(w, "x"),
                                         stored_scalar(w, "a_lo"), stored_scalar(w, "a_hi"));
  } else if (id == "N5.limit") {
    recomputed = clauses::n5_limit_defect(*ctx.dom, stored_vector(w, "x"), stored_scalar(w, "a"));
  } else if (id == "N6") {
    recomputed = clauses::n6_defect(*ctx.dom, stored_vector(w, "x"), stored_scalar(w, "a"));
  } else if (id == "strict_convexity") {
    const auto probe =
        clauses::strict_convexity_probe(*ctx.dom, stored_vector(w, "x"), stored_vector(w, "y"),
                                        stored_scalar(w, "a"), stored_scalar(w, "b"));
    recomputed = probe.separation;
    const double eq_tol = report_tolerance(body, "equality_tol");
    reproduced_aux = bitwise(probe.min_eq_defect, stored_scalar(w, "min_eq_defect")) &&
                     bitwise(probe.value_eq_defect, stored_scalar(w, "value_eq_defect"));
    check.still_violating = probe.min_eq_defect <= eq_tol && probe.value_eq_defect <= eq_tol &&
                            probe.separation > w.tol;
    check.recomputed_defect = recomputed;
    check.reproduced = bitwise(recomputed, w.defect) && reproduced_aux;
    return check;
  } else if (id == "crisp_strict_convexity") {
    const auto probe =
        clauses::crisp_convexity_probe(*ctx.crisp, stored_vector(w, "u"), stored_vector(w, "v"));
    recomputed = probe.parallel_gap;
    const double eq_tol = report_tolerance(body, "equality_tol");
    reproduced_aux = bitwise(probe.equality_gap, stored_scalar(w, "equality_gap"));
    check.still_violating = std::abs(probe.equality_gap) <= eq_tol && probe.parallel_gap > w.tol;
    check.recomputed_defect = recomputed;
    check.reproduced = bitwise(recomputed, w.defect) && reproduced_aux;
    return check;
  } else if (id == "convergence") {
    recomputed = clauses::convergence_defect(
        *ctx.dom, *ctx.seq, ctx.conv_limit, stored_scalar(w, "a"),
        static_cast<std::size_t>(stored_scalar(w, "n")), ctx.eps);
  } else if (id == "cauchy") {
    recomputed = clauses::cauchy_defect(*ctx.dom, *ctx.seq, stored_scalar(w, "a"),
                                        static_cast<std::size_t>(stored_scalar(w, "n")),
                                        static_cast<std::size_t>(stored_scalar(w, "p")), ctx.eps);
  } else if (id == "uniqueness") {
    const Vector& x = stored_vector(w, "x");
    const Vector& x_ref = stored_vector(w, "x_ref");
    recomputed = max_abs(subtract(x, x_ref));
    reproduced_aux = bitwise(midpoint_residual(*ctx.prob, x), stored_scalar(w, "residual"));
  } else if (id == "isometry") {
    recomputed = clauses::isometry_defect(*ctx.dom, *ctx.cod, *ctx.f, stored_vector(w, "x"),
                                          stored_vector(w, "y"), stored_scalar(w, "a"));
  } else if (id == "collinearity_preservation") {
    recomputed = clauses::collinearity_image_residual(
        *ctx.f, stored_vector(w, "p"), stored_vector(w, "q"), stored_vector(w, "r"),
        report_tolerance(body, "collinearity_tol"));
  } else if (id == "midpoint_preservation") {
    recomputed = clauses::midpoint_preservation_defect(*ctx.cod, *ctx.h, stored_vector(w, "a"),
                                                       stored_vector(w, "b"), ctx.a_ref);
  } else if (id == "additivity") {
    recomputed = clauses::additivity_defect(*ctx.cod, *ctx.h, stored_vector(w, "a"),
                                            stored_vector(w, "b"), ctx.a_ref);
  } else if (id == "rational_homogeneity") {
    recomputed = clauses::rational_homogeneity_defect(*ctx.cod, *ctx.h, stored_vector(w, "a"),
                                                      stored_scalar(w, "q"), ctx.a_ref);
  } else if (id == "real_homogeneity") {
    recomputed = clauses::real_homogeneity_defect(*ctx.cod, *ctx.h, stored_vector(w, "a"),
                                                  stored_scalar(w, "r"), ctx.a_ref);
  } else {
    check.reproduced = false;
    check.still_violating = false;
    check.note = "unknown clause for command '" + command + "'";
    return check;
  }

  check.recomputed_defect = recomputed;
  check.reproduced = bitwise(recomputed, w.defect) && reproduced_aux;
  check.still_violating = violation_rule(id, recomputed, w.tol);
  return check;
}

}  // namespace

WitnessVerification verify_report_witnesses(const nlohmann::json& report) {
  if (!report.is_object() || !report.contains("command") || !report.contains("config-echo")) {
    throw ConfigError("report", "not a report: missing 'command' or 'config-echo'");
  }
  const std::string command = report.at("command").get<std::string>();
  const Context ctx = build_context(command, report.at("config-echo"));
  const CheckReport body = report_from_json(report);

  WitnessVerification out;
  for (const Witness& w : body.witnesses) {
    try {
      out.checks.push_back(verify_one(command, ctx, body, w));
    } catch (const std::logic_error& e) {
      WitnessCheck check;
      check.clause = w.clause;
      check.stored_defect = w.defect;
      check.reproduced = false;
      check.still_violating = false;
      check.note = e.what();
      out.checks.push_back(check);
    }
  }
  return out;
}

}  // namespace fnls
