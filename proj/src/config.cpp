#include "fnls/config.hpp"

#include <cmath>
#include <fstream>
#include <utility>

#include "fnls/errors.hpp"

namespace fnls::config {

namespace {

void expect_object(const json& j, const std::string& where) {
  if (!j.is_object()) throw ConfigError(where, "expected an object");
}

bool has(const json& j, const char* key) { return j.is_object() && j.contains(key); }

double number_field(const json& j, const char* key, double def, const std::string& where) {
  if (!has(j, key)) return def;
  const json& v = j.at(key);
  if (!v.is_number()) throw ConfigError(where + "." + key, "expected a number");
  return v.get<double>();
}

std::uint64_t unsigned_field(const json& j, const char* key, std::uint64_t def,
                             const std::string& where) {
  if (!has(j, key)) return def;
  const json& v = j.at(key);
  if (!v.is_number_unsigned()) {
    throw ConfigError(where + "." + key, "expected a nonnegative integer");
  }
  return v.get<std::uint64_t>();
}

std::string string_field(const json& j, const char* key, std::string def,
                         const std::string& where) {
  if (!has(j, key)) return def;
  const json& v = j.at(key);
  if (!v.is_string()) throw ConfigError(where + "." + key, "expected a string");
  return v.get<std::string>();
}

std::vector<double> number_array(const json& v, const std::string& where) {
  if (!v.is_array()) throw ConfigError(where, "expected an array of numbers");
  std::vector<double> out;
  out.reserve(v.size());
  for (const json& c : v) {
    if (!c.is_number()) throw ConfigError(where, "expected an array of numbers");
    out.push_back(c.get<double>());
  }
  return out;
}

}  // namespace

json load_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError(path, "cannot open file");
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError(path, e.what());
  }
  return j;
}

SpaceSpec parse_space(const json& j, const std::string& where) {
  expect_object(j, where);
  SpaceSpec s;
  if (!has(j, "dimension")) throw ConfigError(where + ".dimension", "required field is missing");
  const std::uint64_t dim = unsigned_field(j, "dimension", 0, where);
  if (dim == 0) throw ConfigError(where + ".dimension", "must be a positive integer");
  s.dimension = static_cast<std::size_t>(dim);

  const std::string family = string_field(j, "family", "crisp_induced", where);
  if (family == "crisp_induced") {
    s.crisp_induced = true;
  } else if (family == "custom") {
    s.crisp_induced = false;
  } else {
    throw ConfigError(where + ".family", "expected 'crisp_induced' or 'custom'");
  }

  if (has(j, "crisp")) {
    const json& c = j.at("crisp");
    expect_object(c, where + ".crisp");
    const std::string kind = string_field(c, "kind", "euclidean", where + ".crisp");
    if (kind == "euclidean") {
      s.crisp = CrispNorm::euclidean();
    } else if (kind == "p_norm") {
      s.crisp = CrispNorm::p_norm(number_field(c, "p", 2.0, where + ".crisp"));
    } else if (kind == "max_norm") {
      s.crisp = CrispNorm::max_norm();
    } else if (kind == "weighted_euclidean") {
      if (!has(c, "weights")) {
        throw ConfigError(where + ".crisp.weights", "required field is missing");
      }
      s.crisp = CrispNorm::weighted(number_array(c.at("weights"), where + ".crisp.weights"));
    } else {
      throw ConfigError(where + ".crisp.kind", "unknown crisp norm '" + kind + "'");
    }
  }
  try {
    s.crisp.validate(s.dimension);
  } catch (const StructuralError& e) {
    throw ConfigError(where + ".crisp", e.what());
  }

  if (!s.crisp_induced) {
    s.custom_name = string_field(j, "name", "", where);
    if (s.custom_name != "induced_sq_denominator" && s.custom_name != "ceil_staircase" &&
        s.custom_name != "overshoot") {
      throw ConfigError(where + ".name", "unknown custom norm '" + s.custom_name + "'");
    }
  }
  return s;
}

FuzzyNorm SpaceSpec::build() const {
  if (crisp_induced) return FuzzyNorm::crisp_induced(dimension, crisp);
  return builtin_custom_norm(custom_name, dimension, crisp);
}

json SpaceSpec::echo() const {
  json c;
  c["kind"] = crisp.name();
  if (crisp.kind == CrispNormKind::p_norm) c["p"] = crisp.p;
  if (crisp.kind == CrispNormKind::weighted_euclidean) c["weights"] = crisp.weights;
  json j;
  j["dimension"] = dimension;
  j["family"] = crisp_induced ? "crisp_induced" : "custom";
  j["crisp"] = c;
  if (!crisp_induced) j["name"] = custom_name;
  return j;
}

SamplePlan parse_plan(const json& j, const std::string& where) {
  SamplePlan plan;
  if (j.is_null()) return plan;
  expect_object(j, where);
  plan.seed = unsigned_field(j, "seed", plan.seed, where);
  plan.n_points =
      static_cast<std::size_t>(unsigned_field(j, "n_points", plan.n_points, where));
  plan.point_radius = number_field(j, "point_radius", plan.point_radius, where);
  if (has(j, "a_range")) {
    const std::vector<double> range = number_array(j.at("a_range"), where + ".a_range");
    if (range.size() != 2) throw ConfigError(where + ".a_range", "expected [a_min, a_max]");
    plan.a_min = range[0];
    plan.a_max = range[1];
  }
  plan.n_thresholds =
      static_cast<std::size_t>(unsigned_field(j, "n_thresholds", plan.n_thresholds, where));
  plan.equality_tol = number_field(j, "equality_tol", plan.equality_tol, where);
  plan.limit_tol = number_field(j, "limit_tol", plan.limit_tol, where);
  plan.semicont_tol = number_field(j, "semicont_tol", plan.semicont_tol, where);
  plan.witness_cap =
      static_cast<std::size_t>(unsigned_field(j, "witness_cap", plan.witness_cap, where));
  try {
    plan.validate();
  } catch (const StructuralError& e) {
    throw ConfigError(where, e.what());
  }
  return plan;
}

json echo_plan(const SamplePlan& plan) {
  json j;
  j["seed"] = plan.seed;
  j["n_points"] = plan.n_points;
  j["point_radius"] = plan.point_radius;
  j["a_range"] = {plan.a_min, plan.a_max};
  j["n_thresholds"] = plan.n_thresholds;
  j["equality_tol"] = plan.equality_tol;
  j["limit_tol"] = plan.limit_tol;
  j["semicont_tol"] = plan.semicont_tol;
  j["witness_cap"] = plan.witness_cap;
  return j;
}

MapConfig parse_map(const json& j, const std::string& where) {
  expect_object(j, where);
  MapConfig m;
  m.generator = string_field(j, "generator", "identity", where);
  if (m.generator != "rigid" && m.generator != "scaling" && m.generator != "sine_curve" &&
      m.generator != "perturbed_isometry" && m.generator != "identity") {
    throw ConfigError(where + ".generator", "unknown generator '" + m.generator + "'");
  }
  m.seed = unsigned_field(j, "seed", m.seed, where);
  if (has(j, "translation")) {
    m.translation = number_array(j.at("translation"), where + ".translation");
  }
  m.factor = number_field(j, "factor", m.factor, where);
  m.magnitude = number_field(j, "magnitude", m.magnitude, where);
  return m;
}

MapSpec MapConfig::build(std::size_t dom_dim) const {
  if (generator == "rigid") return make_rigid_map(seed, dom_dim, translation);
  if (generator == "scaling") return make_scaling(factor, dom_dim);
  if (generator == "sine_curve") {
    if (dom_dim != 1) throw StructuralError("sine_curve map has a 1-dimensional domain");
    return make_sine_curve_map();
  }
  if (generator == "perturbed_isometry") {
    return make_perturbed_isometry(seed, dom_dim, magnitude);
  }
  return make_identity_map(dom_dim);
}

json MapConfig::echo() const {
  json j;
  j["generator"] = generator;
  if (generator == "rigid" || generator == "perturbed_isometry") j["seed"] = seed;
  if (generator == "rigid" && !translation.empty()) j["translation"] = translation;
  if (generator == "scaling") j["factor"] = factor;
  if (generator == "perturbed_isometry") j["magnitude"] = magnitude;
  return j;
}

SequenceConfig parse_sequence(const json& j, const std::string& where) {
  expect_object(j, where);
  SequenceConfig s;
  if (!has(j, "name")) throw ConfigError(where + ".name", "required field is missing");
  s.name = string_field(j, "name", "", where);
  if (s.name != "inverse_drift" && s.name != "constant" && s.name != "alternating") {
    throw ConfigError(where + ".name", "unknown sequence '" + s.name + "'");
  }
  s.n_max = static_cast<std::size_t>(unsigned_field(j, "n_max", s.n_max, where));
  if (has(j, "base")) {
    s.base = number_array(j.at("base"), where + ".base");
    if (s.base.empty()) throw ConfigError(where + ".base", "must be non-empty");
    s.dimension = s.base.size();
    if (has(j, "dimension") &&
        unsigned_field(j, "dimension", 0, where) != static_cast<std::uint64_t>(s.dimension)) {
      throw ConfigError(where + ".dimension", "conflicts with the length of 'base'");
    }
  } else {
    const std::uint64_t dim = unsigned_field(j, "dimension", 0, where);
    if (dim == 0) {
      throw ConfigError(where + ".dimension", "required (or give an explicit 'base')");
    }
    s.dimension = static_cast<std::size_t>(dim);
    s.base = zeros(s.dimension);
  }
  s.amplitude = number_field(j, "amplitude", s.amplitude, where);
  return s;
}

SequenceSpec SequenceConfig::build() const {
  if (name == "inverse_drift") return make_inverse_drift_sequence(base, n_max);
  if (name == "constant") return make_constant_sequence(base, n_max);
  return make_alternating_sequence(dimension, amplitude, n_max);
}

json SequenceConfig::echo() const {
  json j;
  j["name"] = name;
  j["dimension"] = dimension;
  j["n_max"] = n_max;
  if (name == "inverse_drift" || name == "constant") j["base"] = base;
  if (name == "alternating") j["amplitude"] = amplitude;
  return j;
}

ConvergenceConfig parse_convergence(const json& j, std::size_t dimension,
                                    const std::string& where) {
  ConvergenceConfig c;
  c.a_grid = {0.5, 1.0, 2.0};
  c.limit = zeros(dimension);
  if (!j.is_null()) {
    expect_object(j, where);
    if (has(j, "limit")) {
      c.limit = number_array(j.at("limit"), where + ".limit");
      if (c.limit.size() != dimension) {
        throw ConfigError(where + ".limit", "dimension does not match the space");
      }
    }
    c.eps = number_field(j, "eps", c.eps, where);
    if (has(j, "a_grid")) c.a_grid = number_array(j.at("a_grid"), where + ".a_grid");
  }
  if (!(c.eps > 0.0 && c.eps < 1.0)) throw ConfigError(where + ".eps", "must lie in (0, 1)");
  for (double a : c.a_grid) {
    if (!(a > 0.0) || !std::isfinite(a)) {
      throw ConfigError(where + ".a_grid", "entries must be finite and positive");
    }
  }
  if (c.a_grid.empty()) throw ConfigError(where + ".a_grid", "must be non-empty");
  return c;
}

json ConvergenceConfig::echo() const {
  json j;
  j["limit"] = limit;
  j["eps"] = eps;
  j["a_grid"] = a_grid;
  return j;
}

CauchyConfig parse_cauchy(const json& j, const std::string& where) {
  CauchyConfig c;
  c.a_grid = {0.5, 1.0, 2.0};
  if (!j.is_null()) {
    expect_object(j, where);
    c.eps = number_field(j, "eps", c.eps, where);
    if (has(j, "a_grid")) c.a_grid = number_array(j.at("a_grid"), where + ".a_grid");
    c.p_max = static_cast<std::size_t>(unsigned_field(j, "p_max", c.p_max, where));
  }
  if (!(c.eps > 0.0 && c.eps < 1.0)) throw ConfigError(where + ".eps", "must lie in (0, 1)");
  if (c.p_max == 0) throw ConfigError(where + ".p_max", "must be positive");
  for (double a : c.a_grid) {
    if (!(a > 0.0) || !std::isfinite(a)) {
      throw ConfigError(where + ".a_grid", "entries must be finite and positive");
    }
  }
  if (c.a_grid.empty()) throw ConfigError(where + ".a_grid", "must be non-empty");
  return c;
}

json CauchyConfig::echo() const {
  json j;
  j["eps"] = eps;
  j["a_grid"] = a_grid;
  j["p_max"] = p_max;
  return j;
}

MidpointConfig parse_midpoint(const json& j, std::size_t dimension, const std::string& where) {
  expect_object(j, where);
  MidpointConfig m;
  if (!has(j, "a")) throw ConfigError(where + ".a", "required field is missing");
  if (!has(j, "b")) throw ConfigError(where + ".b", "required field is missing");
  m.a = number_array(j.at("a"), where + ".a");
  m.b = number_array(j.at("b"), where + ".b");
  if (m.a.size() != dimension || m.b.size() != dimension) {
    throw ConfigError(where, "endpoint dimensions do not match the space");
  }
  m.s = number_field(j, "s", m.s, where);
  if (!(m.s > 0.0) || !std::isfinite(m.s)) {
    throw ConfigError(where + ".s", "must be finite and positive");
  }
  return m;
}

json MidpointConfig::echo() const {
  json j;
  j["a"] = a;
  j["b"] = b;
  j["s"] = s;
  return j;
}

CertifyOptions parse_certify(const json& j, const std::string& where) {
  CertifyOptions o;
  if (j.is_null()) return o;
  expect_object(j, where);
  o.cert_tol = number_field(j, "cert_tol", o.cert_tol, where);
  o.check_tol = number_field(j, "check_tol", o.check_tol, where);
  o.collinearity_tol = number_field(j, "collinearity_tol", o.collinearity_tol, where);
  o.dyadic_depth =
      static_cast<std::size_t>(unsigned_field(j, "dyadic_depth", o.dyadic_depth, where));
  for (double t : {o.cert_tol, o.check_tol, o.collinearity_tol}) {
    if (!(t > 0.0) || !std::isfinite(t)) {
      throw ConfigError(where, "tolerances must be finite and positive");
    }
  }
  return o;
}

json echo_certify(const CertifyOptions& options) {
  json j;
  j["cert_tol"] = options.cert_tol;
  j["check_tol"] = options.check_tol;
  j["collinearity_tol"] = options.collinearity_tol;
  j["dyadic_depth"] = options.dyadic_depth;
  return j;
}

}  // namespace fnls::config
