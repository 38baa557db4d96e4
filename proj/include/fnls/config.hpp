#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "fnls/fuzzy_norm.hpp"
#include "fnls/isometry.hpp"
#include "fnls/mazur_ulam.hpp"
#include "fnls/report.hpp"
#include "fnls/sequences.hpp"
#include "fnls/vec.hpp"

namespace fnls::config {

using json = nlohmann::json;

/// Read and parse a JSON file; ConfigError with the path on any trouble.
json load_file(const std::string& path);

/// One normed space. `echo()` returns the normalized form, which parses back
/// to the same space; every parse_* below follows that convention so a
/// report's config echo can be re-read as a config.
struct SpaceSpec {
  std::size_t dimension = 0;
  bool crisp_induced = true;
  CrispNorm crisp = CrispNorm::euclidean();
  std::string custom_name;  // set when !crisp_induced

  FuzzyNorm build() const;
  json echo() const;
};

SpaceSpec parse_space(const json& j, const std::string& where);

SamplePlan parse_plan(const json& j, const std::string& where);
json echo_plan(const SamplePlan& plan);

struct MapConfig {
  std::string generator = "identity";
  std::uint64_t seed = 1;
  Vector translation;     // rigid
  double factor = 1.0;    // scaling
  double magnitude = 0.0; // perturbed_isometry

  MapSpec build(std::size_t dom_dim) const;
  json echo() const;
};

MapConfig parse_map(const json& j, const std::string& where);

struct SequenceConfig {
  std::string name = "inverse_drift";
  Vector base;
  double amplitude = 1.0;
  std::size_t dimension = 1;
  std::size_t n_max = 1000;

  SequenceSpec build() const;
  json echo() const;
};

SequenceConfig parse_sequence(const json& j, const std::string& where);

struct ConvergenceConfig {
  Vector limit;
  double eps = 0.01;
  std::vector<double> a_grid;

  json echo() const;
};

ConvergenceConfig parse_convergence(const json& j, std::size_t dimension, const std::string& where);

struct CauchyConfig {
  double eps = 0.01;
  std::vector<double> a_grid;
  std::size_t p_max = 10;

  json echo() const;
};

CauchyConfig parse_cauchy(const json& j, const std::string& where);

struct MidpointConfig {
  Vector a;
  Vector b;
  double s = 1.0;

  json echo() const;
};

MidpointConfig parse_midpoint(const json& j, std::size_t dimension, const std::string& where);

CertifyOptions parse_certify(const json& j, const std::string& where);
json echo_certify(const CertifyOptions& options);

}  // namespace fnls::config
