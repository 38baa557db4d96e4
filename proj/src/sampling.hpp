#pragma once

// Internal sampling helpers shared by the checkers. Not installed.

#include <algorithm>
#include <cmath>
#include <initializer_list>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "fnls/report.hpp"
#include "fnls/rng.hpp"
#include "fnls/vec.hpp"

namespace fnls::detail {

inline std::vector<Vector> sample_points(Rng& rng, std::size_t dim, const SamplePlan& plan) {
  std::vector<Vector> points;
  points.reserve(plan.n_points + 3);
  for (std::size_t i = 0; i < std::min<std::size_t>(dim, 3); ++i) {
    points.push_back(scale(unit_axis(dim, i), plan.point_radius / 2.0));
  }
  for (std::size_t i = 0; i < plan.n_points; ++i) {
    points.push_back(rng.point_in_ball(dim, plan.point_radius));
  }
  return points;
}

inline std::vector<double> sample_thresholds(Rng& rng, const SamplePlan& plan) {
  std::vector<double> grid{plan.a_min, plan.a_max};
  for (double s : {0.5, 1.0, 1.5, 2.0, std::exp(1.0), 3.14159265358979323846}) {
    if (s >= plan.a_min && s <= plan.a_max) grid.push_back(s);
  }
  for (std::size_t i = 0; i < plan.n_thresholds; ++i) {
    grid.push_back(rng.log_uniform(plan.a_min, plan.a_max));
  }
  std::sort(grid.begin(), grid.end());
  grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
  return grid;
}

/// Witness bookkeeping for one checker run.
struct RunState {
  explicit RunState(const SamplePlan& plan) : collector(plan.witness_cap) {}
  WitnessCollector collector;
  std::map<std::string, std::size_t> by_clause;
  std::size_t samples = 0;

  void found(Witness w) {
    ++by_clause[w.clause];
    collector.add(std::move(w));
  }
  std::size_t count(std::initializer_list<const char*> ids) const {
    std::size_t n = 0;
    for (const char* id : ids) {
      auto it = by_clause.find(id);
      if (it != by_clause.end()) n += it->second;
    }
    return n;
  }
};

}  // namespace fnls::detail
