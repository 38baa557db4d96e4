#include "fnls/fuzzy_norm.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <utility>

#include "fnls/errors.hpp"
#include "fnls/rng.hpp"
#include "sampling.hpp"

namespace fnls {

void SamplePlan::validate() const {
  if (n_points == 0) throw StructuralError("plan: n_points must be positive");
  if (!(point_radius > 0.0) || !std::isfinite(point_radius)) {
    throw StructuralError("plan: point_radius must be finite and positive");
  }
  if (!(0.0 < a_min && a_min < a_max) || !std::isfinite(a_max)) {
    throw StructuralError("plan: threshold range needs 0 < a_min < a_max < inf");
  }
  if (n_thresholds == 0) throw StructuralError("plan: n_thresholds must be positive");
  for (double t : {equality_tol, limit_tol, semicont_tol}) {
    if (!(t > 0.0) || !std::isfinite(t)) {
      throw StructuralError("plan: tolerances must be finite and positive");
    }
  }
  if (witness_cap == 0) throw StructuralError("plan: witness_cap must be positive");
}

FuzzyNorm FuzzyNorm::crisp_induced(std::size_t dimension, CrispNorm crisp) {
  if (dimension == 0) throw StructuralError("fuzzy norm: dimension must be positive");
  crisp.validate(dimension);
  FuzzyNorm n;
  n.dimension_ = dimension;
  n.induced_ = true;
  n.crisp_ = std::move(crisp);
  n.label_ = "crisp_induced(" + n.crisp_.name() + ")";
  return n;
}

FuzzyNorm FuzzyNorm::custom(std::size_t dimension, std::string label, Evaluator evaluator) {
  if (dimension == 0) throw StructuralError("fuzzy norm: dimension must be positive");
  if (!evaluator) throw StructuralError("fuzzy norm: missing evaluator");
  FuzzyNorm n;
  n.dimension_ = dimension;
  n.induced_ = false;
  n.evaluator_ = std::move(evaluator);
  n.label_ = std::move(label);
  return n;
}

double FuzzyNorm::operator()(const Vector& x, double a) const {
  if (x.size() != dimension_) {
    throw StructuralError("fuzzy norm: point dimension " + std::to_string(x.size()) +
                          " does not match space dimension " + std::to_string(dimension_));
  }
  require_finite(x, "fuzzy norm argument");
  if (!std::isfinite(a)) throw InputDomainError("fuzzy norm threshold is not finite");
  double value;
  if (induced_) {
    value = a > 0.0 ? a / (a + crisp_(x)) : 0.0;
  } else {
    value = evaluator_(x, a);
  }
  if (!std::isfinite(value) || value < 0.0 || value > 1.0) {
    throw ContractViolation("evaluator '" + label_ + "' returned " + std::to_string(value) +
                            ", outside [0,1]");
  }
  return value;
}

const CrispNorm& FuzzyNorm::crisp() const {
  if (!induced_) throw StructuralError("no crisp norm behind a custom evaluator");
  return crisp_;
}

FuzzyNorm builtin_custom_norm(const std::string& name, std::size_t dimension, CrispNorm crisp) {
  crisp.validate(dimension);
  if (name == "induced_sq_denominator") {
    return FuzzyNorm::custom(dimension, name, [crisp](const Vector& x, double a) {
      if (a <= 0.0) return 0.0;
      const double m = crisp(x);
      return a / (a + m * m);
    });
  }
  if (name == "ceil_staircase") {
    return FuzzyNorm::custom(dimension, name, [](const Vector& x, double a) {
      if (a <= 0.0) return 0.0;
      if (max_abs(x) == 0.0) return 1.0;
      const double step = std::ceil(a);
      return (step - 1.0) / step;
    });
  }
  if (name == "overshoot") {
    return FuzzyNorm::custom(dimension, name, [](const Vector&, double a) {
      return a > 0.0 ? 1.5 : 0.0;
    });
  }
  throw StructuralError("unknown custom norm '" + name + "'");
}

namespace clauses {

double n1_defect(const FuzzyNorm& n, const Vector& x, double a) {
  if (a > 0.0) throw StructuralError("nonpositivity clause probed at a > 0");
  return std::abs(n(x, a));
}

double n2_zero_defect(const FuzzyNorm& n, double a) {
  return std::abs(1.0 - n(zeros(n.dimension()), a));
}

double n2_nonzero_value(const FuzzyNorm& n, const Vector& x, double a) { return n(x, a); }

double n3_defect(const FuzzyNorm& n, const Vector& x, double c, double b) {
  if (c == 0.0) throw StructuralError("scaling clause requires c != 0");
  return std::abs(n(scale(x, c), b) - n(x, b / std::abs(c)));
}

double n4_defect(const FuzzyNorm& n, const Vector& x, const Vector& y, double a, double b) {
  return std::min(n(x, a), n(y, b)) - n(add(x, y), a + b);
}

double n5_mono_defect(const FuzzyNorm& n, const Vector& x, double a_lo, double a_hi) {
  if (!(a_lo < a_hi)) throw StructuralError("monotonicity clause needs a_lo < a_hi");
  return n(x, a_lo) - n(x, a_hi);
}

double n5_limit_defect(const FuzzyNorm& n, const Vector& x, double big_a) {
  return 1.0 - n(x, big_a);
}

double n6_defect(const FuzzyNorm& n, const Vector& x, double a) {
  const double base = n(x, a);
  double est_right = std::numeric_limits<double>::infinity();
  double est_left = 0.0;
  for (int k = 3; k <= 9; ++k) {
    const double dk = std::pow(10.0, -k);
    est_right = std::min(est_right, n(x, a + dk));
    if (a - dk > 0.0) est_left = std::max(est_left, n(x, a - dk));
  }
  return std::max(est_right, est_left) - base;
}

StrictConvexityProbe strict_convexity_probe(const FuzzyNorm& n, const Vector& x, const Vector& y,
                                            double a, double b) {
  StrictConvexityProbe p;
  p.min_eq_defect = std::abs(n(add(x, y), a + b) - std::min(n(x, a), n(y, b)));
  p.value_eq_defect = std::abs(n(x, a) - n(y, b));
  p.separation = std::max(max_abs(subtract(x, y)), std::abs(a - b));
  return p;
}

CrispConvexityProbe crisp_convexity_probe(const CrispNorm& k, const Vector& u, const Vector& v) {
  CrispConvexityProbe p;
  p.equality_gap = k(u) + k(v) - k(add(u, v));
  const double eu = euclidean_norm(u);
  const double ev = euclidean_norm(v);
  if (eu == 0.0 || ev == 0.0) {
    p.parallel_gap = 0.0;  // the zero vector points in every direction
  } else {
    p.parallel_gap = max_abs(subtract(scale(u, 1.0 / eu), scale(v, 1.0 / ev)));
  }
  return p;
}

}  // namespace clauses

using detail::RunState;
using detail::sample_points;
using detail::sample_thresholds;

CheckReport check_axioms(const FuzzyNorm& spec, const SamplePlan& plan) {
  plan.validate();
  Rng rng(plan.seed);
  const std::size_t dim = spec.dimension();
  const std::vector<Vector> points = sample_points(rng, dim, plan);
  const std::vector<double> grid = sample_thresholds(rng, plan);
  std::vector<double> c_values{2.0, 0.5, -1.0, -2.0};
  for (int i = 0; i < 4; ++i) {
    const double sign = rng.uniform01() < 0.5 ? -1.0 : 1.0;
    const double mag = rng.log_uniform(0.1, 10.0);
    c_values.push_back(sign * mag);
  }
  const std::vector<double> nonpositive{0.0, -plan.a_min, -0.5, -1.0, -plan.a_max};
  const Vector origin = zeros(dim);
  RunState run(plan);

  // Vanishing below zero.
  {
    std::vector<Vector> with_origin = points;
    with_origin.push_back(origin);
    for (const Vector& x : with_origin) {
      for (double a : nonpositive) {
        const double defect = clauses::n1_defect(spec, x, a);
        ++run.samples;
        if (defect > plan.equality_tol) {
          run.found(Witness{"N1", {{"x", x}}, {{"a", a}}, defect, plan.equality_tol,
                            "nonzero value at a nonpositive threshold"});
        }
      }
    }
  }

  // Identity of the origin, both directions.
  for (double a : grid) {
    const double defect = clauses::n2_zero_defect(spec, a);
    ++run.samples;
    if (defect > plan.equality_tol) {
      run.found(Witness{"N2.zero", {{"x", origin}}, {{"a", a}}, defect, plan.equality_tol,
                        "origin does not reach 1"});
    }
  }
  for (const Vector& x : points) {
    if (euclidean_norm(x) <= 0.01 * plan.point_radius) continue;
    double min_value = std::numeric_limits<double>::infinity();
    double min_a = grid.front();
    for (double a : grid) {
      const double value = clauses::n2_nonzero_value(spec, x, a);
      ++run.samples;
      if (value < min_value) {
        min_value = value;
        min_a = a;
      }
    }
    const double bound = 1.0 - plan.limit_tol;
    if (min_value > bound) {
      run.found(Witness{"N2.nonzero", {{"x", x}}, {{"a", min_a}, {"value", min_value}}, min_value,
                        bound, "nonzero point stays at 1 on every sampled threshold"});
    }
  }

  // Scaling.
  for (const Vector& x : points) {
    for (double c : c_values) {
      for (double b : grid) {
        const double defect = clauses::n3_defect(spec, x, c, b);
        ++run.samples;
        if (defect > plan.equality_tol) {
          run.found(Witness{"N3",
                            {{"x", x}},
                            {{"b", b}, {"c", c}},
                            defect,
                            plan.equality_tol,
                            "N(cx, b) differs from N(x, b/|c|)"});
        }
      }
    }
  }

  // Min-triangle.
  for (std::size_t i = 0; i < points.size(); ++i) {
    const Vector& x = points[i];
    const Vector& y = points[(i + 1) % points.size()];
    for (std::size_t j = 0; j < grid.size(); ++j) {
      const double a = grid[j];
      const double b = grid[(j + grid.size() / 2) % grid.size()];
      const double defect = clauses::n4_defect(spec, x, y, a, b);
      ++run.samples;
      if (defect > plan.equality_tol) {
        run.found(Witness{"N4",
                          {{"x", x}, {"y", y}},
                          {{"a", a}, {"b", b}},
                          defect,
                          plan.equality_tol,
                          "N(x+y, a+b) falls below min of the parts"});
      }
    }
  }

  // Monotonicity and the large-threshold limit.
  for (const Vector& x : points) {
    for (std::size_t j = 0; j + 1 < grid.size(); ++j) {
      const double defect = clauses::n5_mono_defect(spec, x, grid[j], grid[j + 1]);
      ++run.samples;
      if (defect > plan.equality_tol) {
        run.found(Witness{"N5.monotone",
                          {{"x", x}},
                          {{"a_hi", grid[j + 1]}, {"a_lo", grid[j]}},
                          defect,
                          plan.equality_tol,
                          "value decreases along increasing thresholds"});
      }
    }
    const double big_a = plan.a_max * 1e6;
    const double defect = clauses::n5_limit_defect(spec, x, big_a);
    ++run.samples;
    if (defect > plan.limit_tol) {
      run.found(Witness{"N5.limit", {{"x", x}}, {{"a", big_a}}, defect, plan.limit_tol,
                        "value stays away from 1 at a large threshold"});
    }
  }

  // One-sided continuity from above, away from the origin.
  for (const Vector& x : points) {
    if (euclidean_norm(x) == 0.0) continue;
    for (double a : grid) {
      const double defect = clauses::n6_defect(spec, x, a);
      ++run.samples;
      if (defect > plan.semicont_tol) {
        run.found(Witness{"N6", {{"x", x}}, {{"a", a}}, defect, plan.semicont_tol,
                          "one-sided limit exceeds the value"});
      }
    }
  }

  CheckReport report;
  report.clauses = {
      {"N1", run.count({"N1"}) == 0, "vanishes on nonpositive thresholds"},
      {"N2", run.count({"N2.zero", "N2.nonzero"}) == 0,
       "origin at 1; nonzero points checked on sampled thresholds only"},
      {"N3", run.count({"N3"}) == 0, "scaling compatibility"},
      {"N4", run.count({"N4"}) == 0, "min-triangle inequality"},
      {"N5", run.count({"N5.monotone", "N5.limit"}) == 0,
       "monotone in the threshold; limit probed at a_max * 1e6"},
      {"N6", run.count({"N6"}) == 0, "one-sided limits estimated from ladder probes"},
  };
  report.samples_used = run.samples;
  report.violations_total = run.collector.total();
  report.witnesses = run.collector.take();
  report.tolerances = {{"equality_tol", plan.equality_tol},
                       {"limit_tol", plan.limit_tol},
                       {"semicont_tol", plan.semicont_tol}};
  report.notes.push_back("thresholds: log-uniform plus structured values in [a_min, a_max]");
  return report;
}

CheckReport check_strict_convexity(const FuzzyNorm& spec, const SamplePlan& plan) {
  plan.validate();
  Rng rng(plan.seed);
  const std::size_t dim = spec.dimension();
  const double threshold = strict_convexity_separation_threshold(plan.equality_tol);
  RunState run(plan);

  auto probe = [&](const Vector& x, const Vector& y, double a, double b, bool record_c,
                   double c) {
    const auto p = clauses::strict_convexity_probe(spec, x, y, a, b);
    ++run.samples;
    if (p.min_eq_defect <= plan.equality_tol && p.value_eq_defect <= plan.equality_tol &&
        p.separation > threshold) {
      Witness w{"strict_convexity",
                {{"x", x}, {"y", y}},
                {{"a", a},
                 {"b", b},
                 {"min_eq_defect", p.min_eq_defect},
                 {"separation", p.separation},
                 {"value_eq_defect", p.value_eq_defect}},
                p.separation,
                threshold,
                "equality case with distinct arguments"};
      if (record_c) w.scalars["c"] = c;
      run.found(std::move(w));
    }
  };

  const double a0 = (plan.a_min <= 1.0 && 1.0 <= plan.a_max) ? 1.0 : plan.a_ref();
  for (std::size_t i = 0; i < std::min<std::size_t>(dim, 4); ++i) {
    const Vector x = unit_axis(dim, i);
    for (double c : {2.0, 0.5, 3.0}) {
      probe(x, scale(x, c), a0, c * a0, true, c);
    }
  }
  {
    const Vector origin = zeros(dim);
    for (double a : {0.5, 1.0, plan.a_ref()}) {
      const double b = 2.0 * a;
      if (a < plan.a_min || b > plan.a_max) continue;
      probe(origin, origin, a, b, false, 0.0);
    }
  }
  for (std::size_t i = 0; i < plan.n_points; ++i) {
    const Vector x = rng.point_in_ball(dim, plan.point_radius);
    const Vector y = rng.point_in_ball(dim, plan.point_radius);
    const double a = rng.log_uniform(plan.a_min, plan.a_max);
    const double b = rng.log_uniform(plan.a_min, plan.a_max);
    probe(x, y, a, b, false, 0.0);
  }
  const double c_a_min = std::max(plan.a_min, 1e-2);
  const double c_a_max = std::min(plan.a_max, 1e2);
  for (std::size_t i = 0; i < plan.n_points / 4 + 1; ++i) {
    const Vector x = rng.point_in_ball(dim, plan.point_radius);
    double c = rng.log_uniform(0.2, 5.0);
    while (std::abs(c - 1.0) < 0.05) c = rng.log_uniform(0.2, 5.0);
    const double a = rng.log_uniform(c_a_min, c_a_max);
    probe(x, scale(x, c), a, c * a, true, c);
  }

  CheckReport report;
  report.clauses = {{"strict_convexity", run.count({"strict_convexity"}) == 0,
                     "equal values plus min-equality must force x = y and a = b"}};
  report.samples_used = run.samples;
  report.violations_total = run.collector.total();
  report.witnesses = run.collector.take();
  report.tolerances = {{"equality_tol", plan.equality_tol}, {"separation_threshold", threshold}};
  report.notes.push_back("probes include scaling families y = c x, b = c a");
  return report;
}

CheckReport check_crisp_strict_convexity(const CrispNorm& kind, std::size_t dimension,
                                         const SamplePlan& plan) {
  plan.validate();
  kind.validate(dimension);
  if (dimension < 2) {
    throw StructuralError("crisp strict convexity needs dimension >= 2");
  }
  Rng rng(plan.seed);
  const double threshold = strict_convexity_separation_threshold(plan.equality_tol);
  RunState run(plan);

  auto probe = [&](const Vector& u, const Vector& v) {
    if (euclidean_norm(u) <= 1e-12 || euclidean_norm(v) <= 1e-12) return;
    const auto p = clauses::crisp_convexity_probe(kind, u, v);
    ++run.samples;
    if (std::abs(p.equality_gap) <= plan.equality_tol && p.parallel_gap > threshold) {
      run.found(Witness{"crisp_strict_convexity",
                        {{"u", u}, {"v", v}},
                        {{"equality_gap", p.equality_gap}, {"parallel_gap", p.parallel_gap}},
                        p.parallel_gap,
                        threshold,
                        "triangle equality with non-parallel arguments"});
    }
  };

  const double r = plan.point_radius / 2.0;
  for (std::size_t i = 0; i < std::min<std::size_t>(dimension, 4); ++i) {
    for (std::size_t j = i + 1; j < std::min<std::size_t>(dimension, 4); ++j) {
      const Vector ei = scale(unit_axis(dimension, i), r);
      const Vector ej = scale(unit_axis(dimension, j), r);
      probe(ei, add(ei, ej));
      probe(ei, ej);
      probe(ei, scale(ei, 2.0));
    }
  }
  for (std::size_t i = 0; i < plan.n_points; ++i) {
    const Vector u = rng.point_in_ball(dimension, plan.point_radius);
    const Vector v = rng.point_in_ball(dimension, plan.point_radius);
    probe(u, v);
  }

  CheckReport report;
  report.clauses = {{"crisp_strict_convexity", run.count({"crisp_strict_convexity"}) == 0,
                     "triangle equality only along a common ray"}};
  report.samples_used = run.samples;
  report.violations_total = run.collector.total();
  report.witnesses = run.collector.take();
  report.tolerances = {{"equality_tol", plan.equality_tol}, {"separation_threshold", threshold}};
  return report;
}

}  // namespace fnls
