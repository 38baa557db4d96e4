#include "fnls/isometry.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

#include <Eigen/Dense>

#include "fnls/errors.hpp"
#include "fnls/geometry.hpp"
#include "fnls/rng.hpp"
#include "sampling.hpp"

namespace fnls {

MapSpec::MapSpec(Evaluator evaluator, std::size_t dom_dim, std::size_t cod_dim, std::string label)
    : evaluator_(std::move(evaluator)),
      dom_dim_(dom_dim),
      cod_dim_(cod_dim),
      label_(std::move(label)) {
  if (!evaluator_) throw StructuralError("map '" + label_ + "' has no evaluator");
  if (dom_dim_ == 0 || cod_dim_ == 0) {
    throw StructuralError("map '" + label_ + "' needs positive dimensions");
  }
}

Vector MapSpec::operator()(const Vector& x) const {
  if (x.size() != dom_dim_) {
    throw StructuralError("map '" + label_ + "' applied to dimension " +
                          std::to_string(x.size()) + ", expects " + std::to_string(dom_dim_));
  }
  require_finite(x, "map argument");
  Vector y = evaluator_(x);
  if (y.size() != cod_dim_) {
    throw StructuralError("map '" + label_ + "' produced dimension " + std::to_string(y.size()) +
                          ", declared " + std::to_string(cod_dim_));
  }
  if (!all_finite(y)) {
    throw ContractViolation("map '" + label_ + "' produced a non-finite value");
  }
  return y;
}

namespace clauses {

double isometry_defect(const FuzzyNorm& dom, const FuzzyNorm& cod, const MapSpec& f,
                       const Vector& x, const Vector& y, double a) {
  return std::abs(cod(subtract(f(x), f(y)), a) - dom(subtract(x, y), a));
}

double collinearity_image_residual(const MapSpec& f, const Vector& p, const Vector& q,
                                   const Vector& r, double tol) {
  return collinear(f(p), f(q), f(r), tol).residual;
}

}  // namespace clauses

CheckReport check_isometry(const FuzzyNorm& dom, const FuzzyNorm& cod, const MapSpec& f,
                           const SamplePlan& plan) {
  plan.validate();
  if (f.dom_dim() != dom.dimension() || f.cod_dim() != cod.dimension()) {
    throw StructuralError("map dimensions do not match the given spaces");
  }
  Rng rng(plan.seed);
  const std::size_t dim = dom.dimension();
  std::vector<std::pair<Vector, Vector>> pairs;
  for (std::size_t i = 0; i < std::min<std::size_t>(dim, 2); ++i) {
    pairs.emplace_back(unit_axis(dim, i), zeros(dim));
  }
  for (std::size_t i = 0; i < plan.n_points; ++i) {
    Vector x = rng.point_in_ball(dim, plan.point_radius);
    Vector y = rng.point_in_ball(dim, plan.point_radius);
    pairs.emplace_back(std::move(x), std::move(y));
  }
  const std::vector<double> grid = detail::sample_thresholds(rng, plan);

  detail::RunState run(plan);
  for (const auto& [x, y] : pairs) {
    for (double a : grid) {
      const double defect = clauses::isometry_defect(dom, cod, f, x, y, a);
      ++run.samples;
      if (defect > plan.equality_tol) {
        run.found(Witness{"isometry",
                          {{"x", x}, {"y", y}},
                          {{"a", a},
                           {"cod_value", cod(subtract(f(x), f(y)), a)},
                           {"dom_value", dom(subtract(x, y), a)}},
                          defect,
                          plan.equality_tol,
                          "fuzzy distance not preserved"});
      }
    }
  }

  CheckReport report;
  report.clauses = {{"isometry", run.count({"isometry"}) == 0,
                     "N(f(x)-f(y), a) = N(x-y, a) on sampled pairs and thresholds"}};
  report.samples_used = run.samples;
  report.violations_total = run.collector.total();
  report.witnesses = run.collector.take();
  report.tolerances = {{"equality_tol", plan.equality_tol}};
  return report;
}

CheckReport check_collinearity_preservation(const MapSpec& f, const SamplePlan& plan,
                                            double tol) {
  plan.validate();
  if (!(tol > 0.0) || !std::isfinite(tol)) {
    throw StructuralError("collinearity tolerance must be finite and positive");
  }
  Rng rng(plan.seed);
  const std::size_t dim = f.dom_dim();
  const double structured_t[] = {0.0, 1.0, 0.5};

  detail::RunState run(plan);
  for (std::size_t i = 0; i < plan.n_points; ++i) {
    const Vector p = rng.point_in_ball(dim, plan.point_radius);
    const Vector r = rng.point_in_ball(dim, plan.point_radius);
    const double t = i < 3 ? structured_t[i] : rng.uniform(-2.0, 2.0);
    const Vector q = add(r, scale(subtract(p, r), t));
    const double defect = clauses::collinearity_image_residual(f, p, q, r, tol);
    ++run.samples;
    if (defect > tol) {
      run.found(Witness{"collinearity_preservation",
                        {{"f_p", f(p)}, {"f_q", f(q)}, {"f_r", f(r)}, {"p", p}, {"q", q},
                         {"r", r}},
                        {{"t", t}},
                        defect,
                        tol,
                        "image of a collinear triple leaves the image line"});
    }
  }

  CheckReport report;
  report.clauses = {{"collinearity_preservation", run.count({"collinearity_preservation"}) == 0,
                     "images of collinear triples stay collinear"}};
  report.samples_used = run.samples;
  report.violations_total = run.collector.total();
  report.witnesses = run.collector.take();
  report.tolerances = {{"collinearity_tol", tol}};
  return report;
}

namespace {

std::vector<Vector> orthogonal_rows(Rng& rng, std::size_t dim) {
  for (int attempt = 0; attempt < 8; ++attempt) {
    Eigen::MatrixXd g(dim, dim);
    for (std::size_t i = 0; i < dim; ++i) {
      for (std::size_t j = 0; j < dim; ++j) {
        g(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = rng.normal();
      }
    }
    Eigen::HouseholderQR<Eigen::MatrixXd> qr(g);
    Eigen::MatrixXd q = qr.householderQ();
    const Eigen::MatrixXd r = qr.matrixQR();
    for (std::size_t j = 0; j < dim; ++j) {
      const auto jj = static_cast<Eigen::Index>(j);
      if (r(jj, jj) < 0.0) q.col(jj) *= -1.0;
    }
    const double err = (q.transpose() * q - Eigen::MatrixXd::Identity(dim, dim))
                           .cwiseAbs()
                           .maxCoeff();
    if (err > 1e-12) continue;
    std::vector<Vector> rows(dim, Vector(dim));
    for (std::size_t i = 0; i < dim; ++i) {
      for (std::size_t j = 0; j < dim; ++j) {
        rows[i][j] = q(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
      }
    }
    return rows;
  }
  throw ContractViolation("failed to draw an orthogonal matrix");
}

}  // namespace

MapSpec make_rigid_map(std::uint64_t seed, std::size_t dim, const Vector& translation) {
  if (dim == 0) throw StructuralError("rigid map needs a positive dimension");
  Vector shift = translation.empty() ? zeros(dim) : translation;
  if (shift.size() != dim) throw StructuralError("translation does not match the dimension");
  require_finite(shift, "translation");
  Rng rng(seed);
  std::vector<Vector> rows = orthogonal_rows(rng, dim);
  auto eval = [rows = std::move(rows), shift = std::move(shift)](const Vector& x) {
    Vector y(rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i) y[i] = dot(rows[i], x) + shift[i];
    return y;
  };
  return MapSpec(std::move(eval), dim, dim, "rigid");
}

MapSpec make_scaling(double factor, std::size_t dim) {
  if (!std::isfinite(factor)) throw StructuralError("scaling factor must be finite");
  return MapSpec([factor](const Vector& x) { return scale(x, factor); }, dim, dim, "scaling");
}

MapSpec make_sine_curve_map() {
  return MapSpec([](const Vector& x) { return Vector{x[0], std::sin(x[0])}; }, 1, 2,
                 "sine_curve");
}

MapSpec make_perturbed_isometry(std::uint64_t seed, std::size_t dim, double magnitude) {
  if (dim == 0) throw StructuralError("perturbed map needs a positive dimension");
  if (!std::isfinite(magnitude)) throw StructuralError("perturbation magnitude must be finite");
  Rng rng(seed);
  std::vector<Vector> rows = orthogonal_rows(rng, dim);
  std::vector<Vector> waves(dim);
  Vector phases(dim);
  for (std::size_t i = 0; i < dim; ++i) {
    waves[i] = rng.gaussian_vector(dim);
    phases[i] = rng.uniform(0.0, 2.0 * 3.14159265358979323846);
  }
  auto eval = [rows = std::move(rows), waves = std::move(waves), phases = std::move(phases),
               magnitude](const Vector& x) {
    Vector y(rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
      y[i] = dot(rows[i], x) + magnitude * std::sin(dot(waves[i], x) + phases[i]);
    }
    return y;
  };
  return MapSpec(std::move(eval), dim, dim, "perturbed_isometry");
}

MapSpec make_identity_map(std::size_t dim) {
  return MapSpec([](const Vector& x) { return x; }, dim, dim, "identity");
}

}  // namespace fnls
