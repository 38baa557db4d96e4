#include "fnls/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numeric>

#include "fnls/errors.hpp"
#include "fnls/rng.hpp"

namespace fnls {

void MidpointProblem::validate() const {
  if (a.size() != space.dimension() || b.size() != space.dimension()) {
    throw StructuralError("midpoint endpoints do not match the space dimension");
  }
  require_finite(a, "endpoint a");
  require_finite(b, "endpoint b");
  if (!(s > 0.0) || !std::isfinite(s)) {
    throw StructuralError("midpoint scale s must be finite and positive");
  }
}

CollinearityResult collinear(const Vector& x, const Vector& y, const Vector& z, double tol) {
  require_same_dim(x, y, "collinear");
  require_same_dim(x, z, "collinear");
  CollinearityResult out;
  const Vector xz = subtract(x, z);
  const Vector yz = subtract(y, z);
  const double base = euclidean_norm(xz);
  if (base <= tol) {
    // x and z coincide; the "line" degenerates to a point.
    out.residual = euclidean_norm(yz);
    out.collinear = out.residual <= tol;
    return out;
  }
  const double t = dot(yz, xz) / dot(xz, xz);
  out.t = t;
  out.residual = euclidean_norm(subtract(yz, scale(xz, t)));
  out.collinear = out.residual <= tol;
  return out;
}

double midpoint_residual(const MidpointProblem& prob, const Vector& x) {
  if (x.size() != prob.space.dimension()) {
    throw StructuralError("midpoint candidate does not match the space dimension");
  }
  const double target = prob.space(subtract(prob.a, prob.b), 2.0 * prob.s);
  const double at_a = prob.space(subtract(prob.a, x), prob.s);
  const double at_b = prob.space(subtract(prob.b, x), prob.s);
  return std::max(std::abs(at_a - target), std::abs(at_b - target));
}

bool verify_midpoint(const MidpointProblem& prob, const Vector& x, double tol) {
  return midpoint_residual(prob, x) <= tol;
}

namespace {

using Objective = std::function<double(const Vector&)>;

struct SimplexVertex {
  Vector x;
  double f;
};

Vector nelder_mead(const Objective& f, Vector start, double h, std::size_t max_iter,
                   std::size_t& evals) {
  const std::size_t d = start.size();
  std::vector<SimplexVertex> simplex;
  simplex.reserve(d + 1);
  simplex.push_back({start, f(start)});
  ++evals;
  for (std::size_t i = 0; i < d; ++i) {
    Vector v = start;
    v[i] += h;
    simplex.push_back({v, f(v)});
    ++evals;
  }
  auto by_value = [](const SimplexVertex& u, const SimplexVertex& v) { return u.f < v.f; };

  for (std::size_t iter = 0; iter < max_iter; ++iter) {
    std::stable_sort(simplex.begin(), simplex.end(), by_value);
    if (simplex.front().f <= 1e-16) break;
    if (simplex.back().f - simplex.front().f <= 1e-16) break;

    Vector centroid = zeros(d);
    for (std::size_t i = 0; i < d; ++i) centroid = add(centroid, simplex[i].x);
    centroid = scale(centroid, 1.0 / static_cast<double>(d));
    const SimplexVertex& worst = simplex.back();

    auto along = [&](double t) { return add(centroid, scale(subtract(centroid, worst.x), t)); };

    const Vector xr = along(1.0);
    const double fr = f(xr);
    ++evals;
    if (fr < simplex.front().f) {
      const Vector xe = along(2.0);
      const double fe = f(xe);
      ++evals;
      simplex.back() = fe < fr ? SimplexVertex{xe, fe} : SimplexVertex{xr, fr};
      continue;
    }
    if (fr < simplex[d - 1].f) {
      simplex.back() = {xr, fr};
      continue;
    }
    const bool outside = fr < worst.f;
    const Vector xc = along(outside ? 0.5 : -0.5);
    const double fc = f(xc);
    ++evals;
    if (fc < std::min(fr, worst.f)) {
      simplex.back() = {xc, fc};
      continue;
    }
    for (std::size_t i = 1; i <= d; ++i) {
      simplex[i].x = midpoint(simplex[0].x, simplex[i].x);
      simplex[i].f = f(simplex[i].x);
      ++evals;
    }
  }
  std::stable_sort(simplex.begin(), simplex.end(), by_value);
  return simplex.front().x;
}

}  // namespace

MidpointSolution find_midpoints(const MidpointProblem& prob, const SamplePlan& plan,
                                const MidpointSearchOptions& options) {
  prob.validate();
  plan.validate();
  if (options.multistart == 0) throw StructuralError("multistart count must be positive");

  MidpointSolution out;
  const Vector center = midpoint(prob.a, prob.b);
  const double spread = max_abs(subtract(prob.a, prob.b));

  std::size_t evals = 0;
  Objective objective = [&](const Vector& x) { return midpoint_residual(prob, x); };

  if (spread <= plan.equality_tol) {
    // Coincident endpoints: the equations force x = a = b.
    out.solutions.push_back(center);
    out.residuals.push_back(objective(center));
    ++evals;
    out.unique_within_probe = true;
    out.starts_total = 1;
    out.objective_evals = evals;
    return out;
  }

  const std::size_t dim = prob.space.dimension();
  const double reach = 2.0 * euclidean_norm(subtract(prob.a, prob.b));
  const double scale_hint = std::max(1.0, euclidean_norm(subtract(prob.a, prob.b)));
  const double distinct_tol = options.distinct_rel * spread;
  Rng rng(plan.seed);

  for (std::size_t start_idx = 0; start_idx < options.multistart; ++start_idx) {
    Vector x = start_idx == 0 ? center : add(center, rng.point_in_ball(dim, reach));
    ++out.starts_total;
    double fx = objective(x);
    ++evals;
    if (fx > 1e-15) {
      for (double h : {0.5, 3e-3, 1e-6, 1e-9}) {
        x = nelder_mead(objective, x, h * scale_hint, 300 * (dim + 1), evals);
        fx = objective(x);
        ++evals;
        if (fx <= 1e-15) break;
      }
    }
    if (fx > options.accept_tol) {
      ++out.starts_discarded;
      continue;
    }
    bool duplicate = false;
    for (const Vector& kept : out.solutions) {
      if (max_abs(subtract(x, kept)) <= distinct_tol) {
        duplicate = true;
        break;
      }
    }
    if (!duplicate) {
      out.solutions.push_back(x);
      out.residuals.push_back(fx);
    }
  }
  out.unique_within_probe = out.solutions.size() == 1;
  out.objective_evals = evals;
  return out;
}

MinInequalityReport check_min_inequalities(const MidpointProblem& prob, const Vector& u,
                                           const Vector& v, double tol) {
  prob.validate();
  if (!verify_midpoint(prob, u, tol) || !verify_midpoint(prob, v, tol)) {
    throw InputDomainError("min-inequality check requires two verified midpoint solutions");
  }
  const Vector m = midpoint(u, v);
  MinInequalityReport rep;
  rep.lhs_a = prob.space(subtract(prob.a, m), prob.s);
  rep.rhs_a = std::min(prob.space(subtract(prob.a, u), prob.s),
                       prob.space(subtract(prob.a, v), prob.s));
  rep.holds_a = rep.lhs_a >= rep.rhs_a - tol;
  rep.lhs_b = prob.space(subtract(prob.b, m), prob.s);
  rep.rhs_b = std::min(prob.space(subtract(prob.b, u), prob.s),
                       prob.space(subtract(prob.b, v), prob.s));
  rep.holds_b = rep.lhs_b >= rep.rhs_b - tol;
  if (!rep.holds_a || !rep.holds_b) {
    throw ContractViolation("min-triangle inequality failed at a pair midpoint");
  }
  return rep;
}

}  // namespace fnls
