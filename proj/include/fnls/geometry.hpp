#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "fnls/fuzzy_norm.hpp"
#include "fnls/report.hpp"
#include "fnls/vec.hpp"

namespace fnls {

/// The midpoint equations for points a, b at scale s > 0: find x with
/// N(a-x, s) = N(b-x, s) = N(a-b, 2s).
struct MidpointProblem {
  FuzzyNorm space;
  Vector a;
  Vector b;
  double s = 1.0;

  void validate() const;
};

struct MidpointSolution {
  std::vector<Vector> solutions;
  std::vector<double> residuals;
  bool unique_within_probe = false;
  std::size_t starts_total = 0;
  std::size_t starts_discarded = 0;
  std::size_t objective_evals = 0;
};

struct MidpointSearchOptions {
  std::size_t multistart = 64;
  double accept_tol = 1e-9;    // max equality defect for a point to count
  double distinct_rel = 1e-2;  // distinctness threshold, relative to ||a-b||_inf
};

struct CollinearityResult {
  bool collinear = false;
  std::optional<double> t;  // least-squares witness; unset in the degenerate case
  double residual = 0.0;
};

/// y - z = t (x - z) up to `tol` for the least-squares optimal t. Degenerate
/// rule: when ||x - z|| <= tol the triple is collinear iff ||y - z|| <= tol.
CollinearityResult collinear(const Vector& x, const Vector& y, const Vector& z, double tol);

/// Max deviation of the two defining equalities at x.
double midpoint_residual(const MidpointProblem& prob, const Vector& x);

bool verify_midpoint(const MidpointProblem& prob, const Vector& x, double tol);

/// Multi-start derivative-free search for all solutions of the midpoint
/// equations. The analytic candidate (a+b)/2 is always the first start;
/// distinct verified solutions are kept in start order. Non-converged starts
/// are discarded and counted.
MidpointSolution find_midpoints(const MidpointProblem& prob, const SamplePlan& plan,
                                const MidpointSearchOptions& options = {});

/// Both sides of the two min-triangle inequalities at the pair midpoint
/// (u+v)/2. They must hold for any valid fuzzy norm; a violation raises
/// ContractViolation (broken evaluator).
struct MinInequalityReport {
  double lhs_a = 0.0;  // N(a - (u+v)/2, s)
  double rhs_a = 0.0;  // min{N(a-u,s), N(a-v,s)}
  bool holds_a = false;
  double lhs_b = 0.0;
  double rhs_b = 0.0;
  bool holds_b = false;
};

MinInequalityReport check_min_inequalities(const MidpointProblem& prob, const Vector& u,
                                           const Vector& v, double tol = 1e-9);

}  // namespace fnls
