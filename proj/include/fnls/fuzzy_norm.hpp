#pragma once

#include <cstddef>
#include <functional>
#include <string>

#include "fnls/report.hpp"
#include "fnls/vec.hpp"

namespace fnls {

/// Evaluable fuzzy norm N(x, a) in [0,1] on a fixed-dimension real space.
///
/// The crisp-induced family is N(x, a) = a / (a + ||x||) for a > 0 and 0 for
/// a <= 0. Custom evaluators are arbitrary callables; their output is checked
/// against [0,1] at every call and a violation raises ContractViolation.
class FuzzyNorm {
 public:
  using Evaluator = std::function<double(const Vector&, double)>;

  static FuzzyNorm crisp_induced(std::size_t dimension, CrispNorm crisp);
  static FuzzyNorm custom(std::size_t dimension, std::string label, Evaluator evaluator);

  double operator()(const Vector& x, double a) const;

  std::size_t dimension() const { return dimension_; }
  bool is_crisp_induced() const { return induced_; }
  const CrispNorm& crisp() const;
  const std::string& label() const { return label_; }

 private:
  FuzzyNorm() = default;
  std::size_t dimension_ = 0;
  bool induced_ = true;
  CrispNorm crisp_;
  Evaluator evaluator_;
  std::string label_;
};

/// Named custom norms reconstructible from configuration. Known names:
///   "induced_sq_denominator"  a/(a + ||x||^2) for a > 0 (violates scaling)
///   "ceil_staircase"          (ceil(a)-1)/ceil(a) for a > 0 (violates
///                             upper semicontinuity at integer thresholds)
///   "overshoot"               returns 1.5 for a > 0 (contract violation)
FuzzyNorm builtin_custom_norm(const std::string& name, std::size_t dimension, CrispNorm crisp);

// Per-clause defect primitives. Checkers and witness re-verification share
// these, so a stored defect is reproducible bit-for-bit.
namespace clauses {

double n1_defect(const FuzzyNorm& n, const Vector& x, double a);        // |N(x,a)|, a <= 0
double n2_zero_defect(const FuzzyNorm& n, double a);                    // |1 - N(0,a)|
double n2_nonzero_value(const FuzzyNorm& n, const Vector& x, double a); // N(x,a)
double n3_defect(const FuzzyNorm& n, const Vector& x, double c, double b);
double n4_defect(const FuzzyNorm& n, const Vector& x, const Vector& y, double a, double b);
double n5_mono_defect(const FuzzyNorm& n, const Vector& x, double a_lo, double a_hi);
double n5_limit_defect(const FuzzyNorm& n, const Vector& x, double big_a);
double n6_defect(const FuzzyNorm& n, const Vector& x, double a);  // probe ladder estimate

struct StrictConvexityProbe {
  double min_eq_defect;    // |N(x+y,a+b) - min{N(x,a),N(y,b)}|
  double value_eq_defect;  // |N(x,a) - N(y,b)|
  double separation;       // max(||x-y||_inf, |a-b|)
};
StrictConvexityProbe strict_convexity_probe(const FuzzyNorm& n, const Vector& x, const Vector& y,
                                            double a, double b);

struct CrispConvexityProbe {
  double equality_gap;  // ||u|| + ||v|| - ||u+v||
  double parallel_gap;  // ||u/|u| - v/|v|||_inf (Euclidean normalization)
};
CrispConvexityProbe crisp_convexity_probe(const CrispNorm& k, const Vector& u, const Vector& v);

}  // namespace clauses

/// Separation a strict-convexity conclusion must exceed before a quadruple
/// counts as a witness (keeps tolerance-boundary pairs out).
inline double strict_convexity_separation_threshold(double equality_tol) {
  return 1e3 * equality_tol;
}

CheckReport check_axioms(const FuzzyNorm& spec, const SamplePlan& plan);
CheckReport check_strict_convexity(const FuzzyNorm& spec, const SamplePlan& plan);
CheckReport check_crisp_strict_convexity(const CrispNorm& kind, std::size_t dimension,
                                         const SamplePlan& plan);

}  // namespace fnls
