#pragma once

#include <cstddef>
#include <functional>
#include <string>
#include <vector>

#include "fnls/fuzzy_norm.hpp"
#include "fnls/report.hpp"
#include "fnls/vec.hpp"

namespace fnls {

/// A sequence given by a total generator on indices 1..n_max.
struct SequenceSpec {
  std::function<Vector(std::size_t)> generator;
  std::size_t dimension = 0;
  std::size_t n_max = 1000;
  std::string label;

  /// Evaluates the generator, validating index range, dimension and
  /// finiteness (ContractViolation on a non-finite value).
  Vector at(std::size_t n) const;
};

SequenceSpec make_inverse_drift_sequence(Vector base, std::size_t n_max);
SequenceSpec make_constant_sequence(Vector value, std::size_t n_max);
SequenceSpec make_alternating_sequence(std::size_t dimension, double amplitude, std::size_t n_max);

namespace clauses {
double convergence_defect(const FuzzyNorm& n, const SequenceSpec& seq, const Vector& limit,
                          double a, std::size_t index, double eps);
double cauchy_defect(const FuzzyNorm& n, const SequenceSpec& seq, double a, std::size_t index,
                     std::size_t p, double eps);
}  // namespace clauses

/// Passes iff for every a in a_grid some n0 <= n_max has
/// N(x_n - limit, a) > 1 - eps for all n in [n0, n_max]. Finite-horizon
/// check; a pass is labeled "up to horizon" in the report notes.
CheckReport check_convergence(const FuzzyNorm& spec, const SequenceSpec& seq, const Vector& limit,
                              double eps, const std::vector<double>& a_grid);

/// Same quantifier shape for N(x_{n+p} - x_n, a) > 1 - eps, uniformly in
/// p in [1, p_max], n in [n0, n_max - p_max].
CheckReport check_cauchy(const FuzzyNorm& spec, const SequenceSpec& seq, double eps,
                         const std::vector<double>& a_grid, std::size_t p_max);

}  // namespace fnls
