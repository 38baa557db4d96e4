#include "fnls/sequences.hpp"

#include <cmath>
#include <limits>
#include <string>
#include <utility>

#include "fnls/errors.hpp"

namespace fnls {

Vector SequenceSpec::at(std::size_t n) const {
  if (!generator) throw StructuralError("sequence '" + label + "' has no generator");
  if (n < 1 || n > n_max) {
    throw StructuralError("sequence index " + std::to_string(n) + " outside [1, " +
                          std::to_string(n_max) + "]");
  }
  Vector x = generator(n);
  if (x.size() != dimension) {
    throw StructuralError("sequence '" + label + "' produced dimension " +
                          std::to_string(x.size()) + ", expected " + std::to_string(dimension));
  }
  if (!all_finite(x)) {
    throw ContractViolation("sequence '" + label + "' produced a non-finite term");
  }
  return x;
}

SequenceSpec make_inverse_drift_sequence(Vector base, std::size_t n_max) {
  require_finite(base, "sequence base");
  if (base.empty()) throw StructuralError("sequence base must have positive dimension");
  SequenceSpec seq;
  seq.dimension = base.size();
  seq.n_max = n_max;
  seq.label = "inverse_drift";
  seq.generator = [base](std::size_t n) {
    Vector x = base;
    x[0] += 1.0 / static_cast<double>(n);
    return x;
  };
  return seq;
}

SequenceSpec make_constant_sequence(Vector value, std::size_t n_max) {
  require_finite(value, "sequence value");
  if (value.empty()) throw StructuralError("sequence value must have positive dimension");
  SequenceSpec seq;
  seq.dimension = value.size();
  seq.n_max = n_max;
  seq.label = "constant";
  seq.generator = [value](std::size_t) { return value; };
  return seq;
}

SequenceSpec make_alternating_sequence(std::size_t dimension, double amplitude,
                                       std::size_t n_max) {
  if (dimension == 0) throw StructuralError("sequence dimension must be positive");
  if (!std::isfinite(amplitude)) throw StructuralError("sequence amplitude must be finite");
  SequenceSpec seq;
  seq.dimension = dimension;
  seq.n_max = n_max;
  seq.label = "alternating";
  seq.generator = [dimension, amplitude](std::size_t n) {
    Vector x = zeros(dimension);
    x[0] = (n % 2 == 0) ? amplitude : -amplitude;
    return x;
  };
  return seq;
}

namespace clauses {

double convergence_defect(const FuzzyNorm& n, const SequenceSpec& seq, const Vector& limit,
                          double a, std::size_t index, double eps) {
  return (1.0 - eps) - n(subtract(seq.at(index), limit), a);
}

double cauchy_defect(const FuzzyNorm& n, const SequenceSpec& seq, double a, std::size_t index,
                     std::size_t p, double eps) {
  return (1.0 - eps) - n(subtract(seq.at(index + p), seq.at(index)), a);
}

}  // namespace clauses

namespace {

void validate_sequence_inputs(const FuzzyNorm& spec, const SequenceSpec& seq, double eps,
                              const std::vector<double>& a_grid) {
  if (seq.dimension != spec.dimension()) {
    throw StructuralError("sequence dimension does not match the space");
  }
  if (seq.n_max < 2) throw StructuralError("sequence horizon n_max must be at least 2");
  if (!(eps > 0.0 && eps < 1.0)) throw StructuralError("eps must lie in (0, 1)");
  if (a_grid.empty()) throw StructuralError("threshold grid is empty");
  for (double a : a_grid) {
    if (!(a > 0.0) || !std::isfinite(a)) {
      throw StructuralError("threshold grid entries must be finite and positive");
    }
  }
}

}  // namespace

CheckReport check_convergence(const FuzzyNorm& spec, const SequenceSpec& seq, const Vector& limit,
                              double eps, const std::vector<double>& a_grid) {
  validate_sequence_inputs(spec, seq, eps, a_grid);
  if (limit.size() != spec.dimension()) {
    throw StructuralError("limit dimension does not match the space");
  }
  require_finite(limit, "limit");

  CheckReport report;
  std::size_t failing_thresholds = 0;
  for (double a : a_grid) {
    std::size_t last_fail = 0;  // 0 = no failing index
    double last_defect = 0.0;
    double last_value = 0.0;
    for (std::size_t n = 1; n <= seq.n_max; ++n) {
      const double defect = clauses::convergence_defect(spec, seq, limit, a, n, eps);
      ++report.samples_used;
      if (defect >= 0.0) {
        last_fail = n;
        last_defect = defect;
        last_value = (1.0 - eps) - defect;
      }
    }
    if (last_fail == seq.n_max) {
      ++failing_thresholds;
      ++report.violations_total;
      report.witnesses.push_back(Witness{
          "convergence",
          {{"x_n", seq.at(last_fail)}, {"limit", limit}},
          {{"a", a}, {"n", static_cast<double>(last_fail)}, {"value", last_value}},
          last_defect,
          0.0,
          "closeness level not reached at the horizon"});
      report.notes.push_back("a=" + std::to_string(a) + ": still failing at n_max");
    } else {
      report.notes.push_back("a=" + std::to_string(a) + ": stable from n0=" +
                             std::to_string(last_fail + 1));
    }
  }
  report.clauses = {{"convergence", failing_thresholds == 0,
                     "horizon n_max=" + std::to_string(seq.n_max) + ", pass is up to horizon"}};
  report.tolerances = {{"eps", eps}};
  return report;
}

CheckReport check_cauchy(const FuzzyNorm& spec, const SequenceSpec& seq, double eps,
                         const std::vector<double>& a_grid, std::size_t p_max) {
  validate_sequence_inputs(spec, seq, eps, a_grid);
  if (p_max == 0 || p_max >= seq.n_max) {
    throw StructuralError("p_max must lie in [1, n_max)");
  }

  CheckReport report;
  const std::size_t n_hi = seq.n_max - p_max;
  std::size_t failing_thresholds = 0;
  for (double a : a_grid) {
    std::size_t last_fail = 0;
    std::size_t fail_p = 0;
    double last_defect = 0.0;
    double last_value = 0.0;
    for (std::size_t n = 1; n <= n_hi; ++n) {
      for (std::size_t p = 1; p <= p_max; ++p) {
        const double defect = clauses::cauchy_defect(spec, seq, a, n, p, eps);
        ++report.samples_used;
        if (defect >= 0.0) {
          last_fail = n;
          fail_p = p;
          last_defect = defect;
          last_value = (1.0 - eps) - defect;
        }
      }
    }
    if (last_fail == n_hi) {
      ++failing_thresholds;
      ++report.violations_total;
      report.witnesses.push_back(
          Witness{"cauchy",
                  {{"x_n", seq.at(last_fail)}, {"x_np", seq.at(last_fail + fail_p)}},
                  {{"a", a},
                   {"n", static_cast<double>(last_fail)},
                   {"p", static_cast<double>(fail_p)},
                   {"value", last_value}},
                  last_defect,
                  0.0,
                  "closeness level not reached at the horizon"});
      report.notes.push_back("a=" + std::to_string(a) + ": still failing at n_max - p_max");
    } else {
      report.notes.push_back("a=" + std::to_string(a) + ": stable from n0=" +
                             std::to_string(last_fail + 1));
    }
  }
  report.clauses = {{"cauchy", failing_thresholds == 0,
                     "horizon n_max=" + std::to_string(seq.n_max) +
                         ", offsets p in [1, " + std::to_string(p_max) + "]"}};
  report.tolerances = {{"eps", eps}};
  return report;
}

}  // namespace fnls
