#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "fnls/fuzzy_norm.hpp"
#include "fnls/isometry.hpp"
#include "fnls/report.hpp"
#include "fnls/vec.hpp"

namespace fnls {

/// h(x) = f(x) - f(0). h(0) is exactly zero by construction.
MapSpec normalize_at_zero(const MapSpec& f);

/// Size of a codomain discrepancy vector, measured the way the codomain norm
/// sees it: the crisp norm when one is available, otherwise 1 - N(delta, a)
/// at the reference threshold of the plan.
double codomain_defect(const FuzzyNorm& cod, const Vector& delta, double a_ref);

namespace clauses {

/// h((a+b)/2) vs (h(a)+h(b))/2
double midpoint_preservation_defect(const FuzzyNorm& cod, const MapSpec& h, const Vector& a,
                                    const Vector& b, double a_ref);
/// h(a+b) vs h(a)+h(b)
double additivity_defect(const FuzzyNorm& cod, const MapSpec& h, const Vector& a, const Vector& b,
                         double a_ref);
/// h(qa) vs q h(a), exact dyadic q
double rational_homogeneity_defect(const FuzzyNorm& cod, const MapSpec& h, const Vector& a,
                                   double q, double a_ref);
/// h(ra) vs r h(a), normalized by max(1, |r|)
double real_homogeneity_defect(const FuzzyNorm& cod, const MapSpec& h, const Vector& a, double r,
                               double a_ref);

}  // namespace clauses

/// h((a+b)/2) vs (h(a)+h(b))/2 over sampled pairs. Requires h(0) = 0.
CheckReport check_midpoint_preservation(const FuzzyNorm& cod, const MapSpec& h,
                                        const SamplePlan& plan, double tol);

/// Additivity h(a+b) = h(a) + h(b), then dyadic rational homogeneity
/// h(q a) = q h(a) for q = m / 2^k up to the given depth.
CheckReport check_q_linearity(const FuzzyNorm& cod, const MapSpec& h, const SamplePlan& plan,
                              double tol, std::size_t dyadic_depth);

/// h(r a) = r h(a) for irrational r. When the two images are parallel but
/// scaled wrong, the witness records the observed ratio as r_prime.
CheckReport check_real_homogeneity(const FuzzyNorm& cod, const MapSpec& h, const SamplePlan& plan,
                                   double tol);

struct AffineFit {
  std::vector<Vector> linear_rows;  // cod_dim rows of dom_dim entries
  Vector offset;
  double residual = 0.0;
  std::vector<Vector> fit_sample;

  Vector apply(const Vector& x) const;
};

using DefectMeasure = std::function<double(const Vector&)>;

/// Least-squares affine model of f over the given sample; residual is the
/// max defect of f(x) - (Lx + b) over the sample.
AffineFit fit_affine_at(const MapSpec& f, const std::vector<Vector>& sample,
                        const DefectMeasure& measure);

AffineFit fit_affine(const MapSpec& f, const FuzzyNorm& cod, const SamplePlan& plan);

struct CertifyOptions {
  double cert_tol = 1e-6;         // affine-fit residual bound for certification
  double check_tol = 1e-9;        // equality tolerance inside the sub-checks
  double collinearity_tol = 1e-6;
  std::size_t dyadic_depth = 6;
};

enum class CertifyVerdict { certified_affine, refuted, inconclusive };

std::string to_string(CertifyVerdict v);

struct CertifyReport {
  CertifyVerdict verdict = CertifyVerdict::inconclusive;
  CheckReport isometry;
  CheckReport collinearity;
  CheckReport midpoint;
  CheckReport q_linearity;
  CheckReport homogeneity;
  std::optional<AffineFit> fit;
  Vector f_zero;
  std::vector<std::string> notes;
};

/// The full pipeline: isometry and collinearity preservation, then the
/// midpoint/additivity/homogeneity chain on h = f - f(0), then an affine fit
/// of f. Certified only when every check passes and the fit residual is
/// within cert_tol; refuted when a conclusion-side check produces a witness.
CertifyReport certify_affine(const FuzzyNorm& dom, const FuzzyNorm& cod, const MapSpec& f,
                             const SamplePlan& plan, const CertifyOptions& options = {});

}  // namespace fnls
