#pragma once

#include <cstddef>
#include <functional>
#include <string>

#include "fnls/fuzzy_norm.hpp"
#include "fnls/report.hpp"
#include "fnls/vec.hpp"

namespace fnls {

/// A map between two finite-dimensional spaces, wrapped with dimension checks.
class MapSpec {
 public:
  using Evaluator = std::function<Vector(const Vector&)>;

  MapSpec(Evaluator evaluator, std::size_t dom_dim, std::size_t cod_dim, std::string label);

  Vector operator()(const Vector& x) const;

  std::size_t dom_dim() const { return dom_dim_; }
  std::size_t cod_dim() const { return cod_dim_; }
  const std::string& label() const { return label_; }

 private:
  Evaluator evaluator_;
  std::size_t dom_dim_;
  std::size_t cod_dim_;
  std::string label_;
};

namespace clauses {

/// |N_cod(f(x)-f(y), a) - N_dom(x-y, a)|
double isometry_defect(const FuzzyNorm& dom, const FuzzyNorm& cod, const MapSpec& f,
                       const Vector& x, const Vector& y, double a);

/// Residual of the collinearity fit for (f(p), f(q), f(r)); zero when the
/// image triple is collinear.
double collinearity_image_residual(const MapSpec& f, const Vector& p, const Vector& q,
                                   const Vector& r, double tol);

}  // namespace clauses

CheckReport check_isometry(const FuzzyNorm& dom, const FuzzyNorm& cod, const MapSpec& f,
                           const SamplePlan& plan);

/// Samples collinear triples q = r + t(p - r) in the domain and checks that
/// the image triples stay collinear within `tol`.
CheckReport check_collinearity_preservation(const MapSpec& f, const SamplePlan& plan, double tol);

// Map generators.

/// Random orthogonal matrix plus translation. The matrix comes from a seeded
/// QR factorization and is checked to be orthogonal to 1e-12.
MapSpec make_rigid_map(std::uint64_t seed, std::size_t dim, const Vector& translation);

MapSpec make_scaling(double factor, std::size_t dim);

/// t -> (t, sin t). Preserves no collinearity and no distances; the standard
/// negative fixture.
MapSpec make_sine_curve_map();

/// Rigid map plus a smooth perturbation of the given magnitude.
MapSpec make_perturbed_isometry(std::uint64_t seed, std::size_t dim, double magnitude);

MapSpec make_identity_map(std::size_t dim);

}  // namespace fnls
