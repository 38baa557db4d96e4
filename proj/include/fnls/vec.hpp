#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace fnls {

/// Point of a finite-dimensional real space. Components must stay finite;
/// the operations below validate that and throw InputDomainError otherwise.
using Vector = std::vector<double>;

bool all_finite(const Vector& v);
void require_finite(const Vector& v, const char* what);
void require_same_dim(const Vector& u, const Vector& v, const char* what);

Vector zeros(std::size_t dim);
Vector unit_axis(std::size_t dim, std::size_t axis);

Vector add(const Vector& u, const Vector& v);
Vector subtract(const Vector& u, const Vector& v);
Vector scale(const Vector& v, double c);
Vector midpoint(const Vector& a, const Vector& b);

double dot(const Vector& u, const Vector& v);
double max_abs(const Vector& v);
double euclidean_norm(const Vector& v);

enum class CrispNormKind { euclidean, p_norm, max_norm, weighted_euclidean };

/// Classical norm selector. `p` is used by p_norm, `weights` by
/// weighted_euclidean; both are ignored otherwise.
struct CrispNorm {
  CrispNormKind kind = CrispNormKind::euclidean;
  double p = 2.0;
  std::vector<double> weights;

  static CrispNorm euclidean();
  static CrispNorm p_norm(double p);
  static CrispNorm max_norm();
  static CrispNorm weighted(std::vector<double> weights);

  // Throws StructuralError on bad parameters or a dimension mismatch.
  void validate(std::size_t dim) const;
  std::string name() const;

  double operator()(const Vector& v) const;
};

}  // namespace fnls
