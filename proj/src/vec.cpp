#include "fnls/vec.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "fnls/errors.hpp"

namespace fnls {

bool all_finite(const Vector& v) {
  return std::all_of(v.begin(), v.end(), [](double c) { return std::isfinite(c); });
}

void require_finite(const Vector& v, const char* what) {
  if (!all_finite(v)) {
    throw InputDomainError(std::string(what) + " has a non-finite component");
  }
}

void require_same_dim(const Vector& u, const Vector& v, const char* what) {
  if (u.size() != v.size()) {
    throw StructuralError(std::string(what) + ": dimension mismatch (" +
                          std::to_string(u.size()) + " vs " + std::to_string(v.size()) + ")");
  }
}

Vector zeros(std::size_t dim) { return Vector(dim, 0.0); }

Vector unit_axis(std::size_t dim, std::size_t axis) {
  if (axis >= dim) throw StructuralError("unit_axis: axis out of range");
  Vector v(dim, 0.0);
  v[axis] = 1.0;
  return v;
}

Vector add(const Vector& u, const Vector& v) {
  require_same_dim(u, v, "add");
  Vector out(u.size());
  for (std::size_t i = 0; i < u.size(); ++i) out[i] = u[i] + v[i];
  return out;
}

Vector subtract(const Vector& u, const Vector& v) {
  require_same_dim(u, v, "subtract");
  Vector out(u.size());
  for (std::size_t i = 0; i < u.size(); ++i) out[i] = u[i] - v[i];
  return out;
}

Vector scale(const Vector& v, double c) {
  Vector out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = c * v[i];
  return out;
}

Vector midpoint(const Vector& a, const Vector& b) {
  require_same_dim(a, b, "midpoint");
  Vector out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = (a[i] + b[i]) / 2.0;
  return out;
}

double dot(const Vector& u, const Vector& v) {
  require_same_dim(u, v, "dot");
  double s = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) s += u[i] * v[i];
  return s;
}

double max_abs(const Vector& v) {
  double m = 0.0;
  for (double c : v) m = std::max(m, std::abs(c));
  return m;
}

double euclidean_norm(const Vector& v) {
  double s = 0.0;
  for (double c : v) s += c * c;
  return std::sqrt(s);
}

CrispNorm CrispNorm::euclidean() { return CrispNorm{}; }

CrispNorm CrispNorm::p_norm(double p) {
  CrispNorm k;
  k.kind = CrispNormKind::p_norm;
  k.p = p;
  return k;
}

CrispNorm CrispNorm::max_norm() {
  CrispNorm k;
  k.kind = CrispNormKind::max_norm;
  return k;
}

CrispNorm CrispNorm::weighted(std::vector<double> weights) {
  CrispNorm k;
  k.kind = CrispNormKind::weighted_euclidean;
  k.weights = std::move(weights);
  return k;
}

void CrispNorm::validate(std::size_t dim) const {
  switch (kind) {
    case CrispNormKind::euclidean:
    case CrispNormKind::max_norm:
      return;
    case CrispNormKind::p_norm:
      if (!(p >= 1.0) || !std::isfinite(p)) {
        throw StructuralError("p_norm requires finite p >= 1");
      }
      return;
    case CrispNormKind::weighted_euclidean:
      if (weights.size() != dim) {
        throw StructuralError("weighted_euclidean: weight count " +
                              std::to_string(weights.size()) + " does not match dimension " +
                              std::to_string(dim));
      }
      for (double w : weights) {
        if (!(w > 0.0) || !std::isfinite(w)) {
          throw StructuralError("weighted_euclidean requires finite positive weights");
        }
      }
      return;
  }
  throw StructuralError("unknown crisp norm kind");
}

std::string CrispNorm::name() const {
  switch (kind) {
    case CrispNormKind::euclidean:
      return "euclidean";
    case CrispNormKind::p_norm:
      return "p_norm";
    case CrispNormKind::max_norm:
      return "max_norm";
    case CrispNormKind::weighted_euclidean:
      return "weighted_euclidean";
  }
  return "unknown";
}

double CrispNorm::operator()(const Vector& v) const {
  switch (kind) {
    case CrispNormKind::euclidean:
      return euclidean_norm(v);
    case CrispNormKind::max_norm:
      return max_abs(v);
    case CrispNormKind::p_norm: {
      // Scale out the largest component so large p does not overflow.
      const double m = max_abs(v);
      if (m == 0.0) return 0.0;
      double s = 0.0;
      for (double c : v) s += std::pow(std::abs(c) / m, p);
      return m * std::pow(s, 1.0 / p);
    }
    case CrispNormKind::weighted_euclidean: {
      if (weights.size() != v.size()) {
        throw StructuralError("weighted_euclidean: weight count does not match vector");
      }
      double s = 0.0;
      for (std::size_t i = 0; i < v.size(); ++i) s += weights[i] * v[i] * v[i];
      return std::sqrt(s);
    }
  }
  throw StructuralError("unknown crisp norm kind");
}

}  // namespace fnls
