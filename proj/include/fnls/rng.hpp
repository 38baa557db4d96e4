#pragma once

#include <cmath>
#include <cstdint>
#include <random>

#include "fnls/vec.hpp"

namespace fnls {

/// Deterministic sample stream: the same seed yields the same stream on every
/// run and platform. Doubles are derived from raw mt19937_64 output directly,
/// not through std distributions (whose sequences are implementation-defined).
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  /// Uniform in [0, 1).
  double uniform01() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

  double log_uniform(double lo, double hi) {
    return std::exp(uniform(std::log(lo), std::log(hi)));
  }

  /// Standard normal via Box-Muller (one cached spare).
  double normal() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    double u1 = uniform01();
    while (u1 <= 0.0) u1 = uniform01();
    double u2 = uniform01();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double theta = 2.0 * kPi * u2;
    spare_ = r * std::sin(theta);
    have_spare_ = true;
    return r * std::cos(theta);
  }

  Vector gaussian_vector(std::size_t dim) {
    Vector g(dim);
    for (auto& c : g) c = normal();
    return g;
  }

  /// Uniform in the closed Euclidean ball of the given radius.
  Vector point_in_ball(std::size_t dim, double radius) {
    Vector g = gaussian_vector(dim);
    double n = euclidean_norm(g);
    while (n < 1e-150) {
      g = gaussian_vector(dim);
      n = euclidean_norm(g);
    }
    const double r = radius * std::pow(uniform01(), 1.0 / static_cast<double>(dim));
    return scale(g, r / n);
  }

 private:
  static constexpr double kPi = 3.14159265358979323846;
  std::mt19937_64 gen_;
  double spare_ = 0.0;
  bool have_spare_ = false;
};

}  // namespace fnls
