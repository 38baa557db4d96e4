#include <cmath>
#include <limits>

#include <doctest.h>

#include "fnls/errors.hpp"
#include "fnls/vec.hpp"

using namespace fnls;

TEST_CASE("vector arithmetic") {
  const Vector u{1.0, 2.0, 3.0};
  const Vector v{4.0, -1.0, 0.5};
  CHECK(add(u, v) == Vector{5.0, 1.0, 3.5});
  CHECK(subtract(u, v) == Vector{-3.0, 3.0, 2.5});
  CHECK(scale(u, -2.0) == Vector{-2.0, -4.0, -6.0});
  CHECK(midpoint(u, v) == Vector{2.5, 0.5, 1.75});
  CHECK(dot(u, v) == doctest::Approx(1.0 * 4 - 2 + 1.5));
  CHECK(max_abs(v) == 4.0);
  CHECK(euclidean_norm(Vector{3.0, 4.0}) == 5.0);
  CHECK(unit_axis(3, 1) == Vector{0.0, 1.0, 0.0});
  CHECK(zeros(2) == Vector{0.0, 0.0});
}

TEST_CASE("dimension and finiteness guards") {
  CHECK_THROWS_AS(add(Vector{1.0}, Vector{1.0, 2.0}), StructuralError);
  CHECK_THROWS_AS(unit_axis(2, 2), StructuralError);
  const Vector bad{1.0, std::numeric_limits<double>::quiet_NaN()};
  CHECK_FALSE(all_finite(bad));
  CHECK_THROWS_AS(require_finite(bad, "probe"), InputDomainError);
  CHECK_NOTHROW(require_finite(Vector{1.0, 2.0}, "probe"));
}

TEST_CASE("crisp norm families") {
  const Vector v{3.0, -4.0};
  CHECK(CrispNorm::euclidean()(v) == 5.0);
  CHECK(CrispNorm::max_norm()(v) == 4.0);
  CHECK(CrispNorm::p_norm(1.0)(v) == doctest::Approx(7.0));
  CHECK(CrispNorm::p_norm(3.0)(Vector{1.0, 1.0}) == doctest::Approx(std::pow(2.0, 1.0 / 3.0)));
  CHECK(CrispNorm::weighted({4.0, 9.0})(Vector{1.0, 1.0}) == doctest::Approx(std::sqrt(13.0)));
  CHECK(CrispNorm::p_norm(2.0)(zeros(2)) == 0.0);
}

TEST_CASE("crisp norm validation") {
  CHECK_THROWS_AS(CrispNorm::p_norm(0.5).validate(2), StructuralError);
  CHECK_THROWS_AS(CrispNorm::weighted({1.0}).validate(2), StructuralError);
  CHECK_THROWS_AS(CrispNorm::weighted({1.0, -1.0}).validate(2), StructuralError);
  CHECK_NOTHROW(CrispNorm::weighted({1.0, 2.0}).validate(2));
  CHECK(CrispNorm::max_norm().name() == "max_norm");
}

TEST_CASE("p norm is overflow safe for large p") {
  const double value = CrispNorm::p_norm(400.0)(Vector{2.0, 1.0});
  CHECK(value == doctest::Approx(2.0));
  CHECK(std::isfinite(value));
}
