#include <cmath>

#include <doctest.h>

#include "fnls/errors.hpp"
#include "fnls/isometry.hpp"
#include "fnls/rng.hpp"

using namespace fnls;

namespace {
FuzzyNorm euclid(std::size_t dim) { return FuzzyNorm::crisp_induced(dim, CrispNorm::euclidean()); }
}  // namespace

TEST_CASE("map wrapper guards its contract") {
  const auto id = make_identity_map(2);
  CHECK(id(Vector{1.0, 2.0}) == Vector{1.0, 2.0});
  CHECK_THROWS_AS(id(Vector{1.0}), StructuralError);

  const MapSpec wrong_dim([](const Vector&) { return Vector{1.0}; }, 2, 2, "wrong_dim");
  CHECK_THROWS_AS(wrong_dim(Vector{0.0, 0.0}), StructuralError);
  const MapSpec poisoned([](const Vector&) { return Vector{std::nan(""), 0.0}; }, 2, 2, "nan");
  CHECK_THROWS_AS(poisoned(Vector{0.0, 0.0}), ContractViolation);
  CHECK_THROWS_AS(MapSpec(nullptr, 2, 2, "empty"), StructuralError);
  CHECK_THROWS_AS(make_rigid_map(1, 3, Vector{1.0}), StructuralError);
}

TEST_CASE("rigid maps preserve distances and hit their translation") {
  const Vector shift{0.5, -1.0, 2.0};
  const auto f = make_rigid_map(7, 3, shift);
  CHECK(f(zeros(3)) == shift);
  Rng rng(3);
  for (int i = 0; i < 50; ++i) {
    const Vector x = rng.point_in_ball(3, 5.0);
    const Vector y = rng.point_in_ball(3, 5.0);
    const double before = euclidean_norm(subtract(x, y));
    const double after = euclidean_norm(subtract(f(x), f(y)));
    CHECK(std::abs(after - before) <= 1e-12 * (1.0 + before));
  }
}

TEST_CASE("isometry defect of a scaling map") {
  const auto f = make_scaling(1.1, 2);
  const double defect =
      clauses::isometry_defect(euclid(2), euclid(2), f, Vector{1.0, 0.0}, zeros(2), 1.0);
  CHECK(defect == doctest::Approx(0.5 - 1.0 / 2.1));
}

TEST_CASE("isometry check passes rigid maps and flags scalings") {
  SamplePlan plan;
  plan.n_points = 64;
  const auto dom = euclid(2);
  CHECK(check_isometry(dom, dom, make_rigid_map(5, 2, Vector{1.0, -2.0}), plan).pass());
  CHECK(check_isometry(dom, dom, make_identity_map(2), plan).pass());

  const auto report = check_isometry(dom, dom, make_scaling(1.1, 2), plan);
  CHECK_FALSE(report.pass());
  REQUIRE_FALSE(report.witnesses.empty());
  const auto f = make_scaling(1.1, 2);
  double max_defect = 0.0;
  for (const auto& w : report.witnesses) {
    const double again = clauses::isometry_defect(dom, dom, f, w.vectors.at("x"),
                                                  w.vectors.at("y"), w.scalars.at("a"));
    CHECK(again == w.defect);
    CHECK(w.defect > w.tol);
    max_defect = std::max(max_defect, w.defect);
  }
  // The largest possible defect for factor 1.1 is 0.02382, attained near
  // a = ||x - y|| sqrt(1.1).
  CHECK(max_defect > 0.023);
  CHECK(max_defect < 0.0239);
}

TEST_CASE("perturbed isometries are caught, the unperturbed one passes") {
  SamplePlan plan;
  plan.n_points = 64;
  const auto dom = euclid(3);
  CHECK(check_isometry(dom, dom, make_perturbed_isometry(11, 3, 0.0), plan).pass());
  CHECK_FALSE(check_isometry(dom, dom, make_perturbed_isometry(11, 3, 0.05), plan).pass());
}

TEST_CASE("sine curve bends lines") {
  const auto f = make_sine_curve_map();
  const Vector image = f(Vector{M_PI / 2.0});
  CHECK(image[0] == doctest::Approx(M_PI / 2.0));
  CHECK(image[1] == doctest::Approx(1.0));
  const double residual =
      clauses::collinearity_image_residual(f, Vector{0.0}, Vector{M_PI / 2.0}, Vector{M_PI}, 1e-6);
  CHECK(residual == doctest::Approx(1.0));
}

TEST_CASE("collinearity preservation check") {
  SamplePlan plan;
  plan.n_points = 64;
  CHECK(check_collinearity_preservation(make_rigid_map(9, 3, zeros(3)), plan, 1e-6).pass());
  CHECK(check_collinearity_preservation(make_scaling(3.0, 2), plan, 1e-6).pass());

  const auto f = make_sine_curve_map();
  const auto report = check_collinearity_preservation(f, plan, 1e-6);
  CHECK_FALSE(report.pass());
  REQUIRE_FALSE(report.witnesses.empty());
  const double tol = report.tolerances.at("collinearity_tol");
  for (const auto& w : report.witnesses) {
    const double again = clauses::collinearity_image_residual(f, w.vectors.at("p"),
                                                              w.vectors.at("q"),
                                                              w.vectors.at("r"), tol);
    CHECK(again == w.defect);
    CHECK(w.defect > w.tol);
  }
}

TEST_CASE("isometry check rejects mismatched spaces") {
  SamplePlan plan;
  plan.n_points = 8;
  CHECK_THROWS_AS(check_isometry(euclid(2), euclid(2), make_sine_curve_map(), plan),
                  StructuralError);
}
