#include <cmath>

#include <doctest.h>

#include "fnls/errors.hpp"
#include "fnls/mazur_ulam.hpp"
#include "fnls/rng.hpp"
#include "oracles.hpp"

using namespace fnls;

namespace {

FuzzyNorm euclid(std::size_t dim) { return FuzzyNorm::crisp_induced(dim, CrispNorm::euclidean()); }
FuzzyNorm max_plane() { return FuzzyNorm::crisp_induced(2, CrispNorm::max_norm()); }

SamplePlan small_plan() {
  SamplePlan plan;
  plan.n_points = 64;
  return plan;
}

}  // namespace

TEST_CASE("normalization pins the origin") {
  const auto f = make_rigid_map(3, 3, Vector{0.5, -1.0, 2.0});
  const auto h = normalize_at_zero(f);
  CHECK(h(zeros(3)) == zeros(3));
  CHECK(codomain_defect(euclid(2), Vector{3.0, 4.0}, 1.0) == 5.0);
}

TEST_CASE("conclusion defects of the sine curve at pinned arguments") {
  const auto h = normalize_at_zero(make_sine_curve_map());
  const auto cod = max_plane();
  const double a_ref = 1.0;
  CHECK(clauses::midpoint_preservation_defect(cod, h, Vector{0.0}, Vector{M_PI}, a_ref) ==
        doctest::Approx(1.0));
  CHECK(clauses::additivity_defect(cod, h, Vector{M_PI / 2.0}, Vector{M_PI / 2.0}, a_ref) ==
        doctest::Approx(2.0));
  CHECK(clauses::rational_homogeneity_defect(cod, h, Vector{M_PI / 2.0}, 0.5, a_ref) ==
        doctest::Approx(std::sqrt(0.5) - 0.5));
  // Normalized by max(1, |r|) = pi.
  CHECK(clauses::real_homogeneity_defect(cod, h, Vector{1.0}, M_PI, a_ref) ==
        doctest::Approx(std::sin(1.0)));
}

TEST_CASE("additivity is controlled by two midpoint defects") {
  const auto h = normalize_at_zero(make_sine_curve_map());
  const auto cod = max_plane();
  Rng rng(21);
  for (int i = 0; i < 40; ++i) {
    const Vector a{rng.uniform(-5.0, 5.0)};
    const Vector b{rng.uniform(-5.0, 5.0)};
    const double additive = clauses::additivity_defect(cod, h, a, b, 1.0);
    const double mp = clauses::midpoint_preservation_defect(cod, h, a, b, 1.0);
    const double half = clauses::midpoint_preservation_defect(cod, h, add(a, b), zeros(1), 1.0);
    CHECK(additive <= 2.0 * (mp + half) + 1e-12);
  }
}

TEST_CASE("linear maps pass the conclusion chain") {
  const auto plan = small_plan();
  const auto cod3 = euclid(3);
  const auto h_rigid = normalize_at_zero(make_rigid_map(13, 3, Vector{1.0, 0.0, -2.0}));
  CHECK(check_midpoint_preservation(cod3, h_rigid, plan, 1e-9).pass());
  CHECK(check_q_linearity(cod3, h_rigid, plan, 1e-9, 6).pass());
  CHECK(check_real_homogeneity(cod3, h_rigid, plan, 1e-9).pass());

  const auto cod2 = euclid(2);
  const auto stretch = make_scaling(1.1, 2);
  CHECK(check_midpoint_preservation(cod2, stretch, plan, 1e-9).pass());
  CHECK(check_q_linearity(cod2, stretch, plan, 1e-9, 6).pass());
  CHECK(check_real_homogeneity(cod2, stretch, plan, 1e-9).pass());
}

TEST_CASE("the conclusion chain refutes the sine curve with reproducible witnesses") {
  const auto plan = small_plan();
  const auto cod = max_plane();
  const auto h = normalize_at_zero(make_sine_curve_map());
  const double a_ref = plan.a_ref();

  const auto mp = check_midpoint_preservation(cod, h, plan, 1e-9);
  CHECK_FALSE(mp.pass());
  for (const auto& w : mp.witnesses) {
    CHECK(clauses::midpoint_preservation_defect(cod, h, w.vectors.at("a"), w.vectors.at("b"),
                                                a_ref) == w.defect);
  }

  const auto ql = check_q_linearity(cod, h, plan, 1e-9, 6);
  CHECK_FALSE(ql.pass());
  bool saw_rational = false;
  for (const auto& w : ql.witnesses) {
    if (w.clause == "additivity") {
      CHECK(clauses::additivity_defect(cod, h, w.vectors.at("a"), w.vectors.at("b"), a_ref) ==
            w.defect);
    } else {
      saw_rational = true;
      CHECK(clauses::rational_homogeneity_defect(cod, h, w.vectors.at("a"), w.scalars.at("q"),
                                                 a_ref) == w.defect);
    }
  }
  CHECK(saw_rational);

  const auto rh = check_real_homogeneity(cod, h, plan, 1e-9);
  CHECK_FALSE(rh.pass());
  for (const auto& w : rh.witnesses) {
    CHECK(clauses::real_homogeneity_defect(cod, h, w.vectors.at("a"), w.scalars.at("r"),
                                           a_ref) == w.defect);
  }
}

TEST_CASE("normalization is required by the conclusion checks") {
  const auto f = make_rigid_map(3, 2, Vector{2.0, -1.0});
  CHECK_THROWS_AS(check_midpoint_preservation(euclid(2), f, small_plan(), 1e-9),
                  StructuralError);
}

TEST_CASE("affine fit matches a hand-rolled least squares line") {
  const auto f = make_sine_curve_map();
  std::vector<Vector> sample;
  std::vector<double> ts, ys;
  for (int i = 0; i < 25; ++i) {
    const double t = -M_PI + 2.0 * M_PI * i / 24.0;
    sample.push_back(Vector{t});
    ts.push_back(t);
    ys.push_back(f(Vector{t})[1]);
  }
  const auto fit = fit_affine_at(f, sample, [](const Vector& d) { return max_abs(d); });
  const auto line = oracles::fit_line(ts, ys);
  CHECK(fit.linear_rows.size() == 2);
  CHECK(fit.linear_rows[0][0] == doctest::Approx(1.0));
  CHECK(fit.offset[0] == doctest::Approx(0.0));
  CHECK(fit.linear_rows[1][0] == doctest::Approx(line.alpha).epsilon(1e-9));
  CHECK(fit.offset[1] == doctest::Approx(line.beta).epsilon(1e-9).scale(1.0));
  CHECK(fit.residual == doctest::Approx(line.max_dev).epsilon(1e-9));
  CHECK(fit.residual >= 0.5);
}

TEST_CASE("affine fit recovers a rigid map") {
  const auto f = make_rigid_map(17, 3, Vector{0.25, -0.75, 1.5});
  const auto fit = fit_affine(f, euclid(3), small_plan());
  CHECK(fit.residual <= 1e-9);
  CHECK(max_abs(subtract(fit.offset, Vector{0.25, -0.75, 1.5})) <= 1e-9);
  Rng rng(4);
  for (int i = 0; i < 10; ++i) {
    const Vector x = rng.point_in_ball(3, 5.0);
    CHECK(max_abs(subtract(fit.apply(x), f(x))) <= 1e-9);
  }
}

TEST_CASE("affine fit rejects degenerate samples") {
  const auto f = make_identity_map(2);
  const auto measure = [](const Vector& d) { return max_abs(d); };
  std::vector<Vector> thin{{0.0, 0.0}, {1.0, 1.0}, {2.0, 2.0}, {3.0, 3.0}, {4.0, 4.0}};
  CHECK_THROWS_AS(fit_affine_at(f, thin, measure), StructuralError);
  std::vector<Vector> tiny{{0.0, 0.0}, {1.0, 0.0}, {0.0, 1.0}};
  CHECK_THROWS_AS(fit_affine_at(f, tiny, measure), StructuralError);
}

TEST_CASE("certification verdicts") {
  const auto plan = small_plan();

  const auto rigid = certify_affine(euclid(3), euclid(3),
                                    make_rigid_map(23, 3, Vector{1.0, 2.0, -0.5}), plan);
  CHECK(rigid.verdict == CertifyVerdict::certified_affine);
  REQUIRE(rigid.fit.has_value());
  CHECK(rigid.fit->residual <= 1e-6);
  CHECK(max_abs(subtract(rigid.f_zero, Vector{1.0, 2.0, -0.5})) <= 1e-9);
  CHECK(to_string(rigid.verdict) == "certified_affine");

  const auto stretched = certify_affine(euclid(2), euclid(2), make_scaling(1.1, 2), plan);
  CHECK(stretched.verdict == CertifyVerdict::inconclusive);
  CHECK_FALSE(stretched.isometry.pass());
  CHECK(stretched.collinearity.pass());
  CHECK(stretched.midpoint.pass());
  CHECK_FALSE(stretched.notes.empty());

  const auto bent = certify_affine(euclid(1), max_plane(), make_sine_curve_map(), plan);
  CHECK(bent.verdict == CertifyVerdict::refuted);
  CHECK_FALSE(bent.fit.has_value());
  CHECK(bent.isometry.pass());
  CHECK_FALSE(bent.collinearity.pass());
  CHECK_FALSE(bent.midpoint.pass());
  double top_defect = 0.0;
  for (const auto& w : bent.midpoint.witnesses) top_defect = std::max(top_defect, w.defect);
  CHECK(top_defect >= 0.5);
}
