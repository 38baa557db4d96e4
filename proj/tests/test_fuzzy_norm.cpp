#include <cmath>

#include <doctest.h>

#include "fnls/errors.hpp"
#include "fnls/fuzzy_norm.hpp"

using namespace fnls;

namespace {

FuzzyNorm euclid2() { return FuzzyNorm::crisp_induced(2, CrispNorm::euclidean()); }

const Witness* find_witness(const CheckReport& r, const std::string& clause) {
  for (const auto& w : r.witnesses) {
    if (w.clause == clause) return &w;
  }
  return nullptr;
}

bool clause_passes(const CheckReport& r, const std::string& id) {
  for (const auto& c : r.clauses) {
    if (c.id == id) return c.pass;
  }
  FAIL("missing clause row ", id);
  return false;
}

}  // namespace

TEST_CASE("crisp induced evaluation") {
  const auto n = euclid2();
  CHECK(n(Vector{1.0, 0.0}, 1.0) == 0.5);
  CHECK(n(Vector{3.0, 4.0}, 5.0) == 0.5);
  CHECK(n(Vector{1.0, 0.0}, 0.0) == 0.0);
  CHECK(n(Vector{1.0, 0.0}, -5.0) == 0.0);
  CHECK(n(Vector{0.0, 0.0}, 2.0) == 1.0);
  CHECK(n.is_crisp_induced());
  CHECK(n.dimension() == 2);
}

TEST_CASE("evaluation guards") {
  const auto n = euclid2();
  CHECK_THROWS_AS(n(Vector{1.0}, 1.0), StructuralError);
  CHECK_THROWS_AS(n(Vector{1.0, std::nan("")}, 1.0), InputDomainError);
  CHECK_THROWS_AS(n(Vector{1.0, 0.0}, std::nan("")), InputDomainError);
  const auto bad = builtin_custom_norm("overshoot", 2, CrispNorm::euclidean());
  CHECK_THROWS_AS(bad(Vector{1.0, 0.0}, 1.0), ContractViolation);
  CHECK_THROWS_AS(builtin_custom_norm("no_such_norm", 2, CrispNorm::euclidean()),
                  StructuralError);
}

TEST_CASE("clause defect primitives") {
  const auto n = euclid2();
  CHECK(clauses::n1_defect(n, Vector{1.0, 0.0}, 0.0) == 0.0);
  CHECK(clauses::n1_defect(n, Vector{1.0, 0.0}, -2.0) == 0.0);
  CHECK_THROWS_AS(clauses::n1_defect(n, Vector{1.0, 0.0}, 1.0), StructuralError);
  CHECK(clauses::n2_zero_defect(n, 1.0) == 0.0);
  CHECK(clauses::n2_nonzero_value(n, Vector{1.0, 0.0}, 1.0) == 0.5);
  CHECK(clauses::n3_defect(n, Vector{1.0, 0.0}, 3.0, 7.0) <= 1e-12);
  CHECK(clauses::n4_defect(n, Vector{1.0, 0.0}, Vector{0.0, 2.0}, 1.0, 2.0) <= 1e-12);
  CHECK(clauses::n5_mono_defect(n, Vector{1.0, 0.0}, 0.5, 2.0) <= 0.0);
  CHECK(clauses::n5_limit_defect(n, Vector{1.0, 0.0}, 1e9) == doctest::Approx(1e-9));
  CHECK(clauses::n6_defect(n, Vector{1.0, 0.0}, 1.0) <= 1e-8);
  CHECK_THROWS_AS(clauses::n3_defect(n, Vector{1.0, 0.0}, 0.0, 1.0), StructuralError);
  CHECK_THROWS_AS(clauses::n5_mono_defect(n, Vector{1.0, 0.0}, 2.0, 1.0), StructuralError);
}

TEST_CASE("scaling defect of the squared-denominator evaluator") {
  const auto n = builtin_custom_norm("induced_sq_denominator", 2, CrispNorm::euclidean());
  // N(2x, 1) = 1/5 against N(x, 1/2) = 1/3.
  CHECK(clauses::n3_defect(n, Vector{1.0, 0.0}, 2.0, 1.0) == doctest::Approx(2.0 / 15.0));
}

TEST_CASE("staircase evaluator jumps at integer thresholds") {
  const auto n = builtin_custom_norm("ceil_staircase", 2, CrispNorm::euclidean());
  CHECK(n(Vector{1.0, 0.0}, 2.0) == 0.5);
  CHECK(n(Vector{1.0, 0.0}, 2.5) == doctest::Approx(2.0 / 3.0));
  CHECK(clauses::n6_defect(n, Vector{1.0, 0.0}, 2.0) == doctest::Approx(1.0 / 6.0));
}

TEST_CASE("axiom check passes for crisp induced spaces") {
  SamplePlan plan;
  plan.n_points = 64;
  for (std::size_t dim : {1, 2, 3}) {
    const auto report = check_axioms(FuzzyNorm::crisp_induced(dim, CrispNorm::euclidean()), plan);
    CHECK(report.pass());
    CHECK(report.clauses.size() == 6);
    for (const auto& c : report.clauses) CHECK(c.pass);
    CHECK(report.violations_total == 0);
    CHECK(report.samples_used > plan.n_points);
  }
  CHECK(check_axioms(FuzzyNorm::crisp_induced(2, CrispNorm::max_norm()), plan).pass());
  CHECK(check_axioms(FuzzyNorm::crisp_induced(3, CrispNorm::p_norm(1.5)), plan).pass());
}

TEST_CASE("axiom check flags the scaling violation with a reproducible witness") {
  SamplePlan plan;
  plan.n_points = 64;
  const auto n = builtin_custom_norm("induced_sq_denominator", 2, CrispNorm::euclidean());
  const auto report = check_axioms(n, plan);
  CHECK_FALSE(report.pass());
  CHECK_FALSE(clause_passes(report, "N3"));
  const Witness* w = find_witness(report, "N3");
  REQUIRE(w != nullptr);
  const double again =
      clauses::n3_defect(n, w->vectors.at("x"), w->scalars.at("c"), w->scalars.at("b"));
  CHECK(again == w->defect);
  CHECK(w->defect > w->tol);
}

TEST_CASE("axiom check flags the semicontinuity violation") {
  SamplePlan plan;
  plan.n_points = 64;
  plan.witness_cap = 100000;  // keep every witness, the scaling defects are larger
  const auto n = builtin_custom_norm("ceil_staircase", 2, CrispNorm::euclidean());
  const auto report = check_axioms(n, plan);
  CHECK_FALSE(clause_passes(report, "N6"));
  CHECK(clause_passes(report, "N1"));
  CHECK(clause_passes(report, "N2"));
  CHECK(clause_passes(report, "N4"));
  const Witness* w = find_witness(report, "N6");
  REQUIRE(w != nullptr);
  CHECK(clauses::n6_defect(n, w->vectors.at("x"), w->scalars.at("a")) == w->defect);
}

TEST_CASE("axiom check flags a norm that never separates points") {
  SamplePlan plan;
  plan.n_points = 32;
  const auto n = FuzzyNorm::custom(
      2, "always_one", [](const Vector&, double a) { return a > 0.0 ? 1.0 : 0.0; });
  const auto report = check_axioms(n, plan);
  CHECK_FALSE(clause_passes(report, "N2"));
  const Witness* w = find_witness(report, "N2.nonzero");
  REQUIRE(w != nullptr);
  CHECK(w->scalars.at("value") == 1.0);
}

TEST_CASE("axiom check surfaces evaluator contract violations") {
  SamplePlan plan;
  plan.n_points = 8;
  const auto bad = builtin_custom_norm("overshoot", 2, CrispNorm::euclidean());
  CHECK_THROWS_AS(check_axioms(bad, plan), ContractViolation);
}

TEST_CASE("strict convexity probe on a scaling pair") {
  const auto p =
      clauses::strict_convexity_probe(euclid2(), Vector{1.0, 0.0}, Vector{2.0, 0.0}, 1.0, 2.0);
  CHECK(p.min_eq_defect == 0.0);
  CHECK(p.value_eq_defect == 0.0);
  CHECK(p.separation == 1.0);
}

TEST_CASE("strict convexity fails literally for every crisp induced norm") {
  SamplePlan plan;
  plan.n_points = 64;
  const auto report = check_strict_convexity(euclid2(), plan);
  CHECK_FALSE(report.pass());
  REQUIRE_FALSE(report.witnesses.empty());
  const auto n = euclid2();
  bool saw_scaling_family = false;
  for (const auto& w : report.witnesses) {
    const auto p = clauses::strict_convexity_probe(n, w.vectors.at("x"), w.vectors.at("y"),
                                                   w.scalars.at("a"), w.scalars.at("b"));
    CHECK(p.min_eq_defect <= plan.equality_tol);
    CHECK(p.value_eq_defect <= plan.equality_tol);
    CHECK(p.separation == w.defect);
    CHECK(w.defect > w.tol);
    if (w.scalars.count("c")) {
      saw_scaling_family = true;
      CHECK(w.vectors.at("y") == scale(w.vectors.at("x"), w.scalars.at("c")));
    }
  }
  CHECK(saw_scaling_family);
}

TEST_CASE("crisp strict convexity separates round from polyhedral norms") {
  SamplePlan plan;
  plan.n_points = 64;
  CHECK(check_crisp_strict_convexity(CrispNorm::euclidean(), 2, plan).pass());
  CHECK(check_crisp_strict_convexity(CrispNorm::weighted({1.0, 4.0, 2.0}), 3, plan).pass());

  // Random pairs whose largest coordinates align also reach triangle
  // equality, so the structured probe is only the first witness of many.
  const auto max_report = check_crisp_strict_convexity(CrispNorm::max_norm(), 2, plan);
  CHECK_FALSE(max_report.pass());
  REQUIRE_FALSE(max_report.witnesses.empty());
  const auto& w = max_report.witnesses.front();
  CHECK(w.vectors.at("u") == Vector{2.5, 0.0});
  CHECK(w.vectors.at("v") == Vector{2.5, 2.5});
  CHECK(w.scalars.at("equality_gap") == 0.0);
  CHECK(w.defect == doctest::Approx(1.0 / std::sqrt(2.0)));

  CHECK_FALSE(check_crisp_strict_convexity(CrispNorm::p_norm(1.0), 2, plan).pass());
  CHECK_THROWS_AS(check_crisp_strict_convexity(CrispNorm::euclidean(), 1, plan), StructuralError);
}

TEST_CASE("sample plan validation") {
  SamplePlan plan;
  CHECK_NOTHROW(plan.validate());
  plan.n_points = 0;
  CHECK_THROWS_AS(plan.validate(), StructuralError);
  plan = SamplePlan{};
  plan.a_min = 2.0;
  plan.a_max = 1.0;
  CHECK_THROWS_AS(plan.validate(), StructuralError);
  plan = SamplePlan{};
  plan.equality_tol = 0.0;
  CHECK_THROWS_AS(plan.validate(), StructuralError);
  CHECK(SamplePlan{}.a_ref() == doctest::Approx(1.0));
}
