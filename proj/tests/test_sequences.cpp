#include <doctest.h>

#include "fnls/errors.hpp"
#include "fnls/sequences.hpp"

using namespace fnls;

namespace {
FuzzyNorm euclid(std::size_t dim) { return FuzzyNorm::crisp_induced(dim, CrispNorm::euclidean()); }
const std::vector<double> grid{0.5, 1.0, 2.0};
}  // namespace

TEST_CASE("sequence generators") {
  const auto drift = make_inverse_drift_sequence(Vector{1.0, -1.0}, 100);
  CHECK(drift.at(1) == Vector{2.0, -1.0});
  CHECK(drift.at(4) == Vector{1.25, -1.0});
  CHECK(drift.dimension == 2);

  const auto constant = make_constant_sequence(Vector{0.7}, 100);
  CHECK(constant.at(1) == Vector{0.7});
  CHECK(constant.at(100) == Vector{0.7});

  const auto alt = make_alternating_sequence(1, 2.0, 100);
  CHECK(alt.at(1) == Vector{-2.0});
  CHECK(alt.at(2) == Vector{2.0});

  CHECK_THROWS_AS(drift.at(0), StructuralError);
  CHECK_THROWS_AS(drift.at(101), StructuralError);
}

TEST_CASE("defect primitives at pinned indices") {
  const auto n = euclid(1);
  const auto drift = make_inverse_drift_sequence(Vector{0.0}, 1000);
  // At n = 50, a = 1: N = 1/(1 + 0.02) = 50/51.
  CHECK(clauses::convergence_defect(n, drift, Vector{0.0}, 1.0, 50, 0.01) ==
        doctest::Approx(0.99 - 50.0 / 51.0));
  CHECK(clauses::convergence_defect(n, drift, Vector{0.0}, 1.0, 500, 0.01) < 0.0);

  const auto alt = make_alternating_sequence(1, 1.0, 1000);
  // Odd p steps across the gap of width 2: N = 1/3 at a = 1.
  CHECK(clauses::cauchy_defect(n, alt, 1.0, 4, 1, 0.01) == doctest::Approx(0.99 - 1.0 / 3.0));
  CHECK(clauses::cauchy_defect(n, alt, 1.0, 4, 2, 0.01) < 0.0);
}

TEST_CASE("inverse drift converges to its base and is Cauchy") {
  const auto n = euclid(2);
  const auto seq = make_inverse_drift_sequence(Vector{1.0, -1.0}, 1000);
  const auto conv = check_convergence(n, seq, Vector{1.0, -1.0}, 0.01, grid);
  CHECK(conv.pass());
  CHECK_FALSE(conv.notes.empty());
  const auto cauchy = check_cauchy(n, seq, 0.01, grid, 10);
  CHECK(cauchy.pass());
}

TEST_CASE("inverse drift does not converge to a wrong limit") {
  const auto n = euclid(2);
  const auto seq = make_inverse_drift_sequence(Vector{1.0, -1.0}, 1000);
  const auto conv = check_convergence(n, seq, Vector{0.0, 0.0}, 0.01, grid);
  CHECK_FALSE(conv.pass());
  REQUIRE_FALSE(conv.witnesses.empty());
  const auto& w = conv.witnesses.front();
  const auto a = w.scalars.at("a");
  const auto idx = static_cast<std::size_t>(w.scalars.at("n"));
  CHECK(clauses::convergence_defect(n, seq, w.vectors.at("limit"), a, idx, 0.01) == w.defect);
  CHECK(w.defect >= 0.0);
}

TEST_CASE("constant sequence converges exactly to its value") {
  const auto n = euclid(1);
  const auto seq = make_constant_sequence(Vector{0.7}, 1000);
  CHECK(check_convergence(n, seq, Vector{0.7}, 0.01, grid).pass());
  CHECK(check_cauchy(n, seq, 0.01, grid, 10).pass());
  CHECK_FALSE(check_convergence(n, seq, Vector{0.5}, 0.01, grid).pass());
}

TEST_CASE("alternating sequence is neither convergent nor Cauchy") {
  const auto n = euclid(1);
  const auto seq = make_alternating_sequence(1, 1.0, 1000);
  const auto conv = check_convergence(n, seq, Vector{0.0}, 0.01, grid);
  CHECK_FALSE(conv.pass());
  const auto cauchy = check_cauchy(n, seq, 0.01, grid, 10);
  CHECK_FALSE(cauchy.pass());
  REQUIRE_FALSE(cauchy.witnesses.empty());
  const auto& w = cauchy.witnesses.front();
  const auto idx = static_cast<std::size_t>(w.scalars.at("n"));
  const auto p = static_cast<std::size_t>(w.scalars.at("p"));
  CHECK(clauses::cauchy_defect(n, seq, w.scalars.at("a"), idx, p, 0.01) == w.defect);
}

TEST_CASE("quantifier checks validate their parameters") {
  const auto n = euclid(1);
  const auto seq = make_constant_sequence(Vector{0.0}, 100);
  CHECK_THROWS_AS(check_convergence(n, seq, Vector{0.0}, 0.0, grid), StructuralError);
  CHECK_THROWS_AS(check_convergence(n, seq, Vector{0.0}, 1.0, grid), StructuralError);
  CHECK_THROWS_AS(check_convergence(n, seq, Vector{0.0}, 0.01, {}), StructuralError);
  CHECK_THROWS_AS(check_convergence(n, seq, Vector{0.0}, 0.01, {-1.0}), StructuralError);
  CHECK_THROWS_AS(check_cauchy(n, seq, 0.01, grid, 0), StructuralError);
  CHECK_THROWS_AS(check_cauchy(n, seq, 0.01, grid, 100), StructuralError);
  CHECK_THROWS_AS(check_convergence(euclid(2), seq, Vector{0.0, 0.0}, 0.01, grid),
                  StructuralError);
}
