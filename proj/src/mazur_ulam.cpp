#include "fnls/mazur_ulam.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

#include <Eigen/Dense>

#include "fnls/errors.hpp"
#include "fnls/rng.hpp"
#include "sampling.hpp"

namespace fnls {

MapSpec normalize_at_zero(const MapSpec& f) {
  const Vector f0 = f(zeros(f.dom_dim()));
  auto eval = [f, f0](const Vector& x) { return subtract(f(x), f0); };
  return MapSpec(std::move(eval), f.dom_dim(), f.cod_dim(), f.label() + " - f(0)");
}

double codomain_defect(const FuzzyNorm& cod, const Vector& delta, double a_ref) {
  if (cod.is_crisp_induced()) return cod.crisp()(delta);
  return 1.0 - cod(delta, a_ref);
}

namespace clauses {

double midpoint_preservation_defect(const FuzzyNorm& cod, const MapSpec& h, const Vector& a,
                                    const Vector& b, double a_ref) {
  const Vector delta = subtract(h(midpoint(a, b)), midpoint(h(a), h(b)));
  return codomain_defect(cod, delta, a_ref);
}

double additivity_defect(const FuzzyNorm& cod, const MapSpec& h, const Vector& a, const Vector& b,
                         double a_ref) {
  const Vector delta = subtract(h(add(a, b)), add(h(a), h(b)));
  return codomain_defect(cod, delta, a_ref);
}

double rational_homogeneity_defect(const FuzzyNorm& cod, const MapSpec& h, const Vector& a,
                                   double q, double a_ref) {
  const Vector delta = subtract(h(scale(a, q)), scale(h(a), q));
  return codomain_defect(cod, delta, a_ref);
}

double real_homogeneity_defect(const FuzzyNorm& cod, const MapSpec& h, const Vector& a, double r,
                               double a_ref) {
  const Vector delta = subtract(h(scale(a, r)), scale(h(a), r));
  return codomain_defect(cod, delta, a_ref) / std::max(1.0, std::abs(r));
}

}  // namespace clauses

namespace {

void require_normalized(const FuzzyNorm& cod, const MapSpec& h, double a_ref, double tol) {
  const double at_zero = codomain_defect(cod, h(zeros(h.dom_dim())), a_ref);
  if (at_zero > tol) {
    throw StructuralError("map is not normalized: h(0) has defect " + std::to_string(at_zero));
  }
}

}  // namespace

CheckReport check_midpoint_preservation(const FuzzyNorm& cod, const MapSpec& h,
                                        const SamplePlan& plan, double tol) {
  plan.validate();
  if (h.cod_dim() != cod.dimension()) {
    throw StructuralError("map codomain does not match the given space");
  }
  const double a_ref = plan.a_ref();
  require_normalized(cod, h, a_ref, tol);
  Rng rng(plan.seed);
  detail::RunState run(plan);
  for (std::size_t i = 0; i < plan.n_points; ++i) {
    const Vector a = rng.point_in_ball(h.dom_dim(), plan.point_radius);
    const Vector b = rng.point_in_ball(h.dom_dim(), plan.point_radius);
    const double defect = clauses::midpoint_preservation_defect(cod, h, a, b, a_ref);
    ++run.samples;
    if (defect > tol) {
      run.found(Witness{"midpoint_preservation",
                        {{"a", a}, {"b", b}},
                        {},
                        defect,
                        tol,
                        "pair midpoint is not sent to the image midpoint"});
    }
  }
  CheckReport report;
  report.clauses = {{"midpoint_preservation", run.count({"midpoint_preservation"}) == 0,
                     "h((a+b)/2) = (h(a)+h(b))/2 on sampled pairs"}};
  report.samples_used = run.samples;
  report.violations_total = run.collector.total();
  report.witnesses = run.collector.take();
  report.tolerances = {{"a_ref", a_ref}, {"check_tol", tol}};
  return report;
}

CheckReport check_q_linearity(const FuzzyNorm& cod, const MapSpec& h, const SamplePlan& plan,
                              double tol, std::size_t dyadic_depth) {
  plan.validate();
  if (h.cod_dim() != cod.dimension()) {
    throw StructuralError("map codomain does not match the given space");
  }
  const double a_ref = plan.a_ref();
  require_normalized(cod, h, a_ref, tol);
  Rng rng(plan.seed);
  detail::RunState run(plan);

  std::vector<Vector> points;
  for (std::size_t i = 0; i < plan.n_points; ++i) {
    points.push_back(rng.point_in_ball(h.dom_dim(), plan.point_radius));
  }

  for (std::size_t i = 0; i < points.size(); ++i) {
    const Vector& a = points[i];
    const Vector& b = points[(i + 1) % points.size()];
    const double defect = clauses::additivity_defect(cod, h, a, b, a_ref);
    ++run.samples;
    if (defect > tol) {
      run.found(Witness{"additivity",
                        {{"a", a}, {"b", b}},
                        {},
                        defect,
                        tol,
                        "h(a+b) differs from h(a)+h(b)"});
    }
  }

  // Dyadic rationals m / 2^k: every m with |m/2^k| <= 2 for small k, then a
  // random slice per deeper level. All are exact doubles.
  std::vector<double> dyadics;
  for (std::size_t k = 0; k <= std::min<std::size_t>(dyadic_depth, 3); ++k) {
    const double denom = std::pow(2.0, static_cast<double>(k));
    const long m_hi = 1L << (k + 1);
    for (long m = -m_hi; m <= m_hi; ++m) {
      dyadics.push_back(static_cast<double>(m) / denom);
    }
  }
  for (std::size_t k = 4; k <= dyadic_depth; ++k) {
    const double denom = std::pow(2.0, static_cast<double>(k));
    const double m_hi = std::pow(2.0, static_cast<double>(k + 1));
    for (int draw = 0; draw < 8; ++draw) {
      const double m = std::floor(rng.uniform(-m_hi, m_hi + 1.0));
      dyadics.push_back(m / denom);
    }
  }

  for (const Vector& a : points) {
    for (double q : dyadics) {
      const double defect = clauses::rational_homogeneity_defect(cod, h, a, q, a_ref);
      ++run.samples;
      if (defect > tol) {
        run.found(Witness{"rational_homogeneity",
                          {{"a", a}},
                          {{"q", q}},
                          defect,
                          tol,
                          "h(qa) differs from q h(a) at a dyadic rational"});
      }
    }
  }

  CheckReport report;
  report.clauses = {
      {"additivity", run.count({"additivity"}) == 0, "h(a+b) = h(a) + h(b) on sampled pairs"},
      {"rational_homogeneity", run.count({"rational_homogeneity"}) == 0,
       "h(qa) = q h(a) on dyadic rationals to depth " + std::to_string(dyadic_depth)},
  };
  report.samples_used = run.samples;
  report.violations_total = run.collector.total();
  report.witnesses = run.collector.take();
  report.tolerances = {{"a_ref", a_ref}, {"check_tol", tol}};
  return report;
}

CheckReport check_real_homogeneity(const FuzzyNorm& cod, const MapSpec& h, const SamplePlan& plan,
                                   double tol) {
  plan.validate();
  if (h.cod_dim() != cod.dimension()) {
    throw StructuralError("map codomain does not match the given space");
  }
  const double a_ref = plan.a_ref();
  require_normalized(cod, h, a_ref, tol);
  Rng rng(plan.seed);
  detail::RunState run(plan);

  std::vector<double> ratios{std::sqrt(2.0), 3.14159265358979323846, 1.0 / std::exp(1.0)};
  for (std::size_t i = 0; i < plan.n_points / 4 + 1; ++i) {
    ratios.push_back(rng.uniform(-3.0, 3.0));
  }
  const std::size_t n_points = std::min<std::size_t>(plan.n_points, 32);
  std::vector<Vector> points;
  for (std::size_t i = 0; i < n_points; ++i) {
    points.push_back(rng.point_in_ball(h.dom_dim(), plan.point_radius));
  }

  for (const Vector& a : points) {
    for (double r : ratios) {
      const double defect = clauses::real_homogeneity_defect(cod, h, a, r, a_ref);
      ++run.samples;
      if (defect > tol) {
        Witness w{"real_homogeneity", {{"a", a}}, {{"r", r}}, defect, tol,
                  "h(ra) differs from r h(a)"};
        // When the images are parallel the observed ratio r' is meaningful.
        const Vector ha = h(a);
        const double denom = dot(ha, ha);
        if (denom > 1e-24) {
          w.scalars["r_prime"] = dot(h(scale(a, r)), ha) / denom;
        }
        run.found(std::move(w));
      }
    }
  }

  CheckReport report;
  report.clauses = {{"real_homogeneity", run.count({"real_homogeneity"}) == 0,
                     "h(ra) = r h(a) on sampled reals"}};
  report.samples_used = run.samples;
  report.violations_total = run.collector.total();
  report.witnesses = run.collector.take();
  report.tolerances = {{"a_ref", a_ref}, {"check_tol", tol}};
  return report;
}

Vector AffineFit::apply(const Vector& x) const {
  Vector y(linear_rows.size());
  for (std::size_t i = 0; i < linear_rows.size(); ++i) y[i] = dot(linear_rows[i], x) + offset[i];
  return y;
}

AffineFit fit_affine_at(const MapSpec& f, const std::vector<Vector>& sample,
                        const DefectMeasure& measure) {
  const std::size_t d = f.dom_dim();
  const std::size_t c = f.cod_dim();
  const std::size_t n = sample.size();
  if (n < d + 2) {
    throw StructuralError("affine fit needs at least dom_dim + 2 sample points");
  }
  for (const Vector& x : sample) {
    if (x.size() != d) throw StructuralError("affine fit sample has a wrong-dimension point");
  }

  Eigen::MatrixXd design(n, d + 1);
  Eigen::MatrixXd images(n, c);
  for (std::size_t i = 0; i < n; ++i) {
    const auto row = static_cast<Eigen::Index>(i);
    for (std::size_t j = 0; j < d; ++j) {
      design(row, static_cast<Eigen::Index>(j)) = sample[i][j];
    }
    design(row, static_cast<Eigen::Index>(d)) = 1.0;
    const Vector y = f(sample[i]);
    for (std::size_t j = 0; j < c; ++j) {
      images(row, static_cast<Eigen::Index>(j)) = y[j];
    }
  }

  Eigen::MatrixXd centered = design.leftCols(static_cast<Eigen::Index>(d));
  centered.rowwise() -= centered.colwise().mean();
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> rank_probe(centered);
  rank_probe.setThreshold(1e-10);
  if (rank_probe.rank() < static_cast<Eigen::Index>(d)) {
    throw StructuralError("affine fit sample spans only " + std::to_string(rank_probe.rank()) +
                          " of " + std::to_string(d) + " directions");
  }

  const Eigen::MatrixXd theta = design.colPivHouseholderQr().solve(images);

  AffineFit fit;
  fit.linear_rows.assign(c, Vector(d));
  fit.offset.assign(c, 0.0);
  for (std::size_t i = 0; i < c; ++i) {
    for (std::size_t j = 0; j < d; ++j) {
      fit.linear_rows[i][j] = theta(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(i));
    }
    fit.offset[i] = theta(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(i));
  }
  fit.fit_sample = sample;
  fit.residual = 0.0;
  for (const Vector& x : sample) {
    fit.residual = std::max(fit.residual, measure(subtract(f(x), fit.apply(x))));
  }
  return fit;
}

AffineFit fit_affine(const MapSpec& f, const FuzzyNorm& cod, const SamplePlan& plan) {
  plan.validate();
  if (f.cod_dim() != cod.dimension()) {
    throw StructuralError("map codomain does not match the given space");
  }
  Rng rng(plan.seed);
  const std::size_t n = std::max<std::size_t>(plan.n_points, f.dom_dim() + 2);
  std::vector<Vector> sample;
  sample.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    sample.push_back(rng.point_in_ball(f.dom_dim(), plan.point_radius));
  }
  const double a_ref = plan.a_ref();
  return fit_affine_at(f, sample,
                       [&cod, a_ref](const Vector& d) { return codomain_defect(cod, d, a_ref); });
}

std::string to_string(CertifyVerdict v) {
  switch (v) {
    case CertifyVerdict::certified_affine:
      return "certified_affine";
    case CertifyVerdict::refuted:
      return "refuted";
    case CertifyVerdict::inconclusive:
      return "inconclusive";
  }
  return "inconclusive";
}

CertifyReport certify_affine(const FuzzyNorm& dom, const FuzzyNorm& cod, const MapSpec& f,
                             const SamplePlan& plan, const CertifyOptions& options) {
  plan.validate();
  if (f.dom_dim() != dom.dimension() || f.cod_dim() != cod.dimension()) {
    throw StructuralError("map dimensions do not match the given spaces");
  }
  SamplePlan sub = plan;
  sub.equality_tol = options.check_tol;

  CertifyReport out;
  out.isometry = check_isometry(dom, cod, f, sub);
  out.collinearity = check_collinearity_preservation(f, sub, options.collinearity_tol);
  out.f_zero = f(zeros(dom.dimension()));
  const MapSpec h = normalize_at_zero(f);
  out.midpoint = check_midpoint_preservation(cod, h, sub, options.check_tol);
  out.q_linearity = check_q_linearity(cod, h, sub, options.check_tol, options.dyadic_depth);
  out.homogeneity = check_real_homogeneity(cod, h, sub, options.check_tol);

  const bool conclusion_refuted = !out.collinearity.pass() || !out.midpoint.pass() ||
                                  !out.q_linearity.pass() || !out.homogeneity.pass();
  if (conclusion_refuted) {
    out.verdict = CertifyVerdict::refuted;
    out.notes.push_back("affine fit skipped: a conclusion-side check already failed");
    return out;
  }
  out.fit = fit_affine(f, cod, plan);
  if (out.isometry.pass() && out.fit->residual <= options.cert_tol) {
    out.verdict = CertifyVerdict::certified_affine;
  } else {
    out.verdict = CertifyVerdict::inconclusive;
    if (!out.isometry.pass()) {
      out.notes.push_back("distance preservation failed; conclusion checks alone cannot refute");
    }
    if (out.fit->residual > options.cert_tol) {
      out.notes.push_back("affine fit residual above cert_tol");
    }
  }
  return out;
}

}  // namespace fnls
