#include "csq/harness.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <Eigen/QR>

#include "csq/divisors.hpp"

namespace csq {

namespace {

const double kPi = std::acos(-1.0);

cplx ipow(cplx z, int k) {
  cplx v = 1.0;
  for (int i = 0; i < k; ++i) v *= z;
  return v;
}

json cj(cplx z) { return json::array({z.real(), z.imag()}); }

ScenarioReport make_report(const std::string& name, double tol, std::uint64_t seed) {
  ScenarioReport r;
  r.scenario = name;
  r.tolerance = tol;
  r.seed = seed;
  r.passed = true;
  return r;
}

void track(ScenarioReport& r, double abs_err, double rel_err = 0.0) {
  r.max_abs_err = std::max(r.max_abs_err, abs_err);
  r.max_rel_err = std::max(r.max_rel_err, rel_err);
  ++r.cases;
}

cplx random_scale(ProbeRng& rng) {
  return std::polar(rng.uniform(0.5, 2.0), rng.uniform(0.0, 2.0 * kPi));
}

// Chart point pair bounded away from mutual polarity.
void draw_pair(ProbeRng& rng, cplx& w, cplx& wp) {
  do {
    w = rng.disk();
    wp = rng.disk();
  } while (std::abs(1.0 + std::conj(w) * wp) <= 0.05);
}

// Embedded coherent image, normalized into the first affine chart of CP^N.
Eigen::VectorXcd embedded_affine(const OrthonormalBasis& basis, const ChartPoint& x) {
  const ProjectivePoint p = coherent_embedding(basis, x);
  return (p.coords / p.coords(0)).tail(p.coords.size() - 1);
}

cplx quadrature_pair_product(const OrthonormalBasis& basis, const CoherentVector& cx,
                             const CoherentVector& cy, const QuadratureSpec& spec) {
  const int dim = basis.section_count();
  return integrate(
      basis.model,
      [&](const ChartPoint& z) {
        cplx ex = 0.0, ey = 0.0;
        for (int j = 0; j < dim; ++j) {
          const cplx sj = basis.section_value(j, z);
          ex += cx.coeffs(j) * sj;
          ey += cy.coeffs(j) * sj;
        }
        return metric_hat(basis.model, z) * std::conj(ex) * ey;
      },
      spec);
}

std::vector<ChartPoint> rotate_left(const std::vector<ChartPoint>& pts) {
  std::vector<ChartPoint> out(pts.begin() + 1, pts.end());
  out.push_back(pts.front());
  return out;
}

// Triple of chart points whose embedded images keep all pairwise
// distances inside (margin, pi/2 - margin).
std::vector<ChartPoint> draw_triangle(ProbeRng& rng, const OrthonormalBasis& basis, int n,
                                      double margin) {
  const double half_pi = kPi / 2.0;
  for (int attempt = 0; attempt < 2000; ++attempt) {
    std::vector<ChartPoint> pts;
    std::vector<ProjectivePoint> em;
    for (int i = 0; i < 3; ++i) {
      pts.push_back(rng.chart_point(n, 1.5));
      em.push_back(coherent_embedding(basis, pts.back()));
    }
    bool ok = true;
    for (int i = 0; i < 3 && ok; ++i) {
      const double d = cayley_distance(em[i], em[(i + 1) % 3]);
      ok = d > margin && d < half_pi - margin;
    }
    if (ok) return pts;
  }
  throw invalid_parameter_error("draw_triangle: separation rejection did not converge");
}

double circle_distance(double alpha, double beta) {
  return std::abs(std::exp(cplx(0.0, alpha - beta)) - 1.0);
}

}  // namespace

// -- report serialization ----------------------------------------------------

void to_json(json& j, const ScenarioReport& r) {
  j = json{{"scenario", r.scenario},   {"cases", r.cases},
           {"max_abs_err", r.max_abs_err}, {"max_rel_err", r.max_rel_err},
           {"tolerance", r.tolerance}, {"passed", r.passed},
           {"seed", r.seed},           {"metrics", r.metrics},
           {"details", r.details}};
}

void from_json(const json& j, ScenarioReport& r) {
  j.at("scenario").get_to(r.scenario);
  j.at("cases").get_to(r.cases);
  j.at("max_abs_err").get_to(r.max_abs_err);
  j.at("max_rel_err").get_to(r.max_rel_err);
  j.at("tolerance").get_to(r.tolerance);
  j.at("passed").get_to(r.passed);
  j.at("seed").get_to(r.seed);
  r.metrics = j.value("metrics", json::object());
  r.details = j.value("details", json::array());
}

// -- probe generator ---------------------------------------------------------

double ProbeRng::uniform(double a, double b) {
  std::uniform_real_distribution<double> d(a, b);
  return d(gen);
}

cplx ProbeRng::disk(double radius) {
  const double r = radius * std::sqrt(uniform(0.0, 1.0));
  return std::polar(r, uniform(0.0, 2.0 * kPi));
}

ChartPoint ProbeRng::chart_point(int n, double radius) {
  Eigen::VectorXcd w(n);
  for (int i = 0; i < n; ++i) w(i) = disk(radius);
  return ChartPoint(w);
}

Eigen::VectorXcd ProbeRng::gaussian_vector(int size) {
  std::normal_distribution<double> d(0.0, 1.0);
  Eigen::VectorXcd v(size);
  for (int i = 0; i < size; ++i) {
    const double re = d(gen);
    const double im = d(gen);
    v(i) = cplx(re, im);
  }
  return v;
}

Eigen::MatrixXcd ProbeRng::unitary(int size) {
  Eigen::MatrixXcd A(size, size);
  for (int j = 0; j < size; ++j) A.col(j) = gaussian_vector(size);
  Eigen::HouseholderQR<Eigen::MatrixXcd> qr(A);
  Eigen::MatrixXcd Q = qr.householderQ() * Eigen::MatrixXcd::Identity(size, size);
  const Eigen::MatrixXcd R = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int j = 0; j < size; ++j) {
    const cplx d = R(j, j);
    if (std::abs(d) > 0.0) Q.col(j) *= d / std::abs(d);
  }
  return Q;
}

ProjectivePoint ProbeRng::separated_point(int dim, const std::vector<ProjectivePoint>& others,
                                          double margin) {
  const double half_pi = kPi / 2.0;
  for (int attempt = 0; attempt < 2000; ++attempt) {
    ProjectivePoint cand(gaussian_vector(dim + 1));
    bool ok = true;
    for (const auto& o : others) {
      const double d = cayley_distance(cand, o);
      if (d <= margin || d >= half_pi - margin) {
        ok = false;
        break;
      }
    }
    if (ok) return cand;
  }
  throw invalid_parameter_error("separated_point: rejection did not converge");
}

// -- scenarios ---------------------------------------------------------------

ScenarioReport kernel_law_scenario(const std::vector<int>& m_values, int pairs, double rel_tol,
                                   std::uint64_t seed, const QuadratureSpec& spec) {
  ScenarioReport r = make_report("kernel_law", rel_tol, seed);
  ProbeRng rng(seed);
  json prefactors = json::array();
  for (int m : m_values) {
    const BundleModel model{Family::P1_FubiniStudy, 1, m};
    const OrthonormalBasis basis = build_onb(model, spec);
    const ChartPoint origin{cplx(0.0, 0.0)};
    const double k00 = coherent_kernel(basis, origin, origin).real();
    prefactors.push_back({{"m", m},
                          {"kernel_at_origin", k00},
                          {"dim_over_vol", model.section_count() / model.volume()},
                          {"flat_candidate", (m + 1) / (2.0 * kPi)}});
    for (int p = 0; p < pairs; ++p) {
      cplx w, wp;
      draw_pair(rng, w, wp);
      const cplx lhs = coherent_kernel(basis, ChartPoint(wp), ChartPoint(w)) / k00;
      const cplx rhs = ipow(1.0 + std::conj(w) * wp, m);
      const double abs_err = std::abs(lhs - rhs);
      const double rel_err = abs_err / std::abs(rhs);
      track(r, abs_err, rel_err);
      r.details.push_back({{"m", m}, {"w", cj(w)}, {"wp", cj(wp)}, {"rel_err", rel_err}});
    }
  }
  r.metrics["prefactors"] = prefactors;
  r.passed = r.max_rel_err <= rel_tol;
  return r;
}

ScenarioReport epsilon_scenario(const std::vector<int>& m_values, int points, double rel_std_tol,
                                double value_tol, std::uint64_t seed, const QuadratureSpec& spec) {
  ScenarioReport r = make_report("epsilon_constancy", rel_std_tol, seed);
  ProbeRng rng(seed);
  json per_m = json::array();
  for (int m : m_values) {
    const BundleModel model{Family::P1_FubiniStudy, 1, m};
    const OrthonormalBasis basis = build_onb(model, spec);
    std::vector<double> vals;
    for (int p = 0; p < points; ++p) vals.push_back(epsilon_function(basis, rng.chart_point(1)));
    vals.push_back(epsilon_function(basis, ChartPoint::infinity()));
    const double mean = std::accumulate(vals.begin(), vals.end(), 0.0) / vals.size();
    double var = 0.0;
    for (double v : vals) var += (v - mean) * (v - mean);
    const double rel_std = std::sqrt(var / vals.size()) / mean;
    track(r, rel_std * mean, rel_std);
    per_m.push_back({{"m", m},
                     {"mean", mean},
                     {"rel_std", rel_std},
                     {"dim_over_vol", model.section_count() / model.volume()}});
    if (m == 1) {
      const double value_err = std::abs(mean - 1.0 / kPi);
      r.metrics["m1_value_err"] = value_err;
      r.metrics["m1_value_tolerance"] = value_tol;
      if (value_err > value_tol) r.passed = false;
    }
  }
  r.metrics["per_m"] = per_m;
  if (r.max_rel_err > rel_std_tol) r.passed = false;
  return r;
}

ScenarioReport overcompleteness_scenario(const std::vector<int>& m_values, double tol,
                                         const QuadratureSpec& spec) {
  ScenarioReport r = make_report("overcompleteness", tol, 0);
  for (int m : m_values) {
    const BundleModel model{Family::P1_FubiniStudy, 1, m};
    const OrthonormalBasis basis = build_onb(model, spec);
    const double res = overcompleteness_residual(basis, spec);
    track(r, res);
    r.details.push_back({{"m", m}, {"residual", res}});
  }
  r.passed = r.max_abs_err <= tol;
  return r;
}

ScenarioReport verify_cauchy_first(const OrthonormalBasis& basis,
                                   const std::vector<LiftPair>& probes, double tol,
                                   const QuadratureSpec& spec) {
  ScenarioReport r = make_report("cauchy_first", tol, 0);
  for (const auto& pr : probes) {
    const CoherentVector cx = coherent_vector(basis, pr.x, basis.natural_frame(pr.x), pr.cx);
    const CoherentVector cy = coherent_vector(basis, pr.y, basis.natural_frame(pr.y), pr.cy);
    const cplx rhs = cx.coeffs.dot(cy.coeffs);
    const cplx lhs = quadrature_pair_product(basis, cx, cy, spec);
    const double abs_err = std::abs(lhs - rhs);
    track(r, abs_err, abs_err / std::max(1.0, std::abs(rhs)));
    r.details.push_back(
        {{"x", cj(pr.x.z())}, {"y", cj(pr.y.z())}, {"abs_err", abs_err}});
  }
  r.passed = r.max_abs_err <= tol;
  return r;
}

ScenarioReport cauchy_first_scenario(int m, int pairs, double tol, std::uint64_t seed,
                                     const QuadratureSpec& spec) {
  const BundleModel model{Family::P1_FubiniStudy, 1, m};
  const OrthonormalBasis basis = build_onb(model, spec);
  ProbeRng rng(seed);
  std::vector<LiftPair> probes;
  for (int p = 0; p < pairs; ++p) {
    LiftPair pr;
    pr.x = rng.chart_point(1);
    pr.y = rng.chart_point(1);
    pr.cx = random_scale(rng);
    pr.cy = random_scale(rng);
    probes.push_back(pr);
  }
  ScenarioReport r = verify_cauchy_first(basis, probes, tol, spec);
  r.seed = seed;
  r.metrics["m"] = m;
  return r;
}

ScenarioReport cauchy_second_scenario(int m, int pairs, double tol, std::uint64_t seed,
                                      const QuadratureSpec& spec) {
  ScenarioReport r = make_report("cauchy_second", tol, seed);
  const BundleModel model{Family::P1_FubiniStudy, 1, m};
  const OrthonormalBasis basis = build_onb(model, spec);
  const int N = basis.section_count() - 1;
  const BundleModel pn{Family::PN_FubiniStudy, N, 1};
  const OrthonormalBasis pn_basis = build_onb(pn);
  const double F = (N + 1) / pn.volume();
  ProbeRng rng(seed);
  for (int p = 0; p < pairs; ++p) {
    const ChartPoint x = rng.chart_point(1), y = rng.chart_point(1);
    const cplx cx = random_scale(rng), cy = random_scale(rng);
    const CoherentVector vx = coherent_vector(basis, x, Frame::constant_one(), cx);
    const CoherentVector vy = coherent_vector(basis, y, Frame::constant_one(), cy);
    const cplx lhs = quadrature_pair_product(basis, vx, vy, spec);
    const cplx qh0x = basis.section_value(0, x) / cx;
    const cplx qh0y = basis.section_value(0, y) / cy;
    const Eigen::VectorXcd ux = embedded_affine(basis, x);
    const Eigen::VectorXcd uy = embedded_affine(basis, y);
    const cplx inner = 1.0 + uy.dot(ux);  // <ihat(y), ihat(x)>
    const cplx rhs_direct = qh0x * std::conj(qh0y) * inner;
    const cplx kpn = coherent_kernel(pn_basis, ChartPoint(ux), ChartPoint(uy));
    const cplx rhs_kernel = qh0x * std::conj(qh0y) * kpn / F;
    const double e1 = std::abs(lhs - rhs_direct);
    const double e2 = std::abs(lhs - rhs_kernel);
    const double abs_err = std::max(e1, e2);
    track(r, abs_err, abs_err / std::max(1.0, std::abs(lhs)));
    r.details.push_back({{"x", cj(x.z())}, {"y", cj(y.z())}, {"err_direct", e1},
                         {"err_kernel", e2}});
  }
  r.metrics["m"] = m;
  r.metrics["F"] = F;
  r.passed = r.max_abs_err <= tol;
  return r;
}

ScenarioReport cauchy_third_scenario(int m, int pairs, int frames, double cv_tol,
                                     std::uint64_t seed, const QuadratureSpec& spec) {
  ScenarioReport r = make_report("cauchy_third", cv_tol, seed);
  const BundleModel model{Family::P1_FubiniStudy, 1, m};
  const OrthonormalBasis basis = build_onb(model, spec);
  const int N = basis.section_count() - 1;
  const BundleModel pn{Family::PN_FubiniStudy, N, 1};
  const OrthonormalBasis pn_basis = build_onb(pn);
  const double predicted = pn.volume() / (N + 1);
  ProbeRng rng(seed);
  std::vector<cplx> ratios;
  int skipped = 0;
  for (int f = 0; f < frames; ++f) {
    Eigen::VectorXcd a = Eigen::VectorXcd::Zero(N + 1);
    if (f == 0)
      a(0) = 1.0;
    else
      a = rng.gaussian_vector(N + 1);
    const double a_norm = a.norm();
    auto frame_m = Frame::custom([&basis, a](const ChartPoint& z) {
      cplx acc = 0.0;
      for (int j = 0; j < basis.section_count(); ++j) acc += a(j) * basis.section_value(j, z);
      return acc;
    });
    auto frame_pn = Frame::custom([a](const ChartPoint& u) {
      cplx acc = a(0);
      for (int i = 0; i < u.dim(); ++i) acc += a(i + 1) * u.w(i);
      return acc;
    });
    for (int p = 0; p < pairs; ++p) {
      cplx wx, wy;
      draw_pair(rng, wx, wy);
      const ChartPoint x{wx}, y{wy};
      const cplx fmx = basis.frame_value(frame_m, x);
      const cplx fmy = basis.frame_value(frame_m, y);
      if (std::abs(fmx) < 1e-2 * a_norm || std::abs(fmy) < 1e-2 * a_norm) {
        ++skipped;
        --p;  // redraw; frame too close to its polar divisor
        r.details.push_back({{"frame", f}, {"skipped", true}});
        continue;
      }
      const cplx lhs = coherent_kernel(basis, x, y, frame_m);
      const Eigen::VectorXcd ux = embedded_affine(basis, x);
      const Eigen::VectorXcd uy = embedded_affine(basis, y);
      const cplx rhs = coherent_kernel(pn_basis, ChartPoint(ux), ChartPoint(uy), frame_pn);
      ratios.push_back(lhs / rhs);
      r.details.push_back({{"frame", f}, {"x", cj(wx)}, {"y", cj(wy)},
                           {"ratio", cj(lhs / rhs)}});
      ++r.cases;
    }
  }
  cplx mean = 0.0;
  for (cplx q : ratios) mean += q;
  mean /= double(ratios.size());
  double var = 0.0;
  for (cplx q : ratios) var += std::norm(q - mean);
  const double cv = std::sqrt(var / ratios.size()) / std::abs(mean);
  r.max_rel_err = cv;
  r.max_abs_err = std::sqrt(var / ratios.size());
  r.metrics["m"] = m;
  r.metrics["skipped"] = skipped;
  r.metrics["mean_ratio"] = cj(mean);
  r.metrics["predicted"] = predicted;
  r.metrics["ratio_over_predicted"] = cj(mean / predicted);
  r.passed = cv <= cv_tol;
  return r;
}

ScenarioReport verify_pullback_mpoint(const OrthonormalBasis& basis,
                                      const std::vector<std::vector<ChartPoint>>& tuples,
                                      double tol) {
  ScenarioReport r = make_report("mpoint_pullback", tol, 0);
  for (const auto& pts : tuples) {
    const MultiPointResult base = cyclic_m_point(basis, pts);
    std::vector<ProjectivePoint> reps;
    for (const auto& p : pts) reps.push_back(coherent_embedding(basis, p));
    const MultiPointResult proj = cyclic_m_point_projective(reps);
    const double abs_err = std::abs(base.value - proj.value);
    track(r, abs_err, abs_err / std::max(1e-300, std::abs(base.value)));
    r.details.push_back({{"size", pts.size()}, {"abs_err", abs_err}});
  }
  r.passed = r.max_abs_err <= tol;
  return r;
}

ScenarioReport mpoint_scenario(const std::vector<int>& m_bundles,
                               const std::vector<int>& tuple_sizes, int tuples, double exact_tol,
                               double pullback_tol, std::uint64_t seed,
                               const QuadratureSpec& spec) {
  ScenarioReport r = make_report("mpoint_laws", exact_tol, seed);
  ProbeRng rng(seed);
  double max_pullback = 0.0;
  bool zero_set_ok = true;
  for (int mb : m_bundles) {
    const BundleModel model{Family::P1_FubiniStudy, 1, mb};
    const OrthonormalBasis basis = build_onb(model, spec);
    for (int size : tuple_sizes) {
      for (int t = 0; t < tuples; ++t) {
        std::vector<ChartPoint> pts;
        for (int attempt = 0; attempt < 2000 && static_cast<int>(pts.size()) < size;
             ++attempt) {
          const ChartPoint cand = rng.chart_point(1);
          bool ok = true;
          if (!pts.empty())
            ok = std::sqrt(two_point_modulus_sq(basis, pts.back(), cand)) >= 0.05;
          if (ok && static_cast<int>(pts.size()) == size - 1)
            ok = std::sqrt(two_point_modulus_sq(basis, cand, pts.front())) >= 0.05;
          if (ok) pts.push_back(cand);
        }
        if (static_cast<int>(pts.size()) < size)
          throw invalid_parameter_error("mpoint_scenario: tuple rejection did not converge");

        const MultiPointResult base = cyclic_m_point(basis, pts);
        const MultiPointResult rot = cyclic_m_point(basis, rotate_left(pts));
        std::vector<ChartPoint> rev(pts.rbegin(), pts.rend());
        const MultiPointResult bwd = cyclic_m_point(basis, rev);

        const double err_cyc = std::abs(base.value - rot.value);
        const double err_rev = std::abs(std::conj(base.value) - bwd.value);
        const double err_inv = std::abs(base.value - std::polar(base.modulus, base.phase));
        double err_two = 0.0;
        if (size == 2)
          err_two = std::abs(base.value - two_point_modulus_sq(basis, pts[0], pts[1]));
        const double exact_err = std::max({err_cyc, err_rev, err_inv, err_two});
        track(r, exact_err);

        std::vector<ProjectivePoint> reps;
        for (const auto& p : pts) {
          ProjectivePoint e = coherent_embedding(basis, p);
          e.coords *= random_scale(rng);  // arbitrary homogeneous representatives
          reps.push_back(e);
        }
        const MultiPointResult proj = cyclic_m_point_projective(reps);
        const double err_pull = std::abs(base.value - proj.value);
        max_pullback = std::max(max_pullback, err_pull);

        r.details.push_back({{"m", mb}, {"size", size}, {"err_cyclic", err_cyc},
                             {"err_reversal", err_rev}, {"err_pullback", err_pull},
                             {"err_two_point", err_two}});
      }
    }

    // zero set: a cyclically consecutive polar pair kills the value
    cplx w;
    do {
      w = rng.disk(1.5);
    } while (std::abs(w) < 0.3);
    const ChartPoint pole{-1.0 / std::conj(w)};
    const MultiPointResult dead =
        cyclic_m_point(basis, {ChartPoint(w), pole, rng.chart_point(1)});
    const bool member = polar_membership(basis, ChartPoint(w), pole);
    if (!dead.degenerate || dead.modulus > 1e-10 || !member) zero_set_ok = false;
    const MultiPointResult alive =
        cyclic_m_point(basis, {ChartPoint(w), ChartPoint(w + cplx(0.7, 0.1)), pole});
    (void)alive;
    if (polar_membership(basis, ChartPoint(w), ChartPoint(w + cplx(0.7, 0.1))))
      zero_set_ok = false;
  }
  r.metrics["max_pullback_err"] = max_pullback;
  r.metrics["pullback_tolerance"] = pullback_tol;
  r.metrics["zero_set_ok"] = zero_set_ok;
  r.passed = r.max_abs_err <= exact_tol && max_pullback <= pullback_tol && zero_set_ok;
  return r;
}

ScenarioReport phase_area_scenario(int p1_triples, int p2_triples, double tol, std::uint64_t seed,
                                   const QuadratureSpec& spec) {
  ScenarioReport r = make_report("phase_area", tol, seed);
  ProbeRng rng(seed);

  const BundleModel m1{Family::P1_FubiniStudy, 1, 1};
  const OrthonormalBasis basis1 = build_onb(m1, spec);

  // frozen fixture: chart points (0, 1, i)
  const std::vector<ChartPoint> fix{ChartPoint(cplx(0, 0)), ChartPoint(cplx(1, 0)),
                                    ChartPoint(cplx(0, 1))};
  const TriangleDecomposition fd = three_point_decompose(basis1, fix[0], fix[1], fix[2]);
  const MultiPointResult fm = cyclic_m_point(basis1, fix);
  const double fix_phi_err = std::abs(fd.phi - kPi / 4.0);
  const double fix_mod_err =
      std::abs(fm.modulus - std::cos(fd.a) * std::cos(fd.b) * std::cos(fd.c));
  const double fix_value_err = std::abs(fm.value * 4.0 - cplx(1.0, -1.0));
  std::vector<ProjectivePoint> fe;
  for (const auto& p : fix) fe.push_back(coherent_embedding(basis1, p));
  const double fix_area = triangle_symplectic_area(fe[0], fe[1], fe[2], spec);
  const double fix_area_err = circle_distance(fd.phi, fix_area);
  r.metrics["fixture"] = {{"phi", fd.phi},
                          {"phi_err", fix_phi_err},
                          {"modulus_err", fix_mod_err},
                          {"value_err", fix_value_err},
                          {"area", fix_area},
                          {"area_err", fix_area_err},
                          {"rho", fd.rho}};
  if (fix_phi_err > 1e-10 || fix_mod_err > 1e-10 || fix_value_err > 1e-10) r.passed = false;
  track(r, fix_area_err);

  auto run_family = [&](const OrthonormalBasis& basis, int n, int count, const char* tag) {
    for (int t = 0; t < count; ++t) {
      const std::vector<ChartPoint> pts = draw_triangle(rng, basis, n, 0.15);
      const TriangleDecomposition dec = three_point_decompose(basis, pts[0], pts[1], pts[2]);
      std::vector<ProjectivePoint> em;
      for (const auto& p : pts) em.push_back(coherent_embedding(basis, p));
      const double area = triangle_symplectic_area(em[0], em[1], em[2], spec);
      const double err = circle_distance(dec.phi, area);
      track(r, err);
      r.details.push_back({{"family", tag}, {"phi", dec.phi}, {"area", area}, {"err", err}});
    }
  };
  run_family(basis1, 1, p1_triples, "P1_m1");

  const BundleModel m2{Family::PN_FubiniStudy, 2, 1};
  const OrthonormalBasis basis2 = build_onb(m2);
  run_family(basis2, 2, p2_triples, "P2_hyperplane");

  if (r.max_abs_err > tol) r.passed = false;
  return r;
}

ScenarioReport polar_divisor_scenario(const std::vector<int>& m_values, int w_count,
                                      std::uint64_t seed, const QuadratureSpec& spec) {
  ScenarioReport r = make_report("polar_divisor", 1e-8, seed);
  ProbeRng rng(seed);
  bool structure_ok = true;
  for (int m : m_values) {
    const BundleModel model{Family::P1_FubiniStudy, 1, m};
    const OrthonormalBasis basis = build_onb(model, spec);

    const Divisor d0 = polar_divisor_p1(basis, ChartPoint(cplx(0, 0)));
    if (d0.points.size() != 1 || !d0.points[0].point.at_infinity ||
        d0.points[0].multiplicity != m)
      structure_ok = false;
    const Divisor dinf = polar_divisor_p1(basis, ChartPoint::infinity());
    if (dinf.points.size() != 1 || dinf.points[0].point.at_infinity ||
        std::abs(dinf.points[0].point.z()) > 1e-10 || dinf.points[0].multiplicity != m)
      structure_ok = false;

    for (int k = 0; k < w_count; ++k) {
      cplx w;
      do {
        w = rng.disk();
      } while (std::abs(w) < 0.05);
      const cplx target = -1.0 / std::conj(w);
      const Divisor div = polar_divisor_p1(basis, ChartPoint(w));
      if (div.points.size() != 1 || div.points[0].point.at_infinity ||
          div.points[0].multiplicity != m) {
        structure_ok = false;
        track(r, 1.0);
        continue;
      }
      const cplx root = div.points[0].point.z();
      const double root_err = std::abs(root - target) / (1.0 + std::abs(target));
      track(r, root_err);
      if (!polar_membership(basis, ChartPoint(root), ChartPoint(w)) ||
          !polar_membership(basis, ChartPoint(w), ChartPoint(root)))
        structure_ok = false;
      if (multiplicity_at(basis, ChartPoint(w), ChartPoint(root)) != m) structure_ok = false;
      // a generic point stays off the divisor
      const ChartPoint probe{w + cplx(0.31, 0.17)};
      if (polar_membership(basis, probe, ChartPoint(w)) &&
          std::abs(probe.z() - target) > 1e-6)
        structure_ok = false;
      r.details.push_back({{"m", m}, {"w", cj(w)}, {"root_err", root_err}});
    }
  }
  r.metrics["structure_ok"] = structure_ok;
  r.passed = structure_ok && r.max_abs_err <= r.tolerance;
  return r;
}

ScenarioReport curvature_scenario(const std::vector<int>& m_values, double h, double tol,
                                  double control_min, const QuadratureSpec& spec) {
  (void)spec;
  ScenarioReport r = make_report("curvature", tol, 0);
  std::vector<ChartPoint> grid1;
  for (cplx z : {cplx(0, 0), cplx(0.5, 0), cplx(0, 0.7), cplx(1, 1), cplx(-1.2, 0.3),
                 cplx(2, -1)})
    grid1.push_back(ChartPoint(z));
  json per_model = json::array();
  for (int m : m_values) {
    const BundleModel model{Family::P1_FubiniStudy, 1, m};
    const double r1 = curvature_residual(model, grid1, h);
    const double r2 = curvature_residual(model, grid1, h / 2.0);
    const double ratio = r1 / std::max(r2, 1e-300);
    track(r, r1);
    per_model.push_back({{"family", "P1"}, {"m", m}, {"residual", r1}, {"half_step", r2},
                         {"decay_ratio", ratio}});
    if (ratio < 2.5) r.passed = false;
  }
  {
    std::vector<ChartPoint> grid2;
    Eigen::VectorXcd w(2);
    w << cplx(0, 0), cplx(0, 0);
    grid2.push_back(ChartPoint(w));
    w << cplx(0.5, -0.3), cplx(0.2, 0.4);
    grid2.push_back(ChartPoint(w));
    w << cplx(1, 1), cplx(-0.4, 0.1);
    grid2.push_back(ChartPoint(w));
    const BundleModel p2{Family::PN_FubiniStudy, 2, 1};
    const double r1 = curvature_residual(p2, grid2, h);
    const double r2 = curvature_residual(p2, grid2, h / 2.0);
    const double ratio = r1 / std::max(r2, 1e-300);
    track(r, r1);
    per_model.push_back({{"family", "P2"}, {"m", 1}, {"residual", r1}, {"half_step", r2},
                         {"decay_ratio", ratio}});
    if (ratio < 2.5) r.passed = false;
  }
  // negative control: a perturbed metric must fail the condition loudly
  const BundleModel m1{Family::P1_FubiniStudy, 1, 1};
  const double control = curvature_residual(
      m1,
      [&](const ChartPoint& z) {
        return std::log(metric_hat(m1, z)) + std::norm(z.z());
      },
      grid1, h);
  r.metrics["per_model"] = per_model;
  r.metrics["control_residual"] = control;
  r.metrics["control_min"] = control_min;
  if (control < control_min) r.passed = false;
  if (r.max_abs_err > tol) r.passed = false;
  return r;
}

Eigen::VectorXcd plucker_coords(const Eigen::MatrixXcd& A) {
  if (A.rows() != 2 || A.cols() != 4)
    throw invalid_parameter_error("plucker_coords: expected a 2x4 matrix");
  static const int idx[6][2] = {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}};
  Eigen::VectorXcd p(6);
  for (int k = 0; k < 6; ++k) {
    const int i = idx[k][0], j = idx[k][1];
    p(k) = A(0, i) * A(1, j) - A(0, j) * A(1, i);
  }
  if (p.norm() <= 1e-12 * std::max(1.0, A.squaredNorm()))
    throw invalid_input_error("plucker_coords: matrix rows are linearly dependent");
  return p;
}

double plucker_binet_cauchy(const Eigen::MatrixXcd& A, const Eigen::MatrixXcd& B) {
  const Eigen::VectorXcd pa = plucker_coords(A);
  const Eigen::VectorXcd pb = plucker_coords(B);
  const cplx lhs = pa.dot(pb);  // conjugate-linear in the first slot
  const cplx rhs = (B * A.adjoint()).determinant();
  return std::abs(lhs - rhs);
}

ScenarioReport plucker_scenario(int pairs, double tol, std::uint64_t seed) {
  ScenarioReport r = make_report("plucker", tol, seed);
  ProbeRng rng(seed);
  double max_quadric = 0.0;
  for (int p = 0; p < pairs; ++p) {
    Eigen::MatrixXcd A(2, 4), B(2, 4);
    A.row(0) = rng.gaussian_vector(4).transpose();
    A.row(1) = rng.gaussian_vector(4).transpose();
    B.row(0) = rng.gaussian_vector(4).transpose();
    B.row(1) = rng.gaussian_vector(4).transpose();
    const Eigen::VectorXcd pa = plucker_coords(A);
    const Eigen::VectorXcd pb = plucker_coords(B);
    const double scale = pa.norm() * pb.norm();
    const double abs_err = plucker_binet_cauchy(A, B);
    track(r, abs_err, abs_err / scale);
    const double quadric =
        std::abs(pa(0) * pa(5) - pa(1) * pa(4) + pa(2) * pa(3)) / pa.squaredNorm();
    max_quadric = std::max(max_quadric, quadric);
    r.details.push_back({{"rel_err", abs_err / scale}, {"quadric", quadric}});
  }
  r.metrics["max_quadric_err"] = max_quadric;
  r.passed = r.max_rel_err <= tol && max_quadric <= tol;
  return r;
}

// -- dispatcher --------------------------------------------------------------

ScenarioReport run_scenario(const std::string& name, const json& params,
                            const QuadratureSpec& spec) {
  const std::uint64_t seed = params.value("seed", std::uint64_t{20240211});
  auto ints = [&](const char* key, std::vector<int> def) {
    return params.value(key, def);
  };
  if (name == "kernel_law")
    return kernel_law_scenario(ints("m_values", {1, 2, 3}), params.value("pairs", 12),
                               params.value("tolerance", 1e-6), seed, spec);
  if (name == "epsilon_constancy")
    return epsilon_scenario(ints("m_values", {1, 2, 3, 4, 5}), params.value("points", 40),
                            params.value("tolerance", 1e-6),
                            params.value("value_tolerance", 1e-7), seed, spec);
  if (name == "overcompleteness")
    return overcompleteness_scenario(ints("m_values", {1, 2, 3, 4}),
                                     params.value("tolerance", 1e-6), spec);
  if (name == "cauchy_first")
    return cauchy_first_scenario(params.value("m", 2), params.value("pairs", 20),
                                 params.value("tolerance", 1e-10), seed, spec);
  if (name == "cauchy_second")
    return cauchy_second_scenario(params.value("m", 2), params.value("pairs", 10),
                                  params.value("tolerance", 1e-10), seed, spec);
  if (name == "cauchy_third")
    return cauchy_third_scenario(params.value("m", 2), params.value("pairs", 8),
                                 params.value("frames", 2), params.value("tolerance", 1e-8),
                                 seed, spec);
  if (name == "mpoint_laws")
    return mpoint_scenario(ints("m_bundles", {1, 3}), ints("tuple_sizes", {2, 3, 4, 5}),
                           params.value("tuples", 3), params.value("tolerance", 1e-12),
                           params.value("pullback_tolerance", 1e-10), seed, spec);
  if (name == "phase_area")
    return phase_area_scenario(params.value("p1_triples", 20), params.value("p2_triples", 10),
                               params.value("tolerance", 1e-4), seed, spec);
  if (name == "polar_divisor")
    return polar_divisor_scenario(ints("m_values", {1, 2, 3, 4, 5}),
                                  params.value("w_count", 10), seed, spec);
  if (name == "curvature")
    return curvature_scenario(ints("m_values", {1, 2, 3}), params.value("step", 1e-3),
                              params.value("tolerance", 1e-4),
                              params.value("control_min", 0.1), spec);
  if (name == "plucker")
    return plucker_scenario(params.value("pairs", 50), params.value("tolerance", 1e-12), seed);
  throw invalid_parameter_error("run_scenario: unknown scenario '" + name + "'");
}

}  // namespace csq
