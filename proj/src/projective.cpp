#include "csq/projective.hpp"

#include <algorithm>
#include <cmath>

#include "csq/quadrature.hpp"

namespace csq {

namespace {
constexpr double kDegenerateTol = 1e-9;
const double kPi = std::acos(-1.0);
}  // namespace

ProjectivePoint::ProjectivePoint(Eigen::VectorXcd c) : coords(std::move(c)) {
  if (coords.size() < 2) throw invalid_point_error("projective point needs at least 2 homogeneous coordinates");
  if (coords.norm() == 0.0) throw invalid_point_error("projective point needs a nonzero representative");
}

void QuadratureSpec::validate() const {
  if (nodes_u < 2 || nodes_v < 2 || nodes_radial < 2 || nodes_angular < 2)
    throw invalid_parameter_error("quadrature spec: all node counts must be >= 2");
  if (refine_limit < 0) throw invalid_parameter_error("quadrature spec: refine_limit must be >= 0");
}

bool projective_equal(const ProjectivePoint& p, const ProjectivePoint& q, double tol) {
  if (p.coords.size() != q.coords.size())
    throw invalid_point_error("projective_equal: ambient dimensions differ");
  if (tol < 0.0) throw invalid_parameter_error("projective_equal: negative tolerance");
  // Sine of the principal angle via the orthogonal rejection; stable for
  // nearly identical lines where 1 - cos^2 would cancel.
  Eigen::VectorXcd ph = p.coords.normalized();
  Eigen::VectorXcd r = q.coords - ph * ph.dot(q.coords);
  return r.norm() / q.coords.norm() <= tol;
}

double cayley_distance(const ProjectivePoint& p, const ProjectivePoint& q) {
  if (p.coords.size() != q.coords.size())
    throw invalid_point_error("cayley_distance: ambient dimensions differ");
  double c = std::abs(p.coords.dot(q.coords)) / (p.coords.norm() * q.coords.norm());
  return std::acos(std::clamp(c, 0.0, 1.0));
}

double fubini_study_form(const TangentPair& t) {
  const Eigen::VectorXcd& z = t.base.coords;
  const int N = t.base.dim();
  if (t.chart < 0 || t.chart > N)
    throw chart_mismatch_error("fubini_study_form: chart index out of range");
  if (t.X.size() != N || t.Y.size() != N)
    throw invalid_parameter_error("fubini_study_form: tangents need N components");
  if (std::abs(z(t.chart)) <= 1e-13 * z.norm())
    throw chart_mismatch_error("fubini_study_form: base point not in the selected chart");

  Eigen::VectorXcd w(N);
  int idx = 0;
  for (int i = 0; i <= N; ++i) {
    if (i == t.chart) continue;
    w(idx++) = z(i) / z(t.chart);
  }
  const double w2 = w.squaredNorm();

  cplx diag = 0.0;
  for (int i = 0; i < N; ++i) diag += t.X(i) * std::conj(t.Y(i)) - t.Y(i) * std::conj(t.X(i));
  // sum_{ij} conj(w_i) w_j (X_i conj(Y_j) - Y_i conj(X_j)) factorizes:
  cplx cross = w.dot(t.X) * t.Y.dot(w) - w.dot(t.Y) * t.X.dot(w);

  cplx bracket = ((1.0 + w2) * diag - cross) / ((1.0 + w2) * (1.0 + w2));
  return -bracket.imag();  // value of i * bracket, bracket purely imaginary
}

double fubini_study_form_hom(const Eigen::VectorXcd& z, const Eigen::VectorXcd& X,
                             const Eigen::VectorXcd& Y) {
  const double n2 = z.squaredNorm();
  if (n2 == 0.0) throw invalid_point_error("fubini_study_form_hom: zero representative");
  const double t1 = std::imag(Y.dot(X)) / n2;
  const double t2 = std::imag(z.dot(X) * Y.dot(z)) / (n2 * n2);
  return -2.0 * (t1 - t2);
}

namespace {

// Unit-speed geodesic data between two projective points: gamma(s) =
// cos(s d) p + sin(s d) e with p unit, e unit, <p, e> = 0, and the far
// representative phase-aligned so <p, q> is real positive.
struct GeoData {
  Eigen::VectorXcd p;
  Eigen::VectorXcd e;
  double d = 0.0;
};

GeoData geodesic_data(const ProjectivePoint& pp, const ProjectivePoint& qq) {
  if (pp.coords.size() != qq.coords.size())
    throw invalid_point_error("geodesic: ambient dimensions differ");
  GeoData g;
  g.p = pp.coords.normalized();
  Eigen::VectorXcd q = qq.coords.normalized();
  const cplx c = g.p.dot(q);
  const double cd = std::min(std::abs(c), 1.0);
  g.d = std::acos(cd);
  if (g.d <= kDegenerateTol || g.d >= kPi / 2.0 - kDegenerateTol)
    throw degenerate_geodesic_error("geodesic: endpoints coincide or are conjugate");
  q *= std::conj(c) / cd;
  g.e = (q - cd * g.p) / std::sin(g.d);
  return g;
}

}  // namespace

ProjectivePoint geodesic(const ProjectivePoint& p, const ProjectivePoint& q, double t) {
  if (t < 0.0 || t > 1.0) throw invalid_parameter_error("geodesic: parameter outside [0, 1]");
  GeoData g = geodesic_data(p, q);
  return ProjectivePoint(std::cos(t * g.d) * g.p + std::sin(t * g.d) * g.e);
}

double triangle_symplectic_area(const ProjectivePoint& u, const ProjectivePoint& v,
                                const ProjectivePoint& w, const QuadratureSpec& spec) {
  spec.validate();
  for (double d : {cayley_distance(u, v), cayley_distance(v, w), cayley_distance(w, u)})
    if (d <= kDegenerateTol || d >= kPi / 2.0 - kDegenerateTol)
      throw degenerate_triangle_error("triangle_symplectic_area: degenerate vertex pair");

  const GeoData guv = geodesic_data(u, v);
  const Eigen::VectorXcd wh = w.coords.normalized();

  // Pullback of the Fubini-Study form under F(s, t) = geodesic from w to
  // the point gamma(s) of the u-v geodesic; all derivatives analytic.
  auto integrand = [&](double s, double t) -> double {
    const double cs = std::cos(s * guv.d), sn = std::sin(s * guv.d);
    const Eigen::VectorXcd gam = cs * guv.p + sn * guv.e;
    const Eigen::VectorXcd dgam = guv.d * (-sn * guv.p + cs * guv.e);
    const cplx c = wh.dot(gam);
    const double rho = std::abs(c);
    if (rho <= 1e-12 || rho >= 1.0 - 1e-12)
      throw degenerate_triangle_error(
          "triangle_symplectic_area: swept geodesic degenerates against the third vertex");
    const cplx cp = wh.dot(dgam);
    const double rhop = std::real(std::conj(c) * cp) / rho;
    const double b = std::acos(std::clamp(rho, 0.0, 1.0));
    const double sb = std::sin(b);
    const double bp = -rhop / sb;
    const cplx alpha = std::conj(c) / rho;
    const cplx alphap = (std::conj(cp) * rho - std::conj(c) * rhop) / (rho * rho);
    const Eigen::VectorXcd gtp = alphap * gam + alpha * dgam;
    const Eigen::VectorXcd e = (alpha * gam - rho * wh) / sb;
    const Eigen::VectorXcd ep = (gtp - rhop * wh - (rho * bp) * e) / sb;
    const double ctb = std::cos(t * b), stb = std::sin(t * b);
    const Eigen::VectorXcd F = ctb * wh + stb * e;
    const Eigen::VectorXcd Ft = b * (-stb * wh + ctb * e);
    const Eigen::VectorXcd Fs = (t * bp) * (-stb * wh + ctb * e) + stb * ep;
    return fubini_study_form_hom(F, Fs, Ft);
  };

  int nu = spec.nodes_u, nv = spec.nodes_v;
  double prev = 0.0;
  double diff = 0.0;
  for (int level = 0; level <= spec.refine_limit; ++level) {
    const Rule1D rs = gauss_legendre(nu, 0.0, 1.0);
    const Rule1D rt = gauss_legendre(nv, 0.0, 1.0);
    double acc = 0.0;
    for (int i = 0; i < nu; ++i)
      for (int j = 0; j < nv; ++j)
        acc += rs.weights[i] * rt.weights[j] * integrand(rs.nodes[i], rt.nodes[j]);
    if (level > 0) {
      diff = std::abs(acc - prev);
      // Orientation frozen so the fixture (1,0),(1,1),(1,i) gives +pi/4.
      if (diff < 1e-6) return -acc;
    }
    prev = acc;
    nu *= 2;
    nv *= 2;
  }
  throw accuracy_error("triangle_symplectic_area: quadrature did not converge", diff);
}

}  // namespace csq
