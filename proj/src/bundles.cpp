#include "csq/bundles.hpp"

#include <algorithm>
#include <cmath>

#include "csq/quadrature.hpp"

namespace csq {

namespace {
const double kPi = std::acos(-1.0);
}

void BundleModel::validate() const {
  if (n < 1) throw invalid_parameter_error("bundle model: complex dimension must be >= 1");
  if (m < 1) throw invalid_parameter_error("bundle model: tensor power must be >= 1");
  if (family == Family::P1_FubiniStudy && n != 1)
    throw invalid_parameter_error("bundle model: the P1 family is one-dimensional");
}

int BundleModel::section_count() const {
  // binom(m + n, n)
  long long b = 1;
  for (int i = 1; i <= n; ++i) b = b * (m + i) / i;
  return static_cast<int>(b);
}

double BundleModel::volume() const {
  double v = 1.0;
  for (int i = 1; i <= n; ++i) v *= m * 2.0 * kPi / i;
  return v;
}

double metric_hat(const BundleModel& model, const ChartPoint& x) {
  model.validate();
  if (x.at_infinity) throw invalid_point_error("metric_hat: chart point must be finite");
  if (x.dim() != model.n) throw invalid_point_error("metric_hat: chart dimension mismatch");
  return std::pow(1.0 + x.w.squaredNorm(), -model.m);
}

double kahler_potential(const BundleModel& model, const ChartPoint& x) {
  model.validate();
  if (x.at_infinity) throw invalid_point_error("kahler_potential: chart point must be finite");
  if (x.dim() != model.n) throw invalid_point_error("kahler_potential: chart dimension mismatch");
  return model.m * std::log1p(x.w.squaredNorm());
}

namespace {

ChartPoint shifted(const ChartPoint& x, int j, double re, double im) {
  ChartPoint y = x;
  y.w(j) += cplx(re, im);
  return y;
}

// Mixed complex Hessian H_jk = d^2 g / dz_j dzbar_k by central finite
// differences: 5-point Laplacian stencil on the diagonal, 4-point cross
// stencils off the diagonal.
Eigen::MatrixXcd complex_hessian_fd(const std::function<double(const ChartPoint&)>& g,
                                    const ChartPoint& x, double h) {
  const int n = x.dim();
  Eigen::MatrixXcd H(n, n);
  auto cross = [&](int j, bool jim, int k, bool kim) {
    auto at = [&](double sj, double sk) {
      ChartPoint y = x;
      y.w(j) += jim ? cplx(0, sj) : cplx(sj, 0);
      y.w(k) += kim ? cplx(0, sk) : cplx(sk, 0);
      return g(y);
    };
    return (at(h, h) - at(h, -h) - at(-h, h) + at(-h, -h)) / (4.0 * h * h);
  };
  for (int j = 0; j < n; ++j) {
    const double lap = (g(shifted(x, j, h, 0)) + g(shifted(x, j, -h, 0)) +
                        g(shifted(x, j, 0, h)) + g(shifted(x, j, 0, -h)) - 4.0 * g(x)) /
                       (h * h);
    H(j, j) = 0.25 * lap;
    for (int k = j + 1; k < n; ++k) {
      const double dxx = cross(j, false, k, false);
      const double dyy = cross(j, true, k, true);
      const double dxy = cross(j, false, k, true);
      const double dyx = cross(j, true, k, false);
      H(j, k) = 0.25 * cplx(dxx + dyy, dxy - dyx);
      H(k, j) = std::conj(H(j, k));
    }
  }
  return H;
}

// Standard tangent pairs spanning the two-form components.
std::vector<std::pair<Eigen::VectorXcd, Eigen::VectorXcd>> standard_pairs(int n) {
  std::vector<std::pair<Eigen::VectorXcd, Eigen::VectorXcd>> pairs;
  auto unit = [n](int j, cplx s) {
    Eigen::VectorXcd v = Eigen::VectorXcd::Zero(n);
    v(j) = s;
    return v;
  };
  for (int a = 0; a < n; ++a) pairs.emplace_back(unit(a, 1.0), unit(a, cplx(0, 1)));
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b) {
      pairs.emplace_back(unit(a, 1.0), unit(b, 1.0));
      pairs.emplace_back(unit(a, 1.0), unit(b, cplx(0, 1)));
    }
  return pairs;
}

}  // namespace

double curvature_residual(const BundleModel& model,
                          const std::function<double(const ChartPoint&)>& log_metric,
                          const std::vector<ChartPoint>& grid, double h) {
  model.validate();
  if (h <= 0.0) throw invalid_parameter_error("curvature_residual: step must be positive");
  const int n = model.n;
  const auto pairs = standard_pairs(n);
  double worst = 0.0;
  for (const ChartPoint& x : grid) {
    if (x.at_infinity) throw invalid_point_error("curvature_residual: grid point must be finite");
    if (x.dim() != n) throw invalid_point_error("curvature_residual: chart dimension mismatch");
    const Eigen::MatrixXcd H = complex_hessian_fd(log_metric, x, h);
    Eigen::VectorXcd hom(n + 1);
    hom(0) = 1.0;
    hom.tail(n) = x.w;
    const ProjectivePoint base(hom);
    for (const auto& [X, Y] : pairs) {
      // curvature form delbar del g on (X, Y)
      cplx F = 0.0;
      for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k)
          F += H(j, k) * (std::conj(X(k)) * Y(j) - std::conj(Y(k)) * X(j));
      TangentPair tp{base, 0, X, Y};
      const double omega = model.m * fubini_study_form(tp);
      worst = std::max(worst, std::abs(F + cplx(0, 1) * omega));
    }
  }
  return worst;
}

double curvature_residual(const BundleModel& model, const std::vector<ChartPoint>& grid,
                          double h) {
  return curvature_residual(
      model, [&](const ChartPoint& x) { return -kahler_potential(model, x); }, grid, h);
}

cplx integrate(const BundleModel& model, const std::function<cplx(const ChartPoint&)>& f,
               const QuadratureSpec& spec) {
  model.validate();
  spec.validate();
  if (model.n != 1)
    throw invalid_parameter_error("integrate: chart quadrature is provided for P^1 only");
  int nr = spec.nodes_radial, na = spec.nodes_angular;
  cplx prev = 0.0;
  double diff = 0.0;
  for (int level = 0; level <= spec.refine_limit; ++level) {
    const Rule1D rt = gauss_legendre(nr, 0.0, kPi);
    const Rule1D rp = periodic_uniform(na);
    cplx acc = 0.0;
    for (int i = 0; i < nr; ++i) {
      const double theta = rt.nodes[i];
      const double r = std::tan(0.5 * theta);
      const double wt = rt.weights[i] * std::sin(theta) * 0.5 * model.m;
      cplx ring = 0.0;
      for (int j = 0; j < na; ++j)
        ring += rp.weights[j] * f(ChartPoint(std::polar(r, rp.nodes[j])));
      acc += wt * ring;
    }
    if (level > 0) {
      diff = std::abs(acc - prev);
      if (diff <= 1e-10 * std::max(1.0, std::abs(acc))) return acc;
    }
    prev = acc;
    nr *= 2;
    na *= 2;
  }
  throw accuracy_error("integrate: quadrature did not converge", diff);
}

double cauchy_riemann_residual(const std::function<cplx(cplx)>& f, const std::vector<cplx>& probes,
                               double h) {
  if (h <= 0.0) throw invalid_parameter_error("cauchy_riemann_residual: step must be positive");
  double worst = 0.0;
  for (const cplx& z : probes) {
    const cplx dx = (f(z + h) - f(z - h)) / (2.0 * h);
    const cplx dy = (f(z + cplx(0, h)) - f(z - cplx(0, h))) / (2.0 * h);
    worst = std::max(worst, std::abs(0.5 * (dx + cplx(0, 1) * dy)));
  }
  return worst;
}

}  // namespace csq
