#include "csq/coherent.hpp"

#include <cmath>

#include <Eigen/Cholesky>

namespace csq {

namespace {

const double kPi = std::acos(-1.0);

cplx ipow(cplx z, int k) {
  cplx v = 1.0;
  for (int i = 0; i < k; ++i) v *= z;
  return v;
}

double factorial(int k) {
  double v = 1.0;
  for (int i = 2; i <= k; ++i) v *= i;
  return v;
}

void fill_layer(int slot, int remaining, Eigen::VectorXi& a,
                std::vector<Eigen::VectorXi>& out) {
  if (slot == a.size() - 1) {
    a(slot) = remaining;
    out.push_back(a);
    return;
  }
  for (int v = remaining; v >= 0; --v) {
    a(slot) = v;
    fill_layer(slot + 1, remaining - v, a, out);
  }
}

// Monomial exponents with |alpha| <= m, graded lexicographic (total degree
// first, then leading coordinates carry the higher exponents); the constant
// monomial is index 0 and, for n = 1, z^m is index m.
std::vector<Eigen::VectorXi> enumerate_exponents(int n, int m) {
  std::vector<Eigen::VectorXi> out;
  Eigen::VectorXi a(n);
  for (int deg = 0; deg <= m; ++deg) fill_layer(0, deg, a, out);
  return out;
}

}  // namespace

cplx OrthonormalBasis::monomial_value(int k, const ChartPoint& x) const {
  if (k < 0 || k >= static_cast<int>(exponents.size()))
    throw invalid_parameter_error("monomial_value: index out of range");
  if (x.at_infinity) {
    if (model.n != 1) throw chart_mismatch_error("monomial_value: infinity marker needs P^1");
    // second-chart representing function zeta^{m-k} at zeta = 0
    return k == model.m ? cplx(1.0, 0.0) : cplx(0.0, 0.0);
  }
  if (x.dim() != model.n) throw invalid_point_error("monomial_value: chart dimension mismatch");
  cplx v = 1.0;
  for (int i = 0; i < model.n; ++i) v *= ipow(x.w(i), exponents[k](i));
  return v;
}

cplx OrthonormalBasis::section_value(int j, const ChartPoint& x) const {
  if (j < 0 || j >= section_count())
    throw invalid_parameter_error("section_value: index out of range");
  if (x.at_infinity) {
    if (model.n != 1) throw chart_mismatch_error("section_value: infinity marker needs P^1");
    return coeffs(model.m, j);  // only the top monomial survives at zeta = 0
  }
  if (x.dim() != model.n) throw invalid_point_error("section_value: chart dimension mismatch");
  if (model.n == 1) {
    // Horner-free incremental powers; exponents are 0..m in order.
    cplx acc = 0.0, zk = 1.0;
    for (int k = 0; k <= model.m; ++k, zk *= x.z()) acc += coeffs(k, j) * zk;
    return acc;
  }
  cplx acc = 0.0;
  for (int k = 0; k < coeffs.rows(); ++k) acc += coeffs(k, j) * monomial_value(k, x);
  return acc;
}

ChartFunction OrthonormalBasis::section(int j) const {
  if (j < 0 || j >= section_count()) throw invalid_parameter_error("section: index out of range");
  OrthonormalBasis copy = *this;
  return ChartFunction{[copy, j](const ChartPoint& x) { return copy.section_value(j, x); }, 0,
                       true};
}

cplx OrthonormalBasis::frame_value(const Frame& frame, const ChartPoint& x) const {
  cplx v;
  switch (frame.kind) {
    case Frame::Kind::MonomialPower:
      v = monomial_value(frame.index, x);
      break;
    case Frame::Kind::SectionIndex:
      v = section_value(frame.index, x);
      break;
    case Frame::Kind::Custom:
      if (!frame.fn) throw invalid_parameter_error("frame_value: custom frame without function");
      if (x.at_infinity)
        throw chart_mismatch_error("frame_value: custom frames live on the standard chart");
      v = frame.fn(x);
      break;
    default:
      throw invalid_parameter_error("frame_value: unknown frame kind");
  }
  if (std::abs(v) <= 1e-13)
    throw frame_vanishing_error("frame_value: frame vanishes at the evaluation point");
  return v;
}

Frame OrthonormalBasis::natural_frame(const ChartPoint& x) const {
  return x.at_infinity ? Frame::monomial(model.m) : Frame::constant_one();
}

OrthonormalBasis build_onb(const BundleModel& model, const QuadratureSpec& spec) {
  model.validate();
  spec.validate();
  OrthonormalBasis b;
  b.model = model;
  b.exponents = enumerate_exponents(model.n, model.m);
  const int dim = static_cast<int>(b.exponents.size());
  if (dim != model.section_count())
    throw invalid_parameter_error("build_onb: monomial enumeration size mismatch");

  Eigen::MatrixXcd G(dim, dim);
  if (model.family == Family::P1_FubiniStudy) {
    b.coeffs = Eigen::MatrixXcd::Identity(dim, dim);  // raw monomials for the Gram pass
    for (int i = 0; i < dim; ++i)
      for (int j = i; j < dim; ++j) {
        const cplx g = integrate(
            model,
            [&](const ChartPoint& z) {
              return metric_hat(model, z) * std::conj(b.monomial_value(i, z)) *
                     b.monomial_value(j, z);
            },
            spec);
        G(i, j) = g;
        G(j, i) = std::conj(g);
      }
  } else {
    // Closed-form monomial Gram: <w^a, w^a> = m^n (2 pi)^n (prod a_i!) (m-|a|)! / (m+n)!.
    G.setZero();
    double pref = 1.0;
    for (int i = 0; i < model.n; ++i) pref *= model.m * 2.0 * kPi;
    pref /= factorial(model.m + model.n);
    for (int k = 0; k < dim; ++k) {
      double v = pref * factorial(model.m - b.exponents[k].sum());
      for (int i = 0; i < model.n; ++i) v *= factorial(b.exponents[k](i));
      G(k, k) = v;
    }
  }

  Eigen::LLT<Eigen::MatrixXcd> llt(G);
  if (llt.info() != Eigen::Success)
    throw degenerate_basis_error("build_onb: section Gram is not positive definite");
  // G = R^H R with R upper triangular; sections <- sections * R^{-1} is an
  // orthonormalization that reduces to positive column scaling when G is
  // diagonal, keeping the monomial alignment.
  b.coeffs = llt.matrixU().solve(Eigen::MatrixXcd::Identity(dim, dim));

  if (model.family == Family::P1_FubiniStudy) {
    QuadratureSpec fine = spec;
    fine.nodes_radial *= 2;
    fine.nodes_angular *= 2;
    double res = 0.0;
    for (int i = 0; i < dim; ++i)
      for (int j = i; j < dim; ++j) {
        const cplx g = integrate(
            model,
            [&](const ChartPoint& z) {
              return metric_hat(model, z) * std::conj(b.section_value(i, z)) *
                     b.section_value(j, z);
            },
            fine);
        res = std::max(res, std::abs(g - (i == j ? cplx(1.0, 0.0) : cplx(0.0, 0.0))));
      }
    b.gram_residual = res;
  } else {
    b.gram_residual = 0.0;  // Gram is exact by construction
  }
  return b;
}

CoherentVector coherent_vector(const OrthonormalBasis& basis, const ChartPoint& x,
                               const Frame& frame, cplx scale) {
  if (scale == cplx(0.0, 0.0))
    throw invalid_parameter_error("coherent_vector: lift scale must be nonzero");
  const cplx f = basis.frame_value(frame, x) * scale;
  CoherentVector cv;
  cv.x = x;
  cv.scale = scale;
  cv.coeffs.resize(basis.section_count());
  for (int j = 0; j < basis.section_count(); ++j)
    cv.coeffs(j) = std::conj(basis.section_value(j, x) / f);
  return cv;
}

cplx coherent_kernel(const OrthonormalBasis& basis, const ChartPoint& x, const ChartPoint& y,
                     const Frame& frame) {
  const cplx fx = basis.frame_value(frame, x);
  const cplx fy = basis.frame_value(frame, y);
  cplx acc = 0.0;
  for (int j = 0; j < basis.section_count(); ++j)
    acc += basis.section_value(j, x) * std::conj(basis.section_value(j, y));
  return acc / (fx * std::conj(fy));
}

ProjectivePoint coherent_embedding(const OrthonormalBasis& basis, const ChartPoint& x) {
  Eigen::VectorXcd v(basis.section_count());
  for (int j = 0; j < basis.section_count(); ++j) v(j) = basis.section_value(j, x);
  if (v.norm() == 0.0)
    throw degenerate_basis_error("coherent_embedding: all sections vanish at the point");
  return ProjectivePoint(v);
}

double epsilon_function(const OrthonormalBasis& basis, const ChartPoint& x) {
  if (x.at_infinity) {
    if (basis.model.n != 1) throw chart_mismatch_error("epsilon_function: infinity needs P^1");
    // second chart: metric value 1 at zeta = 0, sections reduce to the top row
    double acc = 0.0;
    for (int j = 0; j < basis.section_count(); ++j)
      acc += std::norm(basis.coeffs(basis.model.m, j));
    return acc;
  }
  double acc = 0.0;
  for (int j = 0; j < basis.section_count(); ++j) acc += std::norm(basis.section_value(j, x));
  return metric_hat(basis.model, x) * acc;
}

double overcompleteness_residual(const OrthonormalBasis& basis, const QuadratureSpec& spec) {
  if (basis.model.family != Family::P1_FubiniStudy)
    throw invalid_parameter_error("overcompleteness_residual: quadrature path is P^1 only");
  const int dim = basis.section_count();
  double res = 0.0;
  for (int i = 0; i < dim; ++i)
    for (int j = i; j < dim; ++j) {
      const cplx g = integrate(
          basis.model,
          [&](const ChartPoint& z) {
            Eigen::VectorXcd c(dim);
            for (int k = 0; k < dim; ++k) c(k) = std::conj(basis.section_value(k, z));
            const double n2 = c.squaredNorm();
            const cplx proj = c(i) * std::conj(c(j)) / n2;  // <s_i, P_z s_j>
            const double eps = metric_hat(basis.model, z) * n2;
            return proj * eps;
          },
          spec);
      res = std::max(res, std::abs(g - (i == j ? cplx(1.0, 0.0) : cplx(0.0, 0.0))));
    }
  return res;
}

}  // namespace csq
