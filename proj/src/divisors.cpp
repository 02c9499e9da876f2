#include "csq/divisors.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Eigenvalues>

#include "csq/multipoint.hpp"

namespace csq {

namespace {

const double kPi = std::acos(-1.0);
constexpr double kDegreeTol = 1e-9;   // relative cutoff for trailing coefficients
constexpr double kDivisionTol = 1e-8;  // relative remainder cutoff in deflation

// Coefficients of z -> sum_j c_j shat_j(z), a polynomial of degree <= m,
// recovered by interpolation at the (m+1)-st roots of unity.
Eigen::VectorXcd kernel_poly(const OrthonormalBasis& basis, const ChartPoint& x) {
  const int m = basis.model.m;
  CoherentVector cv = coherent_vector(basis, x, basis.natural_frame(x));
  Eigen::VectorXcd vals(m + 1);
  for (int t = 0; t <= m; ++t) {
    const cplx node = std::polar(1.0, 2.0 * kPi * t / (m + 1));
    cplx acc = 0.0;
    for (int j = 0; j <= m; ++j) acc += cv.coeffs(j) * basis.section_value(j, ChartPoint(node));
    vals(t) = acc;
  }
  Eigen::VectorXcd p(m + 1);
  for (int k = 0; k <= m; ++k) {
    cplx acc = 0.0;
    for (int t = 0; t <= m; ++t) acc += vals(t) * std::polar(1.0, -2.0 * kPi * t * k / (m + 1));
    p(k) = acc / double(m + 1);
  }
  return p;
}

int detected_degree(const Eigen::VectorXcd& p, double scale) {
  for (int k = static_cast<int>(p.size()) - 1; k >= 0; --k)
    if (std::abs(p(k)) > kDegreeTol * scale) return k;
  return -1;
}

// Divide p by (z - r); returns the quotient and reports the remainder.
Eigen::VectorXcd deflate(const Eigen::VectorXcd& p, cplx r, double& remainder) {
  const int d = static_cast<int>(p.size()) - 1;
  Eigen::VectorXcd q(d);
  cplx carry = p(d);
  for (int k = d - 1; k >= 0; --k) {
    q(k) = carry;
    carry = p(k) + r * carry;
  }
  remainder = std::abs(carry);
  return q;
}

int deflation_count(Eigen::VectorXcd p, cplx r, double scale) {
  int count = 0;
  while (p.size() > 1) {
    double rem = 0.0;
    Eigen::VectorXcd q = deflate(p, r, rem);
    if (rem > kDivisionTol * scale) break;
    ++count;
    p = q;
  }
  return count;
}

std::vector<DivisorPoint> companion_roots(const Eigen::VectorXcd& p, int d, double scale) {
  Eigen::MatrixXcd C = Eigen::MatrixXcd::Zero(d, d);
  for (int i = 1; i < d; ++i) C(i, i - 1) = 1.0;
  for (int i = 0; i < d; ++i) C(i, d - 1) = -p(i) / p(d);
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(C, false);
  std::vector<cplx> roots(es.eigenvalues().data(), es.eigenvalues().data() + d);
  std::vector<DivisorPoint> out;
  std::vector<bool> used(roots.size(), false);
  for (size_t i = 0; i < roots.size(); ++i) {
    if (used[i]) continue;
    std::vector<cplx> cluster{roots[i]};
    used[i] = true;
    for (size_t j = i + 1; j < roots.size(); ++j) {
      if (used[j]) continue;
      if (std::abs(roots[j] - roots[i]) <= 1e-4 * (1.0 + std::abs(roots[i]))) {
        cluster.push_back(roots[j]);
        used[j] = true;
      }
    }
    cplx mean = 0.0;
    for (cplx c : cluster) mean += c;
    mean /= double(cluster.size());
    const int mult = deflation_count(p.head(d + 1), mean, scale);
    out.push_back({ChartPoint(mean), mult > 0 ? mult : static_cast<int>(cluster.size())});
  }
  return out;
}

}  // namespace

Divisor polar_divisor_p1(const OrthonormalBasis& basis, const ChartPoint& w) {
  if (basis.model.family != Family::P1_FubiniStudy || basis.model.n != 1)
    throw invalid_parameter_error("polar_divisor_p1: needs the P^1 model");
  const int m = basis.model.m;
  const Eigen::VectorXcd p = kernel_poly(basis, w);
  const double scale = p.cwiseAbs().maxCoeff();
  if (scale == 0.0) throw degenerate_basis_error("polar_divisor_p1: zero kernel polynomial");
  const int d = detected_degree(p, scale);
  Divisor div;
  if (d <= 0) {
    // nonvanishing constant: the full divisor sits at infinity
    div.points.push_back({ChartPoint::infinity(), m});
    return div;
  }
  const Eigen::VectorXcd pd = p.head(d + 1);
  // candidate for a single root of multiplicity d: p ~ c (z - r)^d
  const cplx r = -pd(d - 1) / (double(d) * pd(d));
  if (deflation_count(pd, r, scale) == d) {
    div.points.push_back({ChartPoint(r), d});
  } else {
    div.points = companion_roots(pd, d, scale);
  }
  if (d < m) div.points.push_back({ChartPoint::infinity(), m - d});
  int total = 0;
  for (const auto& dp : div.points) total += dp.multiplicity;
  if (total != m)
    throw accuracy_error("polar_divisor_p1: multiplicities do not sum to the degree",
                         std::abs(double(total - m)));
  return div;
}

bool polar_membership(const OrthonormalBasis& basis, const ChartPoint& x, const ChartPoint& y,
                      double tol) {
  CoherentVector cx = coherent_vector(basis, x, basis.natural_frame(x));
  CoherentVector cy = coherent_vector(basis, y, basis.natural_frame(y));
  const double num = std::abs(cx.coeffs.dot(cy.coeffs));
  return num <= tol * cx.coeffs.norm() * cy.coeffs.norm();
}

int multiplicity_at(const OrthonormalBasis& basis, const ChartPoint& x, const ChartPoint& root) {
  if (basis.model.family != Family::P1_FubiniStudy || basis.model.n != 1)
    throw invalid_parameter_error("multiplicity_at: needs the P^1 model");
  const int m = basis.model.m;
  const Eigen::VectorXcd p = kernel_poly(basis, x);
  const double scale = p.cwiseAbs().maxCoeff();
  if (scale == 0.0) throw degenerate_basis_error("multiplicity_at: zero kernel polynomial");
  const int d = detected_degree(p, scale);
  if (root.at_infinity) {
    const int mult = m - std::max(d, 0);
    if (mult == 0) throw not_a_root_error("multiplicity_at: kernel does not vanish at infinity");
    return mult;
  }
  if (d <= 0) throw not_a_root_error("multiplicity_at: kernel polynomial is constant");
  const int mult = deflation_count(p.head(d + 1), root.z(), scale);
  if (mult == 0) throw not_a_root_error("multiplicity_at: point is not on the polar divisor");
  return mult;
}

}  // namespace csq
