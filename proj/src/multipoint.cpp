#include "csq/multipoint.hpp"

#include <cmath>

namespace csq {

namespace {

constexpr double kDegenerateModulus = 1e-12;
constexpr double kSideTol = 1e-9;

Eigen::VectorXcd unit_coeffs(const OrthonormalBasis& basis, const ChartPoint& x) {
  CoherentVector cv = coherent_vector(basis, x, basis.natural_frame(x));
  const double n = cv.coeffs.norm();
  if (n == 0.0) throw invalid_point_error("multipoint: coherent vector vanishes");
  return cv.coeffs / n;
}

MultiPointResult pack(cplx value) {
  MultiPointResult r;
  r.value = value;
  r.modulus = std::abs(value);
  r.degenerate = r.modulus <= kDegenerateModulus;
  r.phase = r.degenerate ? 0.0 : std::arg(value);
  return r;
}

}  // namespace

cplx two_point_framed(const OrthonormalBasis& basis, const ChartPoint& x, const ChartPoint& y,
                      const Frame& frame) {
  const cplx kxy = coherent_kernel(basis, x, y, frame);
  const cplx kxx = coherent_kernel(basis, x, x, frame);
  const cplx kyy = coherent_kernel(basis, y, y, frame);
  return kxy / std::sqrt(kxx.real() * kyy.real());
}

double two_point_modulus_sq(const OrthonormalBasis& basis, const ChartPoint& x,
                            const ChartPoint& y) {
  const Eigen::VectorXcd cx = unit_coeffs(basis, x);
  const Eigen::VectorXcd cy = unit_coeffs(basis, y);
  return std::norm(cx.dot(cy));
}

double diastasis(const OrthonormalBasis& basis, const ChartPoint& x, const ChartPoint& y) {
  const double psi = two_point_modulus_sq(basis, x, y);
  if (psi < 1e-300)
    throw infinite_diastasis_error("diastasis: points are mutually polar");
  return -std::log(psi);
}

MultiPointResult cyclic_m_point(const OrthonormalBasis& basis,
                                const std::vector<ChartPoint>& points) {
  if (points.size() < 2) throw arity_error("cyclic_m_point: need at least two points");
  std::vector<Eigen::VectorXcd> c;
  c.reserve(points.size());
  for (const auto& p : points) c.push_back(unit_coeffs(basis, p));
  cplx value = 1.0;
  for (size_t k = 0; k < c.size(); ++k) value *= c[k].dot(c[(k + 1) % c.size()]);
  return pack(value);
}

MultiPointResult cyclic_m_point_projective(const std::vector<ProjectivePoint>& points) {
  if (points.size() < 2) throw arity_error("cyclic_m_point_projective: need at least two points");
  std::vector<Eigen::VectorXcd> r;
  r.reserve(points.size());
  for (const auto& p : points) r.push_back(p.coords.normalized());
  // the coherent vector of a projective point pairs with the scalar product
  // slots reversed relative to the underlying representatives
  cplx value = 1.0;
  for (size_t k = 0; k < r.size(); ++k) value *= r[(k + 1) % r.size()].dot(r[k]);
  return pack(value);
}

TriangleDecomposition three_point_decompose(const OrthonormalBasis& basis, const ChartPoint& x,
                                            const ChartPoint& y, const ChartPoint& z) {
  const ProjectivePoint u = coherent_embedding(basis, x);
  const ProjectivePoint v = coherent_embedding(basis, y);
  const ProjectivePoint w = coherent_embedding(basis, z);
  TriangleDecomposition d;
  d.a = cayley_distance(u, v);
  d.b = cayley_distance(v, w);
  d.c = cayley_distance(w, u);
  const double half_pi = std::acos(-1.0) / 2.0;
  for (double s : {d.a, d.b, d.c})
    if (s <= kSideTol || s >= half_pi - kSideTol)
      throw degenerate_triangle_error(
          "three_point_decompose: a side is degenerate or polar");
  const MultiPointResult r = cyclic_m_point(basis, {x, y, z});
  if (r.degenerate)
    throw degenerate_triangle_error("three_point_decompose: vanishing three-point function");
  d.phi = -r.phase;  // Psi^3 = cos a cos b cos c e^{-i phi}
  d.rho = r.value.real();
  return d;
}

}  // namespace csq
