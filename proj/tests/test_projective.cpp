#include <doctest.h>

#include <cmath>

#include "csq/projective.hpp"
#include "csq/quadrature.hpp"

using namespace csq;

namespace {

const double kPi = std::acos(-1.0);

ProjectivePoint pp(cplx a, cplx b) {
  Eigen::VectorXcd v(2);
  v << a, b;
  return ProjectivePoint(v);
}

ProjectivePoint pp3(cplx a, cplx b, cplx c) {
  Eigen::VectorXcd v(3);
  v << a, b, c;
  return ProjectivePoint(v);
}

}  // namespace

TEST_CASE("Gauss-Legendre integrates polynomials up to degree 2n-1 exactly") {
  const Rule1D rule = gauss_legendre(8);
  for (int k = 0; k <= 15; ++k) {
    double acc = 0.0;
    for (size_t i = 0; i < rule.nodes.size(); ++i)
      acc += rule.weights[i] * std::pow(rule.nodes[i], k);
    const double exact = (k % 2 == 0) ? 2.0 / (k + 1) : 0.0;
    CHECK(std::abs(acc - exact) < 1e-14);
  }
}

TEST_CASE("mapped Gauss-Legendre rule") {
  const Rule1D rule = gauss_legendre(6, 0.0, 3.0);
  double acc = 0.0;
  for (size_t i = 0; i < rule.nodes.size(); ++i)
    acc += rule.weights[i] * std::pow(rule.nodes[i], 3);
  CHECK(std::abs(acc - 81.0 / 4.0) < 1e-12);
}

TEST_CASE("periodic rule is exact for trigonometric polynomials") {
  const Rule1D rule = periodic_uniform(16);
  double c2 = 0.0;
  cplx e3 = 0.0;
  for (size_t i = 0; i < rule.nodes.size(); ++i) {
    c2 += rule.weights[i] * std::cos(rule.nodes[i]) * std::cos(rule.nodes[i]);
    e3 += rule.weights[i] * std::polar(1.0, 3.0 * rule.nodes[i]);
  }
  CHECK(std::abs(c2 - kPi) < 1e-13);
  CHECK(std::abs(e3) < 1e-13);
}

TEST_CASE("projective points validate their representatives") {
  Eigen::VectorXcd zero = Eigen::VectorXcd::Zero(2);
  CHECK_THROWS_AS(ProjectivePoint{zero}, invalid_point_error);
  Eigen::VectorXcd tiny(1);
  tiny << cplx(1.0, 0.0);
  CHECK_THROWS_AS(ProjectivePoint{tiny}, invalid_point_error);
}

TEST_CASE("projective equality ignores the representative scale") {
  const ProjectivePoint p = pp(1.0, cplx(2.0, -1.0));
  ProjectivePoint q = p;
  q.coords *= cplx(0.0, 2.7);
  CHECK(projective_equal(p, q));
  CHECK_FALSE(projective_equal(pp(1.0, 0.0), pp(0.0, 1.0)));
}

TEST_CASE("Cayley distance oracles") {
  CHECK(cayley_distance(pp(1, 0), pp(1, 0)) < 1e-7);  // acos rounding near 1
  CHECK(std::abs(cayley_distance(pp(1, 0), pp(1, 1)) - kPi / 4.0) < 1e-14);
  CHECK(std::abs(cayley_distance(pp(1, 0), pp(0, 1)) - kPi / 2.0) < 1e-14);
  // invariant under a unitary change of representatives
  Eigen::MatrixXcd U(2, 2);
  U << cplx(1, 0), cplx(0, 1), cplx(0, 1), cplx(1, 0);
  U /= std::sqrt(2.0);
  const ProjectivePoint a = pp(cplx(0.3, 0.4), cplx(-1.0, 0.2));
  const ProjectivePoint b = pp(cplx(1.1, 0), cplx(0.5, -0.7));
  CHECK(std::abs(cayley_distance(ProjectivePoint(U * a.coords), ProjectivePoint(U * b.coords)) -
                 cayley_distance(a, b)) < 1e-13);
}

TEST_CASE("Fubini-Study form pinned value at the chart origin") {
  TangentPair t;
  t.base = pp(1, 0);
  t.X = Eigen::VectorXcd::Constant(1, cplx(1, 0));
  t.Y = Eigen::VectorXcd::Constant(1, cplx(0, 1));
  CHECK(std::abs(fubini_study_form(t) - 2.0) < 1e-14);
  // antisymmetry
  TangentPair s = t;
  std::swap(s.X, s.Y);
  CHECK(std::abs(fubini_study_form(s) + 2.0) < 1e-14);
}

TEST_CASE("chart and homogeneous Fubini-Study forms agree on lifted tangents") {
  const cplx ws[] = {cplx(0.3, -0.8), cplx(1.2, 0.4), cplx(-0.1, 2.0)};
  const cplx Xs[] = {cplx(1, 0), cplx(0.7, -0.2), cplx(-0.5, 1.1)};
  const cplx Ys[] = {cplx(0, 1), cplx(-1.3, 0.6), cplx(0.2, 0.9)};
  for (int i = 0; i < 3; ++i) {
    TangentPair t;
    t.base = pp(1, ws[i]);
    t.X = Eigen::VectorXcd::Constant(1, Xs[i]);
    t.Y = Eigen::VectorXcd::Constant(1, Ys[i]);
    Eigen::VectorXcd z(2), X(2), Y(2);
    z << 1.0, ws[i];
    X << 0.0, Xs[i];  // lift of the chart tangent along (1, w + t X)
    Y << 0.0, Ys[i];
    CHECK(std::abs(fubini_study_form(t) - fubini_study_form_hom(z, X, Y)) < 1e-12);
  }
}

TEST_CASE("geodesics reach their endpoints with linear arc length") {
  const ProjectivePoint p = pp(1.0, cplx(0.2, 0.1));
  const ProjectivePoint q = pp(1.0, cplx(-0.9, 1.4));
  CHECK(projective_equal(p, geodesic(p, q, 0.0), 1e-12));
  CHECK(projective_equal(q, geodesic(p, q, 1.0), 1e-12));
  const double d = cayley_distance(p, q);
  for (double t : {0.25, 0.5, 0.75})
    CHECK(std::abs(cayley_distance(p, geodesic(p, q, t)) - t * d) < 1e-12);
}

TEST_CASE("degenerate geodesics are rejected") {
  CHECK_THROWS_AS(geodesic(pp(1, 0), pp(2, 0), 0.5), degenerate_geodesic_error);
  CHECK_THROWS_AS(geodesic(pp(1, 0), pp(0, 1), 0.5), degenerate_geodesic_error);
}

TEST_CASE("triangle area fixture: (1,0), (1,1), (1,i) has area +pi/4") {
  const double area = triangle_symplectic_area(pp(1, 0), pp(1, 1), pp(1, cplx(0, 1)));
  CHECK(std::abs(area - kPi / 4.0) < 2e-6);
}

TEST_CASE("triangle area is antisymmetric under orientation reversal") {
  const ProjectivePoint u = pp(1.0, cplx(0.1, 0.2));
  const ProjectivePoint v = pp(1.0, cplx(0.9, -0.3));
  const ProjectivePoint w = pp(1.0, cplx(-0.4, 0.8));
  CHECK(std::abs(triangle_symplectic_area(u, v, w) + triangle_symplectic_area(u, w, v)) < 4e-6);
}

TEST_CASE("triangle area is additive under edge subdivision") {
  const ProjectivePoint u = pp(1.0, cplx(0.0, 0.0));
  const ProjectivePoint v = pp(1.0, cplx(1.1, 0.2));
  const ProjectivePoint w = pp(1.0, cplx(0.3, 0.9));
  const ProjectivePoint q = geodesic(u, v, 0.5);
  const double whole = triangle_symplectic_area(u, v, w);
  const double left = triangle_symplectic_area(u, q, w);
  const double right = triangle_symplectic_area(q, v, w);
  CHECK(std::abs(whole - left - right) < 5e-6);
}

TEST_CASE("small triangles approach the flat chart area") {
  // near the origin omega ~ 2 dx dy, so the chart triangle of Lebesgue
  // area h^2/2 carries symplectic area h^2
  const double h = 0.05;
  const double area =
      triangle_symplectic_area(pp(1, 0), pp(1, h), pp(1, cplx(0, h)));
  CHECK(std::abs(area - h * h) < 4e-5);
}

TEST_CASE("degenerate triangles are rejected") {
  CHECK_THROWS_AS(triangle_symplectic_area(pp(1, 0), pp(2, 0), pp(1, 1)),
                  degenerate_triangle_error);
  CHECK_THROWS_AS(triangle_symplectic_area(pp(1, 0), pp(0, 1), pp(1, 1)),
                  degenerate_triangle_error);
}

TEST_CASE("areas live on higher-dimensional targets too") {
  // planar triangle inside CP^2; matches the CP^1 fixture embedded in the
  // first two coordinates
  const double area =
      triangle_symplectic_area(pp3(1, 0, 0), pp3(1, 1, 0), pp3(1, cplx(0, 1), 0));
  CHECK(std::abs(area - kPi / 4.0) < 2e-6);
}
