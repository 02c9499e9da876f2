#include <doctest.h>

#include <cmath>

#include "csq/bundles.hpp"

using namespace csq;

namespace {
const double kPi = std::acos(-1.0);
}

TEST_CASE("model validation") {
  CHECK_THROWS_AS(BundleModel({Family::P1_FubiniStudy, 1, 0}).validate(),
                  invalid_parameter_error);
  CHECK_THROWS_AS(BundleModel({Family::PN_FubiniStudy, 0, 1}).validate(),
                  invalid_parameter_error);
  CHECK_THROWS_AS(BundleModel({Family::P1_FubiniStudy, 2, 1}).validate(),
                  invalid_parameter_error);
  CHECK_NOTHROW(BundleModel({Family::PN_FubiniStudy, 3, 2}).validate());
}

TEST_CASE("section counts binom(m+n, n)") {
  CHECK(BundleModel({Family::P1_FubiniStudy, 1, 3}).section_count() == 4);
  CHECK(BundleModel({Family::PN_FubiniStudy, 2, 1}).section_count() == 3);
  CHECK(BundleModel({Family::PN_FubiniStudy, 2, 2}).section_count() == 6);
  CHECK(BundleModel({Family::PN_FubiniStudy, 3, 2}).section_count() == 10);
}

TEST_CASE("volumes m^n (2 pi)^n / n!") {
  CHECK(std::abs(BundleModel({Family::P1_FubiniStudy, 1, 1}).volume() - 2 * kPi) < 1e-12);
  CHECK(std::abs(BundleModel({Family::P1_FubiniStudy, 1, 3}).volume() - 6 * kPi) < 1e-12);
  CHECK(std::abs(BundleModel({Family::PN_FubiniStudy, 2, 1}).volume() - 2 * kPi * kPi) < 1e-12);
  CHECK(std::abs(BundleModel({Family::PN_FubiniStudy, 2, 2}).volume() - 8 * kPi * kPi) < 1e-11);
}

TEST_CASE("metric and potential oracles") {
  const BundleModel m2{Family::P1_FubiniStudy, 1, 2};
  CHECK(std::abs(metric_hat(m2, ChartPoint(cplx(1, 1))) - 1.0 / 9.0) < 1e-15);
  const BundleModel m3{Family::P1_FubiniStudy, 1, 3};
  CHECK(std::abs(kahler_potential(m3, ChartPoint(cplx(2, 0))) - 3.0 * std::log(5.0)) < 1e-13);
  CHECK_THROWS_AS(metric_hat(m2, ChartPoint::infinity()), invalid_point_error);
  const BundleModel p2{Family::PN_FubiniStudy, 2, 1};
  Eigen::VectorXcd w(2);
  w << cplx(1, 0), cplx(0, 1);
  CHECK(std::abs(metric_hat(p2, ChartPoint(w)) - 1.0 / 3.0) < 1e-15);
}

TEST_CASE("chart quadrature reproduces the volume") {
  for (int m : {1, 2, 3}) {
    const BundleModel model{Family::P1_FubiniStudy, 1, m};
    const cplx vol = integrate(model, [](const ChartPoint&) { return cplx(1.0, 0.0); });
    CHECK(std::abs(vol - model.volume()) < 1e-10);
  }
}

TEST_CASE("chart quadrature reproduces monomial norms") {
  // <z^j, z^j> = 2 pi m j! (m-j)! / (m+1)!
  const BundleModel m3{Family::P1_FubiniStudy, 1, 3};
  auto norm_sq = [&](int j) {
    return integrate(m3, [&](const ChartPoint& z) {
      return metric_hat(m3, z) * std::pow(std::abs(z.z()), 2 * j);
    });
  };
  CHECK(std::abs(norm_sq(0) - 1.5 * kPi) < 1e-10);
  CHECK(std::abs(norm_sq(1) - 0.5 * kPi) < 1e-10);
  CHECK(std::abs(norm_sq(2) - 0.5 * kPi) < 1e-10);
  CHECK(std::abs(norm_sq(3) - 1.5 * kPi) < 1e-10);
}

TEST_CASE("odd angular moments vanish") {
  const BundleModel m2{Family::P1_FubiniStudy, 1, 2};
  const cplx v = integrate(m2, [&](const ChartPoint& z) { return metric_hat(m2, z) * z.z(); });
  CHECK(std::abs(v) < 1e-13);
}

TEST_CASE("non-convergent integrands raise accuracy_error with a residual") {
  const BundleModel m1{Family::P1_FubiniStudy, 1, 1};
  QuadratureSpec spec;
  spec.refine_limit = 2;
  try {
    integrate(m1, [](const ChartPoint& z) { return cplx(std::norm(z.z()), 0.0); }, spec);
    FAIL("expected accuracy_error");
  } catch (const accuracy_error& e) {
    CHECK(e.residual > 0.0);
  }
}

TEST_CASE("quantization condition residual is small and O(h^2)") {
  std::vector<ChartPoint> grid;
  for (cplx z : {cplx(0, 0), cplx(0.5, 0.2), cplx(-1, 1)}) grid.push_back(ChartPoint(z));
  for (int m : {1, 2}) {
    const BundleModel model{Family::P1_FubiniStudy, 1, m};
    const double r1 = curvature_residual(model, grid, 1e-3);
    const double r2 = curvature_residual(model, grid, 5e-4);
    CHECK(r1 < 1e-4);
    CHECK(r1 / r2 > 2.5);
  }
}

TEST_CASE("perturbed metrics fail the quantization condition") {
  const BundleModel m1{Family::P1_FubiniStudy, 1, 1};
  std::vector<ChartPoint> grid{ChartPoint(cplx(0, 0)), ChartPoint(cplx(0.4, -0.6))};
  const double res = curvature_residual(
      m1,
      [&](const ChartPoint& z) { return std::log(metric_hat(m1, z)) + std::norm(z.z()); },
      grid, 1e-3);
  CHECK(res > 0.1);
}

TEST_CASE("Cauchy-Riemann residual separates holomorphic from antiholomorphic") {
  std::vector<cplx> probes{cplx(0.3, 0.1), cplx(-0.7, 0.9), cplx(1.2, -0.4)};
  CHECK(cauchy_riemann_residual([](cplx z) { return z * z * z; }, probes) < 1e-7);
  CHECK(cauchy_riemann_residual([](cplx z) { return std::conj(z); }, probes) > 0.5);
}
