#pragma once

#include <complex>
#include <functional>
#include <vector>

#include <Eigen/Dense>

#include "csq/errors.hpp"
#include "csq/projective.hpp"

namespace csq {

enum class Family {
  P1_FubiniStudy,  // P^1 with h = (1+|z|^2)^{-m}; scalar products by chart quadrature
  PN_FubiniStudy,  // P^n with h = (1+|w|^2)^{-m}; scalar products by closed-form Gram
};

/// Quantized model (M, m*omega_FS) with line bundle H^m. The curvature of
/// the metric hhat equals -i times the Kaehler form, which fixes all
/// normalizations: Omega = (m*omega_FS)^n / n! and vol = m^n (2 pi)^n / n!.
struct BundleModel {
  Family family = Family::P1_FubiniStudy;
  int n = 1;  // complex dimension of M
  int m = 1;  // tensor power of the hyperplane bundle

  void validate() const;

  /// Dimension of the space of holomorphic sections, binom(m+n, n).
  int section_count() const;

  /// Volume of M for Omega.
  double volume() const;
};

/// Point of the standard affine chart of M, with an explicit marker for
/// the second-chart origin of P^1 (z = infinity). Only n = 1 models carry
/// points at infinity.
struct ChartPoint {
  Eigen::VectorXcd w;
  bool at_infinity = false;

  ChartPoint() : w(Eigen::VectorXcd::Zero(1)) {}
  explicit ChartPoint(cplx z) : w(1) { w(0) = z; }
  explicit ChartPoint(Eigen::VectorXcd v) : w(std::move(v)) {}
  static ChartPoint infinity() {
    ChartPoint p;
    p.at_infinity = true;
    return p;
  }

  cplx z() const { return w(0); }  // n = 1 shorthand
  int dim() const { return static_cast<int>(w.size()); }
};

/// Scalar function on a chart, with enough metadata for holomorphy checks.
struct ChartFunction {
  std::function<cplx(const ChartPoint&)> eval;
  int chart = 0;
  bool holomorphic = false;
};

/// Local metric function hhat(w) = (1 + |w|^2)^{-m} of the quantum line
/// bundle in the standard chart.
double metric_hat(const BundleModel& model, const ChartPoint& x);

/// Kaehler potential K = -log hhat.
double kahler_potential(const BundleModel& model, const ChartPoint& x);

/// Max over grid points and standard tangent pairs of
///   | FD(delbar del log hhat)(X, Y) + i omega(X, Y) |,
/// the quantization condition residual. Mixed complex second derivatives
/// use central finite differences with step h (4-point stencils for the
/// off-diagonal terms). Accepts any positive metric function, so
/// perturbed metrics can serve as negative controls.
double curvature_residual(const BundleModel& model,
                          const std::function<double(const ChartPoint&)>& log_metric,
                          const std::vector<ChartPoint>& grid, double h = 1e-3);

/// Same, for the model's own metric.
double curvature_residual(const BundleModel& model, const std::vector<ChartPoint>& grid,
                          double h = 1e-3);

/// Integral over M of f against the volume form Omega, computed on P^1
/// with the substitution r = tan(theta/2) mapping [0,pi) x [0,2pi) onto
/// the chart (the point at infinity has measure zero). Gauss-Legendre in
/// theta, uniform periodic rule in phi; dyadically refined until
/// successive estimates agree, else an accuracy_error carries the last
/// difference. Deterministic for a fixed spec.
cplx integrate(const BundleModel& model, const std::function<cplx(const ChartPoint&)>& f,
               const QuadratureSpec& spec = {});

/// Max Cauchy-Riemann residual |df/dzbar| of a chart function over probe
/// points, by central finite differences with step h. Small for
/// holomorphic functions (O(h^2) truncation).
double cauchy_riemann_residual(const std::function<cplx(cplx)>& f,
                               const std::vector<cplx>& probes, double h = 1e-4);

}  // namespace csq
