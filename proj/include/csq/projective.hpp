#pragma once

#include <complex>

#include <Eigen/Dense>

#include "csq/errors.hpp"

namespace csq {

using cplx = std::complex<double>;

/// A point of complex projective space CP^N, stored as a nonzero
/// homogeneous representative in C^{N+1}.
struct ProjectivePoint {
  Eigen::VectorXcd coords;

  ProjectivePoint() = default;
  explicit ProjectivePoint(Eigen::VectorXcd c);

  int dim() const { return static_cast<int>(coords.size()) - 1; }  // the N of CP^N
};

/// Pair of affine-chart tangent vectors at a base point; X and Y have N
/// components each, interpreted as X d/dw + conj(X) d/dwbar in the chart.
struct TangentPair {
  ProjectivePoint base;
  int chart = 0;
  Eigen::VectorXcd X;
  Eigen::VectorXcd Y;
};

/// Controls for the tensor-product Gauss-Legendre surface quadrature.
struct QuadratureSpec {
  int nodes_u = 32;
  int nodes_v = 32;
  int nodes_radial = 48;
  int nodes_angular = 64;
  int refine_limit = 5;

  void validate() const;
};

/// True iff p and q span the same complex line: the sine of the principal
/// angle between the lines is <= tol.
bool projective_equal(const ProjectivePoint& p, const ProjectivePoint& q, double tol = 1e-12);

/// Geodesic distance for the metric normalized so that the diameter is
/// pi/2: d = arccos(|<p,q>| / (|p| |q|)). Scalar products are
/// conjugate-linear in the first argument throughout.
double cayley_distance(const ProjectivePoint& p, const ProjectivePoint& q);

/// Fubini-Study two-form evaluated on a chart tangent pair,
///   omega = i [ (1+|w|^2) sum_i dw_i^dwbar_i - sum_{ij} wbar_i w_j dw_i^dwbar_j ] / (1+|w|^2)^2,
/// with dw^dwbar(X, Y) = X conj(Y) - Y conj(X).
double fubini_study_form(const TangentPair& t);

/// Fubini-Study two-form on homogeneous data: i del delbar log|z|^2
/// evaluated at a representative z on ambient tangents X, Y in C^{N+1}.
/// Agrees with the chart formula on lifted tangents.
double fubini_study_form_hom(const Eigen::VectorXcd& z, const Eigen::VectorXcd& X,
                             const Eigen::VectorXcd& Y);

/// Point at parameter t in [0, 1] on the unique minimal geodesic from p
/// to q. The representative path keeps q's representative phase-aligned
/// so <p, q> is real positive; arc length from p grows linearly in t.
ProjectivePoint geodesic(const ProjectivePoint& p, const ProjectivePoint& q, double t);

/// Symplectic area int omega_FS over the geodesic triangle surface
/// sigma(u, v, w): the surface swept by geodesics from w to the points of
/// the geodesic from u to v. Orientation is frozen so that the area of
/// the triangle (1,0), (1,1), (1,i) in CP^1 is +pi/4; with this
/// convention exp(i area) equals the unit-modulus factor of
/// <u,v><v,w><w,u>. Tensor-product Gauss-Legendre with dyadic
/// refinement until successive estimates differ by < 1e-6.
double triangle_symplectic_area(const ProjectivePoint& u, const ProjectivePoint& v,
                                const ProjectivePoint& w, const QuadratureSpec& spec = {});

}  // namespace csq
