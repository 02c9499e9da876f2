#pragma once

#include <complex>
#include <vector>

#include "csq/coherent.hpp"

namespace csq {

/// Value of a cyclic m-point function together with its polar split.
/// Invariant: value = modulus * exp(i * phase); degenerate marks tuples
/// whose value vanishes (a cyclically consecutive pair on a polar divisor).
struct MultiPointResult {
  cplx value{0.0, 0.0};
  double modulus = 0.0;
  double phase = 0.0;
  bool degenerate = false;
};

/// Geodesic data of an embedded triangle: side lengths a, b, c of the
/// coherent-state images, the phase phi with
/// Psi3 = cos a cos b cos c * exp(-i phi), and the congruence invariant
/// rho = cos a cos b cos c cos phi. phi equals the symplectic area of the
/// geodesic triangle of the images (mod 2 pi).
struct TriangleDecomposition {
  double a = 0.0, b = 0.0, c = 0.0;
  double phi = 0.0;
  double rho = 0.0;
};

/// Framed two-point amplitude <e_{s(x)}, e_{s(y)}> / (|e_{s(x)}| |e_{s(y)}|).
/// Unit modulus at x = y; vanishes iff y lies on the polar divisor of x.
cplx two_point_framed(const OrthonormalBasis& basis, const ChartPoint& x, const ChartPoint& y,
                      const Frame& frame = Frame::constant_one());

/// Frame-independent two-point function psi(x, y) = |<e_x, e_y>|^2 /
/// (|e_x|^2 |e_y|^2) in [0, 1]; equals cos^2 of the Cayley distance of
/// the embedded images.
double two_point_modulus_sq(const OrthonormalBasis& basis, const ChartPoint& x,
                            const ChartPoint& y);

/// Calabi diastasis D(x, y) = -2 log sqrt(psi(x, y)); zero on the
/// diagonal, symmetric, infinite on polar pairs (throws
/// infinite_diastasis_error below a floor of psi = 1e-300).
double diastasis(const OrthonormalBasis& basis, const ChartPoint& x, const ChartPoint& y);

/// Cyclic m-point function of an m-tuple (m >= 2):
///   Psi(x_1..x_m) = <e_1,e_2><e_2,e_3>...<e_m,e_1> / (|e_1|^2...|e_m|^2).
/// Frame-independent; invariant under cyclic shifts; conjugated by
/// reversal; pulls back from CP^N through the coherent-state embedding.
MultiPointResult cyclic_m_point(const OrthonormalBasis& basis,
                                const std::vector<ChartPoint>& points);

/// Same quantity computed from arbitrary homogeneous representatives of
/// points of CP^N (the pullback side of the m-point law).
MultiPointResult cyclic_m_point_projective(const std::vector<ProjectivePoint>& points);

/// Decomposition of the three-point function into side lengths and phase.
/// Throws degenerate_triangle_error when a side leaves (1e-9, pi/2 - 1e-9).
TriangleDecomposition three_point_decompose(const OrthonormalBasis& basis, const ChartPoint& x,
                                            const ChartPoint& y, const ChartPoint& z);

}  // namespace csq
