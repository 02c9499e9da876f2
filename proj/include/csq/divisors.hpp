#pragma once

#include <complex>
#include <vector>

#include "csq/coherent.hpp"

namespace csq {

/// Effective divisor on P^1: points with multiplicities summing to m.
struct DivisorPoint {
  ChartPoint point;
  int multiplicity = 0;
};

struct Divisor {
  std::vector<DivisorPoint> points;

  int degree() const {
    int d = 0;
    for (const auto& p : points) d += p.multiplicity;
    return d;
  }
};

/// Polar divisor of the coherent vector at w on P^1: the zero divisor of
/// z -> <e_{s(z)}, e_{s(w)}>, equal to m * [-1/conj(w)] for finite
/// nonzero w, m * [infinity] for w = 0, and m * [0] for w = infinity.
/// Coefficients of the degree-<=m representing polynomial are recovered
/// by interpolation at the (m+1)-st roots of unity.
Divisor polar_divisor_p1(const OrthonormalBasis& basis, const ChartPoint& w);

/// True iff x lies on the polar divisor of y (symmetric): the normalized
/// kernel modulus is <= tol.
bool polar_membership(const OrthonormalBasis& basis, const ChartPoint& x, const ChartPoint& y,
                      double tol = 1e-10);

/// Vanishing order of z -> <e_{s(z)}, e_{s(x)}> at a root: multiplicity
/// counted by repeated synthetic division of the interpolated polynomial,
/// accepting quotients while the remainder stays below a relative 1e-8.
/// Throws not_a_root_error if the kernel does not vanish there.
int multiplicity_at(const OrthonormalBasis& basis, const ChartPoint& x, const ChartPoint& root);

}  // namespace csq
