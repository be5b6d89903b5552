#ifndef IGATWO_QUADRATURE_HPP
#define IGATWO_QUADRATURE_HPP

#include "igatwo/common.hpp"

namespace igatwo {

/// Gauss-Legendre rule on [-1,1], exact for polynomials of degree 2n-1.
struct GaussRule {
    Vector points;
    Vector weights;
};

/// Golub-Welsch construction from the Jacobi matrix of the Legendre recurrence.
GaussRule gauss_legendre(int n);

/// Points and weights mapped to the interval [a, b].
GaussRule gauss_legendre(int n, double a, double b);

} // namespace igatwo

#endif // IGATWO_QUADRATURE_HPP
