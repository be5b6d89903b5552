#ifndef IGATWO_PROBLEMS_HPP
#define IGATWO_PROBLEMS_HPP

#include "igatwo/assembly.hpp"
#include "igatwo/geometry.hpp"

#include <string>

namespace igatwo {

/// Poisson test problem -lap u = f with u = 0 on the boundary.
struct PoissonProblem {
    std::string name;
    GeometryMap geom;
    ScalarField rhs;
    ScalarField exact;
    int p_low = 1;  ///< lowest degree that represents the geometry
};

/// Unit square, u = sin(pi x) sin(pi y), f = 2 pi^2 u.
PoissonProblem square_problem();

/// Quarter annulus r <= |x| <= R, u = sin(pi x) sin(pi y) (|x|^2 - r^2)(|x|^2 - R^2).
PoissonProblem annulus_problem(double r = 0.3, double R = 0.5);

} // namespace igatwo

#endif // IGATWO_PROBLEMS_HPP
