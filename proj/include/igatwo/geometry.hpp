#ifndef IGATWO_GEOMETRY_HPP
#define IGATWO_GEOMETRY_HPP

#include "igatwo/spline.hpp"

#include <vector>

namespace igatwo {

using Point2 = Eigen::Vector2d;
using Jacobian2 = Eigen::Matrix2d;

/// Parametrization F : [0,1]^2 -> Omega. Either the identity on the unit
/// square or a NURBS map sum B_ij R_ij(xi, eta).
struct GeometryMap {
    enum class Kind { identity_square, nurbs };

    Kind kind = Kind::identity_square;
    KnotVector xi_knots;
    KnotVector eta_knots;
    /// Control points and weights, index i + j * (number of xi functions).
    std::vector<Point2> control;
    std::vector<double> weights;

    bool is_identity() const { return kind == Kind::identity_square; }
    int num_xi() const { return xi_knots.num_basis(); }
    int num_eta() const { return eta_knots.num_basis(); }
};

struct GeometryPoint {
    Point2 x;
    Jacobian2 jacobian;  ///< columns: dF/dxi, dF/deta
};

GeometryMap identity_square();

/// Exact degree-2 NURBS quarter annulus {r <= |x| <= R, x, y >= 0}.
/// xi runs along the arc from the y-axis to the x-axis, eta runs radially
/// from r to R; F(0,0) = (0,r), F(1,0) = (r,0), F(0,1) = (0,R), F(1,1) = (R,0).
GeometryMap preset_quarter_annulus(double r, double R);

/// Uniform h-refinement to `cells` subintervals per direction by knot
/// insertion on the weighted control points; the map itself is unchanged.
GeometryMap refine_geometry(const GeometryMap& geom, int cells);

double eval_nurbs_basis_2d(const GeometryMap& geom, int i, int j, double xi, double eta);

Point2 geometry_eval(const GeometryMap& geom, double xi, double eta);
Jacobian2 geometry_jacobian(const GeometryMap& geom, double xi, double eta);
GeometryPoint geometry_point(const GeometryMap& geom, double xi, double eta);

} // namespace igatwo

#endif // IGATWO_GEOMETRY_HPP
