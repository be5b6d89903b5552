#ifndef IGATWO_ASSEMBLY_HPP
#define IGATWO_ASSEMBLY_HPP

#include "igatwo/geometry.hpp"
#include "igatwo/spline.hpp"

#include <functional>

namespace igatwo {

using ScalarField = std::function<double(const Point2&)>;

/// Gauss points per span and direction: max(p_row, p_col) + 1 on the identity
/// square, two more on NURBS geometry, plus `extra_points`.
struct AssemblyOptions {
    int extra_points = 0;
    /// Assemble tensor-product operators on the identity square from 1D factors.
    bool tensor_fast_path = true;
};

/// 1D operators on [0,1] (dense, used as tensor factors and for checks).
Matrix assemble_stiffness_1d(const SplineSpace1D& space);
Matrix assemble_mass_1d(const SplineSpace1D& row, const SplineSpace1D& col);

/// a(phi_j, phi_i) = int grad phi_j . grad phi_i over F([0,1]^2).
SparseOperator assemble_stiffness(const SplineSpace2D& space, const GeometryMap& geom,
                                  const AssemblyOptions& opts = {});

/// (phi_j^col, phi_i^row); both spaces must share the mesh.
SparseOperator assemble_mass(const SplineSpace2D& row, const SplineSpace2D& col,
                             const GeometryMap& geom, const AssemblyOptions& opts = {});

/// (f, phi_i).
Vector assemble_load(const SplineSpace2D& space, const GeometryMap& geom, const ScalarField& f,
                     const AssemblyOptions& opts = {});

/// || u_h - u ||_{L2(Omega)} with p+3 Gauss points per span and direction.
double l2_error(const SplineSpace2D& space, const GeometryMap& geom, const Vector& coeffs,
                const ScalarField& exact);

} // namespace igatwo

#endif // IGATWO_ASSEMBLY_HPP
