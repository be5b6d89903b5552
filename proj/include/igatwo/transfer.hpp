#ifndef IGATWO_TRANSFER_HPP
#define IGATWO_TRANSFER_HPP

#include "igatwo/geometry.hpp"
#include "igatwo/spline.hpp"

namespace igatwo {

/// Restriction (coarse x fine) and prolongation (fine x coarse).
///
/// `coarse_scale` is the factor applied to a rediscretized coarse stiffness
/// matrix when it is paired with this restriction: mesh restrictions average
/// (they preserve constants), so the coarse equation is written in the same
/// grid-normalized scaling, 2^-d per halving of h. For a variationally
/// consistent pair P, R with R = s P^T this makes (s A_H)^{-1} R = A_H^{-1} P^T.
struct TransferPair {
    enum class Kind { degree, mesh, composed };

    SparseOperator restriction;
    SparseOperator prolongation;
    Kind kind = Kind::degree;
    double coarse_scale = 1.0;

    Index fine_dim() const { return prolongation.rows(); }
    Index coarse_dim() const { return prolongation.cols(); }
};

/// L2-projection transfer between degree p and p_low on the same mesh,
/// with the coarse mass matrix replaced by its row-sum lumped diagonal D:
/// restriction = D^-1 M, prolongation = M^T D^-1, M = M_p^{p_low}.
/// Equal degrees give the identity pair (exact mass inverse).
TransferPair degree_restriction(const SplineSpace2D& fine, const SplineSpace2D& coarse,
                                const GeometryMap& geom);

/// Exact knot-insertion embedding of the constrained degree-p space on
/// `coarse_cells` subintervals into the one on 2 * coarse_cells;
/// restriction = P^T / 4.
TransferPair mesh_prolongation(int p, int coarse_cells);

/// Degree transfer at h followed by mesh transfer at degree p_low.
TransferPair compose_aggressive(const TransferPair& degree, const TransferPair& mesh);

} // namespace igatwo

#endif // IGATWO_TRANSFER_HPP
