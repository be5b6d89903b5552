#ifndef IGATWO_SMOOTHERS_HPP
#define IGATWO_SMOOTHERS_HPP

#include "igatwo/common.hpp"
#include "igatwo/spline.hpp"

#include <vector>

namespace igatwo {

/// three_colour: centres grouped by ix mod 3 (vertical stripes), colours in
/// ascending order, lexicographic within a colour.
enum class BlockOrdering { lexicographic, three_colour };
enum class BlockBoundary { clip, wrap };

/// Point-centred overlapping blocks on an nx x ny coefficient grid (dof
/// iy * nx + ix). Every grid point owns the (2w+1)^2 window around it,
/// clipped at the grid boundary or wrapped periodically.
struct BlockPlan {
    int nx = 0;
    int ny = 0;
    int half_width = 1;
    BlockOrdering ordering = BlockOrdering::lexicographic;
    BlockBoundary boundary = BlockBoundary::clip;

    std::vector<Index> centres;    ///< centre dof per sweep position
    std::vector<Index> offsets;    ///< block k owns members[offsets[k] .. offsets[k+1])
    std::vector<Index> members;    ///< sorted dofs of each block
    std::vector<int> factor_of;    ///< block k -> index into factors
    std::vector<Eigen::LLT<Matrix>> factors;

    Index num_blocks() const { return Index(centres.size()); }
    Index block_size(Index k) const { return offsets[k + 1] - offsets[k]; }
    int colour(int ix, int iy) const;
};

/// Number of unknowns per full block -> half width w: 1 -> 0, 9 -> 1, 25 -> 2, 49 -> 3.
int half_width_for_block_size(int block_size);

/// Blocks and their dense Cholesky factors V_B A V_B^T. With share_factors,
/// blocks whose matrices agree to ~1e-11 relative reuse one factorization.
BlockPlan build_block_plan(const SparseOperator& A, int nx, int ny, int block_size,
                           BlockOrdering ordering, BlockBoundary boundary = BlockBoundary::clip,
                           bool share_factors = true);

BlockPlan build_block_plan(const SplineSpace2D& space, const SparseOperator& A, int block_size,
                           BlockOrdering ordering, bool share_factors = true);

/// Dense principal submatrix of A on the given (sorted) dofs.
Matrix extract_block(const SparseOperator& A, const std::vector<Index>& dofs);

struct SweepStats {
    double residual_before = 0.0;
    double residual_after = 0.0;
};

/// One multiplicative Schwarz sweep: for every block in plan order,
/// x_B += (A_B)^-1 (b - A x)_B with the current x.
void schwarz_sweep(const BlockPlan& plan, const SparseOperator& A, Vector& x, const Vector& b);
SweepStats schwarz_sweep_stats(const BlockPlan& plan, const SparseOperator& A, Vector& x,
                               const Vector& b);

/// Pointwise Gauss-Seidel over the red points ((ix+iy) even), then the black ones.
void rb_gs_sweep(const SparseOperator& A, int nx, int ny, Vector& x, const Vector& b);

/// Pointwise Gauss-Seidel in dof order.
void gs_sweep(const SparseOperator& A, Vector& x, const Vector& b);

} // namespace igatwo

#endif // IGATWO_SMOOTHERS_HPP
