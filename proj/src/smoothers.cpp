#include "igatwo/smoothers.hpp"

#include <algorithm>
#include <cmath>
#include <map>

namespace igatwo {

int BlockPlan::colour(int ix, int /*iy*/) const
{
    return ordering == BlockOrdering::three_colour ? ix % 3 : 0;
}

int half_width_for_block_size(int block_size)
{
    const int side = int(std::lround(std::sqrt(double(block_size))));
    require(side * side == block_size && side % 2 == 1,
            "block size must be the square of an odd number (1, 9, 25, 49, ...)");
    return side / 2;
}

Matrix extract_block(const SparseOperator& A, const std::vector<Index>& dofs)
{
    const Index n = Index(dofs.size());
    Matrix B = Matrix::Zero(n, n);
    for (Index a = 0; a < n; ++a) {
        for (SparseOperator::InnerIterator it(A, dofs[a]); it; ++it) {
            const auto pos = std::lower_bound(dofs.begin(), dofs.end(), Index(it.col()));
            if (pos != dofs.end() && *pos == it.col()) B(a, pos - dofs.begin()) = it.value();
        }
    }
    return B;
}

BlockPlan build_block_plan(const SparseOperator& A, int nx, int ny, int block_size,
                           BlockOrdering ordering, BlockBoundary boundary, bool share_factors)
{
    const int w = half_width_for_block_size(block_size);
    require(nx >= 2 * w + 1 && ny >= 2 * w + 1, "build_block_plan: grid smaller than a block");
    require(A.rows() == Index(nx) * ny && A.cols() == A.rows(),
            "build_block_plan: operator does not match the grid");
    if (ordering == BlockOrdering::three_colour && boundary == BlockBoundary::wrap)
        require(nx % 3 == 0, "build_block_plan: periodic three-colouring needs nx divisible by 3");

    BlockPlan plan;
    plan.nx = nx;
    plan.ny = ny;
    plan.half_width = w;
    plan.ordering = ordering;
    plan.boundary = boundary;

    const int ncolours = ordering == BlockOrdering::three_colour ? 3 : 1;
    for (int c = 0; c < ncolours; ++c)
        for (int iy = 0; iy < ny; ++iy)
            for (int ix = 0; ix < nx; ++ix)
                if (plan.colour(ix, iy) == c) plan.centres.push_back(Index(iy) * nx + ix);

    double scale = 0.0;
    for (Index i = 0; i < A.rows(); ++i) scale = std::max(scale, std::abs(A.coeff(i, i)));
    if (scale == 0.0) scale = 1.0;

    plan.offsets.push_back(0);
    std::map<std::vector<long long>, int> seen;
    std::vector<Index> dofs;
    for (const Index centre : plan.centres) {
        const int cx = int(centre % nx), cy = int(centre / nx);
        dofs.clear();
        for (int dy = -w; dy <= w; ++dy)
            for (int dx = -w; dx <= w; ++dx) {
                int x = cx + dx, y = cy + dy;
                if (boundary == BlockBoundary::wrap) {
                    x = (x + nx) % nx;
                    y = (y + ny) % ny;
                } else if (x < 0 || x >= nx || y < 0 || y >= ny) {
                    continue;
                }
                dofs.push_back(Index(y) * nx + x);
            }
        std::sort(dofs.begin(), dofs.end());
        plan.members.insert(plan.members.end(), dofs.begin(), dofs.end());
        plan.offsets.push_back(Index(plan.members.size()));

        const Matrix B = extract_block(A, dofs);
        int id = -1;
        std::vector<long long> key;
        if (share_factors) {
            key.reserve(B.size() + 1);
            key.push_back(B.rows());
            for (Index k = 0; k < B.size(); ++k) key.push_back(std::llround(B.data()[k] / scale * 1e11));
            const auto it = seen.find(key);
            if (it != seen.end()) id = it->second;
        }
        if (id < 0) {
            Eigen::LLT<Matrix> llt(B);
            if (llt.info() != Eigen::Success)
                throw NumericalError("build_block_plan: block matrix is not positive definite");
            id = int(plan.factors.size());
            plan.factors.push_back(std::move(llt));
            if (share_factors) seen.emplace(std::move(key), id);
        }
        plan.factor_of.push_back(id);
    }
    return plan;
}

BlockPlan build_block_plan(const SplineSpace2D& space, const SparseOperator& A, int block_size,
                           BlockOrdering ordering, bool share_factors)
{
    return build_block_plan(A, space.nx(), space.ny(), block_size, ordering, BlockBoundary::clip,
                            share_factors);
}

namespace {

inline double row_dot(const SparseOperator& A, Index row, const Vector& x)
{
    const int* outer = A.outerIndexPtr();
    const int* inner = A.innerIndexPtr();
    const double* val = A.valuePtr();
    const int* nnz = A.innerNonZeroPtr();  // set only in uncompressed mode
    const int end = nnz ? outer[row] + nnz[row] : outer[row + 1];
    double s = 0.0;
    for (int k = outer[row]; k < end; ++k) s += val[k] * x[inner[k]];
    return s;
}

inline double diagonal_of(const SparseOperator& A, Index row)
{
    for (SparseOperator::InnerIterator it(A, row); it; ++it)
        if (it.col() == row) return it.value();
    return 0.0;
}

} // namespace

void schwarz_sweep(const BlockPlan& plan, const SparseOperator& A, Vector& x, const Vector& b)
{
    require(x.size() == A.rows() && b.size() == A.rows(), "schwarz_sweep: vector size mismatch");
    Index max_block = 0;
    for (Index k = 0; k < plan.num_blocks(); ++k) max_block = std::max(max_block, plan.block_size(k));
    Vector buffer(max_block);
    for (Index k = 0; k < plan.num_blocks(); ++k) {
        const Index n = plan.block_size(k);
        const Index* dofs = plan.members.data() + plan.offsets[k];
        Eigen::Map<Vector> r(buffer.data(), n);
        for (Index a = 0; a < n; ++a) r[a] = b[dofs[a]] - row_dot(A, dofs[a], x);
        plan.factors[plan.factor_of[k]].solveInPlace(r);
        for (Index a = 0; a < n; ++a) x[dofs[a]] += r[a];
    }
}

SweepStats schwarz_sweep_stats(const BlockPlan& plan, const SparseOperator& A, Vector& x,
                               const Vector& b)
{
    SweepStats s;
    s.residual_before = (b - A * x).norm();
    schwarz_sweep(plan, A, x, b);
    s.residual_after = (b - A * x).norm();
    return s;
}

void rb_gs_sweep(const SparseOperator& A, int nx, int ny, Vector& x, const Vector& b)
{
    require(A.rows() == Index(nx) * ny, "rb_gs_sweep: operator does not match the grid");
    for (int colour = 0; colour < 2; ++colour)
        for (int iy = 0; iy < ny; ++iy)
            for (int ix = (iy + colour) % 2; ix < nx; ix += 2) {
                const Index i = Index(iy) * nx + ix;
                const double d = diagonal_of(A, i);
                if (d == 0.0) throw NumericalError("rb_gs_sweep: zero diagonal");
                x[i] += (b[i] - row_dot(A, i, x)) / d;
            }
}

void gs_sweep(const SparseOperator& A, Vector& x, const Vector& b)
{
    for (Index i = 0; i < A.rows(); ++i) {
        const double d = diagonal_of(A, i);
        if (d == 0.0) throw NumericalError("gs_sweep: zero diagonal");
        x[i] += (b[i] - row_dot(A, i, x)) / d;
    }
}

} // namespace igatwo
