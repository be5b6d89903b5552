#include "doctest.h"

#include "igatwo/assembly.hpp"
#include "igatwo/smoothers.hpp"
#include "igatwo/solver.hpp"
#include "igatwo/sparse.hpp"

#include <random>
#include <set>

using namespace igatwo;

namespace {

SparseOperator random_spd(int n, std::mt19937_64& gen)
{
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    const Matrix B = Matrix::NullaryExpr(n, n, [&] { return u(gen); });
    return to_sparse(B.transpose() * B + 0.05 * Matrix::Identity(n, n));
}

double energy(const SparseOperator& A, const Vector& e) { return e.dot(A * e); }

} // namespace

TEST_CASE("block counts on a small grid")
{
    const SparseOperator A = to_sparse(Matrix::Identity(25, 25));
    const BlockPlan plan = build_block_plan(A, 5, 5, 9, BlockOrdering::lexicographic);
    REQUIRE(plan.num_blocks() == 25);
    int full = 0, corners = 0;
    for (Index k = 0; k < plan.num_blocks(); ++k) {
        full += plan.block_size(k) == 9;
        corners += plan.block_size(k) == 4;
    }
    CHECK(full == 9);
    CHECK(corners == 4);
    CHECK_THROWS_AS(build_block_plan(A, 5, 5, 49, BlockOrdering::lexicographic), ParameterError);
    CHECK_THROWS_AS(build_block_plan(A, 5, 5, 16, BlockOrdering::lexicographic), ParameterError);
}

TEST_CASE("half widths")
{
    CHECK(half_width_for_block_size(1) == 0);
    CHECK(half_width_for_block_size(9) == 1);
    CHECK(half_width_for_block_size(25) == 2);
    CHECK(half_width_for_block_size(49) == 3);
}

TEST_CASE("three-colour ordering")
{
    const SparseOperator A = assemble_stiffness(make_space_2d(2, 10), identity_square());
    const BlockPlan plan = build_block_plan(A, 10, 10, 9, BlockOrdering::three_colour);
    std::set<Index> seen(plan.centres.begin(), plan.centres.end());
    CHECK(seen.size() == 100);
    int last = -1;
    for (const Index c : plan.centres) {
        const int col = plan.colour(int(c % 10), int(c / 10));
        CHECK(col >= last);
        last = col;
    }
    CHECK(plan.colour(4, 7) == 1);
}

TEST_CASE("shared factorizations follow the boundary patterns")
{
    const SparseOperator A1 = assemble_stiffness(make_space_2d(1, 66), identity_square());
    CHECK(build_block_plan(A1, 65, 65, 9, BlockOrdering::three_colour).factors.size() <= 9);

    // degree 2: the first constrained row also differs from the interior one
    const SparseOperator A = assemble_stiffness(make_space_2d(2, 64), identity_square());
    const BlockPlan plan = build_block_plan(A, 64, 64, 9, BlockOrdering::three_colour);
    CHECK(plan.factors.size() == 25);
    const BlockPlan own = build_block_plan(A, 64, 64, 9, BlockOrdering::three_colour, BlockBoundary::clip, false);
    CHECK(own.factors.size() == 64 * 64);

    Vector x1 = random_vector(A.rows(), 4), x2 = x1;
    const Vector b = Vector::Ones(A.rows());
    schwarz_sweep(plan, A, x1, b);
    schwarz_sweep(own, A, x2, b);
    CHECK((x1 - x2).cwiseAbs().maxCoeff() <= 1e-10);
}

TEST_CASE("extracted blocks are principal submatrices")
{
    const SparseOperator A = assemble_stiffness(make_space_2d(3, 8), identity_square());
    const Matrix dense(A);
    const std::vector<Index> dofs = {0, 3, 4, 17, 35};
    const Matrix B = extract_block(A, dofs);
    for (std::size_t i = 0; i < dofs.size(); ++i)
        for (std::size_t j = 0; j < dofs.size(); ++j) CHECK(B(i, j) == dense(dofs[i], dofs[j]));
}

TEST_CASE("a block covering the grid solves exactly")
{
    const SparseOperator A = assemble_stiffness(make_space_2d(2, 7), identity_square());
    const BlockPlan plan = build_block_plan(A, 7, 7, 49, BlockOrdering::lexicographic);
    Vector x = Vector::Zero(49);
    const Vector b = random_vector(49, 2);
    const SweepStats st = schwarz_sweep_stats(plan, A, x, b);
    CHECK(st.residual_before > 0.0);
    CHECK(st.residual_after <= 1e-12 * st.residual_before);
}

TEST_CASE("unit blocks reproduce Gauss-Seidel")
{
    const SparseOperator A = assemble_stiffness(make_space_2d(3, 9), identity_square());
    const BlockPlan plan = build_block_plan(A, 10, 10, 1, BlockOrdering::lexicographic);
    Vector x1 = random_vector(100, 8), x2 = x1;
    const Vector b = random_vector(100, 9);
    schwarz_sweep(plan, A, x1, b);
    gs_sweep(A, x2, b);
    CHECK((x1 - x2).cwiseAbs().maxCoeff() <= 1e-13);
}

TEST_CASE("pointwise Gauss-Seidel")
{
    SparseOperator one(1, 1);
    one.insert(0, 0) = 4.0;
    Vector x = Vector::Zero(1);
    gs_sweep(one, x, Vector::Constant(1, 2.0));
    CHECK(x[0] == doctest::Approx(0.5));

    const SparseOperator D = to_sparse(Vector::LinSpaced(16, 1.0, 16.0).asDiagonal().toDenseMatrix());
    const Vector b = random_vector(16, 1);
    Vector y = Vector::Zero(16);
    rb_gs_sweep(D, 4, 4, y, b);
    CHECK(residual_norm(D, y, b) <= 1e-14);

    SparseOperator Z(2, 2);
    Z.insert(0, 1) = 1.0;
    Z.insert(1, 0) = 1.0;
    Vector z = Vector::Zero(2);
    CHECK_THROWS_AS(gs_sweep(Z, z, Vector::Ones(2)), NumericalError);
}

TEST_CASE("Schwarz sweeps never increase the energy error")
{
    std::mt19937_64 gen(2024);
    for (int inst = 0; inst < 20; ++inst) {
        const BlockOrdering ord = inst % 4 < 2 ? BlockOrdering::lexicographic : BlockOrdering::three_colour;
        const int nx = 6, ny = 5;
        const SparseOperator A = random_spd(nx * ny, gen);
        const int bs = inst % 2 ? 9 : 25;
        const BlockPlan plan = build_block_plan(A, nx, ny, bs, ord, BlockBoundary::clip, false);
        Vector e = random_vector(A.rows(), inst + 100);
        const Vector zero = Vector::Zero(A.rows());
        double prev = energy(A, e);
        for (int sweep = 0; sweep < 5; ++sweep) {
            schwarz_sweep(plan, A, e, zero);
            const double now = energy(A, e);
            CHECK(now <= prev * (1.0 + 1e-12));
            prev = now;
        }
    }
}
