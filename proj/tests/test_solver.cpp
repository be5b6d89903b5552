#include "doctest.h"

#include "igatwo/assembly.hpp"
#include "igatwo/problems.hpp"
#include "igatwo/solver.hpp"
#include "igatwo/sparse.hpp"

using namespace igatwo;

namespace {

TwoLevelConfig config(int p, int p_low, CoarseStrategy coarse)
{
    TwoLevelConfig c;
    c.p = p;
    c.p_low = p_low;
    c.coarse = coarse;
    return c;
}

} // namespace

TEST_CASE("default block sizes")
{
    const int want[] = {9, 9, 9, 25, 25, 49, 49};
    for (int p = 2; p <= 8; ++p) CHECK(default_block_size(p) == want[p - 2]);
}

TEST_CASE("hierarchy dimensions")
{
    const GeometryMap g = identity_square();
    CHECK(build_hierarchy(config(2, 1, CoarseStrategy::direct), make_space_2d(2, 16), g).coarse_dim() == 225);
    CHECK(build_hierarchy(config(3, 1, CoarseStrategy::aggressive_direct), make_space_2d(3, 16), g).coarse_dim() == 49);

    const Hierarchy v = build_hierarchy(config(2, 1, CoarseStrategy::vcycle), make_space_2d(2, 64), g);
    REQUIRE(v.levels.size() == 4);
    const int cells[] = {64, 32, 16, 8};
    for (int k = 0; k < 4; ++k) CHECK(v.levels[k].cells == cells[k]);
    for (int k = 0; k < 3; ++k) CHECK(v.levels[k].to_coarser.fine_dim() == v.levels[k].A.rows());

    CHECK_THROWS_AS(build_hierarchy(config(2, 1, CoarseStrategy::aggressive_vcycle), make_space_2d(2, 15), g),
                    ParameterError);
    CHECK_THROWS_AS(build_hierarchy(config(2, 3, CoarseStrategy::direct), make_space_2d(2, 16), g),
                    ParameterError);
}

TEST_CASE("zero stays zero")
{
    const Hierarchy h = build_hierarchy(config(3, 1, CoarseStrategy::aggressive_vcycle), make_space_2d(3, 32),
                                        identity_square());
    Vector x = Vector::Zero(h.A.rows());
    two_level_cycle(h, x, Vector::Zero(h.A.rows()));
    CHECK(x.isZero(0.0));
}

TEST_CASE("exact solution is a fixed point")
{
    const PoissonProblem sq = square_problem(), ann = annulus_problem();
    for (const CoarseStrategy s : {CoarseStrategy::direct, CoarseStrategy::vcycle,
                                   CoarseStrategy::aggressive_vcycle, CoarseStrategy::aggressive_direct})
        for (const PoissonProblem* pr : {&sq, &ann}) {
            const int p = 4;
            const SplineSpace2D space = make_space_2d(p, 32);
            const Hierarchy h = build_hierarchy(config(p, pr->p_low, s), space, pr->geom);
            const Vector b = assemble_load(space, pr->geom, pr->rhs);
            Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> ldlt(h.A);
            Vector x = ldlt.solve(b);
            two_level_cycle(h, x, b);
            CHECK(residual_norm(h.A, x, b) / b.norm() <= 1e-12);
        }
}

TEST_CASE("equal degrees with a direct coarse solve are exact")
{
    const PoissonProblem pr = square_problem();
    const SplineSpace2D space = make_space_2d(2, 16);
    const Hierarchy h = build_hierarchy(config(2, 2, CoarseStrategy::direct), space, pr.geom);
    const SolveReport rep = solve(h, assemble_load(space, pr.geom, pr.rhs));
    CHECK(rep.converged);
    CHECK(rep.iterations == 1);

    CHECK(estimate_asymptotic_rate(h, 30) <= 1e-8);
}

TEST_CASE("solve reports")
{
    const PoissonProblem pr = square_problem();
    const SplineSpace2D space = make_space_2d(3, 64);
    const Vector b = assemble_load(space, pr.geom, pr.rhs);
    TwoLevelConfig c = config(3, 1, CoarseStrategy::aggressive_vcycle);
    c.seed = 42;
    const Hierarchy h = build_hierarchy(c, space, pr.geom);
    const SolveReport a = solve(h, b), again = solve(h, b);
    CHECK(a.converged);
    CHECK(a.relative_residual() <= 1e-8);
    CHECK(a.residuals.size() == std::size_t(a.iterations) + 1);
    CHECK(a.rate > 0.0);
    CHECK(a.rate < 1.0);
    CHECK(a.iterations == again.iterations);
    CHECK(a.residuals == again.residuals);
    CHECK(a.solution == again.solution);
    CHECK(l2_error(space, pr.geom, a.solution, pr.exact) <= 1e-6);

    CHECK(random_vector(10, 3) == random_vector(10, 3));
    CHECK(random_vector(10, 3) != random_vector(10, 4));
    CHECK(random_vector(1000, 3).minCoeff() >= 0.0);
    CHECK(random_vector(1000, 3).maxCoeff() < 1.0);
}

TEST_CASE("measured rates")
{
    const PoissonProblem pr = square_problem();
    auto rate = [&](int p, int bs) {
        TwoLevelConfig c = config(p, 1, CoarseStrategy::direct);
        c.block_size = bs;
        c.ordering = BlockOrdering::lexicographic;
        return measure_rate(build_hierarchy(c, make_space_2d(p, 64), pr.geom));
    };
    const RateEstimate r2 = rate(2, 9);
    CHECK(r2.ratios.size() == 100);
    CHECK(r2.sustained >= r2.last);
    CHECK(std::abs(r2.sustained - 0.1212) <= 0.05);
    CHECK(std::abs(rate(4, 25).sustained - 0.1466) <= 0.05);
    CHECK_THROWS_AS(measure_rate(build_hierarchy(config(2, 1, CoarseStrategy::direct), make_space_2d(2, 8), pr.geom), 10),
                    ParameterError);
}
