#ifndef IGATWO_SOLVER_HPP
#define IGATWO_SOLVER_HPP

#include "igatwo/geometry.hpp"
#include "igatwo/smoothers.hpp"
#include "igatwo/spline.hpp"
#include "igatwo/transfer.hpp"

#include <cstdint>
#include <memory>
#include <vector>

namespace igatwo {

enum class CoarseStrategy {
    direct,             ///< exact solve with degree p_low on mesh h
    vcycle,             ///< one V(1,1) red-black Gauss-Seidel cycle, p_low on mesh h
    aggressive_vcycle,  ///< p_low on mesh 2h, one V(1,1) cycle
    aggressive_direct,  ///< p_low on mesh 2h, exact solve
};

bool is_aggressive(CoarseStrategy s);
bool uses_vcycle(CoarseStrategy s);

/// Schwarz block size used for degree p: 9 up to p = 4, 25 for p = 5, 6, 49 beyond.
int default_block_size(int p);

struct TwoLevelConfig {
    int p = 2;
    int p_low = 1;
    int block_size = 0;  ///< 0 selects default_block_size(p)
    BlockOrdering ordering = BlockOrdering::three_colour;
    int pre_steps = 1;
    int post_steps = 0;
    CoarseStrategy coarse = CoarseStrategy::direct;
    double tolerance = 1e-8;
    int max_iterations = 100;
    std::uint64_t seed = 1;
    int coarsest_cells = 8;  ///< V-cycles coarsen until m <= coarsest_cells

    int effective_block_size() const { return block_size > 0 ? block_size : default_block_size(p); }
};

/// One level of the coarse h-multigrid chain. `A` is the rediscretized
/// stiffness matrix times the accumulated restriction scaling.
struct CoarseLevel {
    int cells = 0;
    int nx = 0;
    SparseOperator A;
    TransferPair to_coarser;  ///< empty on the coarsest level
};

struct Hierarchy {
    TwoLevelConfig cfg;
    SplineSpace2D space;
    SparseOperator A;
    BlockPlan plan;
    TransferPair transfer;            ///< fine level -> first coarse level
    std::vector<CoarseLevel> levels;  ///< first coarse level, then its mesh coarsenings
    std::shared_ptr<const Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>>> coarsest;

    Index coarse_dim() const { return levels.front().A.rows(); }
};

Hierarchy build_hierarchy(const TwoLevelConfig& cfg, const SplineSpace2D& space,
                          const GeometryMap& geom);

/// Smoothing, defect restriction, coarse correction, prolongation, smoothing.
void two_level_cycle(const Hierarchy& hier, Vector& x, const Vector& b);

struct SolveReport {
    int iterations = 0;
    bool converged = false;
    std::vector<double> residuals;  ///< ||b - A x_k||_2, k = 0..iterations
    double rate = 0.0;              ///< geometric mean residual reduction per cycle
    double seconds = 0.0;
    Vector solution;

    double relative_residual() const { return residuals.back() / residuals.front(); }
};

/// Uniform [0,1) entries from a 64-bit Mersenne twister seeded with `seed`.
Vector random_vector(Index n, std::uint64_t seed);

/// Cycles from a random initial guess until ||r_k|| <= tol ||r_0||.
SolveReport solve(const Hierarchy& hier, const Vector& b);

struct RateEstimate {
    double sustained = 0.0;  ///< largest geometric mean over 10 consecutive ratios
    double last = 0.0;       ///< geometric mean of the final 10 ratios
    std::vector<double> ratios;
};

/// Residual reduction per cycle with b = 0 and a random initial guess,
/// renormalizing the iterate every cycle.
RateEstimate measure_rate(const Hierarchy& hier, int cycles = 100);

/// measure_rate(hier, cycles).sustained
double estimate_asymptotic_rate(const Hierarchy& hier, int cycles = 100);

} // namespace igatwo

#endif // IGATWO_SOLVER_HPP
