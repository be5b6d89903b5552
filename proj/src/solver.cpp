#include "igatwo/solver.hpp"
#include "igatwo/assembly.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <random>

namespace igatwo {

bool is_aggressive(CoarseStrategy s)
{
    return s == CoarseStrategy::aggressive_vcycle || s == CoarseStrategy::aggressive_direct;
}

bool uses_vcycle(CoarseStrategy s)
{
    return s == CoarseStrategy::vcycle || s == CoarseStrategy::aggressive_vcycle;
}

int default_block_size(int p)
{
    if (p <= 4) return 9;
    if (p <= 6) return 25;
    return 49;
}

Hierarchy build_hierarchy(const TwoLevelConfig& cfg, const SplineSpace2D& space,
                          const GeometryMap& geom)
{
    require(cfg.p == space.degree(), "build_hierarchy: configuration degree differs from the space");
    require(cfg.p_low >= 1 && cfg.p_low <= cfg.p, "build_hierarchy: need 1 <= p_low <= p");
    require(cfg.pre_steps >= 0 && cfg.post_steps >= 0, "build_hierarchy: negative smoothing steps");

    Hierarchy h;
    h.cfg = cfg;
    h.space = space;
    h.A = assemble_stiffness(space, geom);
    h.plan = build_block_plan(space, h.A, cfg.effective_block_size(), cfg.ordering, geom.is_identity());

    const int m = space.cells();
    const SplineSpace2D coarse_h = make_space_2d(cfg.p_low, m);
    const TransferPair degree = degree_restriction(space, coarse_h, geom);

    int cells = m;
    double scale = 1.0;
    if (is_aggressive(cfg.coarse)) {
        require(m % 2 == 0, "build_hierarchy: aggressive coarsening needs an even subinterval count");
        cells = m / 2;
        h.transfer = compose_aggressive(degree, mesh_prolongation(cfg.p_low, cells));
    } else {
        h.transfer = degree;
    }
    scale = h.transfer.coarse_scale;

    auto add_level = [&](int c, double s) {
        CoarseLevel lvl;
        lvl.cells = c;
        const SplineSpace2D sp = make_space_2d(cfg.p_low, c);
        lvl.nx = sp.nx();
        lvl.A = s * assemble_stiffness(sp, geom);
        h.levels.push_back(std::move(lvl));
    };
    add_level(cells, scale);

    if (uses_vcycle(cfg.coarse)) {
        while (cells > cfg.coarsest_cells) {
            require(cells % 2 == 0, "build_hierarchy: subinterval count not divisible down to the coarsest level");
            cells /= 2;
            TransferPair mesh = mesh_prolongation(cfg.p_low, cells);
            scale *= mesh.coarse_scale;
            h.levels.back().to_coarser = std::move(mesh);
            add_level(cells, scale);
        }
    }

    auto ldlt = std::make_shared<Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>>>();
    ldlt->compute(Eigen::SparseMatrix<double>(h.levels.back().A));
    if (ldlt->info() != Eigen::Success)
        throw NumericalError("build_hierarchy: coarsest-level factorization failed");
    h.coarsest = std::move(ldlt);
    return h;
}

namespace {

void vcycle(const Hierarchy& h, std::size_t k, Vector& e, const Vector& rhs)
{
    const CoarseLevel& lvl = h.levels[k];
    if (k + 1 == h.levels.size()) {
        e = h.coarsest->solve(rhs);
        return;
    }
    const int ny = int(lvl.A.rows() / lvl.nx);
    rb_gs_sweep(lvl.A, lvl.nx, ny, e, rhs);
    const Vector r = rhs - lvl.A * e;
    const Vector rc = lvl.to_coarser.restriction * r;
    Vector ec = Vector::Zero(rc.size());
    vcycle(h, k + 1, ec, rc);
    e += lvl.to_coarser.prolongation * ec;
    rb_gs_sweep(lvl.A, lvl.nx, ny, e, rhs);
}

} // namespace

void two_level_cycle(const Hierarchy& h, Vector& x, const Vector& b)
{
    for (int s = 0; s < h.cfg.pre_steps; ++s) schwarz_sweep(h.plan, h.A, x, b);
    const Vector d = b - h.A * x;
    const Vector dc = h.transfer.restriction * d;
    Vector e;
    if (uses_vcycle(h.cfg.coarse)) {
        e = Vector::Zero(dc.size());
        vcycle(h, 0, e, dc);
    } else {
        e = h.coarsest->solve(dc);
    }
    x += h.transfer.prolongation * e;
    for (int s = 0; s < h.cfg.post_steps; ++s) schwarz_sweep(h.plan, h.A, x, b);
}

Vector random_vector(Index n, std::uint64_t seed)
{
    std::mt19937_64 gen(seed);
    Vector v(n);
    for (Index i = 0; i < n; ++i) v[i] = double(gen() >> 11) * 0x1.0p-53;
    return v;
}

SolveReport solve(const Hierarchy& h, const Vector& b)
{
    require(b.size() == h.A.rows(), "solve: right-hand side size mismatch");
    const auto start = std::chrono::steady_clock::now();
    SolveReport rep;
    Vector x = random_vector(b.size(), h.cfg.seed);
    rep.residuals.push_back((b - h.A * x).norm());
    const double target = h.cfg.tolerance * rep.residuals.front();
    while (rep.residuals.back() > target && rep.iterations < h.cfg.max_iterations) {
        two_level_cycle(h, x, b);
        ++rep.iterations;
        const double r = (b - h.A * x).norm();
        if (!std::isfinite(r)) throw NumericalError("solve: residual is not finite");
        rep.residuals.push_back(r);
    }
    rep.converged = rep.residuals.back() <= target;
    rep.rate = rep.iterations > 0 ? std::pow(rep.relative_residual(), 1.0 / rep.iterations) : 0.0;
    rep.solution = std::move(x);
    rep.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return rep;
}

RateEstimate measure_rate(const Hierarchy& h, int cycles)
{
    require(cycles >= 30, "measure_rate: need at least 30 cycles");
    const Vector b = Vector::Zero(h.A.rows());
    Vector x = random_vector(h.A.rows(), h.cfg.seed);
    x /= (h.A * x).norm();
    RateEstimate est;
    for (int k = 0; k < cycles; ++k) {
        two_level_cycle(h, x, b);
        const double r = (h.A * x).norm();
        if (!std::isfinite(r)) throw NumericalError("measure_rate: residual is not finite");
        est.ratios.push_back(r);
        if (r == 0.0) break;
        x /= r;
    }
    const std::size_t window = std::min<std::size_t>(10, est.ratios.size());
    auto mean_from = [&](std::size_t first) {
        double log_sum = 0.0;
        for (std::size_t k = first; k < first + window; ++k) {
            if (est.ratios[k] == 0.0) return 0.0;
            log_sum += std::log(est.ratios[k]);
        }
        return std::exp(log_sum / double(window));
    };
    for (std::size_t first = 0; first + window <= est.ratios.size(); ++first)
        est.sustained = std::max(est.sustained, mean_from(first));
    est.last = mean_from(est.ratios.size() - window);
    return est;
}

double estimate_asymptotic_rate(const Hierarchy& h, int cycles)
{
    return measure_rate(h, cycles).sustained;
}

} // namespace igatwo
