#include "igatwo/experiments.hpp"
#include "igatwo/assembly.hpp"
#include "igatwo/reference.hpp"

#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>

namespace igatwo {

namespace {

constexpr double factor_tolerance = 0.05;
constexpr int iteration_tolerance = 1;

std::string fixed(double v, int digits)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", digits, v);
    return buf;
}

std::string scientific(double v)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.4e", v);
    return buf;
}

std::string yes_no(bool b) { return b ? "yes" : "no"; }

} // namespace

std::string format_factor(double v)
{
    if (!std::isfinite(v)) return "nan";
    std::ostringstream os;
    os.precision(4);
    os << v;
    return os.str();
}

int RunConfig::effective_p_low() const
{
    if (p_low > 0) return p_low;
    return preset == "annulus" ? 2 : 1;
}

int RunConfig::effective_block_size() const
{
    return block_size > 0 ? block_size : default_block_size(p);
}

CoarseStrategy RunConfig::effective_coarse() const
{
    if (coarse) return *coarse;
    return command == "solve" ? CoarseStrategy::aggressive_vcycle : CoarseStrategy::direct;
}

BlockOrdering RunConfig::effective_ordering() const
{
    if (ordering) return *ordering;
    return command == "solve" ? BlockOrdering::three_colour : BlockOrdering::lexicographic;
}

void validate(const RunConfig& cfg)
{
    const std::string& c = cfg.command;
    require(c == "solve" || c == "rate" || c == "lfa" || c == "reproduce",
            "command: expected solve, rate, lfa or reproduce, got '" + c + "'");
    require(cfg.preset == "square" || cfg.preset == "annulus",
            "preset: expected square or annulus, got '" + cfg.preset + "'");
    require(cfg.p >= 1 && cfg.p <= 12, "p: expected 1..12");
    const int pl = cfg.effective_p_low();
    if (cfg.preset == "square") require(pl == 1, "p_low: the square preset uses p_low = 1");
    if (cfg.preset == "annulus") {
        require(pl == 2, "p_low: the annulus preset uses p_low = 2");
        if (c != "lfa") require(cfg.p >= 3, "p: the annulus preset needs p >= 3");
    }
    require(pl <= cfg.p || c == "lfa", "p_low: must not exceed p");
    require(cfg.m >= 2, "m: expected at least 2 subintervals");
    const int bs = cfg.effective_block_size();
    require(bs == 1 || bs == 9 || bs == 25 || bs == 49, "block: expected 9, 25 or 49");
    require(cfg.n_torus >= 12 && cfg.n_torus % 6 == 0, "n-torus: expected a multiple of 6, at least 12");
    require(cfg.cycles >= 30, "cycles: expected at least 30");
    require(cfg.table >= 1 && cfg.table <= 5, "table: expected 1..5");
    if (is_aggressive(cfg.effective_coarse()) && c != "lfa")
        require(cfg.m % 2 == 0, "m: aggressive coarsening needs an even subinterval count");
}

void ResultTable::add_row(std::vector<std::string> row)
{
    require(row.size() == header.size(), "ResultTable: row width differs from the header");
    rows.push_back(std::move(row));
}

void ResultTable::write_csv(std::ostream& os) const
{
    auto line = [&os](const std::vector<std::string>& cells) {
        for (std::size_t i = 0; i < cells.size(); ++i) os << (i ? "," : "") << cells[i];
        os << '\n';
    };
    line(header);
    for (const auto& r : rows) line(r);
}

PoissonProblem make_problem(const std::string& preset)
{
    if (preset == "square") return square_problem();
    if (preset == "annulus") return annulus_problem();
    throw ParameterError("preset: expected square or annulus, got '" + preset + "'");
}

CoarseStrategy parse_coarse(const std::string& s)
{
    if (s == "direct") return CoarseStrategy::direct;
    if (s == "vcycle") return CoarseStrategy::vcycle;
    if (s == "aggressive") return CoarseStrategy::aggressive_vcycle;
    if (s == "aggressive-direct") return CoarseStrategy::aggressive_direct;
    throw ParameterError("coarse: expected direct, vcycle, aggressive or aggressive-direct, got '" + s + "'");
}

BlockOrdering parse_ordering(const std::string& s)
{
    if (s == "lex") return BlockOrdering::lexicographic;
    if (s == "colour" || s == "color") return BlockOrdering::three_colour;
    throw ParameterError("ordering: expected lex or colour, got '" + s + "'");
}

LfaVariant parse_variant(const std::string& s)
{
    if (s == "smoother") return LfaVariant::smoother;
    if (s == "two-grid") return LfaVariant::two_grid;
    if (s == "three-grid") return LfaVariant::three_grid;
    if (s == "aggressive" || s == "two-grid-aggressive") return LfaVariant::two_grid_aggressive;
    throw ParameterError("variant: expected smoother, two-grid, three-grid or aggressive, got '" + s + "'");
}

Scale parse_scale(const std::string& s)
{
    if (s == "desk") return Scale::desk;
    if (s == "full") return Scale::full;
    throw ParameterError("scale: expected desk or full, got '" + s + "'");
}

std::string to_string(CoarseStrategy s)
{
    switch (s) {
    case CoarseStrategy::direct: return "direct";
    case CoarseStrategy::vcycle: return "vcycle";
    case CoarseStrategy::aggressive_vcycle: return "aggressive";
    case CoarseStrategy::aggressive_direct: return "aggressive-direct";
    }
    return "?";
}

std::string to_string(BlockOrdering o)
{
    return o == BlockOrdering::lexicographic ? "lex" : "colour";
}

LfaVariant lfa_variant_for(CoarseStrategy s)
{
    switch (s) {
    case CoarseStrategy::direct: return LfaVariant::two_grid;
    case CoarseStrategy::vcycle: return LfaVariant::three_grid;
    case CoarseStrategy::aggressive_direct:
    case CoarseStrategy::aggressive_vcycle: return LfaVariant::two_grid_aggressive;
    }
    return LfaVariant::two_grid;
}

SolveReport solve_preset(const PoissonProblem& problem, int p, int m, int block_size,
                         CoarseStrategy coarse, BlockOrdering ordering, std::uint64_t seed)
{
    TwoLevelConfig cfg;
    cfg.p = p;
    cfg.p_low = problem.p_low;
    cfg.block_size = block_size;
    cfg.coarse = coarse;
    cfg.ordering = ordering;
    cfg.seed = seed;
    const SplineSpace2D space = make_space_2d(p, m);
    const Hierarchy h = build_hierarchy(cfg, space, problem.geom);
    return solve(h, assemble_load(space, problem.geom, problem.rhs));
}

ResultTable run_solve(const RunConfig& cfg)
{
    validate(cfg);
    const PoissonProblem problem = make_problem(cfg.preset);
    const SplineSpace2D space = make_space_2d(cfg.p, cfg.m);
    const int bs = cfg.effective_block_size();
    const SolveReport rep = solve_preset(problem, cfg.p, cfg.m, bs, cfg.effective_coarse(),
                                         cfg.effective_ordering(), cfg.seed);
    if (!rep.converged)
        std::fprintf(stderr, "igatwo: no convergence within the iteration cap\n");

    ResultTable t;
    t.caption = "solve";
    t.header = {"preset", "p", "p_low", "m", "block", "coarse", "ordering", "iterations",
                "converged", "relative_residual", "seconds", "l2_error"};
    const double err = problem.exact ? l2_error(space, problem.geom, rep.solution, problem.exact) : NAN;
    t.add_row({cfg.preset, std::to_string(cfg.p), std::to_string(problem.p_low), std::to_string(cfg.m),
               std::to_string(bs), to_string(cfg.effective_coarse()), to_string(cfg.effective_ordering()),
               std::to_string(rep.iterations), yes_no(rep.converged), scientific(rep.relative_residual()),
               fixed(rep.seconds, 3), std::isfinite(err) ? scientific(err) : "nan"});
    return t;
}

ResultTable run_rate(const RunConfig& cfg)
{
    validate(cfg);
    const PoissonProblem problem = make_problem(cfg.preset);
    TwoLevelConfig tl;
    tl.p = cfg.p;
    tl.p_low = problem.p_low;
    tl.block_size = cfg.effective_block_size();
    tl.coarse = cfg.effective_coarse();
    tl.ordering = cfg.effective_ordering();
    tl.seed = cfg.seed;
    const Hierarchy h = build_hierarchy(tl, make_space_2d(cfg.p, cfg.m), problem.geom);
    const RateEstimate est = measure_rate(h, cfg.cycles);

    std::string lfa = "", delta = "";
    if (cfg.preset == "square" && tl.coarse != CoarseStrategy::aggressive_vcycle) {
        TorusOptions opts;
        opts.n = cfg.n_torus;
        opts.ordering = tl.ordering;
        const LfaReport r = spectral_factor(
            build_torus_problem(cfg.p, problem.p_low, tl.block_size, lfa_variant_for(tl.coarse), opts));
        lfa = format_factor(r.radius);
        delta = format_factor(est.sustained - r.radius);
    }

    ResultTable t;
    t.caption = "rate";
    t.header = {"preset", "p", "m", "block", "coarse", "ordering", "rho_h", "rho_h_last", "rho_lfa", "delta"};
    t.add_row({cfg.preset, std::to_string(cfg.p), std::to_string(cfg.m), std::to_string(tl.block_size),
               to_string(tl.coarse), to_string(tl.ordering), format_factor(est.sustained),
               format_factor(est.last), lfa, delta});
    return t;
}

ResultTable run_lfa(const RunConfig& cfg)
{
    validate(cfg);
    const LfaVariant variant = cfg.variant ? *cfg.variant : lfa_variant_for(cfg.effective_coarse());
    TorusOptions opts;
    opts.n = cfg.n_torus;
    opts.ordering = cfg.effective_ordering();
    const int bs = cfg.effective_block_size();
    const LfaReport r = spectral_factor(build_torus_problem(cfg.p, cfg.effective_p_low(), bs, variant, opts));

    ResultTable t;
    t.caption = "lfa";
    t.header = {"variant", "p", "p_low", "block", "n", "ordering", "rho", "method", "residual", "converged"};
    t.add_row({to_string(variant), std::to_string(cfg.p), std::to_string(cfg.effective_p_low()),
               std::to_string(bs), std::to_string(cfg.n_torus), to_string(opts.ordering),
               format_factor(r.radius), r.from_symbols ? "symbol" : "arnoldi", scientific(r.residual),
               yes_no(r.converged)});
    return t;
}

namespace {

void factor_table(ReproduceResult& res, const RunConfig& cfg, LfaVariant variant,
                  const double (&ref)[7][3])
{
    res.table.header = {"p", "block", "rho", "reference", "delta", "within_tolerance"};
    TorusOptions opts;
    opts.n = cfg.n_torus;
    opts.ordering = BlockOrdering::lexicographic;
    for (int p = 2; p <= 8; ++p)
        for (int c = 0; c < 3; ++c) {
            const int bs = reference::factor_blocks[c];
            const double want = ref[p - 2][c];
            ++res.cells;
            try {
                const double rho = spectral_factor(build_torus_problem(p, 1, bs, variant, opts)).radius;
                const bool ok = std::abs(rho - want) <= factor_tolerance;
                res.exceeded += !ok;
                res.table.add_row({std::to_string(p), std::to_string(bs), format_factor(rho),
                                   format_factor(want), format_factor(rho - want), yes_no(ok)});
            } catch (const std::exception&) {
                ++res.failed;
                res.table.add_row({std::to_string(p), std::to_string(bs), "error", format_factor(want), "", "no"});
            }
        }
}

void measured_table(ReproduceResult& res, const RunConfig& cfg)
{
    res.table.header = {"p", "block", "rho_2g", "reference_2g", "delta_2g", "rho_h", "reference_h",
                        "delta_h", "within_tolerance"};
    TorusOptions opts;
    opts.n = cfg.n_torus;
    opts.ordering = BlockOrdering::lexicographic;
    const PoissonProblem problem = square_problem();
    for (int p = 2; p <= 8; ++p)
        for (int c = 0; c < 3; ++c) {
            const int bs = reference::factor_blocks[c];
            const double want_2g = reference::two_grid[p - 2][c];
            const double want_h = reference::measured[p - 2][c];
            ++res.cells;
            try {
                const double rho = spectral_factor(build_torus_problem(p, 1, bs, LfaVariant::two_grid, opts)).radius;
                TwoLevelConfig tl;
                tl.p = p;
                tl.block_size = bs;
                tl.ordering = BlockOrdering::lexicographic;
                tl.seed = cfg.seed;
                const Hierarchy h = build_hierarchy(tl, make_space_2d(p, 64), problem.geom);
                const double rho_h = estimate_asymptotic_rate(h, cfg.cycles);
                const bool ok = std::abs(rho - want_2g) <= factor_tolerance &&
                                std::abs(rho_h - want_h) <= factor_tolerance &&
                                std::abs(rho - rho_h) <= factor_tolerance;
                res.exceeded += !ok;
                res.table.add_row({std::to_string(p), std::to_string(bs), format_factor(rho),
                                   format_factor(want_2g), format_factor(rho - want_2g), format_factor(rho_h),
                                   format_factor(want_h), format_factor(rho_h - want_h), yes_no(ok)});
            } catch (const std::exception&) {
                ++res.failed;
                res.table.add_row({std::to_string(p), std::to_string(bs), "error", format_factor(want_2g), "",
                                   "error", format_factor(want_h), "", "no"});
            }
        }
}

void square_table(ReproduceResult& res, const RunConfig& cfg)
{
    res.table.header = {"p", "m", "block", "iterations", "reference", "delta", "seconds",
                        "reference_seconds", "within_tolerance"};
    const PoissonProblem problem = square_problem();
    const int rows = cfg.scale == Scale::full ? 5 : 3;
    for (int r = 0; r < rows; ++r)
        for (int p = 2; p <= 8; ++p) {
            const int m = reference::square_meshes[r];
            const int want = reference::square_iterations[r][p - 2];
            const int bs = default_block_size(p);
            ++res.cells;
            try {
                const SolveReport rep = solve_preset(problem, p, m, bs, CoarseStrategy::aggressive_vcycle,
                                                     BlockOrdering::three_colour, cfg.seed);
                const bool ok = rep.converged && std::abs(rep.iterations - want) <= iteration_tolerance;
                res.exceeded += !ok;
                res.table.add_row({std::to_string(p), std::to_string(m), std::to_string(bs),
                                   std::to_string(rep.iterations), std::to_string(want),
                                   std::to_string(rep.iterations - want), fixed(rep.seconds, 2),
                                   fixed(reference::square_seconds[r][p - 2], 2), yes_no(ok)});
            } catch (const std::exception&) {
                ++res.failed;
                res.table.add_row({std::to_string(p), std::to_string(m), std::to_string(bs), "error",
                                   std::to_string(want), "", "", fixed(reference::square_seconds[r][p - 2], 2), "no"});
            }
        }
}

void annulus_table(ReproduceResult& res, const RunConfig& cfg)
{
    res.table.header = {"p", "m", "block", "coarse", "iterations", "reference", "delta", "within_tolerance"};
    const PoissonProblem problem = annulus_problem();
    const int rows = cfg.scale == Scale::full ? 4 : 3;
    for (int r = 0; r < rows; ++r)
        for (int p = 3; p <= 8; ++p)
            for (const CoarseStrategy s : {CoarseStrategy::direct, CoarseStrategy::aggressive_vcycle}) {
                const int m = reference::annulus_meshes[r];
                const int want = s == CoarseStrategy::direct ? reference::annulus_direct[r][p - 3]
                                                             : reference::annulus_multigrid[r][p - 3];
                const int bs = default_block_size(p);
                ++res.cells;
                try {
                    const SolveReport rep =
                        solve_preset(problem, p, m, bs, s, BlockOrdering::three_colour, cfg.seed);
                    const bool ok = rep.converged && std::abs(rep.iterations - want) <= iteration_tolerance;
                    res.exceeded += !ok;
                    res.table.add_row({std::to_string(p), std::to_string(m), std::to_string(bs), to_string(s),
                                       std::to_string(rep.iterations), std::to_string(want),
                                       std::to_string(rep.iterations - want), yes_no(ok)});
                } catch (const std::exception&) {
                    ++res.failed;
                    res.table.add_row({std::to_string(p), std::to_string(m), std::to_string(bs), to_string(s),
                                       "error", std::to_string(want), "", "no"});
                }
            }
}

} // namespace

ReproduceResult run_reproduce(const RunConfig& cfg)
{
    validate(cfg);
    ReproduceResult res;
    res.table.caption = "table " + std::to_string(cfg.table);
    switch (cfg.table) {
    case 1: measured_table(res, cfg); break;
    case 2: factor_table(res, cfg, LfaVariant::three_grid, reference::three_grid); break;
    case 3: factor_table(res, cfg, LfaVariant::two_grid_aggressive, reference::aggressive); break;
    case 4: square_table(res, cfg); break;
    case 5: annulus_table(res, cfg); break;
    }
    return res;
}

} // namespace igatwo
