#ifndef IGATWO_EXPERIMENTS_HPP
#define IGATWO_EXPERIMENTS_HPP

#include "igatwo/lfa.hpp"
#include "igatwo/problems.hpp"
#include "igatwo/solver.hpp"

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace igatwo {

enum class Scale { desk, full };

struct RunConfig {
    std::string command = "solve";  ///< solve | rate | lfa | reproduce
    std::string preset = "square";  ///< square | annulus
    int p = 2;
    int p_low = 0;      ///< 0 selects the preset's degree
    int m = 64;
    int block_size = 0; ///< 0 selects default_block_size(p)
    std::optional<CoarseStrategy> coarse;      ///< unset: command default
    std::optional<BlockOrdering> ordering;     ///< unset: command default
    std::optional<LfaVariant> variant;         ///< lfa only; unset: follows coarse
    std::uint64_t seed = 1;
    int n_torus = 48;
    int cycles = 100;
    int table = 1;
    Scale scale = Scale::desk;
    std::string out;

    int effective_p_low() const;
    int effective_block_size() const;
    CoarseStrategy effective_coarse() const;
    BlockOrdering effective_ordering() const;
};

/// Throws ParameterError naming the offending field.
void validate(const RunConfig& cfg);

struct ResultTable {
    std::string caption;
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;

    void add_row(std::vector<std::string> row);
    void write_csv(std::ostream& os) const;
};

struct ReproduceResult {
    ResultTable table;
    int cells = 0;
    int exceeded = 0;  ///< cells outside the tolerance
    int failed = 0;    ///< cells that threw
};

/// 4 significant digits.
std::string format_factor(double v);

PoissonProblem make_problem(const std::string& preset);
CoarseStrategy parse_coarse(const std::string& s);
BlockOrdering parse_ordering(const std::string& s);
LfaVariant parse_variant(const std::string& s);
Scale parse_scale(const std::string& s);
std::string to_string(CoarseStrategy s);
std::string to_string(BlockOrdering o);

/// Variant whose torus analysis models the coarse strategy.
LfaVariant lfa_variant_for(CoarseStrategy s);

ResultTable run_solve(const RunConfig& cfg);
ResultTable run_rate(const RunConfig& cfg);
ResultTable run_lfa(const RunConfig& cfg);
ReproduceResult run_reproduce(const RunConfig& cfg);

/// Iterations of the two-level solver on a preset problem.
SolveReport solve_preset(const PoissonProblem& problem, int p, int m, int block_size,
                         CoarseStrategy coarse, BlockOrdering ordering, std::uint64_t seed);

} // namespace igatwo

#endif // IGATWO_EXPERIMENTS_HPP
