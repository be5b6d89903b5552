#include "igatwo/experiments.hpp"

#include "CLI11.hpp"

#include <fstream>
#include <iostream>

namespace {

enum ExitCode { ok = 0, config_error = 1, numerical_failure = 2, delta_exceeded = 3 };

void emit(const igatwo::ResultTable& table, const std::string& out)
{
    if (out.empty()) {
        table.write_csv(std::cout);
        return;
    }
    std::ofstream os(out);
    if (!os) throw igatwo::ParameterError("out: cannot open '" + out + "' for writing");
    table.write_csv(os);
}

} // namespace

int main(int argc, char** argv)
{
    using namespace igatwo;

    CLI::App app{"Two-level isogeometric Poisson solver and local Fourier analysis"};
    app.set_config("--config", "", "key=value file; command-line flags take precedence");

    RunConfig cfg;
    std::string coarse, ordering, variant, scale = "desk";
    app.add_option("command", cfg.command, "solve | rate | lfa | reproduce")->required();
    app.add_option("--preset", cfg.preset, "square | annulus");
    app.add_option("--p", cfg.p, "spline degree of the fine level");
    app.add_option("--p-low", cfg.p_low, "coarse degree (default: 1 square, 2 annulus)");
    app.add_option("--m", cfg.m, "subintervals per direction");
    app.add_option("--block", cfg.block_size, "Schwarz block size 9 | 25 | 49 (default by degree)");
    app.add_option("--coarse", coarse, "direct | vcycle | aggressive | aggressive-direct");
    app.add_option("--ordering", ordering, "lex | colour");
    app.add_option("--variant", variant, "lfa: smoother | two-grid | three-grid | aggressive");
    app.add_option("--seed", cfg.seed, "seed of the random initial guess");
    app.add_option("--n-torus", cfg.n_torus, "torus extent / frequency samples per direction");
    app.add_option("--cycles", cfg.cycles, "rate: cycles used for the estimate");
    app.add_option("--table", cfg.table, "reproduce: table 1..5");
    app.add_option("--scale", scale, "reproduce: desk | full");
    app.add_option("--out", cfg.out, "CSV output path (default: stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? ok : config_error;
    }

    try {
        if (!coarse.empty()) cfg.coarse = parse_coarse(coarse);
        if (!ordering.empty()) cfg.ordering = parse_ordering(ordering);
        if (!variant.empty()) cfg.variant = parse_variant(variant);
        cfg.scale = parse_scale(scale);
        validate(cfg);

        if (cfg.command == "solve") emit(run_solve(cfg), cfg.out);
        else if (cfg.command == "rate") emit(run_rate(cfg), cfg.out);
        else if (cfg.command == "lfa") emit(run_lfa(cfg), cfg.out);
        else {
            const ReproduceResult res = run_reproduce(cfg);
            emit(res.table, cfg.out);
            std::cerr << res.table.caption << ": " << res.cells << " cells, " << res.exceeded
                      << " outside tolerance, " << res.failed << " failed\n";
            if (res.exceeded > 0 || res.failed > 0) return delta_exceeded;
        }
    } catch (const ParameterError& e) {
        std::cerr << "igatwo: " << e.what() << '\n';
        return config_error;
    } catch (const std::exception& e) {
        std::cerr << "igatwo: " << e.what() << '\n';
        return numerical_failure;
    }
    return ok;
}
