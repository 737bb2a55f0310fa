#include <cstdint>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "amkt/report.hpp"
#include "amkt/scenario.hpp"
#include "amkt/version.hpp"

namespace {

// Exit codes are a stable contract for harnesses.
constexpr int kExitOk = 0;
constexpr int kExitValidation = 2;
constexpr int kExitAnalysis = 3;
constexpr int kExitIo = 4;

struct CommonArgs {
    std::string scenario_path;
    std::string analyses;
    std::string format = "json";
    std::string out_path;
    std::optional<std::uint64_t> seed;
};

void add_common(CLI::App* cmd, CommonArgs& args) {
    cmd->add_option("scenario", args.scenario_path, "Scenario JSON file")->required();
    cmd->add_option("--analyses", args.analyses,
                    "Comma-separated subset of equilibrium,welfare,strategy,tax,collapse,"
                    "montecarlo,sweep (default: everything the scenario configures)");
    cmd->add_option("--format", args.format, "Output format: json or csv")
        ->check(CLI::IsMember({"json", "csv"}));
    cmd->add_option("--out", args.out_path, "Write output to this file instead of stdout");
    cmd->add_option("--seed", [&args](const CLI::results_t& res) {
        args.seed = std::stoull(res[0]);
        return true;
    }, "Override the scenario's simulation seed");
}

int execute(const CommonArgs& args, const std::optional<amkt::SweepSpec>& sweep_override) {
    amkt::Scenario sc = amkt::load_scenario(args.scenario_path);
    if (sweep_override) {
        sc.sweep = *sweep_override;
        if (!amkt::is_sweepable_path(sc, sweep_override->param)) {
            throw amkt::ValidationError("sweep.param", "'" + sweep_override->param +
                                                           "' does not name a sweepable "
                                                           "numeric scalar");
        }
        if (sweep_override->param == "a" &&
            (sweep_override->lo < 0.0 || sweep_override->hi > 1.0)) {
            throw amkt::ValidationError("sweep.lo", "share sweep must stay within [0,1]");
        }
    }

    amkt::RunOptions opt{};
    opt.analyses = args.analyses.empty() ? amkt::applicable_analyses(sc)
                                         : amkt::parse_analyses(args.analyses);
    if (sweep_override) opt.analyses.sweep = true;
    opt.seed_override = args.seed;

    if (opt.analyses.tax && sc.tax_mode == amkt::TaxMode::Pigouvian &&
        amkt::pigouvian_fee(sc.market) < 0.0) {
        std::cerr << "warning: corrective fee v - m is negative (v < m); "
                     "applying it as a subsidy\n";
    }

    const amkt::RunReport report = amkt::run(sc, opt);
    const amkt::OutputFormat fmt =
        args.format == "csv" ? amkt::OutputFormat::Csv : amkt::OutputFormat::Json;
    if (args.out_path.empty()) {
        std::cout << (fmt == amkt::OutputFormat::Json ? amkt::emit_json(report)
                                                      : amkt::emit_csv(report));
    } else {
        amkt::emit_to_file(report, fmt, args.out_path);
    }
    return kExitOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Delegated-browsing ad market laboratory: equilibria, welfare, publisher "
                 "strategies, corrective fees, collapse thresholds and Monte Carlo checks"};
    app.set_version_flag("--version", std::string(amkt::kToolVersion));
    app.require_subcommand(1);

    CommonArgs eval_args;
    CLI::App* eval = app.add_subcommand("eval", "Run analyses on a scenario file");
    add_common(eval, eval_args);

    CommonArgs sweep_args;
    amkt::SweepSpec sweep_spec;
    CLI::App* sweep = app.add_subcommand("sweep", "Sweep one scalar over a grid");
    add_common(sweep, sweep_args);
    sweep->add_option("--param", sweep_spec.param,
                      "Dotted scenario path (e.g. market.v, publishers.0.theta) or the "
                      "pseudo-parameter a")
        ->required();
    sweep->add_option("--lo", sweep_spec.lo, "Grid lower bound")->required();
    sweep->add_option("--hi", sweep_spec.hi, "Grid upper bound")->required();
    sweep->add_option("--steps", sweep_spec.steps, "Grid size (inclusive endpoints)")
        ->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? kExitOk : kExitValidation;
    }

    try {
        if (eval->parsed()) {
            return execute(eval_args, std::nullopt);
        }
        if (sweep_spec.steps < 2) {
            throw amkt::ValidationError("sweep.steps", "must be >= 2");
        }
        if (!(sweep_spec.lo < sweep_spec.hi)) {
            throw amkt::ValidationError("sweep.lo", "requires lo < hi");
        }
        return execute(sweep_args, sweep_spec);
    } catch (const amkt::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitValidation;
    } catch (const amkt::SchemaError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitValidation;
    } catch (const amkt::ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitValidation;
    } catch (const amkt::IoError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitIo;
    } catch (const amkt::NonFiniteOutput& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitAnalysis;
    } catch (const amkt::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitAnalysis;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitAnalysis;
    }
}
