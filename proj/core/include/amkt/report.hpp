#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "amkt/collapse.hpp"
#include "amkt/intervention.hpp"
#include "amkt/market.hpp"
#include "amkt/monte_carlo.hpp"
#include "amkt/scenario.hpp"

namespace amkt {

struct AnalysisSet {
    bool equilibrium = false;
    bool welfare = false;
    bool strategy = false;
    bool tax = false;
    bool collapse = false;
    bool montecarlo = false;
    bool sweep = false;

    static AnalysisSet all() { return {true, true, true, true, true, true, true}; }
    bool any() const noexcept {
        return equilibrium || welfare || strategy || tax || collapse || montecarlo || sweep;
    }
};

/// Parse a comma-separated analysis list ("equilibrium,welfare,..."). Throws
/// ValidationError on unknown names.
AnalysisSet parse_analyses(const std::string& csv);

/// Analyses a scenario can actually run: tax/montecarlo/sweep only when the
/// scenario configures them.
AnalysisSet applicable_analyses(const Scenario& sc);

struct RunOptions {
    AnalysisSet analyses;
    std::optional<std::uint64_t> seed_override;
    // Internal hook used by "a"-sweeps: evaluate share-dependent analyses at
    // this share instead of the private equilibrium.
    std::optional<double> forced_share;
};

struct EquilibriumBlock {
    double a_priv;
    double a_star;
    double a_eval;
    double price;
};

struct WelfarePoint {
    double a;
    WelfareBreakdown w;
};

struct WelfareBlock {
    WelfarePoint at_eval;
    WelfarePoint at_star;
    double deadweight_loss;
    MispricingReport mispricing_at_eval;
};

struct StrategyRow {
    std::string id;
    StrategyOutcome outcome;
};

struct StrategyBlock {
    double a_eval;
    std::vector<StrategyRow> publishers;
};

struct TaxBlock {
    double tau;
    bool subsidy;
    TaxedEquilibrium eq;
    FeeSplit passthrough;
};

struct CollapseBlock {
    std::optional<CollapseReport> report;
    std::string error;   // "NotViableAtZero" | "NoCollapse" when not viable
    std::string message; // human-readable detail for the error
    bool viable() const noexcept { return report.has_value(); }
};

struct MonteCarloBlock {
    SimConfig cfg;
    std::string seed_source; // "cli" | "scenario"
    std::optional<SimResult> single;
    std::vector<ConvergenceRow> rows; // convergence mode
    std::optional<double> loglog_slope;
};

struct SweepPoint {
    double value;
    std::vector<std::pair<std::string, double>> metrics;
};

struct SweepBlock {
    std::string param;
    std::vector<SweepPoint> points;
};

struct RunReport {
    std::string scenario_file;
    std::string digest;

    std::optional<EquilibriumBlock> equilibrium;
    std::optional<WelfareBlock> welfare;
    std::optional<StrategyBlock> strategy;
    std::optional<TaxBlock> tax;
    std::optional<CollapseBlock> collapse;
    std::optional<MonteCarloBlock> montecarlo;
    std::optional<SweepBlock> sweep;
};

/// Execute the requested analyses. Collapse viability failures are reported
/// in-band inside the collapse block; every other error propagates. Sweep
/// grid points may evaluate on multiple threads (capped by AMKT_THREADS);
/// results are merged in grid order, so output does not depend on scheduling.
RunReport run(const Scenario& sc, const RunOptions& opt);

enum class OutputFormat { Json, Csv };

/// Deterministic serialization: fixed key order, doubles at 12 significant
/// digits, "\n" line endings. Throws NonFiniteOutput (naming the offending
/// metrics) if any emitted number is not finite.
std::string emit_json(const RunReport& r);

/// CSV emission: sweeps produce the long form (param,value,metric,
/// metric_value); montecarlo produces (seed,m_users,tau,a_hat,a_true,
/// abs_error,ci_halfwidth); anything else flattens to (metric,value).
std::string emit_csv(const RunReport& r);

/// Render and write to a file. IoError on failure.
void emit_to_file(const RunReport& r, OutputFormat format, const std::filesystem::path& dest);

/// Numeric (metric, value) pairs of all non-sweep blocks, dotted names in
/// fixed emission order. Shared by csv flattening and sweep points.
std::vector<std::pair<std::string, double>> flatten_metrics(const RunReport& r);

} // namespace amkt
