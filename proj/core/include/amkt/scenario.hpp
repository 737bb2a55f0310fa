#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "amkt/market.hpp"
#include "amkt/monte_carlo.hpp"
#include "amkt/publisher.hpp"

namespace amkt {

enum class TaxMode { None, Fixed, Pigouvian };

/// One-dimensional parameter sweep over an inclusive [lo, hi] grid. `param`
/// is a dotted path into the scenario ("market.v", "publishers.0.theta",
/// "tax", "sim.tau", a cost parameter such as "market.cost.rate") or the
/// pseudo-parameter "a", which forces the delegation share at which the
/// share-dependent analyses are evaluated.
struct SweepSpec {
    std::string param;
    double lo = 0.0;
    double hi = 0.0;
    int steps = 0;
};

/// Extends SimConfig with optional (seeds x m_grid) convergence cells; when
/// both lists are present the montecarlo analysis emits one row per cell.
struct SimSpec {
    SimConfig base;
    std::vector<std::uint64_t> seeds;
    std::vector<std::size_t> m_grid;
    bool convergence() const noexcept { return !seeds.empty() && !m_grid.empty(); }
};

struct Scenario {
    MarketParams market;
    std::vector<PublisherProfile> publishers;
    std::optional<AgentValuation> agent_valuation;
    TaxMode tax_mode = TaxMode::None;
    double tax_value = 0.0; // meaningful only for TaxMode::Fixed
    std::optional<SimSpec> sim;
    std::optional<SweepSpec> sweep;

    std::string source_name; // basename of the file it came from, if any
    std::string digest;      // fnv1a-64 of the raw scenario bytes, hex
};

/// Parse and fully validate a scenario from JSON text. Throws ParseError for
/// malformed JSON, SchemaError for missing/mistyped fields, ValidationError
/// for invariant breaches; all three name the offending field.
Scenario parse_scenario(const std::string& text, const std::string& source_name = "<memory>");

/// Load a scenario file. IoError if the file cannot be read.
Scenario load_scenario(const std::filesystem::path& path);

/// Return a copy of the scenario with one scalar replaced. Understands the
/// same dotted paths as SweepSpec::param, except "a" (which never lives in
/// the scenario itself). Re-validates the affected invariants.
Scenario with_scalar(const Scenario& sc, const std::string& path, double value);

/// True if `path` names a sweepable scalar for this scenario.
bool is_sweepable_path(const Scenario& sc, const std::string& path);

} // namespace amkt
