#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "amkt/errors.hpp"

namespace amkt {

/// Per-publisher parameters: traffic share s, tolling efficiency theta,
/// blocking fixed cost k, retention lambda of blocked delegators who return
/// manually, and fixed operating cost phi.
struct PublisherProfile {
    PublisherProfile(std::string id_, double s_, double theta_, double k_, double lambda_,
                     double phi_);

    std::string id;
    double s;
    double theta;
    double k;
    double lambda;
    double phi;
};

/// What an AI developer gains from fulfilling a query through a specific
/// publisher (b) versus the best imperfect alternative (b_alt) or outright
/// failure (cost c_f).
struct AgentValuation {
    AgentValuation(double b_, double b_alt_, double c_f_);

    double b;
    double b_alt;
    double c_f;
};

enum class Strategy { Null, Blocking, Tolling };

const char* to_string(Strategy s) noexcept;

struct StrategyOutcome {
    double revenue_null;
    double revenue_blocking;
    double revenue_tolling;
    double optimal_toll;
    Strategy chosen;
    std::optional<bool> assumption_a_valid;
};

/// Do nothing: monetize the full share at the diluted pooled price, s*v*(1-a).
double revenue_null(const PublisherProfile& pub, double v, double a);

/// Block AI agents at fixed cost k, retaining a lambda fraction of delegators
/// as manual visitors; retained traffic still sells at the market-wide pooled
/// price. May be negative.
double revenue_blocking(const PublisherProfile& pub, double v, double a);

/// Profit-maximizing per-query toll theta * a * s.
double optimal_toll(const PublisherProfile& pub, double a);

/// Toll the publisher's AI traffic at tau per query against a quadratic
/// implementation cost tau^2 / (2 theta).
double revenue_tolling(const PublisherProfile& pub, double v, double a, double tau);

/// Developer's maximum willingness to pay: b - max(b_alt, -c_f) > 0.
double inelasticity_threshold(const AgentValuation& av);

/// True iff the optimal toll sits strictly inside the inelastic-demand region,
/// i.e. the short-run fixed-traffic premise holds.
bool assumption_a_valid(const PublisherProfile& pub, double a, const AgentValuation& av);

/// Evaluate all three strategies (Tolling at its optimal toll). Tolling is
/// chosen whenever a > 0; at a = 0 it ties with Null and Null is reported,
/// since zero AI traffic warrants no tolling infrastructure.
StrategyOutcome best_strategy(const PublisherProfile& pub, double v, double a,
                              const std::optional<AgentValuation>& av = std::nullopt);

/// Market roster check: nonempty and shares summing to 1 within 1e-9.
void validate_roster(std::span<const PublisherProfile> roster);

} // namespace amkt
