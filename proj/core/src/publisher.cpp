#include "amkt/publisher.hpp"

#include <cmath>
#include <numeric>

namespace amkt {

namespace {

void require_share(double a) {
    if (!(a >= 0.0 && a <= 1.0)) {
        throw DomainError("delegation share must lie in [0,1]");
    }
}

} // namespace

PublisherProfile::PublisherProfile(std::string id_, double s_, double theta_, double k_,
                                   double lambda_, double phi_)
    : id(std::move(id_)), s(s_), theta(theta_), k(k_), lambda(lambda_), phi(phi_) {
    if (!(s > 0.0 && s <= 1.0)) throw DomainError("publisher share s must lie in (0,1]");
    if (!(theta > 0.0) || !std::isfinite(theta)) throw DomainError("publisher theta must be > 0");
    if (!(k > 0.0) || !std::isfinite(k)) throw DomainError("publisher k must be > 0");
    if (!(lambda >= 0.0 && lambda <= 1.0)) throw DomainError("publisher lambda must lie in [0,1]");
    if (!(phi >= 0.0) || !std::isfinite(phi)) throw DomainError("publisher phi must be >= 0");
}

AgentValuation::AgentValuation(double b_, double b_alt_, double c_f_)
    : b(b_), b_alt(b_alt_), c_f(c_f_) {
    if (!(b_alt < b)) throw DomainError("agent valuation requires b_alt < b");
    if (!(c_f > 0.0)) throw DomainError("agent valuation requires c_f > 0");
}

const char* to_string(Strategy s) noexcept {
    switch (s) {
    case Strategy::Null: return "null";
    case Strategy::Blocking: return "blocking";
    case Strategy::Tolling: return "tolling";
    }
    return "?";
}

double revenue_null(const PublisherProfile& pub, double v, double a) {
    require_share(a);
    return pub.s * v * (1.0 - a);
}

double revenue_blocking(const PublisherProfile& pub, double v, double a) {
    require_share(a);
    return v * pub.s * (1.0 - a * (1.0 - pub.lambda)) * (1.0 - a) - pub.k;
}

double optimal_toll(const PublisherProfile& pub, double a) {
    require_share(a);
    return pub.theta * a * pub.s;
}

double revenue_tolling(const PublisherProfile& pub, double v, double a, double tau) {
    require_share(a);
    if (!(tau >= 0.0)) throw DomainError("toll must be nonnegative");
    return pub.s * v * (1.0 - a) + a * pub.s * tau - tau * tau / (2.0 * pub.theta);
}

double inelasticity_threshold(const AgentValuation& av) {
    return av.b - std::max(av.b_alt, -av.c_f);
}

bool assumption_a_valid(const PublisherProfile& pub, double a, const AgentValuation& av) {
    return optimal_toll(pub, a) < inelasticity_threshold(av);
}

StrategyOutcome best_strategy(const PublisherProfile& pub, double v, double a,
                              const std::optional<AgentValuation>& av) {
    StrategyOutcome out{};
    out.optimal_toll = optimal_toll(pub, a);
    out.revenue_null = revenue_null(pub, v, a);
    out.revenue_blocking = revenue_blocking(pub, v, a);
    out.revenue_tolling = revenue_tolling(pub, v, a, out.optimal_toll);
    // Tolling strictly dominates for a > 0; at a = 0 it ties with Null and
    // Null is reported.
    out.chosen = a > 0.0 ? Strategy::Tolling : Strategy::Null;
    if (av) {
        out.assumption_a_valid = assumption_a_valid(pub, a, *av);
    }
    return out;
}

void validate_roster(std::span<const PublisherProfile> roster) {
    if (roster.empty()) throw EmptyRoster("publisher roster is empty");
    const double total = std::accumulate(roster.begin(), roster.end(), 0.0,
                                         [](double acc, const PublisherProfile& p) { return acc + p.s; });
    if (std::fabs(total - 1.0) > 1e-9) {
        throw DomainError("publisher shares must sum to 1 within 1e-9");
    }
}

} // namespace amkt
