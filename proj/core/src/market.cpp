#include "amkt/market.hpp"

#include <cmath>

#include "amkt/quadrature.hpp"

namespace amkt {

namespace {

// Quantile at which an unbounded-below support is truncated for the
// user-surplus integral. The omitted tail mass contributes O(1e-13) for
// scale parameters of ordinary size, well under the quadrature tolerance.
constexpr double kLowerTailQuantile = 1e-15;

void require_share(double a) {
    if (!(a >= 0.0 && a <= 1.0)) {
        throw DomainError("delegation share must lie in [0,1]");
    }
}

} // namespace

MarketParams::MarketParams(double v_, double delta_u_, double m_, CostDistribution cost_)
    : v(v_), delta_u(delta_u_), m(m_), cost(std::move(cost_)) {
    if (!(v > 0.0) || !std::isfinite(v)) throw DomainError("market v must be > 0");
    if (!(delta_u > 0.0) || !std::isfinite(delta_u)) throw DomainError("market delta_u must be > 0");
    if (!(m >= 0.0) || !std::isfinite(m)) throw DomainError("market m must be >= 0");
}

double impression_price(double v, double a) {
    require_share(a);
    return v * (1.0 - a);
}

double private_equilibrium(const MarketParams& p) { return p.cost.cdf(p.delta_u); }

double user_surplus(double a, const MarketParams& p) {
    require_share(a);
    if (a == 0.0) return 0.0;
    const double upper = p.cost.quantile(a); // UnboundedQuantile propagates at a = 1
    const double lower =
        p.cost.bounded_below() ? p.cost.support_lo() : p.cost.quantile(kLowerTailQuantile);
    if (!(upper > lower)) return 0.0;
    const auto& dist = p.cost;
    const double du = p.delta_u;
    return adaptive_simpson([&](double c) { return (du - c) * dist.pdf(c); }, lower, upper);
}

WelfareBreakdown social_welfare(double a, const MarketParams& p) {
    WelfareBreakdown w{};
    w.user_surplus = user_surplus(a, p);
    w.publisher_revenue = impression_price(p.v, a);
    w.ai_profit = a * p.m;
    w.total = w.user_surplus + w.publisher_revenue + w.ai_profit;
    return w;
}

double welfare_gradient(double a, const MarketParams& p) {
    if (!(a > 0.0 && a < 1.0)) {
        throw DomainError("welfare gradient is defined for interior shares only");
    }
    return (p.delta_u - p.cost.quantile(a)) - p.v + p.m;
}

double welfare_curvature(double a, const MarketParams& p) {
    if (!(a > 0.0 && a < 1.0)) {
        throw DomainError("welfare curvature is defined for interior shares only");
    }
    const double density = p.cost.pdf(p.cost.quantile(a));
    if (!(density > 0.0)) {
        throw DomainError("welfare curvature requires a positive density at F^-1(a)");
    }
    return -1.0 / density; // the linear price contributes zero curvature
}

double social_optimum(const MarketParams& p) {
    // Grouped as delta_u - (v - m) so that v == m reproduces the private
    // equilibrium bit-for-bit and the taxed equilibrium at the corrective fee
    // lands on the optimum exactly.
    return p.cost.cdf(p.delta_u - (p.v - p.m));
}

double deadweight_loss(const MarketParams& p) {
    const double a_star = social_optimum(p);
    const double a_priv = private_equilibrium(p);
    if (a_star == a_priv) return 0.0;
    return social_welfare(a_star, p).total - social_welfare(a_priv, p).total;
}

MispricingReport mispricing(double a, double v) {
    require_share(a);
    if (!(v > 0.0)) throw DomainError("mispricing requires v > 0");
    MispricingReport r{};
    r.human_surplus_per_impression = v * a;
    r.ai_loss_per_impression = -(v * (1.0 - a));
    r.expected_surplus =
        (1.0 - a) * r.human_surplus_per_impression + a * r.ai_loss_per_impression;
    return r;
}

} // namespace amkt
