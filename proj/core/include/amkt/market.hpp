#pragma once

#include "amkt/cost_model.hpp"
#include "amkt/errors.hpp"

namespace amkt {

/// Market-wide scalars. v is the advertiser value of one human impression,
/// delta_u the per-user utility gain from delegating, m the AI provider's
/// profit per delegation. Utility and currency are treated as one numeraire
/// throughout, matching the welfare function that sums them.
struct MarketParams {
    MarketParams(double v_, double delta_u_, double m_, CostDistribution cost_);

    double v;
    double delta_u;
    double m;
    CostDistribution cost;
};

struct WelfareBreakdown {
    double user_surplus;
    double publisher_revenue;
    double ai_profit;
    double total;
};

/// Per-impression pricing distortion at delegation share a. The expected
/// surplus across a pooled transaction is identically zero: human impressions
/// earn advertisers v*a, AI impressions lose them v*(1-a).
struct MispricingReport {
    double human_surplus_per_impression;
    double ai_loss_per_impression;
    double expected_surplus;
};

/// Pooled impression price v(1-a). Throws DomainError for a outside [0,1].
double impression_price(double v, double a);

/// Privately chosen delegation share F(delta_u).
double private_equilibrium(const MarketParams& p);

/// Aggregate surplus of delegating users: integral of (delta_u - c) f(c) dc
/// from the support's lower bound up to F^-1(a), by adaptive Simpson
/// quadrature to 1e-10 absolute. Unbounded-below supports are truncated at
/// the 1e-15 quantile, whose tail contribution is far below the tolerance.
double user_surplus(double a, const MarketParams& p);

/// W(a) = user surplus + pooled price + a*m, with the addends reported
/// separately; total is their exact sum.
WelfareBreakdown social_welfare(double a, const MarketParams& p);

/// dW/da = (delta_u - F^-1(a)) - v + m. Interior a only.
double welfare_gradient(double a, const MarketParams& p);

/// d2W/da2 = -1 / f(F^-1(a)); strictly negative wherever defined (the linear
/// price contributes no curvature). Interior a only.
double welfare_curvature(double a, const MarketParams& p);

/// Socially optimal share F(delta_u - (v - m)); the cdf clamp resolves corner
/// optima. Closed form by construction, not a numeric argmax.
double social_optimum(const MarketParams& p);

/// W(a*) - W(a_priv) >= 0; strictly positive exactly when v > m with both
/// shares interior.
double deadweight_loss(const MarketParams& p);

/// Pooled-price mispricing identities at share a.
MispricingReport mispricing(double a, double v);

} // namespace amkt
