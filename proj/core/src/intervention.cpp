#include "amkt/intervention.hpp"

namespace amkt {

TaxedEquilibrium taxed_equilibrium(const MarketParams& p, double tau) {
    TaxedEquilibrium eq{};
    eq.tau = tau;
    eq.a_of_tau = p.cost.cdf(p.delta_u - tau);
    eq.welfare_at_a = social_welfare(eq.a_of_tau, p).total;
    const double a_star = social_optimum(p);
    eq.dwl_remaining =
        eq.a_of_tau == a_star ? 0.0 : social_welfare(a_star, p).total - eq.welfare_at_a;
    return eq;
}

double pigouvian_fee(const MarketParams& p) { return p.v - p.m; }

FeeSplit fee_passthrough(double fee) { return FeeSplit{fee, fee}; }

} // namespace amkt
