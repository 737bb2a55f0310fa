#pragma once

#include "amkt/market.hpp"

namespace amkt {

struct TaxedEquilibrium {
    double tau;
    double a_of_tau;
    double welfare_at_a;
    double dwl_remaining;
};

struct FeeSplit {
    double agent_fee;
    double user_fee;
};

/// Delegation equilibrium under a per-delegation cost tau: a(tau) =
/// F(delta_u - tau), with welfare and the deadweight loss still outstanding
/// relative to the social optimum. Negative tau acts as a subsidy.
TaxedEquilibrium taxed_equilibrium(const MarketParams& p, double tau);

/// Corrective fee v - m that makes the private equilibrium coincide with the
/// social optimum. Negative when v < m (a subsidy; there is then no
/// over-delegation to correct).
double pigouvian_fee(const MarketParams& p);

/// Access-fee implementation: publishers charge agents the fee per query and
/// agents pass it through to their users one-for-one.
FeeSplit fee_passthrough(double fee);

} // namespace amkt
