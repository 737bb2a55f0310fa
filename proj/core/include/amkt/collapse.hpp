#pragma once

#include <span>
#include <string>
#include <vector>

#include "amkt/publisher.hpp"

namespace amkt {

/// Interval of delegation shares above the collapse threshold where the
/// profit frontier pops back above zero. Cannot occur when the boundary
/// assumptions hold, but the scan reports it rather than assuming it away.
struct RecoveryWindow {
    double lo;
    double hi;
};

struct CollapseReport {
    double a_c;
    std::string marginal_id;
    double pi_at_root;
    double stability_slope;
    double d_ac_dv;
    double d_ac_dtheta;
    double d_ac_dphi;
    std::vector<RecoveryWindow> recovery_windows;
};

struct MarketProfit {
    double value;
    std::string id;
};

/// Profit frontier Pi(a) = max_i { s_i v (1-a) + theta_i a^2 s_i^2 / 2 - phi_i }
/// with the argmax publisher; ties break toward the lexicographically lowest id.
MarketProfit market_profit(double a, std::span<const PublisherProfile> roster, double v);

/// Smallest root of Pi on (0,1): scan 1000 grid intervals for the first sign
/// change, then bisect to an interval of width 1e-12. Requires Pi(0) > 0
/// (else NotViableAtZero) and Pi(1) < 0 (else NoCollapse). The returned report
/// carries the stability slope and the comparative-statics derivatives of the
/// marginal publisher.
CollapseReport critical_threshold(std::span<const PublisherProfile> roster, double v);

/// Fill the implicit-function-theorem derivatives of a_c with respect to
/// (v, theta_j, phi_j) for the marginal publisher j. The denominator is the
/// marginal profit slope at a_c, which is strictly negative in a stable
/// collapse; |D| < 1e-12 raises DegenerateSlope.
CollapseReport comparative_statics(CollapseReport report, const PublisherProfile& marginal,
                                   double v);

/// d Pi_j / da at a_c for the marginal publisher j: -s_j v + theta_j a_c s_j^2.
double stability_check(std::span<const PublisherProfile> roster, double v, double a_c);

} // namespace amkt
