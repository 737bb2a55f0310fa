#include "amkt/collapse.hpp"

#include <cmath>
#include <sstream>

namespace amkt {

namespace {

constexpr int kGridIntervals = 1000;
constexpr double kBisectWidth = 1e-12;

double publisher_profit(const PublisherProfile& p, double v, double a) {
    return p.s * v * (1.0 - a) + 0.5 * p.theta * a * a * p.s * p.s - p.phi;
}

const PublisherProfile& marginal_at(std::span<const PublisherProfile> roster, double v, double a) {
    const PublisherProfile* best = &roster.front();
    double best_profit = publisher_profit(*best, v, a);
    for (const auto& p : roster.subspan(1)) {
        const double profit = publisher_profit(p, v, a);
        if (profit > best_profit || (profit == best_profit && p.id < best->id)) {
            best = &p;
            best_profit = profit;
        }
    }
    return *best;
}

double frontier(std::span<const PublisherProfile> roster, double v, double a) {
    double best = publisher_profit(roster.front(), v, a);
    for (const auto& p : roster.subspan(1)) {
        best = std::max(best, publisher_profit(p, v, a));
    }
    return best;
}

// Bisect a sign change of the frontier inside [lo, hi]; `positive_at_lo`
// states which side of zero the lo end sits on.
double bisect_root(std::span<const PublisherProfile> roster, double v, double lo, double hi,
                   bool positive_at_lo) {
    while (hi - lo > kBisectWidth) {
        const double mid = 0.5 * (lo + hi);
        if ((frontier(roster, v, mid) > 0.0) == positive_at_lo) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

} // namespace

MarketProfit market_profit(double a, std::span<const PublisherProfile> roster, double v) {
    if (roster.empty()) throw EmptyRoster("market profit needs at least one publisher");
    if (!(a >= 0.0 && a <= 1.0)) throw DomainError("delegation share must lie in [0,1]");
    const PublisherProfile& m = marginal_at(roster, v, a);
    return MarketProfit{publisher_profit(m, v, a), m.id};
}

CollapseReport critical_threshold(std::span<const PublisherProfile> roster, double v) {
    if (roster.empty()) throw EmptyRoster("collapse analysis needs at least one publisher");
    const double pi0 = frontier(roster, v, 0.0);
    if (!(pi0 > 0.0)) {
        std::ostringstream os;
        os << "market never viable: max profit at a=0 is " << pi0;
        throw NotViableAtZero(os.str());
    }
    const double pi1 = frontier(roster, v, 1.0);
    if (!(pi1 < 0.0)) {
        std::ostringstream os;
        os << "tolling alone sustains the market: max profit at a=1 is " << pi1;
        throw NoCollapse(os.str());
    }

    // First sign change on the 1000-interval grid, then bisection. The grid
    // scan keeps the search robust at kinks of the max-envelope.
    const double h = 1.0 / kGridIntervals;
    double a_c = 1.0;
    int first_nonpositive = kGridIntervals;
    for (int k = 1; k <= kGridIntervals; ++k) {
        const double a = k == kGridIntervals ? 1.0 : k * h;
        if (frontier(roster, v, a) <= 0.0) {
            a_c = bisect_root(roster, v, (k - 1) * h, a, true);
            first_nonpositive = k;
            break;
        }
    }

    CollapseReport report{};
    report.a_c = a_c;
    const PublisherProfile& marginal = marginal_at(roster, v, a_c);
    report.marginal_id = marginal.id;
    report.pi_at_root = frontier(roster, v, a_c);
    report.stability_slope = stability_check(roster, v, a_c);

    // Scan the remaining grid for the frontier re-entering positive territory.
    for (int k = first_nonpositive; k <= kGridIntervals;) {
        const double a = k == kGridIntervals ? 1.0 : k * h;
        if (frontier(roster, v, a) > 0.0) {
            RecoveryWindow w{};
            w.lo = bisect_root(roster, v, (k - 1) * h, a, false);
            int j = k + 1;
            for (; j <= kGridIntervals; ++j) {
                const double b = j == kGridIntervals ? 1.0 : j * h;
                if (frontier(roster, v, b) <= 0.0) break;
            }
            // Pi(1) < 0 guarantees the window closes before a = 1.
            w.hi = bisect_root(roster, v, (j - 1) * h, std::min(1.0, j * h), true);
            report.recovery_windows.push_back(w);
            k = j + 1;
        } else {
            ++k;
        }
    }

    return comparative_statics(std::move(report), marginal, v);
}

CollapseReport comparative_statics(CollapseReport report, const PublisherProfile& marginal,
                                   double v) {
    if (!(report.a_c > 0.0 && report.a_c < 1.0)) {
        throw DomainError("comparative statics require an interior threshold");
    }
    const double s = marginal.s;
    const double denom = -s * v + marginal.theta * report.a_c * s * s;
    if (std::fabs(denom) < 1e-12) {
        throw DegenerateSlope("profit slope at the threshold is numerically zero");
    }
    report.d_ac_dv = -s * (1.0 - report.a_c) / denom;
    report.d_ac_dtheta = -(0.5 * report.a_c * report.a_c * s * s) / denom;
    report.d_ac_dphi = 1.0 / denom;
    return report;
}

double stability_check(std::span<const PublisherProfile> roster, double v, double a_c) {
    if (roster.empty()) throw EmptyRoster("stability check needs at least one publisher");
    if (!(a_c > 0.0 && a_c < 1.0)) throw DomainError("stability check requires an interior a_c");
    const PublisherProfile& j = marginal_at(roster, v, a_c);
    return -j.s * v + j.theta * a_c * j.s * j.s;
}

} // namespace amkt
