// Test-only oracles, deliberately independent of the library's evaluation
// paths: closed-form user surplus per family, finite differences, grid
// search, and the quadratic-formula root for single-publisher collapse.
#pragma once

#include <cmath>
#include <random>
#include <stdexcept>
#include <vector>

#include "amkt/collapse.hpp"
#include "amkt/cost_model.hpp"
#include "amkt/market.hpp"
#include "amkt/publisher.hpp"

namespace oracles {

// Closed-form integral of (delta_u - c) f(c) dc from the support's lower
// bound to F^-1(a), derived by hand per family.
inline double user_surplus(const amkt::MarketParams& p, double a) {
    using amkt::CostDistribution;
    if (a <= 0.0) return 0.0;
    const auto& spec = p.cost.spec();
    if (const auto* u = std::get_if<CostDistribution::Uniform>(&spec)) {
        const double w = u->hi - u->lo;
        const double x = u->lo + a * w;
        return (p.delta_u * (x - u->lo) - 0.5 * (x * x - u->lo * u->lo)) / w;
    }
    if (const auto* e = std::get_if<CostDistribution::Exponential>(&spec)) {
        const double r = e->rate;
        if (a >= 1.0) return p.delta_u - 1.0 / r;
        const double x = -std::log1p(-a) / r;
        return p.delta_u * a + x * (1.0 - a) - a / r;
    }
    const auto& l = std::get<CostDistribution::Logistic>(spec);
    if (a >= 1.0) return p.delta_u - l.location;
    const double entropy = a * std::log(a) + (1.0 - a) * std::log1p(-a);
    return p.delta_u * a - (l.location * a + l.scale * entropy);
}

inline double welfare(const amkt::MarketParams& p, double a) {
    return user_surplus(p, a) + p.v * (1.0 - a) + a * p.m;
}

template <typename F>
double central_diff(F&& f, double x, double h) {
    return (f(x + h) - f(x - h)) / (2.0 * h);
}

template <typename F>
double second_diff(F&& f, double x, double h) {
    return (f(x + h) - 2.0 * f(x) + f(x - h)) / (h * h);
}

// Full scan of a function over the [0,1] grid at the given resolution;
// returns the location of the maximum (first hit on ties).
template <typename F>
double grid_argmax(F&& f, double resolution) {
    const auto n = static_cast<long>(std::lround(1.0 / resolution));
    double best_a = 0.0;
    double best = f(0.0);
    for (long k = 1; k <= n; ++k) {
        const double a = k == n ? 1.0 : static_cast<double>(k) * resolution;
        const double val = f(a);
        if (val > best) {
            best = val;
            best_a = a;
        }
    }
    return best_a;
}

// Smallest root in (0,1) of the single-publisher profit
// theta s^2 / 2 * a^2 - s v * a + (s v - phi).
inline double smallest_profit_root(double s, double theta, double v, double phi) {
    const double A = 0.5 * theta * s * s;
    const double B = -s * v;
    const double C = s * v - phi;
    const double disc = B * B - 4.0 * A * C;
    if (disc < 0.0) throw std::runtime_error("no real root");
    return (-B - std::sqrt(disc)) / (2.0 * A);
}

// --- random scenario generators shared by property tests -------------------

inline double unif(std::mt19937_64& rng, double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(rng);
}

inline amkt::CostDistribution random_dist(std::mt19937_64& rng, int family) {
    switch (family % 3) {
    case 0: {
        const double lo = unif(rng, -0.5, 0.5);
        return amkt::CostDistribution::uniform(lo, lo + unif(rng, 0.8, 2.0));
    }
    case 1: return amkt::CostDistribution::exponential(unif(rng, 0.3, 3.0));
    default: return amkt::CostDistribution::logistic(unif(rng, -0.5, 0.5), unif(rng, 0.1, 1.0));
    }
}

// Market draw with delta_u strictly inside the support (so F is strictly
// increasing at the private equilibrium). Every fifth draw sets v == m
// exactly to exercise the no-externality boundary.
inline amkt::MarketParams random_market(std::mt19937_64& rng, int index) {
    const int family = index % 3;
    const amkt::CostDistribution dist = random_dist(rng, family);
    double du = 0.0;
    if (family == 0) {
        const auto& u = std::get<amkt::CostDistribution::Uniform>(dist.spec());
        const double w = u.hi - u.lo;
        const double lo_eff = std::max(u.lo, 0.0);
        du = unif(rng, lo_eff + 0.05 * w, u.hi - 0.05 * w);
    } else if (family == 1) {
        du = unif(rng, 0.1, 2.0);
    } else {
        du = unif(rng, 0.05, 1.5);
    }
    const double m = unif(rng, 0.05, 0.6);
    double v = 0.0;
    if (index % 5 == 4) {
        v = m;
    } else {
        v = m + unif(rng, 0.05, 1.2) * du;
    }
    return amkt::MarketParams(v, du, m, dist);
}

inline amkt::PublisherProfile random_publisher(std::mt19937_64& rng, const std::string& id) {
    return amkt::PublisherProfile(id, unif(rng, 0.05, 1.0), unif(rng, 0.05, 4.0),
                                  unif(rng, 0.001, 0.2), unif(rng, 0.0, 1.0),
                                  unif(rng, 0.0, 0.5));
}

// Single-publisher scenario satisfying the two collapse boundary conditions
// Pi(0) > 0 and Pi(1) < 0.
struct ViableScenario {
    amkt::PublisherProfile pub;
    double v;
};

inline ViableScenario random_viable(std::mt19937_64& rng, const std::string& id) {
    const double s = unif(rng, 0.3, 1.0);
    const double v = unif(rng, 0.5, 2.0);
    const double theta = unif(rng, 0.05, std::min(4.0, 1.8 * v / s));
    const double toll_only = 0.5 * theta * s * s; // Pi(1) + phi
    const double phi = toll_only + unif(rng, 0.1, 0.9) * (s * v - toll_only);
    return ViableScenario{amkt::PublisherProfile(id, s, theta, 0.01, 0.5, phi), v};
}

// Central difference of a_c with a 1e-4 relative bump of one parameter,
// re-solving the threshold at each bumped value. param is 'v', 't' (theta)
// or 'p' (phi).
inline double fd_threshold(const amkt::PublisherProfile& base, double v, char param) {
    const auto resolve = [&](double vv, double theta, double phi) {
        std::vector<amkt::PublisherProfile> roster{
            amkt::PublisherProfile(base.id, base.s, theta, base.k, base.lambda, phi)};
        return amkt::critical_threshold(roster, vv).a_c;
    };
    const double step = 1e-4;
    switch (param) {
    case 'v': {
        const double h = v * step;
        return (resolve(v + h, base.theta, base.phi) - resolve(v - h, base.theta, base.phi)) /
               (2.0 * h);
    }
    case 't': {
        const double h = base.theta * step;
        return (resolve(v, base.theta + h, base.phi) - resolve(v, base.theta - h, base.phi)) /
               (2.0 * h);
    }
    default: {
        const double h = base.phi * step;
        return (resolve(v, base.theta, base.phi + h) - resolve(v, base.theta, base.phi - h)) /
               (2.0 * h);
    }
    }
}

} // namespace oracles
