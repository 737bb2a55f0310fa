#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <string_view>
#include <vector>

#include "amkt/market.hpp"
#include "amkt/publisher.hpp"

namespace amkt {

/// PRNG recorded in run metadata: per-cell streams are mt19937_64 engines
/// seeded from (seed, m_users) through splitmix64.
inline constexpr std::string_view kRngName = "mt19937_64/splitmix64-streams";

struct SimConfig {
    std::size_t m_users = 1;
    std::uint64_t seed = 0;
    double tau = 0.0;
};

struct SimResult {
    double a_hat;
    double price_hat;
    std::map<std::string, double> per_publisher_revenue;
    double ci_halfwidth; // 3-sigma binomial band around a_true
    double a_true;       // F(delta_u - tau)
};

struct ConvergenceRow {
    std::uint64_t seed;
    std::size_t m_users;
    double tau;
    double a_hat;
    double a_true;
    double abs_error;
    double ci_halfwidth;
};

/// Finite-sample counterpart of the delegation equilibrium: draw m_users
/// costs by inverse transform, let each user delegate iff
/// delta_u - c - tau > 0, and report the empirical share, pooled price and
/// per-publisher ad revenues. Deterministic in (seed, m_users, params).
SimResult simulate_delegation(const MarketParams& p, const SimConfig& cfg,
                              std::span<const PublisherProfile> roster = {});

/// One row per (seed, m) cell, in (seed, m) order; abs_error measures
/// |a_hat - F(delta_u - tau)|.
std::vector<ConvergenceRow> convergence_sweep(const MarketParams& p,
                                              std::span<const std::uint64_t> seeds,
                                              std::span<const std::size_t> m_grid,
                                              double tau = 0.0);

/// Least-squares slope of log(mean abs error) against log(m). Near -1/2 when
/// the empirical share converges at the binomial rate.
double loglog_error_slope(std::span<const ConvergenceRow> rows);

} // namespace amkt
