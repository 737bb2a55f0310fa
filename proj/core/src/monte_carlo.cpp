#include "amkt/monte_carlo.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace amkt {

namespace {

std::uint64_t splitmix64(std::uint64_t& state) {
    state += 0x9E3779B97F4A7C15ull;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

// Independent stream per (seed, m_users) cell.
std::mt19937_64 make_stream(std::uint64_t seed, std::uint64_t salt) {
    std::uint64_t state = seed ^ (salt * 0xD1B54A32D192ED03ull);
    const std::uint64_t a = splitmix64(state);
    const std::uint64_t b = splitmix64(state);
    return std::mt19937_64(a ^ (b << 1));
}

// 53-bit uniform in [0,1); independent of the standard library's
// distribution implementation, so results are stable across toolchains.
double u01(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

} // namespace

SimResult simulate_delegation(const MarketParams& p, const SimConfig& cfg,
                              std::span<const PublisherProfile> roster) {
    SimResult res{};
    res.a_true = p.cost.cdf(p.delta_u - cfg.tau);

    auto rng = make_stream(cfg.seed, static_cast<std::uint64_t>(cfg.m_users));
    std::size_t delegating = 0;
    for (std::size_t i = 0; i < cfg.m_users; ++i) {
        const double c = p.cost.quantile(u01(rng));
        if (p.delta_u - c - cfg.tau > 0.0) ++delegating;
    }
    res.a_hat = static_cast<double>(delegating) / static_cast<double>(cfg.m_users);
    res.price_hat = p.v * (1.0 - res.a_hat);
    for (const auto& pub : roster) {
        res.per_publisher_revenue[pub.id] = pub.s * res.price_hat;
    }
    res.ci_halfwidth =
        3.0 * std::sqrt(res.a_true * (1.0 - res.a_true) / static_cast<double>(cfg.m_users));
    return res;
}

std::vector<ConvergenceRow> convergence_sweep(const MarketParams& p,
                                              std::span<const std::uint64_t> seeds,
                                              std::span<const std::size_t> m_grid, double tau) {
    std::vector<ConvergenceRow> rows;
    rows.reserve(seeds.size() * m_grid.size());
    for (const std::uint64_t seed : seeds) {
        for (const std::size_t m : m_grid) {
            const SimResult r = simulate_delegation(p, SimConfig{m, seed, tau});
            rows.push_back(ConvergenceRow{seed, m, tau, r.a_hat, r.a_true,
                                          std::fabs(r.a_hat - r.a_true), r.ci_halfwidth});
        }
    }
    return rows;
}

double loglog_error_slope(std::span<const ConvergenceRow> rows) {
    // Mean absolute error per m, then least squares on (log m, log mean).
    std::vector<std::pair<std::size_t, std::pair<double, std::size_t>>> acc;
    for (const auto& r : rows) {
        auto it = std::find_if(acc.begin(), acc.end(),
                               [&](const auto& e) { return e.first == r.m_users; });
        if (it == acc.end()) {
            acc.push_back({r.m_users, {r.abs_error, 1}});
        } else {
            it->second.first += r.abs_error;
            it->second.second += 1;
        }
    }
    if (acc.size() < 2) throw DomainError("log-log slope needs at least two distinct m values");

    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (const auto& [m, sum_count] : acc) {
        const double mean = sum_count.first / static_cast<double>(sum_count.second);
        if (!(mean > 0.0)) throw DomainError("log-log slope needs positive mean errors");
        const double x = std::log(static_cast<double>(m));
        const double y = std::log(mean);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    const double n = static_cast<double>(acc.size());
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

} // namespace amkt
