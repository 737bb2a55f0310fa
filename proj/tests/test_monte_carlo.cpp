#include <doctest.h>

#include <cmath>
#include <vector>

#include "amkt/intervention.hpp"
#include "amkt/monte_carlo.hpp"
#include "oracles.hpp"

using amkt::CostDistribution;
using amkt::MarketParams;
using amkt::SimConfig;

namespace {

MarketParams base_market() {
    return MarketParams(1.0, 0.4, 0.1, CostDistribution::uniform(0.0, 1.0));
}

} // namespace

TEST_CASE("empirical share lands inside the 3-sigma binomial band") {
    const auto res = amkt::simulate_delegation(base_market(), SimConfig{10000, 12345, 0.0});
    CHECK(std::fabs(res.ci_halfwidth - 0.014696938456699069) < 1e-15);
    CHECK(res.a_true == doctest::Approx(0.4).epsilon(1e-12));
    CHECK(std::fabs(res.a_hat - res.a_true) <= res.ci_halfwidth);
    CHECK(res.price_hat == 1.0 * (1.0 - res.a_hat));
}

TEST_CASE("degenerate cutoffs delegate nobody or everybody") {
    const MarketParams high_floor(1.0, 0.3, 0.1, CostDistribution::uniform(0.5, 1.5));
    CHECK(amkt::simulate_delegation(high_floor, SimConfig{5000, 7, 0.0}).a_hat == 0.0);

    const MarketParams sure_gain(1.0, 1.5, 0.1, CostDistribution::uniform(0.0, 1.0));
    CHECK(amkt::simulate_delegation(sure_gain, SimConfig{5000, 7, 0.2}).a_hat == 1.0);

    // one Bernoulli draw
    const double single = amkt::simulate_delegation(base_market(), SimConfig{1, 99, 0.0}).a_hat;
    CHECK((single == 0.0 || single == 1.0));
}

TEST_CASE("identical configuration reproduces the result bit for bit") {
    const auto p = base_market();
    std::vector<amkt::PublisherProfile> roster{
        amkt::PublisherProfile("a", 0.6, 1.0, 0.01, 0.5, 0.1),
        amkt::PublisherProfile("b", 0.4, 1.0, 0.01, 0.5, 0.1)};
    const auto r1 = amkt::simulate_delegation(p, SimConfig{20000, 424242, 0.05}, roster);
    const auto r2 = amkt::simulate_delegation(p, SimConfig{20000, 424242, 0.05}, roster);
    CHECK(r1.a_hat == r2.a_hat);
    CHECK(r1.price_hat == r2.price_hat);
    CHECK(r1.ci_halfwidth == r2.ci_halfwidth);
    CHECK(r1.per_publisher_revenue == r2.per_publisher_revenue);
    CHECK(r1.per_publisher_revenue.at("a") == 0.6 * r1.price_hat);
    CHECK(r1.per_publisher_revenue.at("b") == 0.4 * r1.price_hat);

    const auto other = amkt::simulate_delegation(p, SimConfig{20000, 424243, 0.05}, roster);
    CHECK(other.a_hat != r1.a_hat);
}

TEST_CASE("mean error shrinks like the square root of the sample size") {
    std::vector<std::uint64_t> seeds;
    for (std::uint64_t s = 0; s < 50; ++s) seeds.push_back(s);
    const std::vector<std::size_t> grid{100, 10000};
    const auto rows = amkt::convergence_sweep(base_market(), seeds, grid, 0.0);
    REQUIRE(rows.size() == 100);
    double err_small = 0.0;
    double err_large = 0.0;
    for (const auto& r : rows) {
        (r.m_users == 100 ? err_small : err_large) += r.abs_error;
    }
    const double ratio = err_small / err_large;
    CHECK(ratio >= 6.0);
    CHECK(ratio <= 14.0);
}

TEST_CASE("log-log error slope sits near the binomial -1/2") {
    std::vector<std::uint64_t> seeds;
    for (std::uint64_t s = 0; s < 80; ++s) seeds.push_back(s);
    const std::vector<std::size_t> grid{100, 1000, 10000};
    const auto rows = amkt::convergence_sweep(base_market(), seeds, grid, 0.0);
    const double slope = amkt::loglog_error_slope(rows);
    CHECK(slope >= -0.65);
    CHECK(slope <= -0.35);
}

TEST_CASE("rows come back in (seed, m) order") {
    const std::vector<std::uint64_t> seeds{5, 2};
    const std::vector<std::size_t> grid{10, 100};
    const auto rows = amkt::convergence_sweep(base_market(), seeds, grid, 0.0);
    REQUIRE(rows.size() == 4);
    CHECK(rows[0].seed == 5);
    CHECK(rows[0].m_users == 10);
    CHECK(rows[1].seed == 5);
    CHECK(rows[1].m_users == 100);
    CHECK(rows[2].seed == 2);
    CHECK(rows[3].m_users == 100);
}

TEST_CASE("simulating under the corrective fee concentrates on the optimum") {
    const auto p = base_market(); // fee = 0.9, a* = 0
    const double fee = amkt::pigouvian_fee(p);
    const auto res = amkt::simulate_delegation(p, SimConfig{10000, 31337, fee});
    CHECK(res.a_true == amkt::social_optimum(p));
    CHECK(std::fabs(res.a_hat - res.a_true) <= std::max(res.ci_halfwidth, 1e-12));

    // interior optimum variant
    const MarketParams interior(0.3, 0.7, 0.1, CostDistribution::uniform(0.0, 1.0));
    const double fee2 = amkt::pigouvian_fee(interior);
    const auto res2 = amkt::simulate_delegation(interior, SimConfig{10000, 31338, fee2});
    CHECK(res2.a_true == amkt::social_optimum(interior));
    CHECK(std::fabs(res2.a_hat - res2.a_true) <= res2.ci_halfwidth);
}
