#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "amkt/publisher.hpp"
#include "oracles.hpp"

using amkt::AgentValuation;
using amkt::PublisherProfile;
using amkt::Strategy;

namespace {

PublisherProfile pub(double s, double theta, double k = 0.01, double lambda = 0.6,
                     double phi = 0.0) {
    return PublisherProfile("p", s, theta, k, lambda, phi);
}

} // namespace

TEST_CASE("profile and valuation constructors enforce their ranges") {
    CHECK_THROWS_AS(pub(0.0, 1.0), amkt::DomainError);
    CHECK_THROWS_AS(pub(1.1, 1.0), amkt::DomainError);
    CHECK_THROWS_AS(pub(0.5, 0.0), amkt::DomainError);
    CHECK_THROWS_AS(PublisherProfile("p", 0.5, 1.0, 0.0, 0.6, 0.0), amkt::DomainError);
    CHECK_THROWS_AS(PublisherProfile("p", 0.5, 1.0, 0.01, 1.2, 0.0), amkt::DomainError);
    CHECK_THROWS_AS(PublisherProfile("p", 0.5, 1.0, 0.01, 0.6, -0.1), amkt::DomainError);
    CHECK_THROWS_AS(AgentValuation(1.0, 1.0, 0.2), amkt::DomainError);
    CHECK_THROWS_AS(AgentValuation(1.0, 0.5, 0.0), amkt::DomainError);
}

TEST_CASE("null revenue is the share of the pooled price") {
    CHECK(amkt::revenue_null(pub(0.2, 1.0), 1.0, 0.0) == doctest::Approx(0.2).epsilon(1e-12));
    CHECK(amkt::revenue_null(pub(0.2, 1.0), 1.0, 1.0) == 0.0);
    CHECK(amkt::revenue_null(pub(0.1, 1.0), 1.0, 0.5) == doctest::Approx(0.05).epsilon(1e-12));
    CHECK_THROWS_AS(amkt::revenue_null(pub(0.2, 1.0), 1.0, 1.5), amkt::DomainError);
}

TEST_CASE("blocking revenue keeps retained traffic at the pooled price") {
    CHECK(amkt::revenue_blocking(pub(0.2, 1.0, 0.01, 0.6), 1.0, 0.5) ==
          doctest::Approx(0.07).epsilon(1e-12));
    // no AI traffic: blocking only pays the fixed cost
    CHECK(amkt::revenue_blocking(pub(0.2, 1.0, 0.01, 0.3), 1.0, 0.0) ==
          doctest::Approx(0.19).epsilon(1e-12));
    CHECK(amkt::revenue_blocking(pub(0.2, 1.0, 0.01, 1.0), 1.0, 0.5) ==
          doctest::Approx(0.09).epsilon(1e-12));
}

TEST_CASE("blocking revenue is nondecreasing in the retention rate") {
    std::mt19937_64 rng(9301);
    for (int i = 0; i < 200; ++i) {
        const double s = oracles::unif(rng, 0.05, 1.0);
        const double v = oracles::unif(rng, 0.1, 3.0);
        const double a = oracles::unif(rng, 0.0, 1.0);
        const double k = oracles::unif(rng, 0.001, 0.2);
        double l1 = oracles::unif(rng, 0.0, 1.0);
        double l2 = oracles::unif(rng, 0.0, 1.0);
        if (l2 < l1) std::swap(l1, l2);
        CHECK(amkt::revenue_blocking(PublisherProfile("p", s, 1.0, k, l1, 0.0), v, a) <=
              amkt::revenue_blocking(PublisherProfile("p", s, 1.0, k, l2, 0.0), v, a) + 1e-15);
    }
}

TEST_CASE("optimal toll is theta a s") {
    CHECK(amkt::optimal_toll(pub(0.1, 2.0), 0.5) == doctest::Approx(0.1).epsilon(1e-12));
    CHECK(amkt::optimal_toll(pub(0.1, 2.0), 0.0) == 0.0);
    CHECK(amkt::optimal_toll(pub(1.0, 1.0), 1.0) == 1.0);
}

TEST_CASE("tolling revenue at the optimal toll hits the closed form") {
    const auto p = pub(0.1, 2.0);
    const double tau_star = amkt::optimal_toll(p, 0.5);
    CHECK(amkt::revenue_tolling(p, 1.0, 0.5, tau_star) == doctest::Approx(0.0525).epsilon(1e-12));
    // zero toll degenerates to the null strategy
    CHECK(amkt::revenue_tolling(p, 1.0, 0.5, 0.0) == amkt::revenue_null(p, 1.0, 0.5));
    CHECK(amkt::revenue_tolling(p, 1.0, 0.5, 0.2) == doctest::Approx(0.05).epsilon(1e-12));
    CHECK(amkt::revenue_tolling(p, 1.0, 0.5, 0.2) < amkt::revenue_tolling(p, 1.0, 0.5, tau_star));
    CHECK_THROWS_AS(amkt::revenue_tolling(p, 1.0, 0.5, -0.1), amkt::DomainError);
}

TEST_CASE("no toll on a dense grid beats the first-order-condition toll") {
    std::mt19937_64 rng(9302);
    for (int draw = 0; draw < 25; ++draw) {
        const auto p = oracles::random_publisher(rng, "p");
        const double v = oracles::unif(rng, 0.1, 2.0);
        const double a = oracles::unif(rng, 0.01, 1.0);
        const double tau_star = amkt::optimal_toll(p, a);
        const double best = amkt::revenue_tolling(p, v, a, tau_star);
        for (int i = 0; i <= 10000; ++i) {
            const double tau = 4.0 * tau_star * static_cast<double>(i) / 10000.0;
            const double r = amkt::revenue_tolling(p, v, a, tau);
            CHECK(best >= r);
            if (std::fabs(tau - tau_star) > 1e-9) {
                CHECK(best - r > 1e-12);
            }
        }
    }
}

TEST_CASE("tolling strictly dominates and the premium is exactly theta a^2 s^2 / 2") {
    std::mt19937_64 rng(9303);
    for (int i = 0; i < 500; ++i) {
        const auto p = oracles::random_publisher(rng, "p");
        const double v = oracles::unif(rng, 0.1, 2.0);
        const double a = oracles::unif(rng, 1e-3, 1.0);
        const double tau_star = amkt::optimal_toll(p, a);
        const double toll = amkt::revenue_tolling(p, v, a, tau_star);
        const double null = amkt::revenue_null(p, v, a);
        const double block = amkt::revenue_blocking(p, v, a);
        CHECK(toll > null);
        CHECK(toll > block);
        CHECK(std::fabs((toll - null) - 0.5 * p.theta * a * a * p.s * p.s) <= 1e-12);
    }
}

TEST_CASE("tolling premium grows in efficiency, share and AI traffic") {
    const double v = 1.0;
    const auto premium = [&](double s, double theta, double a) {
        const PublisherProfile p("p", s, theta, 0.01, 0.5, 0.0);
        return amkt::revenue_tolling(p, v, a, amkt::optimal_toll(p, a)) -
               amkt::revenue_null(p, v, a);
    };
    CHECK(premium(0.5, 2.0, 0.5) > premium(0.5, 1.0, 0.5));
    CHECK(premium(0.8, 1.0, 0.5) > premium(0.5, 1.0, 0.5));
    CHECK(premium(0.5, 1.0, 0.8) > premium(0.5, 1.0, 0.5));
}

TEST_CASE("developer willingness to pay per query") {
    CHECK(amkt::inelasticity_threshold(AgentValuation(1.0, 0.7, 0.2)) ==
          doctest::Approx(0.3).epsilon(1e-12));
    // failure (-0.2) beats the bad alternative (-0.5)
    CHECK(amkt::inelasticity_threshold(AgentValuation(1.0, -0.5, 0.2)) ==
          doctest::Approx(1.2).epsilon(1e-12));
    // a near-perfect substitute destroys willingness to pay
    const double tiny = amkt::inelasticity_threshold(AgentValuation(1.0, 1.0 - 1e-9, 0.2));
    CHECK(tiny > 0.0);
    CHECK(tiny < 1e-8);
}

TEST_CASE("short-run inelasticity check compares toll against willingness to pay") {
    const AgentValuation av(1.0, 0.7, 0.2); // threshold 0.3
    CHECK(amkt::assumption_a_valid(pub(0.1, 2.0), 0.5, av));   // toll 0.1
    CHECK(!amkt::assumption_a_valid(pub(0.1, 8.0), 0.5, av));  // toll 0.4
    CHECK(amkt::assumption_a_valid(pub(0.1, 8.0), 0.0, av));   // zero traffic
}

TEST_CASE("best strategy evaluates the full menu and picks tolling when a > 0") {
    const auto out = amkt::best_strategy(pub(0.1, 2.0, 0.01, 0.6), 1.0, 0.5);
    CHECK(out.chosen == Strategy::Tolling);
    CHECK(out.revenue_null == doctest::Approx(0.05).epsilon(1e-12));
    CHECK(out.revenue_blocking == doctest::Approx(0.03).epsilon(1e-12));
    CHECK(out.revenue_tolling == doctest::Approx(0.0525).epsilon(1e-12));
    CHECK(out.optimal_toll == doctest::Approx(0.1).epsilon(1e-12));
    CHECK(!out.assumption_a_valid.has_value());

    const auto at_zero = amkt::best_strategy(pub(0.3, 2.0), 1.0, 0.0);
    CHECK(at_zero.chosen == Strategy::Null);
    CHECK(at_zero.revenue_tolling == at_zero.revenue_null);

    const auto flagged =
        amkt::best_strategy(pub(0.1, 8.0), 1.0, 0.5, AgentValuation(1.0, 0.7, 0.2));
    CHECK(flagged.chosen == Strategy::Tolling); // revenues stay as computed
    CHECK(flagged.assumption_a_valid.has_value());
    CHECK(!*flagged.assumption_a_valid);
}

TEST_CASE("roster validation checks emptiness and the share sum") {
    CHECK_THROWS_AS(amkt::validate_roster({}), amkt::EmptyRoster);
    std::vector<PublisherProfile> bad{PublisherProfile("a", 0.5, 1.0, 0.01, 0.5, 0.0),
                                      PublisherProfile("b", 0.6, 1.0, 0.01, 0.5, 0.0)};
    CHECK_THROWS_AS(amkt::validate_roster(bad), amkt::DomainError);
    std::vector<PublisherProfile> good{PublisherProfile("a", 0.5, 1.0, 0.01, 0.5, 0.0),
                                       PublisherProfile("b", 0.5, 1.0, 0.01, 0.5, 0.0)};
    CHECK_NOTHROW(amkt::validate_roster(good));
}
