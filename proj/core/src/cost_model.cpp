#include "amkt/cost_model.hpp"

#include <cmath>
#include <limits>
#include <sstream>

namespace amkt {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void validate(const CostDistribution::Spec& spec) {
    if (const auto* u = std::get_if<CostDistribution::Uniform>(&spec)) {
        if (!(u->lo < u->hi) || !std::isfinite(u->lo) || !std::isfinite(u->hi)) {
            throw DomainError("uniform cost distribution requires finite lo < hi");
        }
    } else if (const auto* e = std::get_if<CostDistribution::Exponential>(&spec)) {
        if (!(e->rate > 0.0) || !std::isfinite(e->rate)) {
            throw DomainError("exponential cost distribution requires rate > 0");
        }
    } else {
        const auto& l = std::get<CostDistribution::Logistic>(spec);
        if (!(l.scale > 0.0) || !std::isfinite(l.scale) || !std::isfinite(l.location)) {
            throw DomainError("logistic cost distribution requires finite location and scale > 0");
        }
    }
}

} // namespace

CostDistribution::CostDistribution(Spec spec) : spec_(spec) { validate(spec_); }

CostFamily CostDistribution::family() const noexcept {
    switch (spec_.index()) {
    case 0: return CostFamily::Uniform;
    case 1: return CostFamily::Exponential;
    default: return CostFamily::Logistic;
    }
}

double CostDistribution::support_lo() const noexcept {
    if (const auto* u = std::get_if<Uniform>(&spec_)) return u->lo;
    if (std::holds_alternative<Exponential>(spec_)) return 0.0;
    return -kInf;
}

double CostDistribution::support_hi() const noexcept {
    if (const auto* u = std::get_if<Uniform>(&spec_)) return u->hi;
    return kInf;
}

bool CostDistribution::bounded_below() const noexcept { return support_lo() > -kInf; }

bool CostDistribution::bounded_above() const noexcept { return support_hi() < kInf; }

double CostDistribution::cdf(double c) const noexcept {
    if (const auto* u = std::get_if<Uniform>(&spec_)) {
        if (c <= u->lo) return 0.0;
        if (c >= u->hi) return 1.0;
        return (c - u->lo) / (u->hi - u->lo);
    }
    if (const auto* e = std::get_if<Exponential>(&spec_)) {
        if (c <= 0.0) return 0.0;
        return -std::expm1(-e->rate * c);
    }
    const auto& l = std::get<Logistic>(spec_);
    // tanh form stays accurate in both tails
    const double z = (c - l.location) / l.scale;
    return 0.5 * (1.0 + std::tanh(0.5 * z));
}

double CostDistribution::pdf(double c) const noexcept {
    if (const auto* u = std::get_if<Uniform>(&spec_)) {
        if (c < u->lo || c > u->hi) return 0.0;
        return 1.0 / (u->hi - u->lo);
    }
    if (const auto* e = std::get_if<Exponential>(&spec_)) {
        if (c < 0.0) return 0.0;
        return e->rate * std::exp(-e->rate * c);
    }
    const auto& l = std::get<Logistic>(spec_);
    const double z = (c - l.location) / l.scale;
    const double sech = 1.0 / std::cosh(0.5 * z);
    return 0.25 * sech * sech / l.scale;
}

double CostDistribution::quantile(double u) const {
    if (!(u >= 0.0 && u <= 1.0)) {
        throw DomainError("quantile argument must lie in [0,1]");
    }
    if (u == 0.0) {
        if (!bounded_below()) {
            throw UnboundedQuantile("quantile(0) of a distribution unbounded below");
        }
        return support_lo();
    }
    if (u == 1.0) {
        if (!bounded_above()) {
            throw UnboundedQuantile("quantile(1) of a distribution unbounded above");
        }
        return support_hi();
    }
    if (const auto* un = std::get_if<Uniform>(&spec_)) {
        return un->lo + u * (un->hi - un->lo);
    }
    if (const auto* e = std::get_if<Exponential>(&spec_)) {
        return -std::log1p(-u) / e->rate;
    }
    const auto& l = std::get<Logistic>(spec_);
    return l.location + l.scale * (std::log(u) - std::log1p(-u));
}

std::string CostDistribution::describe() const {
    std::ostringstream os;
    if (const auto* u = std::get_if<Uniform>(&spec_)) {
        os << "uniform(" << u->lo << "," << u->hi << ")";
    } else if (const auto* e = std::get_if<Exponential>(&spec_)) {
        os << "exponential(" << e->rate << ")";
    } else {
        const auto& l = std::get<Logistic>(spec_);
        os << "logistic(" << l.location << "," << l.scale << ")";
    }
    return os.str();
}

} // namespace amkt
