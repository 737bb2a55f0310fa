#pragma once

#include <string>
#include <variant>

#include "amkt/errors.hpp"

namespace amkt {

enum class CostFamily { Uniform, Exponential, Logistic };

/// Private delegation-cost law c ~ F. Immutable; all member functions are
/// pure, so instances can be shared freely across threads.
///
/// Out-of-support cdf queries clamp to {0,1} instead of throwing: downstream
/// equilibrium formulas evaluate F at arguments that legitimately fall outside
/// the support, where the clamped value is the correct corner answer.
class CostDistribution {
public:
    struct Uniform {
        double lo;
        double hi;
    };
    struct Exponential {
        double rate;
    };
    struct Logistic {
        double location;
        double scale;
    };
    using Spec = std::variant<Uniform, Exponential, Logistic>;

    explicit CostDistribution(Spec spec);

    static CostDistribution uniform(double lo, double hi) { return CostDistribution(Uniform{lo, hi}); }
    static CostDistribution exponential(double rate) { return CostDistribution(Exponential{rate}); }
    static CostDistribution logistic(double location, double scale) {
        return CostDistribution(Logistic{location, scale});
    }

    CostFamily family() const noexcept;
    const Spec& spec() const noexcept { return spec_; }

    /// -inf / +inf for unbounded ends (Exponential above, Logistic both).
    double support_lo() const noexcept;
    double support_hi() const noexcept;
    bool bounded_below() const noexcept;
    bool bounded_above() const noexcept;

    /// F(c), clamped to [0,1]; 0 below the support, 1 above it.
    double cdf(double c) const noexcept;

    /// f(c); zero outside the support, strictly positive inside.
    double pdf(double c) const noexcept;

    /// inf{c : F(c) >= u}. Endpoints map to the support bounds; an unbounded
    /// bound raises UnboundedQuantile rather than returning an infinity.
    double quantile(double u) const;

    /// Human-readable spec, e.g. "uniform(0,1)". Used in diagnostics.
    std::string describe() const;

private:
    Spec spec_;
};

} // namespace amkt
