#pragma once

#include "robust_pricing/distribution.hpp"
#include "robust_pricing/market.hpp"

#include <algorithm>
#include <string_view>

namespace robust_pricing {

/// Which closed-form piece of the worst-case tail is active at a price.
enum class TailRegion { Cantelli, MeanSupport, ThreePoint, Zero };

inline std::string_view region_name(TailRegion r) {
    switch (r) {
    case TailRegion::Cantelli: return "Cantelli";
    case TailRegion::MeanSupport: return "MeanSupport";
    case TailRegion::ThreePoint: return "ThreePoint";
    case TailRegion::Zero: return "Zero";
    }
    return "Unknown";
}

struct TailBoundResult {
    double value;
    TailRegion region;
    double price;
};

inline void check_price(const MarketInfo& m, double p) {
    if (!(p > 0.0) || !(p <= m.beta()))
        throw PricingError(ErrorCode::PriceOutOfRange, "require 0 < p <= beta");
}

/// Region tag at p. At a shared breakpoint the leftmost piece wins, except
/// that any price at or beyond v_lo2 is tagged Zero.
inline TailRegion tail_region(const MarketInfo& m, double p) {
    if (m.sigma_hi() == 0.0) return p <= m.mu() ? TailRegion::Cantelli : TailRegion::Zero;
    const Breakpoints bp = breakpoints(m);
    if (p >= bp.v_lo2 - kBreakpointTol) return TailRegion::Zero;
    if (p <= bp.v_bar1 + kBreakpointTol) return TailRegion::Cantelli;
    if (p <= bp.v_lo1 + kBreakpointTol) return TailRegion::MeanSupport;
    return TailRegion::ThreePoint;
}

/**
 * Tight lower bound inf P(X >= p) over every distribution on [0, beta] with
 * mean mu and standard deviation in [sigma_lo, sigma_hi].
 *
 * The four pieces meet continuously at the breakpoints. For sigma_hi = 0 the
 * set is the point mass at mu, and the weak tail at p = mu is 1.
 */
inline TailBoundResult worst_case_tail(const MarketInfo& m, double p) {
    check_price(m, p);
    const double mu = m.mu();
    const double beta = m.beta();
    const TailRegion region = tail_region(m, p);
    double value = 0.0;
    switch (region) {
    case TailRegion::Cantelli:
        if (m.sigma_hi() == 0.0) {
            value = 1.0;
        } else {
            const double d2 = (mu - p) * (mu - p);
            value = d2 / (d2 + m.sigma_hi() * m.sigma_hi());
        }
        break;
    case TailRegion::MeanSupport:
        value = (mu - p) / (beta - p);
        break;
    case TailRegion::ThreePoint:
        value = (mu * mu + m.sigma_lo() * m.sigma_lo() - mu * p) / (beta * (beta - p));
        break;
    case TailRegion::Zero:
        value = 0.0;
        break;
    }
    return {std::clamp(value, 0.0, 1.0), region, p};
}

namespace detail {

inline void clamp_and_normalize(std::vector<double>& probs) {
    double total = 0.0;
    for (double& q : probs) {
        if (q < 0.0 && q > -1e-12) q = 0.0;
        total += q;
    }
    for (double& q : probs) q /= total;
}

} // namespace detail

/**
 * A member of the ambiguity set whose mass strictly above p equals the
 * worst-case tail, built from the complementary-slackness support points of
 * the active piece:
 *   Cantelli     {p, mu + sigma_hi^2/(mu - p)}
 *   MeanSupport  {p, beta}
 *   ThreePoint   {0, p, beta}
 *   Zero         {mu - sigma_lo^2/(p - mu), p}
 */
inline DiscreteDistribution witness_distribution(const MarketInfo& m, double p) {
    check_price(m, p);
    const double mu = m.mu();
    const double beta = m.beta();
    const double slo2 = m.sigma_lo() * m.sigma_lo();
    const double shi2 = m.sigma_hi() * m.sigma_hi();

    DiscreteDistribution d;
    switch (tail_region(m, p)) {
    case TailRegion::Cantelli: {
        if (shi2 == 0.0) return {{mu}, {1.0}};
        const double gap = mu - p;
        const double alpha = std::min(beta, mu + shi2 / gap);
        const double at_p = shi2 / (gap * gap + shi2);
        d = {{p, alpha}, {at_p, 1.0 - at_p}};
        break;
    }
    case TailRegion::MeanSupport:
        d = {{p, beta}, {(beta - mu) / (beta - p), (mu - p) / (beta - p)}};
        break;
    case TailRegion::ThreePoint: {
        const double at_beta = (mu * mu + slo2 - mu * p) / (beta * (beta - p));
        const double at_zero = ((beta - mu) * (p - mu) + slo2) / (beta * p);
        d = {{0.0, p, beta}, {at_zero, 1.0 - at_zero - at_beta, at_beta}};
        break;
    }
    case TailRegion::Zero: {
        if (slo2 == 0.0) return {{mu}, {1.0}};
        const double gap = p - mu;
        const double alpha_bar = std::max(0.0, mu - slo2 / gap);
        const double at_p = slo2 / (gap * gap + slo2);
        d = {{alpha_bar, p}, {1.0 - at_p, at_p}};
        break;
    }
    }
    detail::clamp_and_normalize(d.probs);
    return d;
}

} // namespace robust_pricing
