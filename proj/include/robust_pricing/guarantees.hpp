#pragma once

#include "robust_pricing/distribution.hpp"
#include "robust_pricing/pricing.hpp"

#include <cmath>
#include <string_view>

namespace robust_pricing {

enum class RatioKind { RhoL, RhoM, RhoH };

inline std::string_view ratio_name(RatioKind k) {
    switch (k) {
    case RatioKind::RhoL: return "RhoL";
    case RatioKind::RhoM: return "RhoM";
    case RatioKind::RhoH: return "RhoH";
    }
    return "Unknown";
}

/// Worst-case revenue of the robust price relative to the Markov bound mu.
struct GuaranteeReport {
    double ratio;
    RatioKind ratio_kind;
    double opt_upper_bound;
};

/// No distribution with mean mu earns more than mu at any posted price.
inline double markov_opt_bound(const MarketInfo& m) { return m.mu(); }

/// Two-point distribution {0, p} that attains the Markov bound. Feasible for
/// p in [mu + sigma_lo^2/mu, mu + sigma_hi^2/mu] (and p <= beta).
inline DiscreteDistribution markov_witness(const MarketInfo& m, double p) {
    const double lo = m.mu() + m.sigma_lo() * m.sigma_lo() / m.mu();
    const double hi = m.mu() + m.sigma_hi() * m.sigma_hi() / m.mu();
    if (p < lo - kBreakpointTol || p > hi + kBreakpointTol || p > m.beta())
        throw PricingError(ErrorCode::PriceOutOfRange,
                           "Markov witness needs mu + sigma_lo^2/mu <= p <= mu + sigma_hi^2/mu");
    const double q = m.mu() / p;
    return {{0.0, p}, {1.0 - q, q}};
}

inline double rho_low(double mu, double sigma_hi) {
    if (sigma_hi == 0.0) return 1.0;
    const double k = kappa(mu, sigma_hi);
    return 0.5 * (sigma_hi / mu) * k * k * k;
}

inline double rho_mid(double mu, double beta) {
    return 2.0 / mu * (beta - std::sqrt(beta * (beta - mu))) - 1.0;
}

inline double rho_high(double mu, double sigma_lo, double beta) {
    const double q = (mu * mu + sigma_lo * sigma_lo) / (mu * beta);
    return 2.0 * (1.0 - std::sqrt(std::max(0.0, 1.0 - q))) - q;
}

inline GuaranteeReport guarantee_ratio(const MarketInfo& m) {
    switch (classify_region(m)) {
    case PriceRegion::SigmaL:
        return {rho_low(m.mu(), m.sigma_hi()), RatioKind::RhoL, m.mu()};
    case PriceRegion::SigmaM:
        return {rho_mid(m.mu(), m.beta()), RatioKind::RhoM, m.mu()};
    case PriceRegion::SigmaH:
        break;
    }
    return {rho_high(m.mu(), m.sigma_lo(), m.beta()), RatioKind::RhoH, m.mu()};
}

} // namespace robust_pricing
