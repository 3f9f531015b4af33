#pragma once

#include "robust_pricing/pricing.hpp"

#include <algorithm>
#include <cmath>

namespace robust_pricing {

/// Bundle of `size` goods with i.i.d. valuations described by `base`.
struct BundleQuery {
    MarketInfo base;
    int size;
};

struct BundleDecision {
    PricingDecision per_good;
    int size;
    double bundle_price; // size * per_good.price
};

/// Per-good average of the bundle: same mean and bound, sigma scaled by 1/sqrt(size).
inline MarketInfo bundle_market(const BundleQuery& q) {
    if (q.size < 1) throw PricingError(ErrorCode::DomainError, "bundle size must be >= 1");
    const double scale = 1.0 / std::sqrt(static_cast<double>(q.size));
    const MarketInfo& b = q.base;
    return MarketInfo::validate(b.mu(), b.sigma_lo() * scale, b.sigma_hi() * scale, b.beta());
}

inline BundleDecision bundle_price(const BundleQuery& q) {
    const PricingDecision d = optimal_price(bundle_market(q));
    return {d, q.size, q.size * d.price};
}

/**
 * Bundle size beyond which the low price is guaranteed optimal when sigma is
 * known exactly. Sufficient, not necessary; grows linearly in sigma^2.
 */
inline double bundle_threshold(const MarketInfo& base) {
    if (!base.precise_sigma())
        throw PricingError(ErrorCode::SigmaOrder, "bundle threshold needs sigma_lo == sigma_hi");
    const double mu = base.mu();
    const double beta = base.beta();
    const double s2 = base.sigma_hi() * base.sigma_hi();
    const double coef = ((1.0 + std::sqrt((beta + 3.0 * mu) / (beta - mu))) * beta + 2.0 * mu) /
                        (2.0 * mu * mu * (beta - mu));
    return coef * s2;
}

/// Smallest integer bundle size covered by bundle_threshold (at least 1).
inline int recommended_bundle_size(const MarketInfo& base) {
    return std::max(1, static_cast<int>(std::ceil(bundle_threshold(base))));
}

} // namespace robust_pricing
