#pragma once

#include "robust_pricing/market.hpp"
#include "robust_pricing/numeric.hpp"
#include "robust_pricing/tailbound.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <optional>
#include <string_view>

namespace robust_pricing {

/// Worst-case expected revenue p * inf P(X >= p).
inline double worst_case_revenue(const MarketInfo& m, double p) {
    return p * worst_case_tail(m, p).value;
}

// Unconstrained revenue branches. Each equals the worst-case revenue on its own
// price interval.

/// Mean-variance (Cantelli) branch: p (mu - p)^2 / ((mu - p)^2 + sigma^2).
inline double revenue_low(double p, double mu, double sigma) {
    const double d2 = (mu - p) * (mu - p);
    if (d2 == 0.0 && sigma == 0.0) return p;
    return p * d2 / (d2 + sigma * sigma);
}

/// Mean-support branch: p (mu - p) / (beta - p).
inline double revenue_mid(double p, double mu, double beta) { return p * (mu - p) / (beta - p); }

/// Three-point branch: p (mu (mu - p) + sigma_lo^2) / (beta (beta - p)).
inline double revenue_high(double p, double mu, double sigma_lo, double beta) {
    return p * (mu * (mu - p) + sigma_lo * sigma_lo) / (beta * (beta - p));
}

/**
 * Real root of the depressed cubic behind the low price. The second cube
 * root has a negative argument; it is taken on the real branch, written via
 * the conjugate -1/(r + sqrt(1 + r^2)) to avoid cancellation for small sigma.
 */
inline double kappa(double mu, double sigma) {
    const double r = mu / sigma;
    const double plus = r + std::sqrt(1.0 + r * r);
    return std::cbrt(plus) + std::cbrt(-1.0 / plus);
}

/// Maximizer of revenue_low; mu itself when sigma = 0.
inline double low_price(double mu, double sigma) {
    if (sigma == 0.0) return mu;
    return mu - sigma * kappa(mu, sigma);
}

/// Maximizer of revenue_mid on [0, mu].
inline double mid_price(double mu, double beta) { return beta - std::sqrt(beta * (beta - mu)); }

/// Maximizer of revenue_high.
inline double high_price(double mu, double sigma_lo, double beta) {
    const double c = mu + sigma_lo * sigma_lo / mu;
    return beta - std::sqrt(std::max(0.0, beta * (beta - c)));
}

inline double price_low(const MarketInfo& m) { return low_price(m.mu(), m.sigma_hi()); }
inline double price_mid(const MarketInfo& m) { return mid_price(m.mu(), m.beta()); }
inline double price_high(const MarketInfo& m) {
    return high_price(m.mu(), m.sigma_lo(), m.beta());
}

struct PriceCandidates {
    double p_low;
    double p_mid;
    double p_high;
    double kappa; // 0 when sigma_hi = 0
};

inline PriceCandidates candidates(const MarketInfo& m) {
    return {price_low(m), price_mid(m), price_high(m),
            m.sigma_hi() > 0.0 ? kappa(m.mu(), m.sigma_hi()) : 0.0};
}

/// Best value of each branch at its own maximizer.
inline double best_revenue_low(double mu, double sigma) {
    return revenue_low(low_price(mu, sigma), mu, sigma);
}
inline double best_revenue_mid(double mu, double beta) {
    return revenue_mid(mid_price(mu, beta), mu, beta);
}
inline double best_revenue_high(double mu, double sigma_lo, double beta) {
    return revenue_high(high_price(mu, sigma_lo, beta), mu, sigma_lo, beta);
}

namespace detail {

// sigma_lo at which the best three-point revenue reaches `target`.
inline double sigma_lo_for_high_revenue(double target, double mu, double beta) {
    const double radicand = 2.0 * beta * std::sqrt(target * mu) - beta * target - mu * mu;
    return std::clamp(std::sqrt(std::max(0.0, radicand)), 0.0, max_sigma(mu, beta));
}

} // namespace detail

/// Upper-sigma level above which the mid price beats the low price.
inline double threshold_f(double mu, double beta) {
    const double gap = beta - mu;
    return std::sqrt(32.0 / 27.0 * gap * (std::sqrt(beta * gap) - gap));
}

/// Lower-sigma level above which the high price beats the mid price.
inline double threshold_g(double mu, double beta) {
    return detail::sigma_lo_for_high_revenue(best_revenue_mid(mu, beta), mu, beta);
}

/// Lower-sigma level above which the high price beats the low price at sigma_hi.
inline double threshold_h(double sigma_hi, double mu, double beta) {
    return detail::sigma_lo_for_high_revenue(best_revenue_low(mu, sigma_hi), mu, beta);
}

/**
 * Volatility at which, with sigma known exactly, the best low-price revenue
 * equals the best high-price revenue. The difference is strictly decreasing
 * in sigma, so bisection on (0, sigma_max) finds the unique root.
 */
inline double low_high_switch(double mu, double beta) {
    const double smax = max_sigma(mu, beta);
    const double eps = 1e-9 * smax;
    auto gap = [&](double s) {
        return best_revenue_low(mu, s) - best_revenue_high(mu, s, beta);
    };
    return numeric::bisect(gap, eps, smax - eps, 1e-12, 200).x;
}

struct Thresholds {
    double f_val;
    double g_val;
    double h_val;
    double sigma_bar_star;
    std::optional<double> sigma_star; // only for sigma_lo == sigma_hi
};

inline Thresholds thresholds(const MarketInfo& m) {
    const double f = threshold_f(m.mu(), m.beta());
    Thresholds t{f, threshold_g(m.mu(), m.beta()), threshold_h(m.sigma_hi(), m.mu(), m.beta()), f,
                 std::nullopt};
    if (m.precise_sigma()) t.sigma_star = low_high_switch(m.mu(), m.beta());
    return t;
}

enum class PriceRegion { SigmaL, SigmaM, SigmaH };

inline std::string_view region_name(PriceRegion r) {
    switch (r) {
    case PriceRegion::SigmaL: return "SigmaL";
    case PriceRegion::SigmaM: return "SigmaM";
    case PriceRegion::SigmaH: return "SigmaH";
    }
    return "Unknown";
}

/// Which of the three prices is optimal; sets are checked low, mid, high.
inline PriceRegion classify_region(const MarketInfo& m) {
    const double f = threshold_f(m.mu(), m.beta());
    const double g = threshold_g(m.mu(), m.beta());
    const double h = threshold_h(m.sigma_hi(), m.mu(), m.beta());
    const double lo = m.sigma_lo();
    const double hi = m.sigma_hi();
    if (lo <= h && hi <= f) return PriceRegion::SigmaL;
    if (lo <= g && hi >= f) return PriceRegion::SigmaM;
    return PriceRegion::SigmaH;
}

struct PricingDecision {
    double price;
    PriceRegion region;
    double worst_case_revenue;
    PriceCandidates candidates;
};

inline double candidate_price(const PriceCandidates& c, PriceRegion r) {
    switch (r) {
    case PriceRegion::SigmaL: return c.p_low;
    case PriceRegion::SigmaM: return c.p_mid;
    case PriceRegion::SigmaH: return c.p_high;
    }
    return c.p_low;
}

/**
 * Optimal robust price. The region decides the candidate; if a higher-priced
 * candidate earns the same worst-case revenue (within 1e-12) it is posted
 * instead.
 */
inline PricingDecision optimal_price(const MarketInfo& m) {
    const PriceCandidates cand = candidates(m);
    PriceRegion region = classify_region(m);
    double price = candidate_price(cand, region);
    double revenue = worst_case_revenue(m, price);

    constexpr std::array all{PriceRegion::SigmaL, PriceRegion::SigmaM, PriceRegion::SigmaH};
    for (PriceRegion r : all) {
        const double p = candidate_price(cand, r);
        if (p <= price || p <= 0.0 || p > m.beta()) continue;
        const double rev = worst_case_revenue(m, p);
        if (rev >= revenue - 1e-12) {
            region = r;
            price = p;
            revenue = rev;
        }
    }
    return {price, region, revenue, cand};
}

} // namespace robust_pricing
