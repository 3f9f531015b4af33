#pragma once

#include "robust_pricing/market.hpp"
#include "robust_pricing/numeric.hpp"
#include "robust_pricing/tailbound.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <utility>
#include <vector>

namespace robust_pricing {

/// Expected M/M/1 sojourn delay gamma / (theta (theta - gamma)).
inline double waiting_time(double gamma, double theta) {
    if (gamma < 0.0 || gamma >= theta)
        throw PricingError(ErrorCode::RateOutOfRange, "require 0 <= gamma < theta");
    return gamma / (theta * (theta - gamma));
}

/// Delay model: continuous, strictly increasing, zero at gamma = 0.
using WaitingTimeFn = std::function<double(double gamma, double theta)>;

/// Unobservable single-server queue with rational customers.
struct QueueMarket {
    MarketInfo market;
    double lambda;    // potential arrival rate
    double theta;     // service rate
    double hold_cost; // waiting cost per unit time
    WaitingTimeFn wait = waiting_time;

    static QueueMarket make(const MarketInfo& m, double lambda, double theta, double hold_cost) {
        if (!(lambda > 0.0) || !(theta > 0.0) || !(hold_cost >= 0.0) || !std::isfinite(lambda) ||
            !std::isfinite(theta) || !std::isfinite(hold_cost))
            throw PricingError(ErrorCode::DomainError,
                               "require lambda > 0, theta > 0, hold_cost >= 0");
        return {m, lambda, theta, hold_cost};
    }
};

struct Equilibrium {
    double gamma_star;
    double residual; // gamma* - lambda * tail(p + h W(gamma*))
    double revenue;  // p * gamma*
};

/// Worst-case joining probability at an effective threshold x (0 beyond beta).
inline double joining_probability(const MarketInfo& m, double x) {
    if (x > m.beta()) return 0.0;
    return worst_case_tail(m, x).value;
}

namespace detail {

// lambda * inf P(X > p + h W(gamma)); W is infinite at or beyond theta.
inline double queue_rhs(const QueueMarket& q, double p, double gamma) {
    if (gamma >= q.theta) return 0.0;
    const double x = p + q.hold_cost * q.wait(std::max(0.0, gamma), q.theta);
    return q.lambda * joining_probability(q.market, x);
}

} // namespace detail

/**
 * Robust equilibrium arrival rate at price p: the unique gamma with
 * gamma = lambda * inf_P P(X > p + h W(gamma)). The left side increases and
 * the right side does not, so the crossing is bracketed on [0, theta).
 * Without waiting cost there is no feedback and gamma* = lambda * tail(p).
 */
inline Equilibrium equilibrium(const QueueMarket& q, double p) {
    if (!(p > 0.0)) throw PricingError(ErrorCode::PriceOutOfRange, "require p > 0");
    if (q.hold_cost == 0.0) {
        const double g = q.lambda * joining_probability(q.market, p);
        return {g, 0.0, p * g};
    }
    auto defect = [&](double g) { return g - detail::queue_rhs(q, p, g); };
    const double cap = q.theta * (1.0 - 1e-12);
    double gamma = 0.0;
    if (defect(0.0) < 0.0) {
        // tolerance 0 runs the bracket down to adjacent doubles
        gamma = numeric::bisect(defect, 0.0, cap, 0.0, 2000).x;
    }
    return {gamma, defect(gamma), p * gamma};
}

/// Damped fixed-point iteration for the same equation; independent check.
inline double equilibrium_damped(const QueueMarket& q, double p, double damping = 0.5,
                                 int iterations = 10000) {
    double g = 0.0;
    for (int i = 0; i < iterations; ++i) {
        const double next = (1.0 - damping) * g + damping * detail::queue_rhs(q, p, g);
        if (next == g) break;
        g = next;
    }
    return g;
}

/// Upper bound on gamma* for the mean-support ambiguity set; exact as lambda grows.
inline double gamma_max(const QueueMarket& q, double p) {
    const double theta = q.theta;
    const double h = q.hold_cost;
    const double denom = theta * q.market.mu() + h - theta * p;
    if (!(denom > 0.0))
        throw PricingError(ErrorCode::DomainError, "theta mu + h - theta p must be positive");
    return theta - theta * h / denom;
}

/// Maximizer of p * gamma_max(p).
inline double p_max(const QueueMarket& q) {
    const double h = q.hold_cost;
    return q.market.mu() - (std::sqrt(h * h + q.theta * h * q.market.mu()) - h) / q.theta;
}

struct QueuePriceResult {
    double price;
    Equilibrium equilibrium;
};

/// Revenue-maximizing price for the queue. The revenue curve can be bimodal,
/// so a 2001-point scan on (0, v_lo2] picks the two best local maxima and each
/// is refined by golden-section search.
inline QueuePriceResult optimal_queue_price(const QueueMarket& q, int grid_points = 2001) {
    const MarketInfo& m = q.market;
    double upper = breakpoints(m).v_lo2;
    if (m.sigma_hi() == 0.0) upper = m.mu();
    upper = std::min(upper, m.beta());

    auto revenue = [&](double p) { return equilibrium(q, p).revenue; };

    const int n = grid_points;
    std::vector<double> prices(n), values(n);
    for (int k = 0; k < n; ++k) {
        prices[k] = upper * (k + 1) / n;
        values[k] = revenue(prices[k]);
    }

    std::vector<int> peaks;
    for (int k = 0; k < n; ++k) {
        const bool left_ok = k == 0 || values[k] >= values[k - 1];
        const bool right_ok = k == n - 1 || values[k] > values[k + 1];
        if (left_ok && right_ok) peaks.push_back(k);
    }
    std::sort(peaks.begin(), peaks.end(), [&](int a, int b) {
        return values[a] > values[b] || (values[a] == values[b] && a > b);
    });
    if (peaks.size() > 2) peaks.resize(2);

    double best_p = prices[n - 1];
    double best_r = -std::numeric_limits<double>::infinity();
    for (int k : peaks) {
        const double lo = k == 0 ? upper * 1e-9 : prices[k - 1];
        const double hi = k == n - 1 ? prices[k] : prices[k + 1];
        double p = numeric::golden_max(revenue, lo, hi, 1e-9);
        double r = revenue(p);
        if (values[k] > r) {
            p = prices[k];
            r = values[k];
        }
        if (r > best_r || (r == best_r && p > best_p)) {
            best_r = r;
            best_p = p;
        }
    }
    return {best_p, equilibrium(q, best_p)};
}

} // namespace robust_pricing
