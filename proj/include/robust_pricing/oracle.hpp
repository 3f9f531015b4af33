#pragma once

#include "robust_pricing/distribution.hpp"
#include "robust_pricing/market.hpp"
#include "robust_pricing/pricing.hpp"
#include "robust_pricing/simplex.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <random>
#include <utility>
#include <vector>

// Brute-force reference computations. Nothing here reuses the closed-form
// tail bound except grid_argmax_revenue, which scans it.
namespace robust_pricing::oracle {

struct GridSpec {
    int n_atoms = 2001;
    int n_prices = 100001;

    static GridSpec make(int n_atoms, int n_prices) {
        if (n_atoms < 3 || n_prices < 3)
            throw PricingError(ErrorCode::DomainError, "grid resolutions must be >= 3");
        return {n_atoms, n_prices};
    }
};

/// Band half-width applied to the second-moment constraints on the lattice.
inline constexpr double kMomentBand = 1e-9;

enum class TailKind { Strict, Weak };

struct LpTail {
    double value;
    double snapped_price; // grid point the indicator is evaluated at
};

/**
 * Minimum of P(X > p) (or P(X >= p)) over probability vectors on the uniform
 * lattice {0, beta/(n-1), ..., beta} plus the atom mu, subject to the mean and
 * second-moment constraints. p is snapped to the nearest lattice point.
 */
inline LpTail lp_worst_tail(const MarketInfo& m, double p, const GridSpec& g = {},
                            TailKind kind = TailKind::Strict) {
    if (!(p > 0.0) || !(p <= m.beta()))
        throw PricingError(ErrorCode::PriceOutOfRange, "require 0 < p <= beta");
    const double beta = m.beta();
    const int n = g.n_atoms;
    const double step = 1.0 / (n - 1);
    const double p_unit = std::round((p / beta) / step) * step;

    // work in units of beta
    std::vector<double> y(n + 1);
    for (int i = 0; i < n; ++i) y[i] = i * step;
    y[n] = m.mu() / beta;

    const std::size_t cols = y.size() + 2; // + upper and lower second-moment slacks
    std::vector<std::vector<double>> a(4, std::vector<double>(cols, 0.0));
    std::vector<double> cost(cols, 0.0);
    for (std::size_t i = 0; i < y.size(); ++i) {
        a[0][i] = 1.0;
        a[1][i] = y[i];
        a[2][i] = y[i] * y[i];
        a[3][i] = y[i] * y[i];
        const bool counted = kind == TailKind::Strict ? y[i] > p_unit : y[i] >= p_unit;
        cost[i] = counted ? 1.0 : 0.0;
    }
    a[2][cols - 2] = 1.0;  // sum y^2 q + s_hi = M_hi
    a[3][cols - 1] = -1.0; // sum y^2 q - s_lo = M_lo
    const double b2 = beta * beta;
    const std::vector<double> rhs{1.0, m.mu() / beta, (m.second_moment_hi() + kMomentBand) / b2,
                                  (m.second_moment_lo() - kMomentBand) / b2};

    lp::DenseSimplex lp(std::move(a), rhs, std::move(cost));
    const lp::Solution sol = lp.solve();
    if (sol.status != lp::Status::Optimal)
        throw PricingError(ErrorCode::Infeasible, "moment constraints infeasible on this lattice");
    return {std::clamp(sol.objective, 0.0, 1.0), p_unit * beta};
}

/**
 * Both worst-case tails, inf P(X >= p) and inf P(X > p), from the lattice LP.
 * They agree up to lattice resolution for any non-degenerate market.
 */
inline std::pair<double, double> strict_vs_weak_equivalence(const MarketInfo& m, double p,
                                                            const GridSpec& g = {}) {
    return {lp_worst_tail(m, p, g, TailKind::Weak).value,
            lp_worst_tail(m, p, g, TailKind::Strict).value};
}

/// Exhaustive scan of the worst-case revenue over beta k / (n - 1), k >= 1.
/// Ties go to the higher price.
inline std::pair<double, double> grid_argmax_revenue(const MarketInfo& m, const GridSpec& g = {}) {
    const int n = g.n_prices;
    double best_p = m.beta();
    double best_r = -1.0;
    for (int k = 1; k < n; ++k) {
        const double p = std::min(m.beta(), m.beta() * k / (n - 1));
        const double r = worst_case_revenue(m, p);
        if (r >= best_r) {
            best_r = r;
            best_p = p;
        }
    }
    return {best_p, best_r};
}

namespace detail {

// Uniform double in [0, 1) from the top 53 bits; identical on every platform.
inline double unit(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

inline double det3(const std::array<std::array<double, 3>, 3>& a) {
    return a[0][0] * (a[1][1] * a[2][2] - a[1][2] * a[2][1]) -
           a[0][1] * (a[1][0] * a[2][2] - a[1][2] * a[2][0]) +
           a[0][2] * (a[1][0] * a[2][1] - a[1][1] * a[2][0]);
}

} // namespace detail

/**
 * Random four-atom member of the ambiguity set. Atoms are drawn, the target
 * second moment is drawn from the band, and the probabilities solve the three
 * moment equations along the one-dimensional null space; draws whose solution
 * set misses the simplex are rejected.
 */
inline DiscreteDistribution sample_feasible_distribution(const MarketInfo& m, std::uint64_t seed,
                                                         int max_attempts = 10000) {
    std::mt19937_64 rng(seed);
    const double mu = m.mu();
    const double beta = m.beta();
    if (m.sigma_hi() == 0.0) return {{mu}, {1.0}};

    for (int attempt = 0; attempt < max_attempts; ++attempt) {
        const double target =
            m.second_moment_lo() + (m.second_moment_hi() - m.second_moment_lo()) * detail::unit(rng);
        // inner atoms are drawn near mu half the time so small variances stay reachable
        const bool local = detail::unit(rng) < 0.5;
        const double sd = std::sqrt(std::max(0.0, target - mu * mu));
        const double left = local ? std::min(mu, 2.0 * sd) : mu;
        const double right = local ? std::min(beta - mu, 2.0 * sd) : beta - mu;

        std::array<double, 4> x{};
        // endpoints are pinned half the time so extreme variances stay reachable
        const bool pin = detail::unit(rng) < 0.5;
        x[0] = pin ? 0.0 : mu * detail::unit(rng);
        x[1] = mu - left * detail::unit(rng);
        x[2] = mu + right * detail::unit(rng);
        x[3] = pin ? beta : mu + (beta - mu) * detail::unit(rng);
        const std::array<double, 3> rhs{1.0, mu, target};

        auto column = [&](int j) { return std::array<double, 3>{1.0, x[j], x[j] * x[j]}; };
        auto minor = [&](int skip) {
            std::array<std::array<double, 3>, 3> a{};
            int c = 0;
            for (int j = 0; j < 4; ++j) {
                if (j == skip) continue;
                const auto col = column(j);
                for (int r = 0; r < 3; ++r) a[r][c] = col[r];
                ++c;
            }
            return a;
        };

        // null vector: signed 3x3 minors
        std::array<double, 4> null{};
        for (int j = 0; j < 4; ++j) null[j] = (j % 2 == 0 ? 1.0 : -1.0) * detail::det3(minor(j));

        // particular solution with q[3] = 0 (Cramer)
        const auto base = minor(3);
        const double d = detail::det3(base);
        if (std::abs(d) < 1e-14) continue;
        std::array<double, 4> q{};
        for (int c = 0; c < 3; ++c) {
            auto a = base;
            for (int r = 0; r < 3; ++r) a[r][c] = rhs[r];
            q[c] = detail::det3(a) / d;
        }

        double t_lo = -std::numeric_limits<double>::infinity();
        double t_hi = std::numeric_limits<double>::infinity();
        for (int j = 0; j < 4; ++j) {
            if (null[j] > 0.0) t_lo = std::max(t_lo, -q[j] / null[j]);
            else if (null[j] < 0.0) t_hi = std::min(t_hi, -q[j] / null[j]);
            else if (q[j] < 0.0) t_lo = std::numeric_limits<double>::infinity();
        }
        if (!(t_lo <= t_hi) || !std::isfinite(t_lo) || !std::isfinite(t_hi)) continue;

        const double t = t_lo + (t_hi - t_lo) * detail::unit(rng);
        DiscreteDistribution dist;
        double total = 0.0;
        for (int j = 0; j < 4; ++j) {
            const double pj = std::max(0.0, q[j] + t * null[j]);
            dist.atoms.push_back(x[j]);
            dist.probs.push_back(pj);
            total += pj;
        }
        for (double& pj : dist.probs) pj /= total;

        const double mean_err = std::abs(dist.mean() - mu);
        const double m2 = dist.second_moment();
        if (mean_err > 1e-11 || m2 < m.second_moment_lo() - 1e-11 ||
            m2 > m.second_moment_hi() + 1e-11)
            continue;
        return dist;
    }
    throw PricingError(ErrorCode::SamplingFailed, "no feasible distribution after max attempts");
}

} // namespace robust_pricing::oracle
