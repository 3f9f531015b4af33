#pragma once

#include <algorithm>
#include <cstddef>
#include <numeric>
#include <vector>

namespace robust_pricing {

/// Finite-support valuation distribution.
struct DiscreteDistribution {
    std::vector<double> atoms;
    std::vector<double> probs;

    std::size_t size() const noexcept { return atoms.size(); }

    double total_mass() const { return std::accumulate(probs.begin(), probs.end(), 0.0); }

    double mean() const {
        double s = 0.0;
        for (std::size_t i = 0; i < atoms.size(); ++i) s += atoms[i] * probs[i];
        return s;
    }

    double second_moment() const {
        double s = 0.0;
        for (std::size_t i = 0; i < atoms.size(); ++i) s += atoms[i] * atoms[i] * probs[i];
        return s;
    }

    /// P(X > p)
    double tail_strict(double p) const {
        double s = 0.0;
        for (std::size_t i = 0; i < atoms.size(); ++i)
            if (atoms[i] > p) s += probs[i];
        return s;
    }

    /// P(X >= p)
    double tail_weak(double p) const {
        double s = 0.0;
        for (std::size_t i = 0; i < atoms.size(); ++i)
            if (atoms[i] >= p) s += probs[i];
        return s;
    }

    /// Best posted-price revenue sup_p p P(X >= p); attained at an atom.
    double optimal_revenue() const {
        double best = 0.0;
        for (double a : atoms) best = std::max(best, a * tail_weak(a));
        return best;
    }
};

} // namespace robust_pricing
