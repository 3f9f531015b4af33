#pragma once

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <string_view>

namespace robust_pricing {

/// Tolerance for equality comparisons on breakpoints, in currency units.
inline constexpr double kBreakpointTol = 1e-12;

enum class ErrorCode {
    MeanOutOfRange,
    SigmaOrder,
    SigmaInfeasible,
    PriceOutOfRange,
    RateOutOfRange,
    DomainError,
    Infeasible,
    SamplingFailed,
};

inline std::string_view error_name(ErrorCode code) {
    switch (code) {
    case ErrorCode::MeanOutOfRange: return "MeanOutOfRange";
    case ErrorCode::SigmaOrder: return "SigmaOrder";
    case ErrorCode::SigmaInfeasible: return "SigmaInfeasible";
    case ErrorCode::PriceOutOfRange: return "PriceOutOfRange";
    case ErrorCode::RateOutOfRange: return "RateOutOfRange";
    case ErrorCode::DomainError: return "DomainError";
    case ErrorCode::Infeasible: return "Infeasible";
    case ErrorCode::SamplingFailed: return "SamplingFailed";
    }
    return "Unknown";
}

/// Domain error carrying the name of the violated constraint.
class PricingError : public std::domain_error {
public:
    PricingError(ErrorCode code, const std::string& detail)
        : std::domain_error(std::string(error_name(code)) + ": " + detail), code_(code) {}

    ErrorCode code() const noexcept { return code_; }
    std::string_view name() const noexcept { return error_name(code_); }

private:
    ErrorCode code_;
};

/// Largest standard deviation of any distribution on [0, beta] with mean mu.
inline double max_sigma(double mu, double beta) { return std::sqrt(mu * (beta - mu)); }

/**
 * Moment/support information about the valuation distribution: mean mu,
 * standard deviation in [sigma_lo, sigma_hi], support inside [0, beta].
 *
 * Instances can only be obtained through validate(), so every MarketInfo
 * describes a non-empty ambiguity set.
 */
class MarketInfo {
public:
    static MarketInfo validate(double mu, double sigma_lo, double sigma_hi, double beta);

    double mu() const noexcept { return mu_; }
    double sigma_lo() const noexcept { return sigma_lo_; }
    double sigma_hi() const noexcept { return sigma_hi_; }
    double beta() const noexcept { return beta_; }

    bool precise_sigma() const noexcept { return sigma_lo_ == sigma_hi_; }
    double sigma_max() const noexcept { return max_sigma(mu_, beta_); }

    /// Second-moment band [sigma_lo^2 + mu^2, sigma_hi^2 + mu^2].
    double second_moment_lo() const noexcept { return sigma_lo_ * sigma_lo_ + mu_ * mu_; }
    double second_moment_hi() const noexcept { return sigma_hi_ * sigma_hi_ + mu_ * mu_; }

    friend bool operator==(const MarketInfo&, const MarketInfo&) = default;

private:
    MarketInfo(double mu, double sigma_lo, double sigma_hi, double beta)
        : mu_(mu), sigma_lo_(sigma_lo), sigma_hi_(sigma_hi), beta_(beta) {}

    double mu_;
    double sigma_lo_;
    double sigma_hi_;
    double beta_;
};

inline MarketInfo MarketInfo::validate(double mu, double sigma_lo, double sigma_hi, double beta) {
    if (!std::isfinite(mu) || !std::isfinite(sigma_lo) || !std::isfinite(sigma_hi) ||
        !std::isfinite(beta))
        throw PricingError(ErrorCode::DomainError, "market parameters must be finite");
    if (!(mu > 0.0) || !(mu < beta))
        throw PricingError(ErrorCode::MeanOutOfRange, "require 0 < mu < beta");
    if (sigma_lo < 0.0 || sigma_lo > sigma_hi)
        throw PricingError(ErrorCode::SigmaOrder, "require 0 <= sigma_lo <= sigma_hi");
    const double smax = max_sigma(mu, beta);
    // a few ulps of slack so that rescaled markets at the boundary stay valid
    if (sigma_hi > smax * (1.0 + 1e-14))
        throw PricingError(ErrorCode::SigmaInfeasible, "sigma_hi exceeds sqrt(mu (beta - mu))");
    sigma_hi = std::min(sigma_hi, smax);
    sigma_lo = std::min(sigma_lo, sigma_hi);
    return MarketInfo(mu, sigma_lo, sigma_hi, beta);
}

/// Prices at which the worst-case tail switches between its closed-form pieces.
struct Breakpoints {
    double v_bar1; // mu - sigma_hi^2 / (beta - mu)
    double v_lo1;  // mu - sigma_lo^2 / (beta - mu)
    double v_lo2;  // mu + sigma_lo^2 / mu
};

inline Breakpoints breakpoints(const MarketInfo& m) {
    const double mu = m.mu();
    const double gap = m.beta() - mu;
    return {mu - m.sigma_hi() * m.sigma_hi() / gap, mu - m.sigma_lo() * m.sigma_lo() / gap,
            mu + m.sigma_lo() * m.sigma_lo() / mu};
}

} // namespace robust_pricing
