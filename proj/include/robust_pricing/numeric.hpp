#pragma once

#include <charconv>
#include <cmath>
#include <concepts>
#include <string>

namespace robust_pricing::numeric {

struct RootResult {
    double x;
    double residual;
    int iterations;
};

/**
 * Bisection for a sign change of f on [lo, hi]. Stops when |f| <= ftol or the
 * bracket has collapsed to adjacent doubles.
 */
template <std::invocable<double> F>
RootResult bisect(F&& f, double lo, double hi, double ftol = 1e-12, int max_iter = 200) {
    double flo = f(lo);
    if (flo == 0.0) return {lo, 0.0, 0};
    double fhi = f(hi);
    if (fhi == 0.0) return {hi, 0.0, 0};
    double mid = 0.5 * (lo + hi);
    double fmid = f(mid);
    int it = 0;
    for (; it < max_iter; ++it) {
        mid = 0.5 * (lo + hi);
        fmid = f(mid);
        if (std::abs(fmid) <= ftol || mid <= lo || mid >= hi) break;
        if ((fmid < 0.0) == (flo < 0.0)) {
            lo = mid;
            flo = fmid;
        } else {
            hi = mid;
        }
    }
    return {mid, fmid, it};
}

/// Golden-section search for the maximum of a unimodal f on [lo, hi].
template <std::invocable<double> F>
double golden_max(F&& f, double lo, double hi, double xtol = 1e-10) {
    const double invphi = (std::sqrt(5.0) - 1.0) / 2.0;
    double a = lo, b = hi;
    double c = b - invphi * (b - a);
    double d = a + invphi * (b - a);
    double fc = f(c), fd = f(d);
    while (b - a > xtol) {
        if (fc >= fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - invphi * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + invphi * (b - a);
            fd = f(d);
        }
    }
    return 0.5 * (a + b);
}

/// Locale-independent decimal with at most 12 significant digits.
inline std::string format_number(double x) {
    if (x == 0.0) return "0";
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof(buf), x, std::chars_format::general, 12);
    return std::string(buf, res.ptr);
}

/// Round-trips x through its 12-digit text form.
inline double round12(double x) {
    const std::string s = format_number(x);
    double out = 0.0;
    std::from_chars(s.data(), s.data() + s.size(), out);
    return out;
}

} // namespace robust_pricing::numeric
