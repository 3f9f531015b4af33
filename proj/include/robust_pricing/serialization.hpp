#pragma once

#include "robust_pricing/guarantees.hpp"
#include "robust_pricing/numeric.hpp"
#include "robust_pricing/pricing.hpp"
#include "robust_pricing/tailbound.hpp"

#include <nlohmann/json.hpp>

#include <string>

// JSON views of the public result types. Floating values are written with at
// most 12 significant digits so that output is byte-stable.
namespace robust_pricing {

using nlohmann::json;

namespace detail {
inline json num(double x) { return numeric::round12(x); }
} // namespace detail

inline json to_json(const MarketInfo& m) {
    return {{"mu", detail::num(m.mu())},
            {"sigma_lo", detail::num(m.sigma_lo())},
            {"sigma_hi", detail::num(m.sigma_hi())},
            {"beta", detail::num(m.beta())}};
}

/// Missing sigma_lo means 0; missing sigma_hi means the largest feasible value.
inline MarketInfo market_from_json(const json& j) {
    const double mu = j.at("mu").get<double>();
    const double beta = j.at("beta").get<double>();
    const double lo = j.value("sigma_lo", 0.0);
    const double hi = j.contains("sigma_hi") ? j.at("sigma_hi").get<double>()
                                             : (mu > 0.0 && mu < beta ? max_sigma(mu, beta) : 0.0);
    return MarketInfo::validate(mu, lo, hi, beta);
}

inline json to_json(const DiscreteDistribution& d) {
    json atoms = json::array(), probs = json::array();
    for (double a : d.atoms) atoms.push_back(detail::num(a));
    for (double q : d.probs) probs.push_back(detail::num(q));
    return {{"atoms", atoms}, {"probs", probs}};
}

inline DiscreteDistribution distribution_from_json(const json& j) {
    return {j.at("atoms").get<std::vector<double>>(), j.at("probs").get<std::vector<double>>()};
}

inline json to_json(const TailBoundResult& t) {
    return {{"p", detail::num(t.price)},
            {"value", detail::num(t.value)},
            {"region", std::string(region_name(t.region))}};
}

inline json to_json(const PricingDecision& d) {
    return {{"price", detail::num(d.price)},
            {"region", std::string(region_name(d.region))},
            {"worst_case_revenue", detail::num(d.worst_case_revenue)},
            {"candidates",
             {{"low", detail::num(d.candidates.p_low)},
              {"mid", detail::num(d.candidates.p_mid)},
              {"high", detail::num(d.candidates.p_high)}}}};
}

inline json to_json(const GuaranteeReport& g) {
    return {{"ratio", detail::num(g.ratio)},
            {"kind", std::string(ratio_name(g.ratio_kind))},
            {"opt_bound", detail::num(g.opt_upper_bound)}};
}

} // namespace robust_pricing
