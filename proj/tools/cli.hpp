#pragma once

#include "robust_pricing/robust_pricing.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace robust_pricing::cli {

enum ExitCode : int { kOk = 0, kVerifyFailed = 1, kDomainError = 2, kUsage = 64 };

struct MarketFlags {
    double mu = std::nan("");
    double beta = std::nan("");
    std::optional<double> sigma;
    std::optional<double> sigma_lo;
    std::optional<double> sigma_hi;

    void attach(CLI::App* app) {
        app->add_option("--mu", mu, "mean valuation");
        app->add_option("--beta", beta, "maximal valuation");
        app->add_option("--sigma", sigma, "exact standard deviation (sets both bounds)");
        app->add_option("--sigma-lo", sigma_lo, "lower standard-deviation bound");
        app->add_option("--sigma-hi", sigma_hi, "upper standard-deviation bound");
    }

    bool complete() const { return !std::isnan(mu) && !std::isnan(beta); }

    /// Missing bounds default to 0 and sqrt(mu (beta - mu)).
    MarketInfo build(std::optional<double> mu_override = {},
                     std::optional<double> beta_override = {}) const {
        const double m = mu_override.value_or(mu);
        const double b = beta_override.value_or(beta);
        double lo = sigma_lo.value_or(sigma.value_or(0.0));
        double hi = sigma_hi.value_or(sigma.value_or(m > 0.0 && m < b ? max_sigma(m, b) : 0.0));
        return MarketInfo::validate(m, lo, hi, b);
    }
};

struct Csv {
    std::ostream& out;

    void header(const std::vector<std::string>& cols) { row_strings(cols); }

    template <typename... Ts>
    void row(const Ts&... cells) {
        bool first = true;
        ((out << (first ? "" : ",") << cell(cells), first = false), ...);
        out << '\n';
    }

private:
    static std::string cell(double x) { return numeric::format_number(x); }
    static std::string cell(int x) { return std::to_string(x); }
    static std::string cell(const std::string& s) { return s; }
    static std::string cell(std::string_view s) { return std::string(s); }
    static std::string cell(const char* s) { return s; }

    void row_strings(const std::vector<std::string>& cols) {
        for (std::size_t i = 0; i < cols.size(); ++i) out << (i ? "," : "") << cols[i];
        out << '\n';
    }
};

inline std::vector<double> linspace(double from, double to, int steps) {
    std::vector<double> xs(steps);
    for (int k = 0; k < steps; ++k) xs[k] = from + (to - from) * k / (steps - 1);
    return xs;
}

// Open interval (0, to): steps interior points.
inline std::vector<double> interior(double to, int steps) {
    std::vector<double> xs(steps);
    for (int k = 0; k < steps; ++k) xs[k] = to * (k + 1) / (steps + 1);
    return xs;
}

class UsageError : public std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct SweepArgs {
    std::string figure;
    std::string param;
    std::optional<double> from;
    std::optional<double> to;
    std::optional<int> steps;
    double lambda = 5.0;
    double theta = 2.0;
    double hold_cost = 1.0;
};

// Queue revenue curves p -> p gamma*(p) (or gamma*) for a list of markets.
inline void queue_curves(Csv& csv, const std::string& series_name,
                         const std::vector<std::pair<double, QueueMarket>>& series,
                         const std::vector<double>& prices, bool revenue) {
    csv.header({series_name, "x", revenue ? "revenue" : "gamma_star"});
    for (const auto& [label, q] : series)
        for (double p : prices) {
            const Equilibrium e = equilibrium(q, p);
            csv.row(label, p, revenue ? e.revenue : e.gamma_star);
        }
}

inline void run_figure(const SweepArgs& a, std::ostream& out) {
    Csv csv{out};
    const std::string& f = a.figure;
    const int steps = a.steps.value_or(f == "5" ? 101 : 1000);
    if (steps < 2) throw UsageError("--steps must be >= 2");
    const double mu = 0.5, beta = 1.0;
    const double smax = max_sigma(mu, beta);

    if (f == "2a" || f == "3a") {
        const std::vector<double> levels =
            f == "2a" ? std::vector<double>{0.30, 0.33, 0.36, 0.40}
                      : std::vector<double>{0.20, 0.25, 0.30, 0.35};
        csv.header({"sigma", "x", "revenue"});
        for (double s : levels) {
            const MarketInfo m = MarketInfo::validate(mu, f == "2a" ? 0.0 : s, s, beta);
            for (double p : interior(beta, steps)) csv.row(s, p, worst_case_revenue(m, p));
        }
    } else if (f == "2b" || f == "3b") {
        csv.header({"x", "price"});
        for (double s : interior(smax, steps)) {
            const MarketInfo m = MarketInfo::validate(mu, f == "2b" ? 0.0 : s, s, beta);
            csv.row(s, optimal_price(m).price);
        }
    } else if (f == "4") {
        csv.header({"series", "x", "ratio"});
        for (const char* series : {"precise", "upper"}) {
            const bool precise = std::string(series) == "precise";
            for (double s : interior(smax, steps)) {
                const MarketInfo m = MarketInfo::validate(mu, precise ? s : 0.0, s, beta);
                csv.row(series, s, guarantee_ratio(m).ratio);
            }
        }
    } else if (f == "5") {
        csv.header({"sigma_lo", "sigma_hi", "region"});
        for (double hi : linspace(0.0, smax, steps))
            for (double lo : linspace(0.0, smax, steps)) {
                if (lo > hi) continue;
                const MarketInfo m = MarketInfo::validate(mu, lo, hi, beta);
                csv.row(lo, hi, region_name(classify_region(m)));
            }
    } else if (f == "6a" || f == "6b" || f == "7a" || f == "7b") {
        const double lam = 5.0, qmu = 2.0, theta = 2.0;
        std::vector<std::pair<double, QueueMarket>> series;
        std::string name;
        if (f[0] == '6') {
            name = "sigma";
            for (double s : {2.0, 2.2, 2.4, 2.6})
                series.emplace_back(s, QueueMarket::make(MarketInfo::validate(qmu, s, s, 10.0), lam,
                                                         theta, 1.0));
        } else if (f == "7a") {
            name = "h";
            for (double h : {1.0, 2.0, 3.0, 5.0})
                series.emplace_back(h, QueueMarket::make(MarketInfo::validate(qmu, 2.0, 2.0, 10.0),
                                                         lam, theta, h));
        } else {
            name = "beta";
            for (double b : {8.0, 10.0, 12.0, 14.0})
                series.emplace_back(b, QueueMarket::make(MarketInfo::validate(qmu, 2.0, 2.0, b),
                                                         lam, theta, 1.0));
        }
        const double to = a.to.value_or(5.0);
        const double from = a.from.value_or(to / steps);
        if (!(from > 0.0) || !(from < to)) throw UsageError("need 0 < --from < --to");
        queue_curves(csv, name, series, linspace(from, to, steps), f != "6a");
    } else {
        throw UsageError("unknown figure '" + f + "'");
    }
}

inline void run_param_sweep(const SweepArgs& a, const MarketFlags& mf, std::ostream& out) {
    if (!a.from || !a.to || !a.steps) throw UsageError("--param needs --from, --to and --steps");
    if (!(*a.from < *a.to)) throw UsageError("--from must be below --to");
    if (*a.steps < 2) throw UsageError("--steps must be >= 2");
    if (!mf.complete()) throw UsageError("--mu and --beta are required");
    Csv csv{out};
    const auto xs = linspace(*a.from, *a.to, *a.steps);
    const std::string& p = a.param;

    if (p == "price") {
        const MarketInfo m = mf.build();
        csv.header({"x", "revenue"});
        for (double x : xs) csv.row(x, worst_case_revenue(m, x));
    } else if (p == "sigma" || p == "sigma_lo" || p == "sigma_hi" || p == "beta") {
        csv.header({"x", "price", "region"});
        for (double x : xs) {
            MarketFlags f = mf;
            std::optional<double> beta;
            if (p == "sigma") {
                f.sigma = x;
                f.sigma_lo.reset();
                f.sigma_hi.reset();
            } else if (p == "sigma_lo") {
                f.sigma_lo = x;
            } else if (p == "sigma_hi") {
                f.sigma_hi = x;
            } else {
                beta = x;
            }
            const PricingDecision d = optimal_price(f.build({}, beta));
            csv.row(x, d.price, region_name(d.region));
        }
    } else if (p == "h" || p == "lambda") {
        const MarketInfo m = mf.build();
        csv.header({"x", "price", "revenue"});
        for (double x : xs) {
            const QueueMarket q = QueueMarket::make(m, p == "lambda" ? x : a.lambda, a.theta,
                                                    p == "h" ? x : a.hold_cost);
            const QueuePriceResult r = optimal_queue_price(q);
            csv.row(x, r.price, r.equilibrium.revenue);
        }
    } else {
        throw UsageError("unknown --param '" + p + "'");
    }
}

struct VerifyReport {
    bool ok = true;
    std::vector<std::string> lines;
};

/// Oracle agreement checks on seeded random markets.
inline VerifyReport run_verify(int trials, std::uint64_t seed) {
    VerifyReport rep;
    std::mt19937_64 rng(seed);
    auto unit = [&] { return oracle::detail::unit(rng); };
    auto random_market = [&] {
        const double beta = 0.5 + 4.5 * unit();
        const double mu = beta * (0.05 + 0.9 * unit());
        const double hi = max_sigma(mu, beta) * (0.02 + 0.96 * unit());
        const double lo = hi * unit();
        return MarketInfo::validate(mu, lo, hi, beta);
    };
    auto describe = [](const MarketInfo& m, double p) {
        std::ostringstream os;
        os << "mu=" << numeric::format_number(m.mu())
           << " sigma_lo=" << numeric::format_number(m.sigma_lo())
           << " sigma_hi=" << numeric::format_number(m.sigma_hi())
           << " beta=" << numeric::format_number(m.beta()) << " p=" << numeric::format_number(p);
        return os.str();
    };
    auto check = [&](const std::string& name, double worst, double tol, const std::string& where) {
        const bool pass = worst <= tol;
        rep.ok = rep.ok && pass;
        std::string line = std::string(pass ? "PASS " : "FAIL ") + name +
                           " worst=" + numeric::format_number(worst) +
                           " tol=" + numeric::format_number(tol);
        if (!pass) line += " at " + where;
        rep.lines.push_back(line);
    };

    double tail_err = 0.0, witness_err = 0.0, argmax_gap = 0.0, bound_gap = 0.0;
    std::string tail_at, witness_at, argmax_at, bound_at;
    const oracle::GridSpec grid{};
    for (int t = 0; t < trials; ++t) {
        const MarketInfo m = random_market();
        const double p = m.beta() * (1e-3 + (1.0 - 1e-3) * unit());

        const oracle::LpTail lp = oracle::lp_worst_tail(m, p, grid);
        const double e1 = std::abs(lp.value - worst_case_tail(m, lp.snapped_price).value);
        if (e1 > tail_err) tail_err = e1, tail_at = describe(m, lp.snapped_price);

        const DiscreteDistribution w = witness_distribution(m, p);
        const double e2 = std::max({std::abs(w.tail_strict(p) - worst_case_tail(m, p).value),
                                    std::abs(w.mean() - m.mu()),
                                    std::max(0.0, m.second_moment_lo() - w.second_moment()),
                                    std::max(0.0, w.second_moment() - m.second_moment_hi())});
        if (e2 > witness_err) witness_err = e2, witness_at = describe(m, p);

        const PricingDecision d = optimal_price(m);
        const auto [gp, gr] = oracle::grid_argmax_revenue(m, grid);
        const double e3 = std::max(0.0, gr - d.worst_case_revenue);
        if (e3 > argmax_gap) argmax_gap = e3, argmax_at = describe(m, gp);

        const double ratio = guarantee_ratio(m).ratio;
        const DiscreteDistribution s = oracle::sample_feasible_distribution(m, seed + t);
        const double e4 = std::max(0.0, ratio * s.optimal_revenue() - d.price * s.tail_weak(d.price));
        if (e4 > bound_gap) bound_gap = e4, bound_at = describe(m, d.price);
    }
    check("tail_vs_lp", tail_err, 2e-3, tail_at);
    check("witness_tightness", witness_err, 1e-10, witness_at);
    check("three_prices", argmax_gap, 1e-6, argmax_at);
    check("guarantee_bound", bound_gap, 1e-6, bound_at);
    return rep;
}

inline void write_json(std::ostream& out, const json& j) { out << j.dump() << '\n'; }

/// Parses argv and runs one subcommand. Returns the process exit code.
inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Distributionally robust monopoly pricing from mean, variance bounds and "
                 "maximal valuation"};
    app.set_help_flag("--help", "print help");
    app.require_subcommand(1);

    MarketFlags mf;
    std::optional<std::uint64_t> seed;
    std::string out_path;
    std::string format;

    auto common = [&](CLI::App* sub) {
        mf.attach(sub);
        sub->add_option("--seed", seed, "random seed");
        sub->add_option("--out", out_path, "output file (default stdout)");
        sub->add_option("--format", format, "json or csv")
            ->check(CLI::IsMember({"json", "csv"}));
    };

    auto* price = app.add_subcommand("price", "optimal robust price");
    common(price);

    double tail_p = std::nan("");
    bool with_witness = false;
    auto* tail = app.add_subcommand("tail", "worst-case tail probability at a price");
    common(tail);
    tail->add_option("--p", tail_p, "price")->required();
    tail->add_flag("--witness", with_witness, "include a worst-case distribution");

    SweepArgs sw;
    auto* sweep = app.add_subcommand("sweep", "parameter sweeps and figure data as CSV");
    common(sweep);
    sweep->add_option("--figure", sw.figure, "figure preset")
        ->check(CLI::IsMember({"2a", "2b", "3a", "3b", "4", "5", "6a", "6b", "7a", "7b"}));
    sweep->add_option("--param", sw.param, "swept parameter")
        ->check(CLI::IsMember({"sigma", "sigma_lo", "sigma_hi", "beta", "price", "h", "lambda"}));
    sweep->add_option("--from", sw.from);
    sweep->add_option("--to", sw.to);
    sweep->add_option("--steps", sw.steps);
    sweep->add_option("--lambda", sw.lambda);
    sweep->add_option("--theta", sw.theta);
    sweep->add_option("--h", sw.hold_cost);

    int region_steps = 101;
    auto* regions = app.add_subcommand("regions", "price-region map over (sigma_lo, sigma_hi)");
    common(regions);
    regions->add_option("--steps", region_steps, "grid points per axis");

    double lambda = 5.0, theta = 2.0, hold = 1.0;
    std::optional<double> q_from, q_to;
    int q_steps = 200;
    auto* queue = app.add_subcommand("queue", "robust pricing of an unobservable queue");
    common(queue);
    queue->add_option("--lambda", lambda, "potential arrival rate");
    queue->add_option("--theta", theta, "service rate");
    queue->add_option("--h", hold, "waiting cost per unit time");
    queue->add_option("--from", q_from, "lowest price in the sweep");
    queue->add_option("--to", q_to, "highest price in the sweep");
    queue->add_option("--steps", q_steps, "price points");

    int bundle_size = 1;
    auto* bundle = app.add_subcommand("bundle", "robust price of an i.i.d. bundle");
    common(bundle);
    bundle->add_option("--m", bundle_size, "bundle size")->required()->check(CLI::PositiveNumber);

    int trials = 100;
    auto* verify = app.add_subcommand("verify", "oracle agreement checks");
    common(verify);
    verify->add_option("--trials", trials)->check(CLI::PositiveNumber);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return kOk;
    } catch (const CLI::CallForAllHelp& e) {
        out << app.help();
        return kOk;
    } catch (const CLI::ParseError& e) {
        err << e.what() << '\n';
        return kUsage;
    }

    std::ofstream file;
    if (!out_path.empty()) {
        file.open(out_path);
        if (!file) {
            err << "cannot open " << out_path << '\n';
            return kUsage;
        }
    }
    std::ostream& sink = out_path.empty() ? out : file;

    try {
        auto need_market = [&] {
            if (!mf.complete()) throw UsageError("--mu and --beta are required");
            return mf.build();
        };

        if (*price) {
            const MarketInfo m = need_market();
            const PricingDecision d = optimal_price(m);
            if (format == "csv") {
                Csv csv{sink};
                csv.header({"price", "region", "worst_case_revenue", "low", "mid", "high"});
                csv.row(d.price, region_name(d.region), d.worst_case_revenue, d.candidates.p_low,
                        d.candidates.p_mid, d.candidates.p_high);
            } else {
                write_json(sink, to_json(d));
            }
        } else if (*tail) {
            const MarketInfo m = need_market();
            const TailBoundResult t = worst_case_tail(m, tail_p);
            if (format == "csv") {
                Csv csv{sink};
                csv.header({"p", "value", "region"});
                csv.row(t.price, t.value, region_name(t.region));
            } else {
                json j = to_json(t);
                if (with_witness) j["witness"] = to_json(witness_distribution(m, tail_p));
                write_json(sink, j);
            }
        } else if (*sweep) {
            if (sw.figure.empty() == sw.param.empty())
                throw UsageError("give exactly one of --figure or --param");
            if (!sw.figure.empty()) run_figure(sw, sink);
            else run_param_sweep(sw, mf, sink);
        } else if (*regions) {
            if (region_steps < 2) throw UsageError("--steps must be >= 2");
            const MarketInfo m = need_market();
            Csv csv{sink};
            csv.header({"sigma_lo", "sigma_hi", "region"});
            for (double hi : linspace(0.0, m.sigma_max(), region_steps))
                for (double lo : linspace(0.0, m.sigma_max(), region_steps)) {
                    if (lo > hi) continue;
                    csv.row(lo, hi,
                            region_name(classify_region(
                                MarketInfo::validate(m.mu(), lo, hi, m.beta()))));
                }
        } else if (*queue) {
            const MarketInfo m = need_market();
            const QueueMarket q = QueueMarket::make(m, lambda, theta, hold);
            if (format == "json") {
                const QueuePriceResult r = optimal_queue_price(q);
                write_json(sink, {{"price", detail::num(r.price)},
                                  {"gamma_star", detail::num(r.equilibrium.gamma_star)},
                                  {"revenue", detail::num(r.equilibrium.revenue)},
                                  {"residual", detail::num(r.equilibrium.residual)}});
            } else {
                if (q_steps < 2) throw UsageError("--steps must be >= 2");
                const double to = q_to.value_or(std::min(m.beta(), breakpoints(m).v_lo2));
                const double from = q_from.value_or(to / q_steps);
                if (!(from > 0.0) || !(from < to)) throw UsageError("need 0 < --from < --to");
                Csv csv{sink};
                csv.header({"p", "gamma_star", "revenue", "region_of_tail"});
                for (double p : linspace(from, to, q_steps)) {
                    const Equilibrium e = equilibrium(q, p);
                    const double x = p + (e.gamma_star < theta && hold > 0.0
                                              ? hold * waiting_time(e.gamma_star, theta)
                                              : 0.0);
                    const std::string_view region =
                        x > m.beta() ? region_name(TailRegion::Zero) : region_name(tail_region(m, x));
                    csv.row(p, e.gamma_star, e.revenue, region);
                }
            }
        } else if (*bundle) {
            const MarketInfo m = need_market();
            const BundleDecision d = bundle_price({m, bundle_size});
            json j{{"m", bundle_size},
                   {"bundle_price", detail::num(d.bundle_price)},
                   {"per_good", to_json(d.per_good)}};
            if (m.precise_sigma()) j["threshold"] = detail::num(bundle_threshold(m));
            write_json(sink, j);
        } else if (*verify) {
            const VerifyReport rep = run_verify(trials, seed.value_or(7));
            for (const std::string& line : rep.lines) sink << line << '\n';
            return rep.ok ? kOk : kVerifyFailed;
        }
    } catch (const UsageError& e) {
        err << "usage: " << e.what() << '\n';
        return kUsage;
    } catch (const PricingError& e) {
        err << e.what() << '\n';
        return kDomainError;
    }
    return kOk;
}

} // namespace robust_pricing::cli
