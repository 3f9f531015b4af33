#include <robust_pricing/robust_pricing.hpp>

#include <iostream>

using namespace robust_pricing;

int main() {
    // mean 0.5, standard deviation known to lie in [0.2, 0.2], valuations at most 1
    const MarketInfo m = MarketInfo::validate(0.5, 0.2, 0.2, 1.0);

    const PricingDecision d = optimal_price(m);
    std::cout << "price " << d.price << " (" << region_name(d.region) << ")\n"
              << "worst-case revenue " << d.worst_case_revenue << '\n'
              << "guarantee " << guarantee_ratio(m).ratio << '\n';

    for (double p : {0.2, 0.4, 0.6, 0.8}) {
        const TailBoundResult t = worst_case_tail(m, p);
        std::cout << "P(X > " << p << ") >= " << t.value << "  [" << region_name(t.region) << "]\n";
    }

    const BundleDecision b = bundle_price({m, 10});
    std::cout << "bundle of 10: per-good " << b.per_good.price << ", total " << b.bundle_price
              << '\n';
}
