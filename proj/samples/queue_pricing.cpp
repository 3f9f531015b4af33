#include <robust_pricing/robust_pricing.hpp>

#include <iostream>

using namespace robust_pricing;

int main() {
    for (double sigma : {2.0, 2.2, 2.4, 2.6}) {
        const QueueMarket q =
            QueueMarket::make(MarketInfo::validate(2.0, sigma, sigma, 10.0), 5.0, 2.0, 1.0);
        const QueuePriceResult r = optimal_queue_price(q);
        std::cout << "sigma " << sigma << ": price " << r.price << ", arrival rate "
                  << r.equilibrium.gamma_star << ", revenue " << r.equilibrium.revenue << '\n';
    }
}
