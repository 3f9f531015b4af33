#pragma once

#include "robust_pricing/bundling.hpp"
#include "robust_pricing/distribution.hpp"
#include "robust_pricing/guarantees.hpp"
#include "robust_pricing/market.hpp"
#include "robust_pricing/oracle.hpp"
#include "robust_pricing/pricing.hpp"
#include "robust_pricing/queueing.hpp"
#include "robust_pricing/serialization.hpp"
#include "robust_pricing/tailbound.hpp"
