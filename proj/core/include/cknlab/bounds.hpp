#pragma once

#include <string>

#include "cknlab/params.hpp"

namespace cknlab {

struct BoundsReport {
    double bound_two_bubble = 0.0;            // 2 - 2^{2/(p+1)}
    double bound_two_bubble_alt = 0.0;  // 2 - 2^{1/(p+1)}, reported only
    double bound_gap = 0.0;                   // lambda*
    double effective_bound = 0.0;
    std::string effective;  // "two_bubble" or "gap"
    RegionClass region;
};

BoundsReport bounds(const CknParams& P);

}  // namespace cknlab
