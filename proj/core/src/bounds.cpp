#include "cknlab/bounds.hpp"

#include <cmath>

#include "cknlab/spectrum.hpp"

namespace cknlab {

BoundsReport bounds(const CknParams& P) {
    const GapReport gap = spectral_gap(P);
    BoundsReport b;
    b.region = gap.region;
    b.bound_two_bubble = 2.0 - std::pow(2.0, 2.0 / (P.p + 1.0));
    b.bound_two_bubble_alt = 2.0 - std::pow(2.0, 1.0 / (P.p + 1.0));
    b.bound_gap = gap.lambda_star;
    if (b.bound_two_bubble < b.bound_gap) {
        b.effective_bound = b.bound_two_bubble;
        b.effective = "two_bubble";
    } else {
        b.effective_bound = b.bound_gap;
        b.effective = "gap";
    }
    return b;
}

}  // namespace cknlab
