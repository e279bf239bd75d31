#pragma once

#include <cmath>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>

#include "cknlab/params.hpp"

namespace cknlab::testing {

// Box for random valid points: d = a_c - a in [d_min, d_max], b kept `margin` away
// from b_FS(a) and from a+1 so that p, gamma and the gap stay away from their limits.
struct SampleBox {
    double d_min = 0.15;
    double d_max = 1.5;
    double margin = 0.03;
};

inline CknParams sample_valid(std::mt19937_64& rng, int N, std::optional<Region> want = std::nullopt,
                              const SampleBox& box = {}) {
    std::uniform_real_distribution<double> U(0.0, 1.0);
    const double a_c = 0.5 * (N - 2);
    for (int tries = 0; tries < 200000; ++tries) {
        const double a = a_c - (box.d_min + (box.d_max - box.d_min) * U(rng));
        const double lo = a < 0.0 ? felli_schneider(N, a) + box.margin : std::max(a, -a + 1e-3);
        const double hi = a + 1.0 - box.margin;
        if (!(lo < hi)) continue;
        const double b = lo + (hi - lo) * U(rng);
        const RegionClass rc = classify_point(N, a, b);
        if (rc.region == Region::Invalid || rc.region == Region::DegenerateBoundary) continue;
        if (want && rc.region != *want) continue;
        return make_params(N, a, b);
    }
    throw std::runtime_error("sample_valid: no point found for N=" + std::to_string(N));
}

inline double rel_err(double x, double ref) { return std::abs(x - ref) / std::max(std::abs(ref), 1e-300); }

}  // namespace cknlab::testing
