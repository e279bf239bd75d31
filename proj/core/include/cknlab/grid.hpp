#pragma once

namespace cknlab {

// Uniform grid t_k = -T + k h, k = 0..M-1, h = 2T/(M-1)
struct GridSpec {
    double T = 0.0;
    int M = 0;

    double h() const { return 2.0 * T / (M - 1); }
    double t(int k) const { return -T + k * h(); }
};

}  // namespace cknlab
