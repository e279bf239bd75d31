#pragma once

#include <utility>
#include <vector>

#include "cknlab/bounds.hpp"
#include "cknlab/cylinder.hpp"

namespace cknlab {

// Bianchi-Egnell quotient Q(v) = (||v||^2_{H^1} - C^{-1} ||v||^2_{p+1}) / dist^2(v, Y)
struct QuotientReport {
    double value = 0.0;
    double numerator = 0.0;
    double distance_sq = 0.0;
    double norm_sq = 0.0;
    double shift = 0.0;   // s*
    double c_star = 0.0;
    double overlap = 0.0;  // <v, Psi_{s*}^p>_{L^2}
    bool edge_hit = false;
    // competing overlap peak; Q is the max of the two branch quotients
    bool has_secondary = false;
    double secondary_shift = 0.0;
    double secondary_overlap = 0.0;
    double secondary_value = 0.0;
    BoundsReport bounds;
    int iterations = 0;
    double gradient_norm = 0.0;
    std::vector<std::pair<int, double>> trace;
};

// dist^2 at or below this fraction of ||v||^2 counts as on the manifold
inline constexpr double kOnManifoldTol = 1e-10;

double numerator(const CylinderFunction& v);
QuotientReport quotient(const CylinderFunction& v);

// H^1 (Riesz) gradients: <grad, w>_{H^1} is the directional derivative along w.
CylinderFunction numerator_gradient(const CylinderFunction& v);

struct QuotientGradient {
    QuotientReport report;
    CylinderFunction gradient;
};
// Branches whose quotient is within this relative distance of Q count as active.
inline constexpr double kActiveBranchTol = 1e-4;

// Distance term differentiated at the optimal shift (envelope property). When a
// second overlap peak is active, returns the min-norm convex combination of the
// two branch gradients.
QuotientGradient quotient_gradient(const CylinderFunction& v);

}  // namespace cknlab
