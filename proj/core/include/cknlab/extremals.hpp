#pragma once

#include "cknlab/params.hpp"

namespace cknlab {

// Psi(t) = amplitude * cosh(gamma t)^{-2/(p-1)}
struct ExtremalProfile {
    CknParams params;
    double amplitude = 0.0;
    double decay = 0.0;  // gamma
    double exponent = 0.0;  // 2/(p-1)

    ExtremalProfile() = default;
    explicit ExtremalProfile(const CknParams& P);

    double psi(double t) const;
    double psi_prime(double t) const;
    double psi_second(double t) const;
    double psi_shift(double t, double s) const { return psi(t - s); }
};

double psi(const CknParams& P, double t);
double psi_prime(const CknParams& P, double t);
double psi_shift(const CknParams& P, double t, double s);

// Radial Euclidean extremal W(|x|) and its derivative in |x|
double bubble_w(const CknParams& P, double r);
double bubble_w_prime(const CknParams& P, double r);
// V = x.grad W + (a_c - a) W
double generator_v(const CknParams& P, double r);

// Emden-Fowler map for radial functions: (Tf)(t) = e^{-(a_c-a)t} f(e^{-t})
double emden_fowler(const CknParams& P, double (*f)(const CknParams&, double), double t);
double emden_fowler_inverse(const CknParams& P, double (*g)(const CknParams&, double), double r);

struct PsiNorms {
    double h1_sq = 0.0;  // ||Psi||^2_{H^1(C)}
    double lp1 = 0.0;    // ||Psi||_{L^{p+1}(C)}
    double lp1_pow = 0.0;  // ||Psi||^{p+1}_{p+1}, equal to h1_sq
};
PsiNorms psi_norms(const CknParams& P);

struct OptimalConstant {
    double c_inv = 0.0;
    double c_inv_closed_form = 0.0;
    double ratio = 0.0;  // c_inv / c_inv_closed_form
};
OptimalConstant optimal_constant(const CknParams& P);

}  // namespace cknlab
