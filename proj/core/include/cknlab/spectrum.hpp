#pragma once

#include <string>

#include "cknlab/params.hpp"

namespace cknlab {

struct SpectralPoint {
    int i = 0;
    int j = 0;
    double tau = 0.0;
    double lambda = 0.0;
    long multiplicity = 0;  // dimension of degree-i spherical harmonics on S^{N-1}
};

SpectralPoint eigenvalue_closed(const CknParams& P, int i, int j);
long harmonic_multiplicity(int N, int i);

struct ComparisonFunctions {
    double g = 0.0;
    double h = 0.0;
    double ratio() const { return g / h; }
};
ComparisonFunctions comparison_functions(const CknParams& P);

struct GapReport {
    RegionClass region;
    double lambda_star = 0.0;
    std::string winner;  // "lambda_02" or "lambda_10"
    double lambda_02 = 0.0;
    double lambda_11 = 0.0;
    double lambda_10 = 0.0;
    // Remaining-region branch 1 - 1/lambda_10 in q = (N-1)/(a_c-a)^2, and an alternative
    // closed form that exceeds it by 2p/(2 + 2q + (p-1) sqrt(1+q)); reported, never used.
    double lambda_star_q_form = 0.0;
    double lambda_star_alt = 0.0;
};
GapReport spectral_gap(const CknParams& P);

// Unit-H^1 radial profile of the (i, j) eigenfunction:
//   phi(t) = c * P_j^{(e,e)}(tanh(gamma t)) * cosh(gamma t)^{-e},  e = sqrt(tau_i)/gamma
struct Eigenmode {
    int i = 0;
    int j = 0;
    double gamma = 0.0;
    double e = 0.0;
    double tau = 0.0;
    double lambda = 0.0;
    double beta = 0.0;
    double scale = 1.0;

    double operator()(double t) const;
    double derivative(double t) const;
    double second_derivative(double t) const;
    // ||unscaled profile||^2_{H^1} in closed form (via the Jacobi norm)
    double raw_h1_norm_sq() const;
};
Eigenmode eigenfunction(const CknParams& P, int i, int j);
double eigenfunction(const CknParams& P, int i, int j, double t);

// Explicit forms with the normalization used in the energy expansions.
double rho_02(const CknParams& P, double t);
double rho_02_prime(const CknParams& P, double t);
// cosh(gamma t)^{-sqrt(tau_1)/gamma} cos(theta)
double rho_10(const CknParams& P, double t, double polar_angle);
// radial factor of rho_10
double rho_10_radial(const CknParams& P, double t);
double rho_10_radial_prime(const CknParams& P, double t);

struct OrthogonalityReport {
    double rho02_psi = 0.0;       // <rho_02, Psi>_{H^1}
    double rho02_psiprime = 0.0;  // <rho_02, Psi'>_{H^1}
    double rho10_mode0 = 0.0;     // \int_S cos(theta): pairing of rho_10 with any mode-0 function
    double rho02_norm = 0.0;
    double psi_norm = 0.0;
    bool ok = false;
};
OrthogonalityReport orthogonality_check(const CknParams& P);

}  // namespace cknlab
