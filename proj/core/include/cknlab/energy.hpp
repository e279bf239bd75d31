#pragma once

#include <string>

#include "cknlab/bounds.hpp"
#include "cknlab/cylinder.hpp"
#include "cknlab/params.hpp"
#include "cknlab/quotient.hpp"

namespace cknlab {

// <Psi^{p-2}, rho_02^3>_{L^2(C)} in closed form; uses B((p+1)/(p-1), 1/2).
double third_order_coefficient(const CknParams& P);
// Same expression with the Beta argument (p+2)/(p-1); kept for reports.
double third_order_coefficient_alt(const CknParams& P);

// A_0 with the normalization that closes ||Psi + Psi_s||^2 = 2||Psi||^2 + 2 A_0 e^{-2 gamma s/(p-1)} + ...:
//   2^{2/(p-1)} |S^{N-1}| amp^{p+1} \int cosh(gamma t)^{-2p/(p-1)} e^{2 gamma t/(p-1)} dt  (line quadrature)
double a0_coefficient(const CknParams& P);
// amp^{p+1} \int ... dt without the sphere area and 2^{2/(p-1)} factors
double a0_bare(const CknParams& P);

struct TwoBubbleReport {
    double s = 0.0;
    QuotientReport quotient;
    double bound = 0.0;    // 2 - 2^{2/(p+1)}
    double deficit = 0.0;  // bound - Q
    double a0 = 0.0;
    double coefficient_alt = 0.0;     // 2 A_0 C^{2/(p-1)}
    double coefficient_expansion = 0.0;  // 2 (2^{2/(p+1)} - 1) A_0 / ||Psi||^2_{H^1}
    double predicted_alt = 0.0;
    double predicted_expansion = 0.0;
    double distance_ratio = 0.0;  // dist^2 / ||Psi||^2_{H^1}
};
// v_s = Psi + Psi_s; requires s < T/2 on the space's grid.
TwoBubbleReport two_bubble_quotient(const CknParams& P, double s, SpacePtr space = nullptr);

struct PerturbationReport {
    double eps = 0.0;
    QuotientReport quotient;
    double gap = 0.0;           // limit of Q as eps -> 0
    double rho_norm_sq = 0.0;   // ||rho||^2_{H^1}
    double coefficient = 0.0;   // third-order coefficient (rho_02) or zhat_cylinder (rho_10)
    double slope = 0.0;         // predicted (gap - Q)/eps (rho_02) or (Q - gap)/eps^2 (rho_10)
    double predicted = 0.0;
};
// Psi + eps rho_02, CaseI/CaseII only, eps in (0, 0.1)
PerturbationReport gap_perturbation_quotient(const CknParams& P, double eps, SpacePtr space = nullptr);
// Psi + eps rho_10; the limit is 1 - 1/lambda_10 (= lambda* in the Remaining region)
PerturbationReport rho10_perturbation_quotient(const CknParams& P, double eps, SpacePtr space = nullptr);

struct ZhatReport {
    double zhat_display = 0.0;   // closed form with D_N = (N+2)|S^{N-1}|/N
    double zhat_cylinder = 0.0;  // same with D = (N+2)/N, i.e. with the variational C^{-1}
    double prefactor = 0.0;      // (a_c-a)^{(p-5)/(p-1)} p(p-2)|S|/(2N(N+2)) ((p+1)/2)^{(p-3)/(p-1)}
    double bracket_display = 0.0;  // B4 - p D_N B2^2/((p-2) B0); not finite at p = 2
    double B4 = 0.0, B2 = 0.0, B0 = 0.0;
    double D_N = 0.0;
    double q_star = 0.0;
    double fbar = 0.0;
    double a_c_2star = 0.0, a_c_3star = 0.0, b_fs_2star = 0.0;
    bool p_equals_2 = false;
    bool negative = false;  // both variants < 0
    Region region = Region::Invalid;
};
double zhat(const CknParams& P);
double zhat_cylinder(const CknParams& P);
// Quartic sign polynomial at exponent p, with q = q*(a) and D = D_N taken from P.
double fbar(const CknParams& P, double p);
ZhatReport zhat_report(const CknParams& P);

}  // namespace cknlab
