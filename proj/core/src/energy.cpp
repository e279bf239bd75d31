#include "cknlab/energy.hpp"

#include <cmath>

#include "cknlab/errors.hpp"
#include "cknlab/extremals.hpp"
#include "cknlab/specfun.hpp"
#include "cknlab/spectrum.hpp"

namespace cknlab {

namespace {

double third_order_with(const CknParams& P, double beta_first) {
    const double p = P.p, pm1 = p - 1.0;
    const double amp_pow = std::pow(0.5 * (p + 1.0) * P.d * P.d, (p - 2.0) / pm1);
    const double lead = 2.0 * (p + 1.0) * p * p * p / (P.gamma * (7.0 * p - 3.0) * (5.0 * p - 1.0) * std::pow(pm1, 6));
    const double quartic = p * p * p * p - 6.0 * p * p + 8.0 * p - 3.0;
    return lead * amp_pow * P.sphere_area * beta_fn(beta_first, 0.5) * quartic;
}

double a0_integral(const CknParams& P) {
    const double p = P.p, g = P.gamma;
    const double m = 2.0 * p / (p - 1.0), c = 2.0 / (p - 1.0);
    QuadratureSpec q;
    q.T = 40.0 / g;
    return integrate_line([&](double t) {
        const double x = std::abs(g * t);
        const double lc = x + std::log1p(std::exp(-2.0 * x)) - std::log(2.0);
        return std::exp(-m * lc + c * g * t);
    }, q);
}

SpacePtr ensure_space(const CknParams& P, SpacePtr space, int degree) {
    if (space && space->degrees() > degree) return space;
    return CylinderSpace::create(P, std::max(1, degree));
}

}  // namespace

double third_order_coefficient(const CknParams& P) { return third_order_with(P, (P.p + 1.0) / (P.p - 1.0)); }

double third_order_coefficient_alt(const CknParams& P) { return third_order_with(P, (P.p + 2.0) / (P.p - 1.0)); }

double a0_bare(const CknParams& P) {
    return std::pow(ExtremalProfile(P).amplitude, P.p + 1.0) * a0_integral(P);
}

double a0_coefficient(const CknParams& P) {
    return std::pow(2.0, 2.0 / (P.p - 1.0)) * P.sphere_area * a0_bare(P);
}

TwoBubbleReport two_bubble_quotient(const CknParams& P, double s, SpacePtr space) {
    space = ensure_space(P, std::move(space), 0);
    if (!(s > 0.0) || !(s < 0.5 * space->grid().T)) throw DomainError("two_bubble_quotient: need 0 < s < T/2");
    CylinderFunction v = psi_function(space) + psi_function(space, s);
    TwoBubbleReport r;
    r.s = s;
    r.quotient = quotient(v);
    const double p = P.p, K = space->psi_h1_sq();
    r.bound = 2.0 - std::pow(2.0, 2.0 / (p + 1.0));
    r.deficit = r.bound - r.quotient.value;
    r.a0 = a0_coefficient(P);
    const double C = 1.0 / space->c_inv();
    r.coefficient_alt = 2.0 * r.a0 * std::pow(C, 2.0 / (p - 1.0));
    r.coefficient_expansion = 2.0 * (std::pow(2.0, 2.0 / (p + 1.0)) - 1.0) * r.a0 / K;
    const double decay = std::exp(-2.0 * P.gamma * s / (p - 1.0));
    r.predicted_alt = r.bound - r.coefficient_alt * decay;
    r.predicted_expansion = r.bound - r.coefficient_expansion * decay;
    r.distance_ratio = r.quotient.distance_sq / K;
    return r;
}

PerturbationReport gap_perturbation_quotient(const CknParams& P, double eps, SpacePtr space) {
    const RegionClass rc = classify(P);
    if (rc.region != Region::CaseI && rc.region != Region::CaseII)
        throw DomainError("gap_perturbation_quotient: CaseI or CaseII required");
    if (!(eps > 0.0 && eps < 0.1)) throw DomainError("gap_perturbation_quotient: eps in (0, 0.1) required");
    space = ensure_space(P, std::move(space), 0);
    const CylinderFunction rho = rho02_function(space);
    CylinderFunction v = psi_function(space);
    v.axpy(eps, rho);
    PerturbationReport r;
    r.eps = eps;
    r.quotient = quotient(v);
    r.gap = spectral_gap(P).lambda_star;
    r.rho_norm_sq = h1_norm_sq(rho);
    r.coefficient = third_order_coefficient(P);
    r.slope = P.p * (P.p - 1.0) / 3.0 * r.coefficient / r.rho_norm_sq;
    r.predicted = r.gap - eps * r.slope;
    return r;
}

PerturbationReport rho10_perturbation_quotient(const CknParams& P, double eps, SpacePtr space) {
    if (!(eps > 0.0 && eps < 0.1)) throw DomainError("rho10_perturbation_quotient: eps in (0, 0.1) required");
    space = ensure_space(P, std::move(space), 1);
    const CylinderFunction rho = rho10_function(space);
    CylinderFunction v = psi_function(space);
    v.axpy(eps, rho);
    PerturbationReport r;
    r.eps = eps;
    r.quotient = quotient(v);
    r.gap = 1.0 - 1.0 / eigenvalue_closed(P, 1, 0).lambda;
    r.rho_norm_sq = h1_norm_sq(rho);
    r.coefficient = zhat_cylinder(P);
    r.slope = -r.coefficient / r.rho_norm_sq;
    r.predicted = r.gap + eps * eps * r.slope;
    return r;
}

namespace {

struct ZhatParts {
    double reduced_prefactor;  // prefactor without the (p-2) factor
    double B4, B2, B0;
};

ZhatParts zhat_parts(const CknParams& P) {
    const double p = P.p, N = P.N;
    const double e1 = std::sqrt(P.tau(1)) / P.gamma;
    ZhatParts z;
    z.B4 = beta_fn((p - 3.0) / (p - 1.0) + 2.0 * e1, 0.5);
    z.B2 = beta_fn(1.0 + e1, 0.5);
    z.B0 = beta_fn((p + 1.0) / (p - 1.0), 0.5);
    z.reduced_prefactor = std::pow(P.d, (p - 5.0) / (p - 1.0)) * p * P.sphere_area / (2.0 * N * (N + 2.0)) *
                          std::pow(0.5 * (p + 1.0), (p - 3.0) / (p - 1.0));
    return z;
}

// prefactor * bracket written as reduced_prefactor * ((p-2) B4 - p D B2^2 / B0): no pole at p = 2
double zhat_with(const CknParams& P, double D) {
    const ZhatParts z = zhat_parts(P);
    return z.reduced_prefactor * ((P.p - 2.0) * z.B4 - P.p * D * z.B2 * z.B2 / z.B0);
}

}  // namespace

double zhat(const CknParams& P) { return zhat_with(P, sphere_moments(P.N).D_N); }

double zhat_cylinder(const CknParams& P) { return zhat_with(P, (P.N + 2.0) / P.N); }

double fbar(const CknParams& P, double p) {
    const double D = sphere_moments(P.N).D_N;
    const double q = std::sqrt(1.0 + (P.N - 1.0) / (P.d * P.d));
    const double w = 2.0 * q - 1.0;
    return -2.0 * D * std::pow(p, 4) - 2.0 * (4.0 * D - 5.0) * w * std::pow(p, 3) -
           (17.0 * w + 2.0 * D * (8.0 * q - 5.0)) * p * p - 7.0 * w * p + 2.0 * w;
}

ZhatReport zhat_report(const CknParams& P) {
    const ZhatParts z = zhat_parts(P);
    const CurveConstants cc = curve_constants(P.N);
    ZhatReport r;
    r.B4 = z.B4;
    r.B2 = z.B2;
    r.B0 = z.B0;
    r.D_N = sphere_moments(P.N).D_N;
    r.zhat_display = zhat(P);
    r.zhat_cylinder = zhat_cylinder(P);
    r.prefactor = z.reduced_prefactor * (P.p - 2.0);
    r.p_equals_2 = std::abs(P.p - 2.0) < 1e-12;
    r.bracket_display = r.p_equals_2 ? std::nan("")
                                     : z.B4 - P.p * r.D_N * z.B2 * z.B2 / ((P.p - 2.0) * z.B0);
    r.q_star = std::sqrt(1.0 + (P.N - 1.0) / (P.d * P.d));
    r.fbar = fbar(P, P.p);
    r.a_c_2star = cc.a_c_2star;
    r.a_c_3star = cc.a_c_3star;
    r.b_fs_2star = cc.b_fs_2star(P.a);
    r.negative = r.zhat_display < 0.0 && r.zhat_cylinder < 0.0;
    r.region = classify(P).region;
    return r;
}

}  // namespace cknlab
