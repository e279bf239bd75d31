#include "cknlab/extremals.hpp"

#include <boost/math/constants/constants.hpp>
#include <cmath>

#include "cknlab/errors.hpp"
#include "cknlab/specfun.hpp"

namespace cknlab {

ExtremalProfile::ExtremalProfile(const CknParams& P)
    : params(P),
      amplitude(std::pow(0.5 * (P.p + 1.0) * P.d * P.d, 1.0 / (P.p - 1.0))),
      decay(P.gamma),
      exponent(2.0 / (P.p - 1.0)) {}

double ExtremalProfile::psi(double t) const {
    // cosh^{-m}(x) = 2^m e^{-m|x|} (1 + e^{-2|x|})^{-m}; avoids overflow for large |x|
    const double x = std::abs(decay * t);
    return amplitude * std::exp(exponent * (std::log(2.0) - x - std::log1p(std::exp(-2.0 * x))));
}

double ExtremalProfile::psi_prime(double t) const {
    return -exponent * decay * std::tanh(decay * t) * psi(t);
}

double ExtremalProfile::psi_second(double t) const {
    const double y = std::tanh(decay * t);
    const double g = decay;
    return psi(t) * exponent * g * g * (exponent * y * y - (1.0 - y * y));
}

double psi(const CknParams& P, double t) { return ExtremalProfile(P).psi(t); }
double psi_prime(const CknParams& P, double t) { return ExtremalProfile(P).psi_prime(t); }
double psi_shift(const CknParams& P, double t, double s) { return ExtremalProfile(P).psi(t - s); }

double bubble_w(const CknParams& P, double r) {
    if (!(r >= 0.0)) throw DomainError("bubble_w: radius must be nonnegative");
    const double m = 2.0 / (P.p - 1.0);
    const double k = P.d * (P.p - 1.0);
    return std::pow(2.0 * (P.p + 1.0) * P.d * P.d, 1.0 / (P.p - 1.0)) * std::pow(1.0 + std::pow(r, k), -m);
}

double bubble_w_prime(const CknParams& P, double r) {
    if (!(r > 0.0)) throw DomainError("bubble_w_prime: radius must be positive");
    const double m = 2.0 / (P.p - 1.0);
    const double k = P.d * (P.p - 1.0);
    const double rk = std::pow(r, k);
    return -m * k * rk / (r * (1.0 + rk)) * bubble_w(P, r);
}

double generator_v(const CknParams& P, double r) {
    if (!(r > 0.0)) throw DomainError("generator_v: radius must be positive");
    const double m = 2.0 / (P.p - 1.0);
    const double k = P.d * (P.p - 1.0);
    const double rk = std::pow(r, k);
    return bubble_w(P, r) * (P.d - m * k * rk / (1.0 + rk));
}

double emden_fowler(const CknParams& P, double (*f)(const CknParams&, double), double t) {
    return std::exp(-P.d * t) * f(P, std::exp(-t));
}

double emden_fowler_inverse(const CknParams& P, double (*g)(const CknParams&, double), double r) {
    return std::pow(r, -P.d) * g(P, -std::log(r));
}

PsiNorms psi_norms(const CknParams& P) {
    const ExtremalProfile prof(P);
    PsiNorms n;
    n.lp1_pow = std::pow(prof.amplitude, P.p + 1.0) * P.sphere_area / P.gamma *
                beta_fn((P.p + 1.0) / (P.p - 1.0), 0.5);
    n.h1_sq = n.lp1_pow;
    n.lp1 = std::pow(n.lp1_pow, 1.0 / (P.p + 1.0));
    return n;
}

OptimalConstant optimal_constant(const CknParams& P) {
    const double p = P.p;
    const double pi = boost::math::constants::pi<double>();
    OptimalConstant c;
    c.c_inv = std::pow(psi_norms(P).lp1_pow, (p - 1.0) / (p + 1.0));
    const double inner = 2.0 * std::sqrt(pi) * gamma_fn((p + 1.0) / (p - 1.0)) /
                         ((p - 1.0) * gamma_fn((3.0 * p + 1.0) / (2.0 * (p - 1.0))));
    c.c_inv_closed_form = 0.5 * (p + 1.0) * std::pow(P.d, (p + 3.0) / (p + 1.0)) * std::pow(inner, (p - 1.0) / (p + 1.0));
    c.ratio = c.c_inv / c.c_inv_closed_form;
    return c;
}

}  // namespace cknlab
