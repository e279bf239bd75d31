#include "cknlab/spectrum.hpp"

#include <boost/math/constants/constants.hpp>
#include <cmath>

#include "cknlab/errors.hpp"
#include "cknlab/extremals.hpp"
#include "cknlab/specfun.hpp"

namespace cknlab {

namespace {

double binom(long n, long k) {
    if (k < 0 || n < k) return 0.0;
    double r = 1.0;
    for (long m = 1; m <= k; ++m) r = r * (n - k + m) / m;
    return r;
}

// log cosh without overflow
double log_cosh(double x) {
    x = std::abs(x);
    return x + std::log1p(std::exp(-2.0 * x)) - std::log(2.0);
}

}  // namespace

long harmonic_multiplicity(int N, int i) {
    if (i == 0) return 1;
    return std::lround(binom(N + i - 1, i) - binom(N + i - 3, i - 2));
}

SpectralPoint eigenvalue_closed(const CknParams& P, int i, int j) {
    if (i < 0 || j < 0) throw DomainError("eigenvalue_closed: i, j >= 0 required");
    SpectralPoint s;
    s.i = i;
    s.j = j;
    s.tau = P.tau(i);
    const double g = P.gamma;
    const double k = 2.0 * j + 1.0 + 2.0 * std::sqrt(s.tau) / g;
    s.lambda = g * g / (4.0 * P.beta) * (k * k - 1.0);
    s.multiplicity = harmonic_multiplicity(P.N, i);
    return s;
}

ComparisonFunctions comparison_functions(const CknParams& P) {
    ComparisonFunctions c;
    c.g = std::sqrt(0.25 + (P.N - 1.0) / (4.0 * P.d * P.d)) - 0.5;
    const double u = 1.0 + P.a - P.b;
    c.h = u / (P.N - 2.0 * u);
    return c;
}

GapReport spectral_gap(const CknParams& P) {
    GapReport r;
    r.region = classify(P);
    r.lambda_02 = eigenvalue_closed(P, 0, 2).lambda;
    r.lambda_11 = eigenvalue_closed(P, 1, 1).lambda;
    r.lambda_10 = eigenvalue_closed(P, 1, 0).lambda;
    if (!(r.lambda_10 > 1.0 + 1e-14)) throw ParameterError("DegenerateBoundary", "lambda_10 = 1: spectral gap vanishes");

    const double p = P.p;
    const double q = (P.N - 1.0) / (P.d * P.d);
    const double sq = std::sqrt(1.0 + q);
    const double den = 2.0 + 2.0 * q + (p - 1.0) * sq;
    r.lambda_star_q_form = (2.0 + 2.0 * q - p * (p + 1.0) + (p - 1.0) * sq) / den;
    r.lambda_star_alt = (2.0 * q - (p - 2.0) * (p + 1.0) + (p - 1.0) * sq) / den;

    if (r.region.region == Region::Remaining) {
        const double s1 = std::sqrt(P.tau(1));
        r.lambda_star = (s1 * (s1 + P.gamma) - P.beta) / (s1 * (s1 + P.gamma));
        r.winner = "lambda_10";
    } else {
        r.lambda_star = 2.0 * (p - 1.0) / (3.0 * p - 1.0);
        r.winner = "lambda_02";
    }
    return r;
}

double Eigenmode::operator()(double t) const {
    const double x = gamma * t;
    return scale * jacobi_polynomial(j, e, std::tanh(x)) * std::exp(-e * log_cosh(x));
}

double Eigenmode::derivative(double t) const {
    const double x = gamma * t, y = std::tanh(x);
    const double P0 = jacobi_polynomial(j, e, y), P1 = jacobi_polynomial_d1(j, e, y);
    return scale * gamma * std::exp(-e * log_cosh(x)) * ((1.0 - y * y) * P1 - e * y * P0);
}

double Eigenmode::second_derivative(double t) const {
    const double x = gamma * t, y = std::tanh(x);
    const double P0 = jacobi_polynomial(j, e, y), P1 = jacobi_polynomial_d1(j, e, y),
                 P2 = jacobi_polynomial_d2(j, e, y);
    const double u = (1.0 - y * y) * P1 - e * y * P0;
    const double du = -2.0 * y * P1 + (1.0 - y * y) * P2 - e * P0 - e * y * P1;
    return scale * gamma * gamma * std::exp(-e * log_cosh(x)) * ((1.0 - y * y) * du - e * y * u);
}

double Eigenmode::raw_h1_norm_sq() const {
    // ||phi||^2_{H^1} = lambda beta \int sech^2 phi^2, and sech^2 dt = (1-y^2) dy / gamma
    return lambda * beta * jacobi_norm_sq(j, e) / gamma;
}

Eigenmode eigenfunction(const CknParams& P, int i, int j) {
    Eigenmode m;
    m.i = i;
    m.j = j;
    m.gamma = P.gamma;
    m.tau = P.tau(i);
    m.e = std::sqrt(m.tau) / P.gamma;
    m.beta = P.beta;
    m.lambda = eigenvalue_closed(P, i, j).lambda;
    m.scale = 1.0 / std::sqrt(m.raw_h1_norm_sq());
    return m;
}

double eigenfunction(const CknParams& P, int i, int j, double t) { return eigenfunction(P, i, j)(t); }

double rho_02(const CknParams& P, double t) {
    const double p = P.p, x = P.gamma * t;
    const double lc = log_cosh(x);
    const double m = 2.0 / (p - 1.0);
    const double sech2 = std::exp(-2.0 * lc);
    return p / (4.0 * (p - 1.0) * (p - 1.0)) * std::exp(-m * lc) * (4.0 * (p + 1.0) - (6.0 * p + 2.0) * sech2);
}

double rho_02_prime(const CknParams& P, double t) {
    const double p = P.p, x = P.gamma * t;
    const double lc = log_cosh(x), y = std::tanh(x);
    const double m = 2.0 / (p - 1.0);
    const double k = p / (4.0 * (p - 1.0) * (p - 1.0));
    return k * P.gamma * y *
           (-m * 4.0 * (p + 1.0) * std::exp(-m * lc) + (m + 2.0) * (6.0 * p + 2.0) * std::exp(-(m + 2.0) * lc));
}

double rho_10_radial(const CknParams& P, double t) {
    const double e = std::sqrt(P.tau(1)) / P.gamma;
    return std::exp(-e * log_cosh(P.gamma * t));
}

double rho_10_radial_prime(const CknParams& P, double t) {
    const double e = std::sqrt(P.tau(1)) / P.gamma;
    return -e * P.gamma * std::tanh(P.gamma * t) * rho_10_radial(P, t);
}

double rho_10(const CknParams& P, double t, double polar_angle) {
    return rho_10_radial(P, t) * std::cos(polar_angle);
}

OrthogonalityReport orthogonality_check(const CknParams& P) {
    const ExtremalProfile prof(P);
    const double S = P.sphere_area, d2 = P.d * P.d;
    QuadratureSpec q;
    q.T = 60.0 / std::min(P.gamma, P.d);
    OrthogonalityReport r;
    r.rho02_psi = S * integrate_line([&](double t) {
        return rho_02_prime(P, t) * prof.psi_prime(t) + d2 * rho_02(P, t) * prof.psi(t);
    }, q);
    r.rho02_psiprime = S * integrate_line([&](double t) {
        return rho_02_prime(P, t) * prof.psi_second(t) + d2 * rho_02(P, t) * prof.psi_prime(t);
    }, q);
    r.rho02_norm = std::sqrt(S * integrate_line([&](double t) {
        const double u = rho_02_prime(P, t), v = rho_02(P, t);
        return u * u + d2 * v * v;
    }, q));
    r.psi_norm = std::sqrt(psi_norms(P).h1_sq);
    // \int_{S^{N-1}} cos(theta): polar integral against sin^{N-2}
    const double pi = boost::math::constants::pi<double>();
    const GaussRule g = gauss_legendre(64, 0.0, pi);
    const double ring = sphere_area(P.N - 1);
    double acc = 0.0;
    for (std::size_t k = 0; k < g.x.size(); ++k) acc += g.w[k] * ring * std::pow(std::sin(g.x[k]), P.N - 2) * std::cos(g.x[k]);
    r.rho10_mode0 = acc;
    const double scale = r.rho02_norm * r.psi_norm;
    r.ok = std::abs(r.rho02_psi) < 1e-8 * scale && std::abs(r.rho02_psiprime) < 1e-8 * scale &&
           std::abs(r.rho10_mode0) < 1e-12 * S;
    return r;
}

}  // namespace cknlab
