#pragma once

#include <functional>
#include <vector>

namespace cknlab {

struct QuadratureSpec {
    double abs_tol = 1e-14;
    double rel_tol = 1e-12;
    double T = 40.0;  // half-width of the truncated line
    int node_budget = 1 << 14;

    void validate() const;
};

double gamma_fn(double x);
double beta_fn(double x, double y);
double log_beta(double x, double y);

// B(alpha/2 - beta_exp, beta_exp + 1/2) = \int_R cosh(s)^{-alpha} sinh(s)^{2 beta_exp} ds
double cosh_power_integral(double alpha, double beta_exp);

// B(m, n) by B(m,n) = (m-1)/(m-1+n) B(m-1,n), bottoming out at m in (1, 2]
double beta_reduction(double m, double n);

// Rodrigues-normalized symmetric Jacobi polynomial P_j^{(e,e)}(y):
//   (-1)^j / (2^j j!) (1-y^2)^{-e} d^j/dy^j (1-y^2)^{j+e}
double jacobi_polynomial(int j, double exponent, double y);
// d/dy and d^2/dy^2 of the same polynomial
double jacobi_polynomial_d1(int j, double exponent, double y);
double jacobi_polynomial_d2(int j, double exponent, double y);
// \int_{-1}^{1} (1-y^2)^e P_j^{(e,e)}(y)^2 dy
double jacobi_norm_sq(int j, double exponent);

double sphere_area(int N);

struct SphereMoments {
    double second = 0.0;  // \int theta_1^2
    double fourth = 0.0;  // \int theta_1^4
    double D_N = 0.0;     // (N+2)|S^{N-1}|/N
};
SphereMoments sphere_moments(int N);

// Adaptive Gauss-Kronrod on [lo, hi]
double integrate(const std::function<double(double)>& f, double lo, double hi,
                 const QuadratureSpec& spec = {});
// Same on [-spec.T, spec.T]
double integrate_line(const std::function<double(double)>& f, const QuadratureSpec& spec = {});

struct GaussRule {
    std::vector<double> x;
    std::vector<double> w;
};
// n-point Gauss-Legendre on [lo, hi]
GaussRule gauss_legendre(int n, double lo = -1.0, double hi = 1.0);

// Zonal harmonic of degree i on S^{N-1} as a function of cos(polar angle), unnormalized:
// Gegenbauer C_i^{(N-2)/2} for N >= 3, Chebyshev T_i for N = 2.
double zonal_harmonic(int N, int i, double x);

}  // namespace cknlab
