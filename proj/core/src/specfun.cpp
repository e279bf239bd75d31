#include "cknlab/specfun.hpp"

#include <boost/math/constants/constants.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/special_functions/beta.hpp>
#include <boost/math/special_functions/gamma.hpp>
#include <algorithm>
#include <cmath>
#include <utility>

#include "cknlab/errors.hpp"

namespace cknlab {

namespace bm = boost::math;

void QuadratureSpec::validate() const {
    if (!(abs_tol > 0.0) || !(rel_tol > 0.0)) throw DomainError("QuadratureSpec: tolerances must be positive");
    if (!(T > 0.0)) throw DomainError("QuadratureSpec: T must be positive");
    if (node_budget < 16) throw DomainError("QuadratureSpec: node budget must be >= 16");
}

double gamma_fn(double x) { return bm::tgamma(x); }

double beta_fn(double x, double y) { return bm::beta(x, y); }

double log_beta(double x, double y) { return std::lgamma(x) + std::lgamma(y) - std::lgamma(x + y); }

double cosh_power_integral(double alpha, double beta_exp) {
    if (!(alpha / 2.0 > beta_exp) || !(beta_exp > -0.5))
        throw DomainError("cosh_power_integral: need alpha/2 > beta_exp > -1/2");
    return beta_fn(alpha / 2.0 - beta_exp, beta_exp + 0.5);
}

double beta_reduction(double m, double n) {
    if (!(m > 1.0) || !(n > 0.0)) throw DomainError("beta_reduction: need m > 1, n > 0");
    double factor = 1.0;
    while (m > 2.0) {
        factor *= (m - 1.0) / (m - 1.0 + n);
        m -= 1.0;
    }
    return factor * gamma_fn(m) * gamma_fn(n) / gamma_fn(m + n);
}

namespace {

double falling(double x, int k) {
    double r = 1.0;
    for (int i = 0; i < k; ++i) r *= x - i;
    return r;
}

// Leibniz expansion of the Rodrigues derivative of (1-y)^{j+e}(1+y)^{j+e},
// divided by (1-y^2)^e.
double jacobi_sym(int j, double e, double y) {
    if (j < 0) return 0.0;
    if (j == 0) return 1.0;
    const double um = 1.0 - y, up = 1.0 + y;
    double sum = 0.0, binom = 1.0;
    for (int k = 0; k <= j; ++k) {
        const double term = binom * falling(j + e, k) * falling(j + e, j - k) * std::pow(um, j - k) * std::pow(up, k);
        sum += (k % 2 ? -term : term);
        binom = binom * (j - k) / (k + 1);
    }
    double scale = (j % 2 ? -1.0 : 1.0);
    for (int k = 1; k <= j; ++k) scale /= 2.0 * k;
    return scale * sum;
}

}  // namespace

double jacobi_polynomial(int j, double exponent, double y) {
    if (j < 0) throw DomainError("jacobi_polynomial: j >= 0 required");
    return jacobi_sym(j, exponent, y);
}

double jacobi_polynomial_d1(int j, double e, double y) {
    if (j < 1) return 0.0;
    return 0.5 * (j + 2.0 * e + 1.0) * jacobi_sym(j - 1, e + 1.0, y);
}

double jacobi_polynomial_d2(int j, double e, double y) {
    if (j < 2) return 0.0;
    return 0.25 * (j + 2.0 * e + 1.0) * (j + 2.0 * e + 2.0) * jacobi_sym(j - 2, e + 2.0, y);
}

double jacobi_norm_sq(int j, double e) {
    const double lg = (2.0 * e + 1.0) * std::log(2.0) + 2.0 * std::lgamma(j + e + 1.0) -
                      std::lgamma(j + 1.0) - std::lgamma(j + 2.0 * e + 1.0);
    return std::exp(lg) / (2.0 * j + 2.0 * e + 1.0);
}

double sphere_area(int N) {
    const double pi = bm::constants::pi<double>();
    return 2.0 * std::pow(pi, 0.5 * N) / gamma_fn(0.5 * N);
}

SphereMoments sphere_moments(int N) {
    const double S = sphere_area(N);
    return {S / N, 3.0 * S / (N * (N + 2.0)), (N + 2.0) * S / N};
}

double integrate(const std::function<double(double)>& f, double lo, double hi, const QuadratureSpec& spec) {
    spec.validate();
    constexpr int kNodes = 31;
    unsigned depth = 1;
    while ((kNodes << depth) < spec.node_budget && depth < 30) ++depth;
    double err = 0.0, l1 = 0.0;
    const double val = bm::quadrature::gauss_kronrod<double, kNodes>::integrate(f, lo, hi, depth, spec.rel_tol, &err, &l1);
    if (!std::isfinite(val)) throw NumericalError("integrate: non-finite result");
    if (err > std::max(spec.abs_tol, 1e-6 * l1)) throw NumericalError("integrate: tolerance not reached");
    return val;
}

double integrate_line(const std::function<double(double)>& f, const QuadratureSpec& spec) {
    // Split at the origin; every integrand here peaks there.
    return integrate(f, -spec.T, 0.0, spec) + integrate(f, 0.0, spec.T, spec);
}

namespace {

// Legendre P_n(x) and P_n'(x) by the three-term recurrence
std::pair<double, double> legendre_with_derivative(int n, double x) {
    double p0 = 1.0, p1 = x;
    for (int m = 2; m <= n; ++m) {
        const double p2 = ((2.0 * m - 1.0) * x * p1 - (m - 1.0) * p0) / m;
        p0 = p1;
        p1 = p2;
    }
    return {p1, n * (x * p1 - p0) / (x * x - 1.0)};
}

}  // namespace

GaussRule gauss_legendre(int n, double lo, double hi) {
    if (n < 1) throw DomainError("gauss_legendre: n >= 1 required");
    const double pi = bm::constants::pi<double>();
    const double mid = 0.5 * (lo + hi), half = 0.5 * (hi - lo);
    GaussRule r;
    if (n == 1) {
        r.x = {mid};
        r.w = {2.0 * half};
        return r;
    }
    r.x.resize(n);
    r.w.resize(n);
    for (int k = 0; k < (n + 1) / 2; ++k) {
        double x = std::cos(pi * (k + 0.75) / (n + 0.5));
        for (int it = 0; it < 100; ++it) {
            const auto [pn, dpn] = legendre_with_derivative(n, x);
            const double dx = pn / dpn;
            x -= dx;
            if (std::abs(dx) < 1e-16) break;
        }
        const double dpn = legendre_with_derivative(n, x).second;
        const double w = 2.0 / ((1.0 - x * x) * dpn * dpn);
        r.x[k] = mid - half * x;
        r.x[n - 1 - k] = mid + half * x;
        r.w[k] = r.w[n - 1 - k] = half * w;
    }
    return r;
}

double zonal_harmonic(int N, int i, double x) {
    if (i == 0) return 1.0;
    if (N == 2) return std::cos(i * std::acos(std::clamp(x, -1.0, 1.0)));
    const double lam = 0.5 * (N - 2);
    double c0 = 1.0, c1 = 2.0 * lam * x;
    for (int n = 2; n <= i; ++n) {
        const double c2 = (2.0 * x * (n + lam - 1.0) * c1 - (n + 2.0 * lam - 2.0) * c0) / n;
        c0 = c1;
        c1 = c2;
    }
    return c1;
}

}  // namespace cknlab
