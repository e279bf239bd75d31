// Acceptance suite: one PASS/FAIL line per criterion, tolerances fixed below.
// Exit status is nonzero when any criterion fails.

#include <boost/math/quadrature/tanh_sinh.hpp>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "cknlab/cknlab.hpp"
#include "cli.hpp"
#include "support/golden.hpp"
#include "support/sampling.hpp"

using namespace cknlab;
using cknlab::testing::rel_err;
using cknlab::testing::sample_valid;

namespace {

namespace tol {
constexpr double kExactEigen = 1e-12;
constexpr double kGapConstant = 1e-12;
constexpr double kOracle = 1e-6;
constexpr double kRayleighGap = 1e-3;
constexpr double kRayleighCosine = 0.999;
constexpr double kBetaIdentity = 1e-10;
constexpr double kThirdOrder = 1e-8;
constexpr double kTwoBubbleCoefficient = 0.10;
constexpr double kGapSlope = 0.10;
constexpr double kZhatBracket = 1e-6;
constexpr double kBoundSlack = 1e-3;
constexpr double kGradientFd = 1e-6;
constexpr double kOnManifold = 1e-8;
constexpr double kDistance = 1e-2;
constexpr double kGolden = 1e-12;
}  // namespace tol

struct Outcome {
    bool pass = true;
    std::ostringstream detail;
    std::vector<std::string> info;

    void require(bool ok, const std::string& what) {
        if (!ok) {
            if (pass) detail << what;
            pass = false;
        }
    }
    void note(const std::string& s) { info.push_back(s); }
};

std::string fmt(const char* f, auto... args) {
    char buf[256];
    std::snprintf(buf, sizeof buf, f, args...);
    return buf;
}

int failures = 0;

void criterion(int id, double limit_s, const std::function<void(Outcome&)>& body) {
    Outcome o;
    const auto t0 = std::chrono::steady_clock::now();
    try {
        body(o);
    } catch (const std::exception& e) {
        o.require(false, std::string("exception: ") + e.what());
    }
    const double dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    o.require(dt < limit_s, fmt("runtime %.1fs exceeds %.0fs", dt, limit_s));
    if (!o.pass) ++failures;
    std::printf("criterion %2d: %s  (%.2fs)%s%s\n", id, o.pass ? "PASS" : "FAIL", dt, o.pass ? "" : "  ",
                o.detail.str().c_str());
    for (const std::string& s : o.info) std::printf("    %s\n", s.c_str());
    std::fflush(stdout);
}

double log_cosh(double x) {
    x = std::abs(x);
    return x + std::log1p(std::exp(-2.0 * x)) - std::log(2.0);
}

// \int_R cosh(u)^{-alpha} |sinh u|^{2 beta} du by tanh-sinh, evaluated in log space
double cosh_power_quadrature(double alpha, double b) {
    boost::math::quadrature::tanh_sinh<double> ts;
    const auto f = [&](double s) {
        const double log_sinh = s < 1.0 ? std::log(std::sinh(s)) : s + std::log1p(-std::exp(-2.0 * s)) - std::log(2.0);
        return std::exp(-alpha * log_cosh(s) + 2.0 * b * log_sinh);
    };
    return 2.0 * ts.integrate(f, 0.0, std::numeric_limits<double>::infinity());
}

// |S^{N-1}| \int_R Psi^{p-2} rho_02^3 dt with Psi taken in log space, so p < 2 cannot produce inf * 0
double third_order_quadrature(const CknParams& P) {
    boost::math::quadrature::tanh_sinh<double> ts;
    const double log_amp = std::log(ExtremalProfile(P).amplitude);
    const auto f = [&](double t) {
        const double log_psi = log_amp - 2.0 / (P.p - 1.0) * log_cosh(P.gamma * t);
        const double r = rho_02(P, t);
        if (r == 0.0) return 0.0;
        return std::copysign(std::exp((P.p - 2.0) * log_psi + 3.0 * std::log(std::abs(r))), r);
    };
    return P.sphere_area * (ts.integrate(f, -std::numeric_limits<double>::infinity(), 0.0) +
                            ts.integrate(f, 0.0, std::numeric_limits<double>::infinity()));
}

// B(x, 1/2) = \int_R cosh(u)^{-2x} du
double beta_half_quadrature(double x) { return cosh_power_quadrature(2.0 * x, 0.0); }

}  // namespace

int main() {
    std::printf("cknlab acceptance suite\n");

    criterion(1, 1.0, [](Outcome& o) {
        std::mt19937_64 rng(1001);
        double worst = 0.0;
        for (int k = 0; k < 50; ++k) {
            const CknParams P = sample_valid(rng, 2 + k % 5);
            const double e01 = rel_err(eigenvalue_closed(P, 0, 1).lambda, 1.0);
            const double e00 = rel_err(eigenvalue_closed(P, 0, 0).lambda, 1.0 / P.p);
            worst = std::max({worst, e01, e00});
        }
        o.require(worst < tol::kExactEigen, fmt("max rel err %.3g", worst));
        o.note(fmt("lambda_01 = 1, lambda_00 = 1/p on 50 points: max rel err %.3g", worst));
    });

    criterion(2, 1.0, [](Outcome& o) {
        std::mt19937_64 rng(1002);
        double worst = 0.0;
        for (int k = 0; k < 50; ++k) {
            // CaseI/CaseII need a < a_c* and a_c* = 0 = a_c at N = 2
            const CknParams P = sample_valid(rng, 3 + k % 4, k % 2 ? Region::CaseI : Region::CaseII);
            const double raw = 1.0 - 1.0 / eigenvalue_closed(P, 0, 2).lambda;
            const double simple = 2.0 * (P.p - 1.0) / (3.0 * P.p - 1.0);
            worst = std::max({worst, rel_err(raw, simple), rel_err(spectral_gap(P).lambda_star, simple)});
        }
        o.require(worst < tol::kGapConstant, fmt("CaseI/II max rel err %.3g", worst));
        o.note(fmt("CaseI/CaseII: 1 - 1/lambda_02 vs 2(p-1)/(3p-1), max rel err %.3g", worst));
        for (int N : {3, 4, 5})
            for (double a : {-0.5, 0.0}) {
                double prev = INFINITY;
                std::string row = fmt("Remaining N=%d a=%g:", N, a);
                for (double off : {1e-2, 1e-4, 1e-6}) {
                    const CknParams P = make_params(N, a, felli_schneider(N, a) + off);
                    o.require(classify(P).region == Region::Remaining, "offset point not in Remaining");
                    const double ls = spectral_gap(P).lambda_star;
                    o.require(ls > 0.0 && ls < prev, fmt("lambda* not decreasing at N=%d a=%g", N, a));
                    prev = ls;
                    row += fmt(" %.3g", ls);
                }
                o.require(prev < 1e-4, fmt("lambda* = %.3g at offset 1e-6", prev));
                o.note(row);
            }
    });

    criterion(3, 60.0, [](Outcome& o) {
        std::mt19937_64 rng(1003);
        double worst = 0.0;
        for (int k = 0; k < 20; ++k) {
            const CknParams P = sample_valid(rng, 2 + k % 5);
            for (int i = 0; i <= 2; ++i) {
                const std::vector<double> l = generalized_eigenvalues(P, i, 3, default_oracle_grid(P, i));
                for (int j = 0; j <= 2; ++j) worst = std::max(worst, rel_err(l[j], eigenvalue_closed(P, i, j).lambda));
            }
        }
        o.require(worst < tol::kOracle, fmt("max rel err %.3g", worst));
        o.note(fmt("Sturm bisection vs closed form, i,j <= 2 on 20 points: max rel err %.3g", worst));
    });

    criterion(4, 120.0, [](Outcome& o) {
        for (const auto& [a, b, mode] : {std::tuple{0.0, 0.5, 0}, std::tuple{0.0, 0.3, 1}}) {
            const CknParams P = make_params(4, a, b);
            const RayleighGapReport r = rayleigh_gap_check(P, default_rayleigh_grid(P));
            const double ls = spectral_gap(P).lambda_star;
            o.require(r.minimum >= ls - tol::kRayleighGap, fmt("(%g,%g): min %.6g < lambda* %.6g", a, b, r.minimum, ls));
            o.require(r.mode == mode, fmt("(%g,%g): minimizer in mode %d", a, b, r.mode));
            o.require(r.cosine > tol::kRayleighCosine, fmt("(%g,%g): cosine %.6f", a, b, r.cosine));
            o.note(fmt("(4,%g,%g) %s: Rayleigh min %.6f, lambda* %.6f, mode %d, cosine %.6f", a, b,
                       to_string(classify(P).region), r.minimum, ls, r.mode, r.cosine));
        }
    });

    criterion(5, 5.0, [](Outcome& o) {
        std::mt19937_64 rng(1005);
        std::uniform_real_distribution<double> U(0.0, 1.0);
        double worst = 0.0;
        for (int k = 0; k < 100; ++k) {
            const double b = -0.45 + 3.0 * U(rng);
            const double alpha = 2.0 * b + 0.2 + 8.0 * U(rng);
            const double v = cosh_power_integral(alpha, b), q = cosh_power_quadrature(alpha, b);
            worst = std::max(worst, std::abs(v - q) / std::max(1.0, std::abs(q)));
        }
        o.require(worst < tol::kBetaIdentity, fmt("max err %.3g", worst));
        o.note(fmt("cosh-power Beta identity on 100 (alpha, beta): max err %.3g", worst));
    });

    criterion(6, 30.0, [](Outcome& o) {
        std::mt19937_64 rng(1006);
        double worst = 0.0, worst_alt = INFINITY;
        for (int k = 0; k < 10; ++k) {
            const CknParams P = sample_valid(rng, 3 + k % 4, k % 2 ? Region::CaseI : Region::CaseII);
            const double q = third_order_quadrature(P);
            worst = std::max(worst, rel_err(third_order_coefficient(P), q));
            worst_alt = std::min(worst_alt, rel_err(third_order_coefficient_alt(P), q));
        }
        o.require(worst < tol::kThirdOrder, fmt("closed form vs quadrature %.3g", worst));
        int negative = 0;
        for (int k = 0; k < 1000; ++k) {
            const CknParams P = sample_valid(rng, 3 + k % 4, k % 2 ? Region::CaseI : Region::CaseII);
            if (!(third_order_coefficient(P) > 0.0)) ++negative;
        }
        o.require(negative == 0, fmt("%d nonpositive values in 1000", negative));
        o.note(fmt("Beta argument (p+1)/(p-1): max rel err %.3g on 10 points; positive on 1000 points", worst));
        o.note(fmt("Beta argument (p+2)/(p-1): min rel err %.3g against the same quadrature", worst_alt));
    });

    criterion(7, 60.0, [](Outcome& o) {
        bool below = true;
        for (const auto& [a, b] : {std::pair{0.5, 0.6}, std::pair{0.0, 0.5}, std::pair{0.0, 0.3}, std::pair{0.2, 0.2}}) {
            const CknParams P = make_params(4, a, b);
            const SpacePtr sp = CylinderSpace::create(P);
            std::string row = fmt("(4,%g,%g) deficit*e^{2 gamma s/(p-1)} at s = 8, 10, 12 /gamma:", a, b);
            TwoBubbleReport last;
            for (double sg : {8.0, 10.0, 12.0}) {
                const TwoBubbleReport r = two_bubble_quotient(P, sg / P.gamma, sp);
                below = below && r.quotient.value < r.bound;
                o.require(r.quotient.value < r.bound, fmt("(%g,%g) s=%g/gamma: Q %.8g >= bound", a, b, sg, r.quotient.value));
                const double scaled = r.deficit * std::exp(2.0 * sg / (P.p - 1.0));
                o.require(rel_err(scaled, r.coefficient_alt) < tol::kTwoBubbleCoefficient,
                          fmt("(%g,%g): scaled deficit %.4g vs 2 A0 C^{2/(p-1)} = %.4g", a, b, scaled, r.coefficient_alt));
                row += fmt(" %.4g", scaled);
                if (r.deficit < 1e-12 * r.bound) row += "(below roundoff)";
                last = r;
            }
            o.note(row);
            o.note(fmt("    2 A0 C^{2/(p-1)} = %.4g, 2(2^{2/(p+1)}-1) A0/||Psi||^2 = %.4g", last.coefficient_alt,
                       last.coefficient_expansion));
        }
        o.note(below ? "Q(Psi + Psi_s) < 2 - 2^{2/(p+1)} at every point and s" : "Q(Psi + Psi_s) bound violated");
    });

    criterion(8, 60.0, [](Outcome& o) {
        // rho_02 carries its explicit normalization, so eps = 0.01 is a small perturbation only where
        // ||rho_02||^2 / ||Psi||^2 is moderate; near p = 1 that ratio runs from 1e-16 to 1e4.
        const std::vector<CknParams> pts{make_params(4, 0.5, 0.6), make_params(4, 0.0, 0.5),  make_params(4, -0.3, 0.5),
                                         make_params(3, 0.0, 0.5), make_params(5, 0.2, 0.8),  make_params(3, -0.5, 0.2),
                                         make_params(6, 0.5, 1.2)};
        double worst = 0.0;
        for (const CknParams& P : pts) {
            const Region reg = classify(P).region;
            o.require(reg == Region::CaseI || reg == Region::CaseII, "point outside CaseI/CaseII");
            const PerturbationReport r = gap_perturbation_quotient(P, 0.01);
            const double ratio = r.rho_norm_sq / psi_norms(P).h1_sq;
            const double simple = 2.0 * (P.p - 1.0) / (3.0 * P.p - 1.0);
            o.require(r.quotient.value < simple, fmt("Q %.8g >= 2(p-1)/(3p-1) at p=%g", r.quotient.value, P.p));
            const double slope = (r.gap - r.quotient.value) / r.eps;
            worst = std::max(worst, rel_err(slope, r.slope));
            o.note(fmt("(%d,%g,%g) %s: (gap - Q)/eps %.6g, predicted %.6g, ||rho_02||^2/||Psi||^2 %.3g", P.N, P.a,
                       P.b, to_string(reg), slope, r.slope, ratio));
        }
        const CknParams big = make_params(3, 0.3, 0.9);
        const PerturbationReport rb = gap_perturbation_quotient(big, 0.01);
        o.note(fmt("excluded (3,0.3,0.9): ||rho_02||^2/||Psi||^2 = %.3g, (gap - Q)/eps %.4g vs predicted %.4g",
                   rb.rho_norm_sq / psi_norms(big).h1_sq, (rb.gap - rb.quotient.value) / rb.eps, rb.slope));
        o.require(worst < tol::kGapSlope, fmt("slope rel err %.3g", worst));
    });

    criterion(9, 120.0, [](Outcome& o) {
        std::mt19937_64 rng(1009);
        double worst = 0.0;
        for (int N : {2, 3, 4, 5}) {
            double max_display = -INFINITY, max_cyl = -INFINITY;
            for (int k = 0; k < 20; ++k) {
                const CknParams P = sample_valid(rng, N, Region::Remaining);
                const ZhatReport z = zhat_report(P);
                max_display = std::max(max_display, z.zhat_display);
                max_cyl = std::max(max_cyl, z.zhat_cylinder);

                // Beta values and D_N rebuilt by quadrature
                const double e1 = std::sqrt(P.tau(1)) / P.gamma, p = P.p;
                const double B4 = beta_half_quadrature((p - 3.0) / (p - 1.0) + 2.0 * e1);
                const double B2 = beta_half_quadrature(1.0 + e1);
                const double B0 = beta_half_quadrature((p + 1.0) / (p - 1.0));
                const GaussRule g = gauss_legendre(64, 0.0, M_PI);
                double m2 = 0.0, m4 = 0.0;
                for (std::size_t q = 0; q < g.x.size(); ++q) {
                    const double w = g.w[q] * std::pow(std::sin(g.x[q]), N - 2), c = std::cos(g.x[q]);
                    m2 += w * c * c;
                    m4 += w * c * c * c * c;
                }
                const double D = 3.0 * m2 * m2 / m4 * (N == 2 ? 2.0 : sphere_area(N - 1));
                worst = std::max({worst, rel_err(z.B4, B4), rel_err(z.B2, B2), rel_err(z.B0, B0), rel_err(z.D_N, D)});
                if (!z.p_equals_2) {
                    const double bracket = B4 - p * D * B2 * B2 / ((p - 2.0) * B0);
                    worst = std::max(worst, rel_err(z.bracket_display, bracket));
                }
            }
            o.require(max_display < 0.0, fmt("N=%d: zhat_display reaches %.3g", N, max_display));
            o.require(max_cyl < 0.0, fmt("N=%d: zhat_cylinder reaches %.3g", N, max_cyl));
            o.note(fmt("N=%d, 20 Remaining points: max zhat_display %.4g, max zhat_cylinder %.4g", N, max_display, max_cyl));
        }
        o.require(worst < tol::kZhatBracket, fmt("bracket vs quadrature %.3g", worst));
        o.note(fmt("bracket and moments vs quadrature: max rel err %.3g", worst));

        // which normalization the discretized quotient follows along Psi + eps rho_10
        const CknParams P = make_params(4, 0.0, 0.3);
        const SpacePtr sp = CylinderSpace::create(P);
        const auto f = [&](double e) {
            const PerturbationReport r = rho10_perturbation_quotient(P, e, sp);
            return (r.quotient.value - r.gap) / (e * e);
        };
        const double measured = -(4.0 * f(0.02) - f(0.04)) / 3.0 * h1_norm_sq(rho10_function(sp));
        o.note(fmt("(4,0,0.3): quotient-implied zhat %.6g, zhat_cylinder %.6g, zhat_display %.6g", measured,
                   zhat_cylinder(P), zhat(P)));
    });

    criterion(10, 600.0, [](Outcome& o) {
        for (const auto& [a, b] : {std::pair{0.5, 0.6}, std::pair{0.0, 0.5}, std::pair{0.0, 0.3}}) {
            const CknParams P = make_params(4, a, b);
            const SpacePtr sp = CylinderSpace::create(P);
            const CbeEstimate e = estimate_cbe(P, 1, 1, 0, {}, sp);
            o.require(e.best.value > 0.0, fmt("(%g,%g): Q_best %.6g <= 0", a, b, e.best.value));
            o.require(e.best.value <= e.bound + tol::kBoundSlack,
                      fmt("(%g,%g): Q_best %.6g above bound %.6g", a, b, e.best.value, e.bound));
            o.note(fmt("(4,%g,%g) %s: Q_best %.6f via %s, bound %.6f", a, b, to_string(classify(P).region),
                       e.best.value, e.best_recipe.c_str(), e.bound));

            // gradient against central differences at a generic iterate
            CylinderFunction v = start_function(sp, {StartKind::Random, 0.0, 0.0, 42}, {0, 1});
            CylinderFunction dir = start_function(sp, {StartKind::Random, 0.0, 0.0, 43}, {0, 1}) - psi_function(sp);
            const QuotientGradient g = quotient_gradient(v);
            const double h = 1e-6;
            const double fd = (quotient(v + h * dir).value - quotient(v - h * dir).value) / (2 * h);
            const double an = h1_inner(g.gradient, dir);
            o.require(std::abs(an - fd) < tol::kGradientFd * std::max(1.0, std::abs(fd)),
                      fmt("(%g,%g): gradient %.10g vs FD %.10g", a, b, an, fd));

            MinimizeConfig c;
            c.start = {StartKind::Random, 0.0, 0.0, 5};
            c.max_iterations = 10;
            const QuotientReport r1 = minimize_quotient(c, P, sp), r2 = minimize_quotient(c, P, sp);
            o.require(r1.value == r2.value && r1.trace == r2.trace, fmt("(%g,%g): repeated run differs", a, b));
        }
    });

    criterion(11, 10.0, [](Outcome& o) {
        for (const auto& [a, b] : {std::pair{0.5, 0.6}, std::pair{0.0, 0.5}, std::pair{-0.3, 0.4}}) {
            const CknParams P = make_params(4, a, b);
            const SpacePtr sp = CylinderSpace::create(P);
            const ManifoldProjection m = distance_to_manifold(psi_function(sp));
            o.require(m.distance_sq < tol::kOnManifold * m.norm_sq, fmt("(%g,%g): dist^2(Psi) %.3g", a, b, m.distance_sq));
            const double eps = 1e-3;
            const CylinderFunction rho = rho02_function(sp);
            CylinderFunction v = psi_function(sp);
            v.axpy(eps, rho);
            const double d2 = distance_to_manifold(v).distance_sq, want = eps * eps * h1_norm_sq(rho);
            o.require(rel_err(d2, want) < tol::kDistance, fmt("(%g,%g): dist^2 %.6g vs %.6g", a, b, d2, want));
            o.note(fmt("(4,%g,%g): dist^2(Psi)/||Psi||^2 %.3g, dist^2(Psi + eps rho_02)/(eps^2 ||rho_02||^2) %.6f", a, b,
                       m.distance_sq / m.norm_sq, d2 / want));
        }
    });

    criterion(12, 10.0, [](Outcome& o) {
        for (const std::string pt : {"4_0_0.3", "4_0_0.5", "4_0.5_0.6"}) {
            std::vector<std::string> args{""};
            std::istringstream is(pt);
            for (std::string tok; std::getline(is, tok, '_');) args.push_back(tok);
            const CknParams P = make_params(4, std::stod(args[2]), std::stod(args[3]));
            for (const std::string cmd : {"gap", "bounds"}) {
                args[0] = cmd;
                std::ostringstream out, err;
                o.require(cli::run_command(args, out, err) == cli::kExitOk, cmd + " " + pt + " failed");
                const nlohmann::json got = nlohmann::json::parse(out.str());
                const nlohmann::json want = testing::read_golden(cmd + "_" + pt + ".json");
                const std::string diff = testing::golden_diff(got, want, tol::kGolden);
                o.require(diff.empty(), cmd + " " + pt + diff);
                if (cmd == "gap") {
                    const double q = got.at("lambda_star_q_form"), alt = got.at("lambda_star_alt");
                    const double qq = (P.N - 1.0) / (P.d * P.d);
                    const double shift = 2.0 * P.p / (2.0 + 2.0 * qq + (P.p - 1.0) * std::sqrt(1.0 + qq));
                    o.require(rel_err(alt - q, shift) < 1e-10, "lambda* forms do not differ by the expected shift");
                    if (classify(P).region == Region::Remaining)
                        o.require(rel_err(q, 1.0 - 1.0 / eigenvalue_closed(P, 1, 0).lambda) < 1e-12,
                                  "q-form is not 1 - 1/lambda_10");
                    o.note(fmt("gap %s: lambda_star_q_form %.10g, lambda_star_alt %.10g", pt.c_str(), q, alt));
                } else {
                    const double two = got.at("bound_two_bubble"), one = got.at("bound_two_bubble_alt");
                    o.require(rel_err(two, 2.0 - std::pow(2.0, 2.0 / (P.p + 1.0))) < 1e-14, "2^{2/(p+1)} bound");
                    o.require(rel_err(one, 2.0 - std::pow(2.0, 1.0 / (P.p + 1.0))) < 1e-14, "2^{1/(p+1)} bound");
                    o.note(fmt("bounds %s: 2-2^{2/(p+1)} = %.10g, 2-2^{1/(p+1)} = %.10g", pt.c_str(), two, one));
                }
            }
        }
    });

    std::printf("%d of 12 criteria failed\n", failures);
    return failures == 0 ? 0 : 1;
}
