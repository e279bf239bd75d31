#include "cknlab/params.hpp"

#include <cmath>

#include "cknlab/errors.hpp"
#include "cknlab/specfun.hpp"

namespace cknlab {

double CknParams::tau(int i) const { return d * d + i * (N - 2 + i); }

const char* to_string(Region r) {
    switch (r) {
        case Region::CaseI: return "CaseI";
        case Region::CaseII: return "CaseII";
        case Region::Remaining: return "Remaining";
        case Region::DegenerateBoundary: return "DegenerateBoundary";
        case Region::Invalid: return "Invalid";
    }
    return "Invalid";
}

double felli_schneider(int N, double a) {
    const double a_c = 0.5 * (N - 2);
    if (!(a < a_c)) throw DomainError("felli_schneider: a < a_c required");
    const double d = a_c - a;
    return N * d / (2.0 * std::sqrt(d * d + N - 1)) + a - a_c;
}

double CurveConstants::b_fs(double a) const { return felli_schneider(N, a); }

double CurveConstants::b_fs_star(double a) const {
    const double d = a_c - a;
    return d * N / (d + std::sqrt(d * d + N - 1)) + a - a_c;
}

double CurveConstants::b_fs_2star(double a) const { return a - a_c + N / 3.0; }

CurveConstants curve_constants(int N) {
    CurveConstants c;
    c.N = N;
    c.a_c = 0.5 * (N - 2);
    c.a_c_star = (1.0 - std::sqrt((N - 1.0) / (2.0 * N))) * c.a_c;
    c.a_c_2star = c.a_c - 2.0 / std::sqrt(5.0) * std::sqrt(N - 1.0);
    c.a_c_3star = c.a_c - std::sqrt(N - 1.0) / std::sqrt(3.0);
    return c;
}

namespace {

// Empty string when (N, a, b) satisfies one of the two validity conditions.
std::string violated_condition(int N, double a, double b, bool& degenerate) {
    degenerate = false;
    if (N < 2) return "N >= 2 violated";
    if (!std::isfinite(a) || !std::isfinite(b)) return "finite a, b required";
    const double a_c = 0.5 * (N - 2);
    if (!(a < a_c)) return N == 2 ? "a < a_c = 0 violated (N = 2 requires a < 0)" : "a < a_c violated";
    if (!(b < a + 1.0)) return "b < a+1 violated";
    if (a < 0.0) {
        const double bfs = felli_schneider(N, a);
        if (std::abs(b - bfs) < kDegenerateTol) {
            degenerate = true;
            return "b = b_FS(a) (degenerate extremal)";
        }
        if (!(b > bfs)) return "b > b_FS(a) violated";
        return {};
    }
    if (!(b >= a)) return "a <= b violated";
    if (!(a + b > 0.0)) return "a+b > 0 violated";
    return {};
}

}  // namespace

CknParams make_params(int N, double a, double b) {
    bool degenerate = false;
    const std::string why = violated_condition(N, a, b, degenerate);
    if (!why.empty()) throw ParameterError(degenerate ? "DegenerateBoundary" : "Invalid", why);

    CknParams P;
    P.N = N;
    P.a = a;
    P.b = b;
    P.a_c = 0.5 * (N - 2);
    P.d = P.a_c - a;
    const double c = 1.0 + a - b;
    P.p = (N + 2.0 * c) / (N - 2.0 * c);
    P.gamma = 0.5 * (P.p - 1.0) * P.d;
    P.beta = 0.5 * P.p * (P.p + 1.0) * P.d * P.d;
    P.sphere_area = sphere_area(N);
    if (!(P.p > 1.0) || !std::isfinite(P.p)) throw ParameterError("Invalid", "p > 1 violated");
    return P;
}

RegionClass classify(const CknParams& P) {
    const CurveConstants cc = curve_constants(P.N);
    RegionClass r;
    r.a_c_star = cc.a_c_star;
    r.b_fs = felli_schneider(P.N, P.a);
    r.b_fs_star = cc.b_fs_star(P.a);
    r.at_a_c_star = std::abs(P.a - cc.a_c_star) < kBoundaryTol;
    if (P.a > cc.a_c_star && !r.at_a_c_star) {
        r.region = Region::CaseI;
        r.lambda_star_branch = "gap:lambda_02";
    } else if (P.b >= r.b_fs_star) {
        r.region = Region::CaseII;
        r.lambda_star_branch = "gap:lambda_02";
    } else {
        r.region = Region::Remaining;
        r.lambda_star_branch = "gap:lambda_10";
    }
    return r;
}

RegionClass classify_point(int N, double a, double b) {
    bool degenerate = false;
    const std::string why = violated_condition(N, a, b, degenerate);
    if (why.empty()) return classify(make_params(N, a, b));
    RegionClass r;
    r.region = degenerate ? Region::DegenerateBoundary : Region::Invalid;
    r.condition = why;
    if (N >= 2) {
        const CurveConstants cc = curve_constants(N);
        r.a_c_star = cc.a_c_star;
        if (a < cc.a_c) {
            r.b_fs = cc.b_fs(a);
            r.b_fs_star = cc.b_fs_star(a);
        }
    }
    return r;
}

}  // namespace cknlab
