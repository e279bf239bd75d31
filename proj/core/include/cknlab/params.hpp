#pragma once

#include <string>

namespace cknlab {

struct CknParams {
    int N = 0;
    double a = 0.0;
    double b = 0.0;
    double a_c = 0.0;
    double d = 0.0;  // a_c - a
    double p = 0.0;
    double gamma = 0.0;
    double beta = 0.0;
    double sphere_area = 0.0;  // |S^{N-1}|

    // tau_{a,i} = d^2 + i(N-2+i)
    double tau(int i) const;
};

enum class Region { CaseI, CaseII, Remaining, DegenerateBoundary, Invalid };

const char* to_string(Region r);

struct RegionClass {
    Region region = Region::Invalid;
    double b_fs = 0.0;
    double b_fs_star = 0.0;
    double a_c_star = 0.0;
    bool at_a_c_star = false;
    // "gap:lambda_02" or "gap:lambda_10"; which lambda* branch applies
    std::string lambda_star_branch;
    // for Invalid/DegenerateBoundary, the violated condition
    std::string condition;
};

struct CurveConstants {
    int N = 0;
    double a_c = 0.0;
    double a_c_star = 0.0;
    double a_c_2star = 0.0;
    double a_c_3star = 0.0;

    double b_fs(double a) const;
    double b_fs_star(double a) const;
    double b_fs_2star(double a) const;
};

inline constexpr double kDegenerateTol = 1e-12;
inline constexpr double kBoundaryTol = 1e-12;

// Throws ParameterError for points outside both validity conditions.
CknParams make_params(int N, double a, double b);

double felli_schneider(int N, double a);
CurveConstants curve_constants(int N);

RegionClass classify(const CknParams& params);
// Total version for sweeps: never throws, reports Invalid/DegenerateBoundary.
RegionClass classify_point(int N, double a, double b);

}  // namespace cknlab
