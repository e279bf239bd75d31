#pragma once

#include <complex>
#include <functional>
#include <memory>
#include <utility>
#include <vector>

#include "cknlab/extremals.hpp"
#include "cknlab/grid.hpp"
#include "cknlab/params.hpp"

namespace cknlab {

GridSpec default_cylinder_grid(const CknParams& P);

// Discretization of H^1(R x S^{N-1}) restricted to zonal functions
//   v(t, theta) = sum_i phi_i(t) Y_i(theta),
// Y_i the degree-i zonal harmonic, orthonormal in L^2(S^{N-1}). Radial profiles live on a
// uniform grid treated as one period for spectral derivatives; the polar angle uses
// Gauss-Legendre nodes in theta with weight |S^{N-2}| sin^{N-2}(theta).
class CylinderSpace {
public:
    static std::shared_ptr<const CylinderSpace> create(const CknParams& P, int max_degree = 1,
                                                       const GridSpec* grid = nullptr, int angle_nodes = 64);

    const CknParams& params() const { return params_; }
    const GridSpec& grid() const { return grid_; }
    const ExtremalProfile& profile() const { return profile_; }
    int degrees() const { return max_degree_ + 1; }
    int size() const { return grid_.M; }
    double h() const { return h_; }
    double t(int k) const { return t_[k]; }
    const std::vector<double>& nodes() const { return t_; }
    double tau(int i) const { return params_.tau(i); }

    int angle_count() const { return static_cast<int>(angle_.size()); }
    double angle(int q) const { return angle_[q]; }
    double angle_weight(int q) const { return angle_w_[q]; }
    double harmonic(int i, int q) const { return harm_[i][q]; }

    // ||Psi||^2_{H^1} = ||Psi||^{p+1}_{p+1} (closed form) and C^{-1}
    double psi_h1_sq() const { return K_; }
    double c_inv() const { return c_inv_; }

    // squared angular frequency of r2c index k; the Nyquist frequency is treated as 0
    double kappa_sq(int k) const { return kappa2_[k]; }

    // Correlation c_m = sum_n f_n Psi^p(t_{n-m}) for all circular shifts m (index m mod M).
    std::vector<double> correlate_psi_p(const std::vector<double>& f) const;

private:
    CylinderSpace() = default;

    CknParams params_;
    GridSpec grid_;
    ExtremalProfile profile_;
    int max_degree_ = 1;
    double h_ = 0.0;
    double K_ = 0.0;
    double c_inv_ = 0.0;
    std::vector<double> t_;
    std::vector<double> angle_, angle_w_;
    std::vector<std::vector<double>> harm_;
    std::vector<double> kappa2_;
    std::vector<std::complex<double>> psi_p_hat_;
};

using SpacePtr = std::shared_ptr<const CylinderSpace>;

class CylinderFunction {
public:
    explicit CylinderFunction(SpacePtr space);
    CylinderFunction(SpacePtr space, std::vector<std::vector<double>> modes);

    const CylinderSpace& space() const { return *space_; }
    const SpacePtr& space_ptr() const { return space_; }
    int degrees() const { return static_cast<int>(modes_.size()); }
    const std::vector<double>& mode(int i) const { return modes_[i]; }
    std::vector<double>& mode(int i) { return modes_[i]; }
    bool mode_is_zero(int i) const;

    CylinderFunction& operator+=(const CylinderFunction& o);
    CylinderFunction& operator-=(const CylinderFunction& o);
    CylinderFunction& operator*=(double c);
    // this += c * o
    CylinderFunction& axpy(double c, const CylinderFunction& o);

private:
    SpacePtr space_;
    std::vector<std::vector<double>> modes_;
};

CylinderFunction operator+(CylinderFunction a, const CylinderFunction& b);
CylinderFunction operator-(CylinderFunction a, const CylinderFunction& b);
CylinderFunction operator*(double c, CylinderFunction a);

// Samples f into the mode-i profile.
CylinderFunction from_profile(const SpacePtr& space, int i, const std::function<double(double)>& f);
// c * Psi(t - s)
CylinderFunction psi_function(const SpacePtr& space, double s = 0.0, double c = 1.0);
CylinderFunction psi_prime_function(const SpacePtr& space);
// rho_02 in its explicit normalization (a mode-0 function)
CylinderFunction rho02_function(const SpacePtr& space);
// cosh(gamma t)^{-sqrt(tau_1)/gamma} cos(theta)
CylinderFunction rho10_function(const SpacePtr& space);
// unit-H^1 eigenfunction (i, j) placed in mode i
CylinderFunction eigen_function(const SpacePtr& space, int i, int j);

double h1_inner(const CylinderFunction& u, const CylinderFunction& v);
double h1_norm_sq(const CylinderFunction& v);
// \int_C |v|^{p+1}
double lp1_pow(const CylinderFunction& v);
double lp1_norm(const CylinderFunction& v);
// ||v||^2_{H^1} / ||v||^2_{p+1}
double ckn_quotient(const CylinderFunction& v);

// L = \int |v|^{p+1} and the mode projections G_i(t) = \int_S |v|^{p-1} v Y_i.
struct Lp1Gradient {
    double L = 0.0;
    std::vector<std::vector<double>> G;
};
Lp1Gradient lp1_gradient(const CylinderFunction& v);

// Riesz representative in H^1: solves (-d^2 + tau_i) u_i = F_i mode by mode.
CylinderFunction riesz(const SpacePtr& space, std::vector<std::vector<double>> F);

// <v, Psi_s^p>_{L^2(C)}
double overlap_functions(const CylinderFunction& v, double s);

struct ManifoldProjection {
    double s_star = 0.0;
    double c_star = 0.0;
    double overlap = 0.0;
    double distance_sq = 0.0;
    double norm_sq = 0.0;
    bool edge_hit = false;  // maximizer on the boundary of the search window
    // best competing local maximum of the overlap^2 (ties make dist^2 nonsmooth)
    bool has_secondary = false;
    double secondary_shift = 0.0;
    double secondary_overlap = 0.0;
    std::vector<std::pair<double, double>> scan;  // decimated coarse scan (s, overlap)
};
ManifoldProjection distance_to_manifold(const CylinderFunction& v);

// Removes the H^1 projections onto Psi and Psi'.
CylinderFunction m_perp_project(const CylinderFunction& v);

}  // namespace cknlab
