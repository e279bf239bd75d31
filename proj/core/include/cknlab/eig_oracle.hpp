#pragma once

#include <vector>

#include "cknlab/grid.hpp"
#include "cknlab/params.hpp"

namespace cknlab {

// Dirichlet truncation wide enough for sech^2 and the mode-i bound states, with
// h resolving 1/gamma, 1/sqrt(tau_i) and 1/sqrt(beta).
GridSpec default_oracle_grid(const CknParams& P, int i);
void validate_oracle_grid(const CknParams& P, const GridSpec& g);

// Number of generalized eigenvalues of (-d^2 + tau_i) phi = lambda beta sech^2(gamma t) phi
// below lambda on the grid (inertia of A - lambda B).
long sturm_count(const CknParams& P, int i, const GridSpec& g, double lambda);

// The `count` smallest eigenvalues, bisected to 1e-10 in (0, 1e3). With richardson set,
// the grid and its nested refinement (2M-1 nodes) are combined as (4 l_{h/2} - l_h)/3.
std::vector<double> generalized_eigenvalues(const CknParams& P, int i, int count, const GridSpec& g,
                                            bool richardson = true);

struct RayleighGapReport {
    double minimum = 0.0;  // min over modes of 1 - 1/mu
    int mode = 0;
    double mu = 0.0;
    double cosine = 0.0;  // H^1 cosine between the minimizer and rho_02 (mode 0) or rho_10 (mode 1)
    std::vector<double> mode_minima;  // 1 - 1/mu per mode 0, 1, 2
    std::vector<double> minimizer;    // interior samples of the minimizing profile
};

GridSpec default_rayleigh_grid(const CknParams& P);
// Minimizes (||rho||^2 - beta \int sech^2 rho^2)/||rho||^2 over mode-0 profiles H^1-orthogonal
// to Psi and Psi', and over modes 1 and 2.
RayleighGapReport rayleigh_gap_check(const CknParams& P, const GridSpec& g);

}  // namespace cknlab
