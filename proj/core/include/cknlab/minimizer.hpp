#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "cknlab/cylinder.hpp"
#include "cknlab/quotient.hpp"

namespace cknlab {

enum class StartKind { GapPerturbation, TwoBubble, Random };

struct StartRecipe {
    StartKind kind = StartKind::GapPerturbation;
    double eps = 0.05;        // GapPerturbation: relative size of the eigenfunction perturbation
    double s = 0.0;           // TwoBubble: separation
    std::uint64_t seed = 0;   // Random
    std::string label() const;
};

struct MinimizeConfig {
    std::vector<int> modes{0, 1};
    StartRecipe start;
    double initial_step = 1.0;
    int max_iterations = 200;
    double gradient_tol = 1e-6;    // on ||grad Q||_{H^1} ||v||_{H^1}
    double projection_tol = 1e-8;  // trial iterates with dist^2 < tol ||v||^2 are rejected
    double armijo = 1e-4;

    void validate() const;
};

// Starting iterate. Gap perturbation adds eps ||Psi|| rho with rho the unit-H^1 eigenfunction
// rho_02 (CaseI/II) or rho_10 (Remaining); two-bubble is Psi_{-s/2} + Psi_{s/2}; random adds
// smooth Gaussian bumps projected onto M-perp.
CylinderFunction start_function(const SpacePtr& space, const StartRecipe& recipe, const std::vector<int>& modes);

// Armijo gradient descent in H^1 with ||v||_{p+1} = 1 restored after each step.
QuotientReport minimize_quotient(const MinimizeConfig& config, const CknParams& P, SpacePtr space = nullptr);

struct CbeEstimate {
    QuotientReport best;
    std::string best_recipe;
    std::vector<std::string> recipes;
    std::vector<double> values;  // exit Q per recipe (NaN when the run failed)
    std::vector<std::string> failures;
    double bound = 0.0;  // min(lambda*, 2 - 2^{2/(p+1)})
    bool bound_ok = false;  // 0 < Q_best <= bound + 1e-3
};

// Multi-start over gap perturbations (eps 0.05, 0.02, 0.01), two bubbles (s = 8/gamma, 10/gamma)
// and `starts` random seeds. Runs in parallel; the merge is min by (Q, recipe index).
CbeEstimate estimate_cbe(const CknParams& P, int starts, std::uint64_t seed = 1, int workers = 0,
                         const MinimizeConfig& base = {}, SpacePtr space = nullptr);

}  // namespace cknlab
