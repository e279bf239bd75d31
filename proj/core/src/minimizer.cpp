#include "cknlab/minimizer.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <random>
#include <sstream>
#include <thread>

#include "cknlab/errors.hpp"
#include "cknlab/spectrum.hpp"

namespace cknlab {

std::string StartRecipe::label() const {
    std::ostringstream os;
    os.precision(6);
    switch (kind) {
        case StartKind::GapPerturbation: os << "gap_perturbation(eps=" << eps << ")"; break;
        case StartKind::TwoBubble: os << "two_bubble(s=" << s << ")"; break;
        case StartKind::Random: os << "random(seed=" << seed << ")"; break;
    }
    return os.str();
}

void MinimizeConfig::validate() const {
    if (modes.empty()) throw DomainError("MinimizeConfig: mode set must be nonempty");
    for (int m : modes)
        if (m != 0 && m != 1) throw DomainError("MinimizeConfig: modes must be a subset of {0, 1}");
    if (start.kind == StartKind::GapPerturbation && !(start.eps > 0.0 && start.eps <= 0.2))
        throw DomainError("MinimizeConfig: eps in (0, 0.2] required");
    if (max_iterations < 1) throw DomainError("MinimizeConfig: iterations >= 1 required");
    if (!(gradient_tol > 0.0) || !(projection_tol > 0.0) || !(initial_step > 0.0) || !(armijo > 0.0))
        throw DomainError("MinimizeConfig: tolerances and step must be positive");
}

namespace {

bool has_mode(const std::vector<int>& modes, int m) { return std::find(modes.begin(), modes.end(), m) != modes.end(); }

void restrict_modes(CylinderFunction& v, const std::vector<int>& modes) {
    for (int i = 0; i < v.degrees(); ++i)
        if (!has_mode(modes, i)) std::fill(v.mode(i).begin(), v.mode(i).end(), 0.0);
}

void normalize_lp1(CylinderFunction& v) { v *= 1.0 / lp1_norm(v); }

}  // namespace

CylinderFunction start_function(const SpacePtr& space, const StartRecipe& recipe, const std::vector<int>& modes) {
    const CknParams& P = space->params();
    const double psi_norm = std::sqrt(space->psi_h1_sq());
    switch (recipe.kind) {
        case StartKind::GapPerturbation: {
            const bool remaining = classify(P).region == Region::Remaining;
            const int i = remaining ? 1 : 0;
            if (!has_mode(modes, i)) throw DomainError("start_function: perturbation mode not in the mode set");
            CylinderFunction v = psi_function(space);
            v.axpy(recipe.eps * psi_norm, eigen_function(space, i, remaining ? 0 : 2));
            return v;
        }
        case StartKind::TwoBubble:
            return psi_function(space, -0.5 * recipe.s) + psi_function(space, 0.5 * recipe.s);
        case StartKind::Random: {
            std::mt19937_64 rng(recipe.seed);
            std::normal_distribution<double> normal(0.0, 1.0);
            std::uniform_real_distribution<double> uni(0.0, 1.0);
            const double g = P.gamma;
            CylinderFunction noise(space);
            for (int i : modes) {
                if (i >= space->degrees()) continue;
                for (int b = 0; b < 5; ++b) {
                    const double amp = normal(rng);
                    const double center = (8.0 * uni(rng) - 4.0) / g;
                    const double width = (0.5 + 1.5 * uni(rng)) / g;
                    auto& m = noise.mode(i);
                    for (int k = 0; k < space->size(); ++k) {
                        const double z = (space->t(k) - center) / width;
                        m[k] += amp * std::exp(-0.5 * z * z);
                    }
                }
            }
            noise = m_perp_project(noise);
            const double n = std::sqrt(h1_norm_sq(noise));
            CylinderFunction v = psi_function(space);
            if (n > 0.0) v.axpy(0.1 * psi_norm / n, noise);
            return v;
        }
    }
    throw DomainError("start_function: unknown recipe");
}

QuotientReport minimize_quotient(const MinimizeConfig& cfg, const CknParams& P, SpacePtr space) {
    cfg.validate();
    if (!space) space = CylinderSpace::create(P, 1);
    CylinderFunction v = start_function(space, cfg.start, cfg.modes);
    restrict_modes(v, cfg.modes);
    normalize_lp1(v);

    QuotientGradient cur = quotient_gradient(v);
    restrict_modes(cur.gradient, cfg.modes);
    QuotientReport best = cur.report;
    best.trace.emplace_back(0, cur.report.value);

    double step = cfg.initial_step;
    int it = 0;
    double gnorm = std::sqrt(h1_norm_sq(cur.gradient));
    for (it = 1; it <= cfg.max_iterations; ++it) {
        const double vnorm = std::sqrt(cur.report.norm_sq);
        if (gnorm * vnorm < cfg.gradient_tol) break;
        bool accepted = false;
        while (step > 1e-14) {
            CylinderFunction trial = v;
            trial.axpy(-step, cur.gradient);
            normalize_lp1(trial);
            try {
                QuotientGradient next = quotient_gradient(trial);
                const bool far = next.report.distance_sq > cfg.projection_tol * next.report.norm_sq;
                // Armijo along the unnormalized step; Q is invariant under the rescaling
                if (far && next.report.value <= cur.report.value - cfg.armijo * step * gnorm * gnorm) {
                    v = std::move(trial);
                    cur = std::move(next);
                    restrict_modes(cur.gradient, cfg.modes);
                    accepted = true;
                    break;
                }
            } catch (const OnManifoldError&) {
            }
            step *= 0.5;
        }
        if (!accepted) {
            if (it == 1) throw NoDescentError("minimize_quotient: line search failed at the first iterate");
            break;
        }
        gnorm = std::sqrt(h1_norm_sq(cur.gradient));
        best.trace.emplace_back(it, cur.report.value);
        step = std::min(2.0 * step, 1e3);
    }
    auto trace = std::move(best.trace);
    best = cur.report;
    best.trace = std::move(trace);
    best.iterations = std::min(it, cfg.max_iterations);
    best.gradient_norm = gnorm * std::sqrt(cur.report.norm_sq);
    return best;
}

CbeEstimate estimate_cbe(const CknParams& P, int starts, std::uint64_t seed, int workers, const MinimizeConfig& base,
                         SpacePtr space) {
    if (starts < 0) throw DomainError("estimate_cbe: starts >= 0 required");
    if (!space) space = CylinderSpace::create(P, 1);
    std::vector<StartRecipe> recipes;
    for (double eps : {0.05, 0.02, 0.01}) recipes.push_back({StartKind::GapPerturbation, eps, 0.0, 0});
    for (double s : {8.0, 10.0}) recipes.push_back({StartKind::TwoBubble, 0.0, s / P.gamma, 0});
    for (int k = 0; k < starts; ++k) recipes.push_back({StartKind::Random, 0.0, 0.0, seed + static_cast<std::uint64_t>(k)});

    const std::size_t n = recipes.size();
    std::vector<QuotientReport> out(n);
    std::vector<std::string> err(n);
    std::atomic<std::size_t> next{0};
    auto work = [&] {
        for (std::size_t k = next++; k < n; k = next++) {
            MinimizeConfig cfg = base;
            cfg.start = recipes[k];
            try {
                out[k] = minimize_quotient(cfg, P, space);
            } catch (const Error& e) {
                err[k] = e.what();
            }
        }
    };
    if (workers <= 0) workers = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
    workers = static_cast<int>(std::min<std::size_t>(workers, n));
    std::vector<std::thread> pool;
    for (int w = 1; w < workers; ++w) pool.emplace_back(work);
    work();
    for (auto& t : pool) t.join();

    CbeEstimate est;
    std::size_t best = n;
    for (std::size_t k = 0; k < n; ++k) {
        est.recipes.push_back(recipes[k].label());
        if (!err[k].empty()) {
            est.values.push_back(std::numeric_limits<double>::quiet_NaN());
            est.failures.push_back(recipes[k].label() + ": " + err[k]);
            continue;
        }
        est.values.push_back(out[k].value);
        if (best == n || out[k].value < out[best].value) best = k;
    }
    if (best == n) throw NumericalError("estimate_cbe: every start failed");
    est.best = out[best];
    est.best_recipe = recipes[best].label();
    const BoundsReport b = bounds(P);
    est.bound = std::min(b.bound_gap, b.bound_two_bubble);
    est.bound_ok = est.best.value > 0.0 && est.best.value <= est.bound + 1e-3;
    return est;
}

}  // namespace cknlab
