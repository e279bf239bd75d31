#include "cknlab/quotient.hpp"

#include <algorithm>
#include <cmath>

#include "cknlab/errors.hpp"

namespace cknlab {

namespace {

double numerator_from(const CylinderSpace& sp, double norm_sq, double L) {
    return norm_sq - sp.c_inv() * std::pow(L, 2.0 / (sp.params().p + 1.0));
}

QuotientReport evaluate(const CylinderFunction& v, double L) {
    const CylinderSpace& sp = v.space();
    const ManifoldProjection proj = distance_to_manifold(v);
    QuotientReport r;
    r.norm_sq = proj.norm_sq;
    r.distance_sq = proj.distance_sq;
    r.shift = proj.s_star;
    r.c_star = proj.c_star;
    r.overlap = proj.overlap;
    r.edge_hit = proj.edge_hit;
    r.has_secondary = proj.has_secondary;
    r.secondary_shift = proj.secondary_shift;
    r.secondary_overlap = proj.secondary_overlap;
    r.numerator = numerator_from(sp, proj.norm_sq, L);
    r.bounds = bounds(sp.params());
    if (!(proj.distance_sq > kOnManifoldTol * proj.norm_sq))
        throw OnManifoldError("quotient: v lies on the manifold of bubbles (dist^2 below 1e-10 ||v||^2)");
    r.value = r.numerator / r.distance_sq;
    if (r.has_secondary) {
        const double d2 = proj.norm_sq - proj.secondary_overlap * proj.secondary_overlap / sp.psi_h1_sq();
        r.secondary_value = d2 > 0.0 ? r.numerator / d2 : 0.0;
    }
    return r;
}

}  // namespace

double numerator(const CylinderFunction& v) { return numerator_from(v.space(), h1_norm_sq(v), lp1_pow(v)); }

QuotientReport quotient(const CylinderFunction& v) { return evaluate(v, lp1_pow(v)); }

CylinderFunction numerator_gradient(const CylinderFunction& v) {
    const CylinderSpace& sp = v.space();
    const double p = sp.params().p;
    Lp1Gradient lg = lp1_gradient(v);
    const double c = 2.0 * sp.c_inv() * std::pow(lg.L, (1.0 - p) / (p + 1.0));
    CylinderFunction g = riesz(v.space_ptr(), std::move(lg.G));
    g *= -c;
    g.axpy(2.0, v);
    return g;
}

QuotientGradient quotient_gradient(const CylinderFunction& v) {
    const CylinderSpace& sp = v.space();
    const double p = sp.params().p;
    Lp1Gradient lg = lp1_gradient(v);
    QuotientReport rep = evaluate(v, lg.L);

    const double c = 2.0 * sp.c_inv() * std::pow(lg.L, (1.0 - p) / (p + 1.0));
    CylinderFunction gN = riesz(v.space_ptr(), std::move(lg.G));
    gN *= -c;
    gN.axpy(2.0, v);

    const auto branch = [&](double shift, double overlap, double value, double dist_sq) {
        // d/dv of omega^2/K at fixed shift: (2 omega / K) Riesz(sqrt|S| Psi_shift^p) in mode 0
        std::vector<std::vector<double>> F(sp.degrees(), std::vector<double>(sp.size(), 0.0));
        const double root_s = std::sqrt(sp.params().sphere_area);
        for (int k = 0; k < sp.size(); ++k) F[0][k] = root_s * std::pow(sp.profile().psi(sp.t(k) - shift), p);
        CylinderFunction gD = riesz(v.space_ptr(), std::move(F));
        gD *= -2.0 * overlap / sp.psi_h1_sq();
        gD.axpy(2.0, v);
        CylinderFunction g = gN;
        g.axpy(-value, gD);
        g *= 1.0 / dist_sq;
        return g;
    };

    CylinderFunction g1 = branch(rep.shift, rep.overlap, rep.value, rep.distance_sq);
    const bool tied = rep.has_secondary && rep.secondary_value > 0.0 &&
                      rep.secondary_value >= (1.0 - kActiveBranchTol) * rep.value;
    if (!tied) return {rep, std::move(g1)};

    const double d2 = rep.numerator / rep.secondary_value;
    CylinderFunction g2 = branch(rep.secondary_shift, rep.secondary_overlap, rep.secondary_value, d2);
    CylinderFunction diff = g1;
    diff.axpy(-1.0, g2);
    const double dd = h1_norm_sq(diff);
    if (!(dd > 0.0)) return {rep, std::move(g1)};
    const double theta = std::clamp(-h1_inner(diff, g2) / dd, 0.0, 1.0);
    g1 *= theta;
    g1.axpy(1.0 - theta, g2);
    return {rep, std::move(g1)};
}

}  // namespace cknlab
