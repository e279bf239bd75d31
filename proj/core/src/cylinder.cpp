#include "cknlab/cylinder.hpp"

#include <algorithm>
#include <boost/math/constants/constants.hpp>
#include <cmath>

#include "cknlab/errors.hpp"
#include "cknlab/specfun.hpp"
#include "cknlab/spectrum.hpp"
#include "fft.hpp"

namespace cknlab {

using cplx = std::complex<double>;

GridSpec default_cylinder_grid(const CknParams& P) {
    GridSpec g;
    g.T = 60.0 / P.gamma * std::max(1.0, 0.5 * (P.p - 1.0));
    g.M = 4096;
    return g;
}

std::shared_ptr<const CylinderSpace> CylinderSpace::create(const CknParams& P, int max_degree, const GridSpec* grid,
                                                           int angle_nodes) {
    if (max_degree < 0) throw DomainError("CylinderSpace: max_degree >= 0 required");
    if (angle_nodes < 4) throw DomainError("CylinderSpace: at least 4 angle nodes required");
    std::shared_ptr<CylinderSpace> s(new CylinderSpace());
    s->params_ = P;
    s->grid_ = grid ? *grid : default_cylinder_grid(P);
    if (s->grid_.M < 16 || s->grid_.M % 2 != 0) throw DomainError("CylinderSpace: M must be even and >= 16");
    if (!(s->grid_.T > 0.0)) throw DomainError("CylinderSpace: T > 0 required");
    s->profile_ = ExtremalProfile(P);
    s->max_degree_ = max_degree;
    const int M = s->grid_.M;
    s->h_ = s->grid_.h();
    s->t_.resize(M);
    for (int k = 0; k < M; ++k) s->t_[k] = s->grid_.t(k);

    const PsiNorms nrm = psi_norms(P);
    s->K_ = nrm.h1_sq;
    s->c_inv_ = optimal_constant(P).c_inv;

    const double pi = boost::math::constants::pi<double>();
    const GaussRule g = gauss_legendre(angle_nodes, 0.0, pi);
    const double ring = sphere_area(P.N - 1);
    s->angle_ = g.x;
    s->angle_w_.resize(angle_nodes);
    for (int q = 0; q < angle_nodes; ++q) s->angle_w_[q] = g.w[q] * ring * std::pow(std::sin(g.x[q]), P.N - 2);
    s->harm_.assign(max_degree + 1, std::vector<double>(angle_nodes));
    for (int i = 0; i <= max_degree; ++i) {
        double n2 = 0.0;
        for (int q = 0; q < angle_nodes; ++q) {
            const double z = zonal_harmonic(P.N, i, std::cos(g.x[q]));
            s->harm_[i][q] = z;
            n2 += s->angle_w_[q] * z * z;
        }
        const double inv = 1.0 / std::sqrt(n2);
        for (double& z : s->harm_[i]) z *= inv;
    }

    const int nk = M / 2 + 1;
    const double L = M * s->h_;
    s->kappa2_.resize(nk);
    for (int k = 0; k < nk; ++k) {
        const double kap = 2.0 * pi * k / L;
        s->kappa2_[k] = (k == M / 2) ? 0.0 : kap * kap;
    }
    std::vector<double> pp(M);
    for (int k = 0; k < M; ++k) pp[k] = std::pow(s->profile_.psi(s->t_[k]), P.p);
    s->psi_p_hat_.resize(nk);
    detail::real_fft(M).forward(pp.data(), s->psi_p_hat_.data());
    return s;
}

std::vector<double> CylinderSpace::correlate_psi_p(const std::vector<double>& f) const {
    const int M = grid_.M;
    const auto& fft = detail::real_fft(M);
    std::vector<cplx> fh(M / 2 + 1);
    fft.forward(f.data(), fh.data());
    for (int k = 0; k <= M / 2; ++k) fh[k] *= std::conj(psi_p_hat_[k]);
    std::vector<double> c(M);
    fft.backward(fh.data(), c.data());
    for (double& x : c) x /= M;
    return c;
}

CylinderFunction::CylinderFunction(SpacePtr space)
    : space_(std::move(space)), modes_(space_->degrees(), std::vector<double>(space_->size(), 0.0)) {}

CylinderFunction::CylinderFunction(SpacePtr space, std::vector<std::vector<double>> modes)
    : space_(std::move(space)), modes_(std::move(modes)) {
    if (static_cast<int>(modes_.size()) != space_->degrees()) throw DomainError("CylinderFunction: mode count mismatch");
    for (const auto& m : modes_)
        if (static_cast<int>(m.size()) != space_->size()) throw DomainError("CylinderFunction: grid mismatch");
}

bool CylinderFunction::mode_is_zero(int i) const {
    return std::all_of(modes_[i].begin(), modes_[i].end(), [](double x) { return x == 0.0; });
}

namespace {
void check_same(const CylinderFunction& a, const CylinderFunction& b) {
    if (a.space_ptr() != b.space_ptr()) throw DomainError("cylinder functions live on different grids");
}
}  // namespace

CylinderFunction& CylinderFunction::operator+=(const CylinderFunction& o) { return axpy(1.0, o); }
CylinderFunction& CylinderFunction::operator-=(const CylinderFunction& o) { return axpy(-1.0, o); }

CylinderFunction& CylinderFunction::operator*=(double c) {
    for (auto& m : modes_)
        for (double& x : m) x *= c;
    return *this;
}

CylinderFunction& CylinderFunction::axpy(double c, const CylinderFunction& o) {
    check_same(*this, o);
    for (std::size_t i = 0; i < modes_.size(); ++i)
        for (std::size_t k = 0; k < modes_[i].size(); ++k) modes_[i][k] += c * o.modes_[i][k];
    return *this;
}

CylinderFunction operator+(CylinderFunction a, const CylinderFunction& b) { return a += b; }
CylinderFunction operator-(CylinderFunction a, const CylinderFunction& b) { return a -= b; }
CylinderFunction operator*(double c, CylinderFunction a) { return a *= c; }

CylinderFunction from_profile(const SpacePtr& space, int i, const std::function<double(double)>& f) {
    if (i < 0 || i >= space->degrees()) throw DomainError("from_profile: mode out of range");
    CylinderFunction v(space);
    auto& m = v.mode(i);
    for (int k = 0; k < space->size(); ++k) m[k] = f(space->t(k));
    return v;
}

CylinderFunction psi_function(const SpacePtr& space, double s, double c) {
    const double root_s = std::sqrt(space->params().sphere_area);
    const ExtremalProfile& pr = space->profile();
    return from_profile(space, 0, [&](double t) { return c * root_s * pr.psi(t - s); });
}

CylinderFunction psi_prime_function(const SpacePtr& space) {
    const double root_s = std::sqrt(space->params().sphere_area);
    const ExtremalProfile& pr = space->profile();
    return from_profile(space, 0, [&](double t) { return root_s * pr.psi_prime(t); });
}

CylinderFunction rho02_function(const SpacePtr& space) {
    const CknParams& P = space->params();
    const double root_s = std::sqrt(P.sphere_area);
    return from_profile(space, 0, [&](double t) { return root_s * rho_02(P, t); });
}

CylinderFunction rho10_function(const SpacePtr& space) {
    const CknParams& P = space->params();
    // cos(theta) = ||cos||_{L^2(S)} Y_1 with ||cos||^2 = |S^{N-1}|/N
    const double c = std::sqrt(P.sphere_area / P.N);
    return from_profile(space, 1, [&](double t) { return c * rho_10_radial(P, t); });
}

CylinderFunction eigen_function(const SpacePtr& space, int i, int j) {
    const Eigenmode m = eigenfunction(space->params(), i, j);
    return from_profile(space, i, [&](double t) { return m(t); });
}

double h1_inner(const CylinderFunction& u, const CylinderFunction& v) {
    check_same(u, v);
    const CylinderSpace& sp = u.space();
    const int M = sp.size(), nk = M / 2 + 1;
    const auto& fft = detail::real_fft(M);
    std::vector<cplx> uh(nk), vh(nk);
    double total = 0.0;
    for (int i = 0; i < u.degrees(); ++i) {
        if (u.mode_is_zero(i) || v.mode_is_zero(i)) continue;
        fft.forward(u.mode(i).data(), uh.data());
        fft.forward(v.mode(i).data(), vh.data());
        const double tau = sp.tau(i);
        double acc = 0.0;
        for (int k = 0; k < nk; ++k) {
            const double w = (k == 0 || k == M / 2) ? 1.0 : 2.0;
            acc += w * (sp.kappa_sq(k) + tau) * (uh[k].real() * vh[k].real() + uh[k].imag() * vh[k].imag());
        }
        total += acc * sp.h() / M;
    }
    return total;
}

double h1_norm_sq(const CylinderFunction& v) { return h1_inner(v, v); }

namespace {

int last_nonzero_mode(const CylinderFunction& v) {
    int top = 0;
    for (int i = 0; i < v.degrees(); ++i)
        if (!v.mode_is_zero(i)) top = i;
    return top;
}

}  // namespace

double lp1_pow(const CylinderFunction& v) {
    const CylinderSpace& sp = v.space();
    const double p1 = sp.params().p + 1.0;
    const int top = last_nonzero_mode(v);
    double acc = 0.0;
    if (top == 0) {
        // v = phi_0 Y_0 with Y_0 = |S|^{-1/2}
        const double S = sp.params().sphere_area, y0 = 1.0 / std::sqrt(S);
        for (double x : v.mode(0)) acc += std::pow(std::abs(x * y0), p1);
        return acc * S * sp.h();
    }
    const int nq = sp.angle_count();
    for (int k = 0; k < sp.size(); ++k) {
        for (int q = 0; q < nq; ++q) {
            double val = 0.0;
            for (int i = 0; i <= top; ++i) val += v.mode(i)[k] * sp.harmonic(i, q);
            acc += sp.angle_weight(q) * std::pow(std::abs(val), p1);
        }
    }
    return acc * sp.h();
}

double lp1_norm(const CylinderFunction& v) { return std::pow(lp1_pow(v), 1.0 / (v.space().params().p + 1.0)); }

double ckn_quotient(const CylinderFunction& v) {
    const double n = lp1_norm(v);
    return h1_norm_sq(v) / (n * n);
}

Lp1Gradient lp1_gradient(const CylinderFunction& v) {
    const CylinderSpace& sp = v.space();
    const double p = sp.params().p;
    const int M = sp.size(), nq = sp.angle_count(), D = v.degrees();
    const int top = last_nonzero_mode(v);
    Lp1Gradient g;
    g.G.assign(D, std::vector<double>(M, 0.0));
    double acc = 0.0;
    if (top == 0) {
        const double S = sp.params().sphere_area, y0 = 1.0 / std::sqrt(S);
        for (int k = 0; k < M; ++k) {
            const double val = v.mode(0)[k] * y0;
            const double a = std::abs(val);
            const double ap = std::pow(a, p - 1.0);
            acc += ap * a * a * S;
            // higher projections vanish: |v|^{p-1} v is constant on the sphere
            g.G[0][k] = ap * val * S * y0;
        }
        g.L = acc * sp.h();
        return g;
    }
    std::vector<double> val(nq);
    for (int k = 0; k < M; ++k) {
        for (int q = 0; q < nq; ++q) {
            double x = 0.0;
            for (int i = 0; i <= top; ++i) x += v.mode(i)[k] * sp.harmonic(i, q);
            const double a = std::abs(x);
            const double ap = std::pow(a, p - 1.0);
            acc += sp.angle_weight(q) * ap * a * a;
            val[q] = sp.angle_weight(q) * ap * x;
        }
        for (int i = 0; i < D; ++i) {
            double proj = 0.0;
            for (int q = 0; q < nq; ++q) proj += val[q] * sp.harmonic(i, q);
            g.G[i][k] = proj;
        }
    }
    g.L = acc * sp.h();
    return g;
}

CylinderFunction riesz(const SpacePtr& space, std::vector<std::vector<double>> F) {
    const int M = space->size(), nk = M / 2 + 1;
    if (static_cast<int>(F.size()) != space->degrees()) throw DomainError("riesz: mode count mismatch");
    const auto& fft = detail::real_fft(M);
    std::vector<cplx> fh(nk);
    for (int i = 0; i < space->degrees(); ++i) {
        auto& f = F[i];
        if (std::all_of(f.begin(), f.end(), [](double x) { return x == 0.0; })) continue;
        fft.forward(f.data(), fh.data());
        const double tau = space->tau(i);
        for (int k = 0; k < nk; ++k) fh[k] /= (space->kappa_sq(k) + tau) * M;
        fft.backward(fh.data(), f.data());
    }
    return CylinderFunction(space, std::move(F));
}

double overlap_functions(const CylinderFunction& v, double s) {
    const CylinderSpace& sp = v.space();
    const double p = sp.params().p;
    const ExtremalProfile& pr = sp.profile();
    const auto& m0 = v.mode(0);
    double acc = 0.0;
    for (int k = 0; k < sp.size(); ++k) {
        if (m0[k] == 0.0) continue;
        acc += m0[k] * std::pow(pr.psi(sp.t(k) - s), p);
    }
    return acc * sp.h() * std::sqrt(sp.params().sphere_area);
}

namespace {

// Golden-section maximization of overlap^2 on [lo, hi] to 1e-10 in s.
std::pair<double, double> golden_max(const CylinderFunction& v, double lo, double hi) {
    const auto neg = [&](double s) {
        const double o = overlap_functions(v, s);
        return -o * o;
    };
    const double invphi = 0.5 * (std::sqrt(5.0) - 1.0);
    double a = lo, b = hi;
    double x1 = b - invphi * (b - a), x2 = a + invphi * (b - a);
    double f1 = neg(x1), f2 = neg(x2);
    for (int it = 0; it < 200 && b - a > 1e-10; ++it) {
        if (f1 < f2) {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - invphi * (b - a);
            f1 = neg(x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + invphi * (b - a);
            f2 = neg(x2);
        }
    }
    if (b - a > 1e-10) throw NumericalError("distance_to_manifold: shift search did not converge");
    const double s = 0.5 * (a + b);
    return {s, overlap_functions(v, s)};
}

}  // namespace

ManifoldProjection distance_to_manifold(const CylinderFunction& v) {
    const CylinderSpace& sp = v.space();
    const int M = sp.size();
    const double h = sp.h();
    const double scale = h * std::sqrt(sp.params().sphere_area);
    ManifoldProjection r;
    r.norm_sq = h1_norm_sq(v);
    if (!(r.norm_sq > 0.0)) throw DomainError("distance_to_manifold: v must be nonzero");

    const std::vector<double> c = sp.correlate_psi_p(v.mode(0));
    const int mmax = std::min(M / 2 - 1, static_cast<int>(std::floor(0.5 * sp.grid().T / h)));
    int best = 0;
    double best_val = -1.0;
    for (int m = -mmax; m <= mmax; ++m) {
        const double o = c[(m % M + M) % M] * scale;
        if (o * o > best_val) {
            best_val = o * o;
            best = m;
        }
        if ((m + mmax) % 16 == 0) r.scan.emplace_back(m * h, o);
    }
    r.edge_hit = std::abs(best) == mmax;

    const auto o_at = [&](int m) { return c[(m % M + M) % M] * scale; };
    // best other local maximum of overlap^2 in the window
    int second = best;
    double second_val = -1.0;
    for (int m = -mmax + 1; m < mmax; ++m) {
        if (std::abs(m - best) <= 1) continue;
        const double o2 = o_at(m) * o_at(m);
        if (o2 >= o_at(m - 1) * o_at(m - 1) && o2 >= o_at(m + 1) * o_at(m + 1) && o2 > second_val) {
            second_val = o2;
            second = m;
        }
    }

    const auto refine = [&](int m) {
        const double o_grid = o_at(m);
        const auto [s, o] = golden_max(v, (m - 1) * h, (m + 1) * h);
        return (o_grid * o_grid > o * o) ? std::pair<double, double>{m * h, o_grid} : std::pair<double, double>{s, o};
    };
    const auto [s_star, o_star] = refine(best);
    r.s_star = s_star;
    r.overlap = o_star;
    r.c_star = o_star / sp.psi_h1_sq();
    r.distance_sq = r.norm_sq - o_star * o_star / sp.psi_h1_sq();
    if (second != best && second_val > 0.0) {
        const auto [s2, o2] = refine(second);
        r.has_secondary = true;
        r.secondary_shift = s2;
        r.secondary_overlap = o2;
    }
    return r;
}

CylinderFunction m_perp_project(const CylinderFunction& v) {
    const SpacePtr& sp = v.space_ptr();
    CylinderFunction e1 = psi_function(sp);
    e1 *= 1.0 / std::sqrt(h1_norm_sq(e1));
    CylinderFunction e2 = psi_prime_function(sp);
    e2.axpy(-h1_inner(e2, e1), e1);
    e2 *= 1.0 / std::sqrt(h1_norm_sq(e2));
    CylinderFunction out = v;
    out.axpy(-h1_inner(v, e1), e1);
    out.axpy(-h1_inner(out, e2), e2);
    return out;
}

}  // namespace cknlab
